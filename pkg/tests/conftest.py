import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record the one-line verdict of an acceptance criterion.

    Call with the criterion number, title and a dict of named sub-results
    ``{name: (ok, detail)}``; the line is printed and collected for the
    terminal summary, and the test fails if any sub-result failed.
    """
    lines = request.config.stash[_LINES_KEY]

    def record(number, title, results):
        ok = all(r[0] for r in results.values())
        parts = [f"{name}={'ok' if r[0] else 'FAIL'}({r[1]})" for name, r in results.items()]
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: " + "; ".join(parts)
        lines.append((number, line))
        print(line)
        bad = [name for name, r in results.items() if not r[0]]
        assert not bad, f"criterion {number} failed: {', '.join(bad)}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
