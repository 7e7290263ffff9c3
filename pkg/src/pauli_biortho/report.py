"""Verification reports and deterministic JSON output."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

SCHEMA = "pauli-biortho/1"

PASS, FAIL, SKIP, INFO = "pass", "fail", "skip", "info"


@dataclass
class CheckResult:
    name: str
    status: str
    max_residual: float = 0.0
    tolerance: float | None = None
    params: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "max_residual": float(self.max_residual),
            "tolerance": self.tolerance,
            "params": self.params,
        }
        if self.note:
            d["note"] = self.note
        return d


class VerificationReport:
    """Ordered collection of :class:`CheckResult` entries.

    ``check`` records a residual against a tolerance.  ``info`` entries never
    affect :attr:`passed`; they document discrepancies that are data, not
    failures.
    """

    def __init__(self, title: str = ""):
        self.title = title
        self.results: list[CheckResult] = []

    def check(self, name, residual, tol, params=None, note="") -> CheckResult:
        residual = float(residual)
        ok = math.isfinite(residual) and residual <= tol
        res = CheckResult(name, PASS if ok else FAIL, residual, tol, dict(params or {}), note)
        self.results.append(res)
        return res

    def condition(self, name, ok, value, params=None, note="") -> CheckResult:
        """Record a predicate that is not a residual bound; ``value`` is reported as-is."""
        res = CheckResult(name, PASS if ok else FAIL, float(value), None, dict(params or {}), note)
        self.results.append(res)
        return res

    def skip(self, name, params=None, note="") -> CheckResult:
        res = CheckResult(name, SKIP, 0.0, None, dict(params or {}), note)
        self.results.append(res)
        return res

    def info(self, name, value, params=None, note="") -> CheckResult:
        res = CheckResult(name, INFO, float(value), None, dict(params or {}), note)
        self.results.append(res)
        return res

    def extend(self, other: "VerificationReport") -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def by_name(self, name: str) -> list[CheckResult]:
        return [r for r in self.results if r.name == name]

    def max_residual(self, name: str) -> float:
        vals = [r.max_residual for r in self.results if r.name == name and r.status != SKIP]
        return max(vals) if vals else 0.0

    def summarize(self) -> list[dict]:
        """Aggregate per check name: status counts and the worst case."""
        out = {}
        for r in sorted(self.results, key=_sort_key):
            s = out.setdefault(r.name, {"name": r.name, "pass": 0, "fail": 0, "skip": 0,
                                        "info": 0, "max_residual": 0.0, "worst_params": {}})
            s[r.status] += 1
            if r.status != SKIP and r.max_residual >= s["max_residual"]:
                s["max_residual"] = r.max_residual
                s["worst_params"] = r.params
        return list(out.values())

    def to_dict(self, detail: bool = False) -> dict:
        d = {"title": self.title, "passed": self.passed, "checks": self.summarize()}
        if detail:
            d["results"] = [r.to_dict() for r in sorted(self.results, key=_sort_key)]
        return d


def _sort_key(r: CheckResult):
    return (r.name, json.dumps(to_jsonable(r.params), sort_keys=True))


def to_jsonable(obj: Any) -> Any:
    """Convert numpy values and complex numbers into plain JSON structures.

    Complex scalars become ``[re, im]``; complex arrays become nested lists of
    such pairs.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj: Any, indent: int | None = 2) -> str:
    """Serialize to JSON with floats written at 17 significant digits."""
    return _emit(to_jsonable(obj), indent, 0)


def _emit(obj, indent, level) -> str:
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = format(obj, ".17g")
        if not any(c in text for c in ".eEn"):
            text += ".0"
        return text
    if isinstance(obj, (bool, int, str)) or obj is None:
        return json.dumps(obj)
    if indent is None:
        pad = sep = ""
        nl = ""
    else:
        pad = " " * (indent * (level + 1))
        sep = " " * (indent * level)
        nl = "\n"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + nl + ("," + nl).join(items) + nl + sep + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[" + nl + ("," + nl).join(items) + nl + sep + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
