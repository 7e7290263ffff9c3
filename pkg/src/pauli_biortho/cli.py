"""Command-line front end.

Every subcommand writes one JSON document to stdout and a short summary to
stderr.  Exit status is 0 on success, 1 when a numerical check fails and 2 on
usage or domain errors.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import deformed, ideal, ks, spectral, time_reversal as tr
from .report import SCHEMA, VerificationReport, dumps
from .sweep import DEFAULT_FIELDS, DEFAULT_GAMMAS, SweepConfig, run_sweep


class UsageError(Exception):
    pass


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("values must be finite")
    return vals


def _spinor(text: str) -> np.ndarray:
    a = _floats(text, 4)
    return np.array([complex(a[0], a[1]), complex(a[2], a[3])])


def _tolerance(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name, float(value)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pauli-biortho",
                description="Deformed Cl3 algebra, bi-orthogonal spinors and KS maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gens", help="deformed generators and Clifford relations")
    g.add_argument("--gamma", type=float, required=True)

    s = sub.add_parser("spectrum", help="eigensystem and projectors of H_gamma")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--b1", type=float, required=True)
    s.add_argument("--b2", type=float, required=True)

    v = sub.add_parser("verify", help="full invariant sweep")
    v.add_argument("--gamma", type=float, action="append",
                   help="deformation value; repeat for several (default grid if omitted)")
    v.add_argument("--b1", type=float, action="append")
    v.add_argument("--b2", type=float, action="append")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=_tolerance, action="append", default=[],
                   metavar="NAME=VALUE", help="override a check tolerance")
    v.add_argument("--detail", action="store_true", help="include every individual result")
    v.add_argument("--out", help="also write the report to this file")

    k = sub.add_parser("ks", help="Kustaanheimo-Stiefel forward map or spherical lift")
    k.add_argument("--variant", type=int, choices=(1, 2), required=True)
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--r", type=lambda t: _floats(t, 4), metavar="r1,r2,r3,r4")
    src.add_argument("--spherical", type=lambda t: _floats(t, 3), metavar="r,theta,phi")
    k.add_argument("--omega1", type=float, default=0.0)

    e = sub.add_parser("evolve", help="time series of a state under H_gamma")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--b1", type=float, required=True)
    e.add_argument("--b2", type=float, required=True)
    e.add_argument("--psi0", type=_spinor, required=True, metavar="re,im,re,im")
    e.add_argument("--t", type=float, required=True)
    e.add_argument("--steps", type=int, default=100)

    i = sub.add_parser("ideal", help="ideal-spinor coordinates and inner products")
    i.add_argument("--psi", type=_spinor, required=True, metavar="re,im,re,im")
    i.add_argument("--phi", type=_spinor, metavar="re,im,re,im")
    return p


# ---------------------------------------------------------------------------
# commands

def _generators_json(b) -> dict:
    return {k: v for k, v in b.generators().items() if k != "1"}


def cmd_gens(args):
    b = deformed.deformed_generators(args.gamma)
    rep = deformed.verify_clifford_relations(b)
    out = {"gamma": b.gamma, "omega": b.omega, "generators": _generators_json(b),
           "report": rep.to_dict()}
    return out, rep, f"gens: gamma={b.gamma:g}"


def cmd_spectrum(args):
    p, f = deformed.DeformationParam(args.gamma), spectral.FieldConfig(args.b1, args.b2)
    sysm = spectral.eigensystem(p, f)
    pr = spectral.projectors(sysm)
    rep = spectral.verify_spectral(p, f)
    out = {
        "gamma": p.gamma,
        "omega": p.omega,
        "B": [f.B1, f.B2],
        "E": [sysm.e_plus, sysm.e_minus],
        "theta": [sysm.theta_plus, sysm.theta_minus],
        "spinors": {"psi_plus_gamma": sysm.psi_plus_g, "psi_minus_gamma": sysm.psi_minus_g,
                    "psi_plus_minus_gamma": sysm.psi_plus_mg,
                    "psi_minus_minus_gamma": sysm.psi_minus_mg},
        "projectors": {"pi_plus": pr.pi_plus, "pi_minus": pr.pi_minus},
        "residuals": {c["name"]: c["max_residual"] for c in rep.summarize()},
        "report": rep.to_dict(),
    }
    return out, rep, f"spectrum: E = +-{f.B:.17g}"


def _sweep_config(args) -> SweepConfig:
    b1, b2 = args.b1 or [], args.b2 or []
    if len(b1) != len(b2):
        raise UsageError("--b1 and --b2 must be given the same number of times")
    fields = tuple(zip(b1, b2)) or DEFAULT_FIELDS
    gammas = tuple(args.gamma) if args.gamma else DEFAULT_GAMMAS
    return SweepConfig(gammas=gammas, fields=fields, trials=args.trials, seed=args.seed,
                       tolerances=dict(args.tol))


def cmd_verify(args):
    cfg = _sweep_config(args)
    rep = run_sweep(cfg)
    out = {
        "config": {"gammas": list(cfg.gammas), "fields": [list(f) for f in cfg.fields],
                   "trials": cfg.trials, "seed": cfg.seed,
                   "tolerances": dict(sorted(cfg.tolerances.items()))},
        "report": rep.to_dict(detail=args.detail),
    }
    n_fail = len(rep.failures())
    return out, rep, (f"verify: {len(rep.results)} results, {len(rep.summarize())} checks, "
                      f"{n_fail} failures")


def cmd_ks(args):
    variant = ks.KSVariant.parse(args.variant)
    out = {"variant": variant.value}
    if args.r is not None:
        r = ks.KSQuadruple(*args.r)
    else:
        radius, theta, phi = args.spherical
        r = ks.ks_lift(variant, radius, theta, phi, args.omega1)
        out["spherical"] = [radius, theta, phi]
        out["omega1"] = args.omega1
    x = ks.ks_map(variant, r)
    norm_check = abs(r.norm_sq ** 2 - float(np.dot(x, x)))
    out.update({"r": r.as_array(), "x": x, "norm_check": norm_check})
    rep = VerificationReport("ks")
    rep.check("ks_norm_identity", norm_check / max(1.0, r.norm_sq ** 2), 1e-12)
    if args.spherical is not None:
        target = ks.spherical_point(*args.spherical)
        lift = float(np.abs(x - target).max())
        out["lift_residual"] = lift
        rep.check("ks_spherical_lift", lift / max(1.0, args.spherical[0]), 1e-12)
    return out, rep, f"ks: x = {np.array2string(x, precision=6)}"


def cmd_evolve(args):
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if not args.t >= 0:
        raise UsageError("--t must be non-negative")
    series = tr.evolution_series(args.gamma, args.b1, args.b2, args.psi0, args.t, args.steps)
    out = {"gamma": deformed.DeformationParam(args.gamma).gamma, "B": [args.b1, args.b2],
           "psi0": args.psi0, **series}
    bn = series["biortho_norm"]
    rep = VerificationReport("evolve")
    rep.check("biortho_norm_drift", np.abs(bn - bn[0]).max() / max(abs(bn[0]), 1e-300), 1e-8)
    spread = float(np.ptp(series["conv_norm"]))
    return out, rep, f"evolve: {args.steps} steps, conventional norm spread {spread:.3g}"


def cmd_ideal(args):
    psi = args.psi
    phi = args.phi if args.phi is not None else psi
    P, Q = ideal.embed(psi), ideal.embed(phi)
    rev = ideal.reversion_product(P, Q).c
    conj = ideal.conjugation_product(Q, P).c
    out = {"xi": P.xi, "xi_phi": Q.xi, "reversion_product": rev, "conjugation_product": conj,
           "flip_xi": ideal.flip(P).xi}
    rep = VerificationReport("ideal")
    scale = max(1.0, float(np.linalg.norm(psi) * np.linalg.norm(phi)))
    rep.check("reversion_product", abs(rev - np.vdot(psi, phi)) / scale, 1e-13)
    rep.check("conjugation_product",
              abs(conj - (phi[0] * psi[0].conjugate() + phi[1] * psi[1].conjugate())) / scale, 1e-13)
    return out, rep, f"ideal: xi = {np.array2string(P.xi, precision=6)}"


COMMANDS = {"gens": cmd_gens, "spectrum": cmd_spectrum, "verify": cmd_verify,
            "ks": cmd_ks, "evolve": cmd_evolve, "ideal": cmd_ideal}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out, rep, summary = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 2
    except (ValueError, ArithmeticError) as exc:
        print(f"pauli-biortho {args.command}: error: {exc}", file=sys.stderr)
        return 2

    doc = {"schema": SCHEMA, "command": args.command, "passed": rep.passed, **out}
    text = dumps(doc) + "\n"
    sys.stdout.write(text)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(summary, file=sys.stderr)
    for r in rep.failures():
        print(f"  FAIL {r.name} residual={r.max_residual:.3g} tol={r.tolerance} {r.params}",
              file=sys.stderr)
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())
