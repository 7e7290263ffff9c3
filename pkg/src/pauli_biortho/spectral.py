"""Eigensystem of ``H_gamma = e1g*B1 + e2g*B2`` and its bi-orthogonal structure.

``H_gamma`` and its adjoint ``H_{-gamma}`` share the spectrum ``+-B``.  Their
eigen-spinors are

    psi_+^{g}  = (exp(-i t+), 1) / sqrt(2)      psi_+^{-g} = (1, exp(-i t-)) / sqrt(2)
    psi_-^{g}  = (-exp(i t-), 1) / sqrt(2)      psi_-^{-g} = (-1, exp(i t+)) / sqrt(2)

with the angles from :func:`theta_pm`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cl3
from .cl3 import SIGMA0
from .deformed import DeformationParam, as_param, deformed_generators
from .errors import DegenerateError, InvalidParameterError
from .report import VerificationReport

SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class FieldConfig:
    B1: float
    B2: float

    def __post_init__(self):
        b1, b2 = float(self.B1), float(self.B2)
        if not (math.isfinite(b1) and math.isfinite(b2)):
            raise InvalidParameterError("field components must be finite")
        if math.hypot(b1, b2) == 0.0:
            raise InvalidParameterError("field magnitude must be positive")
        object.__setattr__(self, "B1", b1)
        object.__setattr__(self, "B2", b2)

    @property
    def B(self) -> float:
        return math.hypot(self.B1, self.B2)

    def negated(self) -> "FieldConfig":
        return FieldConfig(-self.B1, -self.B2)


def as_field(f) -> FieldConfig:
    return f if isinstance(f, FieldConfig) else FieldConfig(*f)


def build_hamiltonian(p, f) -> np.ndarray:
    p, f = as_param(p), as_field(f)
    b = deformed_generators(p)
    return f.B1 * b.e1g + f.B2 * b.e2g


def theta_pm(p, f) -> tuple[float, float]:
    """Angles ``(theta_plus, theta_minus)`` parameterizing the eigen-spinors.

    ``theta_plus = atan2(g B1^2 + w^2 B B2, w B B1 - g w B1 B2)`` and
    ``theta_minus = atan2(g B1^2 - w^2 B B2, w B B1 + g w B1 B2)``.  The
    quadrant-aware branch is the one for which the spinor formulas are exact
    eigenvectors; the tangents are what the angle identities constrain.
    """
    p, f = as_param(p), as_field(f)
    g, w = p.gamma, p.omega
    b1, b2, b = f.B1, f.B2, f.B
    terms = (
        (g * b1 * b1 + w * w * b * b2, w * b * b1 - g * w * b1 * b2),
        (g * b1 * b1 - w * w * b * b2, w * b * b1 + g * w * b1 * b2),
    )
    floor = 1e-15 * b * b
    for num, den in terms:
        if abs(num) < floor and abs(den) < floor:
            raise DegenerateError("angle undefined: numerator and denominator vanish")
    return math.atan2(*terms[0]), math.atan2(*terms[1])


def principal_angle(theta: float) -> float:
    """Reduce an angle modulo pi into [-pi/2, pi/2): the value of arctan(tan(theta))."""
    return (theta + math.pi / 2) % math.pi - math.pi / 2


def angle_distance(a: float, b: float, period: float = 2 * math.pi) -> float:
    d = (a - b) % period
    return min(d, period - d)


@dataclass(frozen=True)
class BiorthoEigensystem:
    param: DeformationParam
    field: FieldConfig
    e_plus: float
    e_minus: float
    psi_plus_g: np.ndarray
    psi_minus_g: np.ndarray
    psi_plus_mg: np.ndarray
    psi_minus_mg: np.ndarray
    theta_plus: float
    theta_minus: float

    @property
    def hamiltonian(self) -> np.ndarray:
        return build_hamiltonian(self.param, self.field)

    @property
    def right(self):
        return (self.psi_plus_g, self.psi_minus_g)

    @property
    def left(self):
        return (self.psi_plus_mg, self.psi_minus_mg)

    def gram(self) -> np.ndarray:
        """``G[i, j] = <psi_i^{-g}|psi_j^{g}>``; diagonal by bi-orthogonality."""
        return np.array([[np.vdot(l, r) for r in self.right] for l in self.left])

    def expand(self, psi) -> np.ndarray:
        """Coefficients ``(alpha_+, alpha_-)`` of ``psi`` in the basis ``psi_+-^g``."""
        psi = np.asarray(psi, dtype=complex)
        return np.array([np.vdot(l, psi) / np.vdot(l, r) for l, r in zip(self.left, self.right)])

    def associated_state(self, psi) -> np.ndarray:
        a = self.expand(psi)
        return a[0] * self.psi_plus_mg + a[1] * self.psi_minus_mg

    def biortho_norm(self, psi) -> complex:
        """``<psi_check|psi>`` with the associated state built from the same coefficients."""
        psi = np.asarray(psi, dtype=complex)
        return complex(np.vdot(self.associated_state(psi), psi))

    def biortho_norms(self, states) -> np.ndarray:
        """:meth:`biortho_norm` for each row of ``states``."""
        states = np.asarray(states, dtype=complex)
        L = np.array(self.left)
        d = np.array([np.vdot(l, r) for l, r in zip(self.left, self.right)])
        assoc = (states @ L.conj().T / d) @ L
        return np.einsum("ij,ij->i", assoc.conj(), states)

    def biortho_inner(self, phi, psi) -> complex:
        """Pairing ``sum_s conj(beta_s) alpha_s`` of the expansion coefficients."""
        return complex(np.vdot(self.expand(phi), self.expand(psi)))


def eigensystem(p, f) -> BiorthoEigensystem:
    p, f = as_param(p), as_field(f)
    tp, tm = theta_pm(p, f)
    return BiorthoEigensystem(
        param=p,
        field=f,
        e_plus=f.B,
        e_minus=-f.B,
        psi_plus_g=SQRT1_2 * np.array([np.exp(-1j * tp), 1.0]),
        psi_minus_g=SQRT1_2 * np.array([-np.exp(1j * tm), 1.0]),
        psi_plus_mg=SQRT1_2 * np.array([1.0, np.exp(-1j * tm)]),
        psi_minus_mg=SQRT1_2 * np.array([-1.0, np.exp(1j * tp)]),
        theta_plus=tp,
        theta_minus=tm,
    )


@dataclass(frozen=True)
class ProjectorPair:
    pi_plus: np.ndarray
    pi_minus: np.ndarray


def projectors(sys: BiorthoEigensystem, tol: float = 1e-12) -> ProjectorPair:
    out = []
    for r, l in zip(sys.right, sys.left):
        norm = np.vdot(l, r)
        if abs(norm) < tol:
            raise DegenerateError("eigen-spinor is self-orthogonal; projector undefined")
        out.append(np.outer(r, l.conj()) / norm)
    return ProjectorPair(*out)


def projectors_closed_form(sys: BiorthoEigensystem) -> ProjectorPair:
    ep, em = np.exp(-1j * sys.theta_plus), np.exp(1j * sys.theta_minus)
    z = 1.0 / (ep + em)
    pp = z * np.array([[ep, em * ep], [1.0, em]])
    pm = z * np.array([[em, -em * ep], [-1.0, ep]])
    return ProjectorPair(pp, pm)


@dataclass(frozen=True)
class DecomposedHamiltonian:
    H: np.ndarray
    H0: np.ndarray
    Gamma: np.ndarray


def decompose(h) -> DecomposedHamiltonian:
    """Split ``H = H0 + i*Gamma`` into Hermitian parts."""
    h = np.asarray(h, dtype=complex)
    hd = h.conj().T
    return DecomposedHamiltonian(h, (h + hd) / 2, (h - hd) / 2j)


def _paired_eig(h: np.ndarray, target=None):
    vals, vecs = np.linalg.eig(h)
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    if target is not None:
        # order so that vals[n] ~ target[n]
        if abs(vals[0] - target[0]) + abs(vals[1] - target[1]) > \
                abs(vals[1] - target[0]) + abs(vals[0] - target[1]):
            vals, vecs = vals[::-1], vecs[:, ::-1]
    return vals, [vecs[:, n] for n in range(len(vals))]


def verify_brody_relations(d: DecomposedHamiltonian, tol: float = 1e-10,
                           skip_tol: float = 1e-10) -> VerificationReport:
    """Check the eigenvector relations for ``H = H0 + i Gamma`` and its adjoint.

    For eigenpairs ``(lam_n, u_n)`` of ``H`` and ``(mu_n, v_n)`` of ``H^dagger``,
    ordered so that ``mu_n = conj(lam_n)``:

        (conj(lam_m) + lam_n) <u_m|u_n> = 2 <u_m|H0|u_n>         ("u_sum")
        (conj(lam_m) - lam_n) <u_m|u_n> = -2i <u_m|Gamma|u_n>    ("u_diff")

    likewise for ``v`` with ``mu``, where the anti-Hermitian part of
    ``H^dagger`` is ``-Gamma``, and ``<u_m|v_n> = 0`` for ``m != n``.

    The overlap is solved for and compared whenever its coefficient is
    non-zero.  When the coefficient vanishes (below ``skip_tol`` relative to
    the spectral scale) and ``m == n`` the relation reduces to the right-hand
    side vanishing, which is checked instead.  For ``m != n`` a vanishing
    coefficient means the relation carries no information about the
    overlap; that case is recorded as skipped.
    """
    h = np.asarray(d.H, dtype=complex)
    lam, u = _paired_eig(h)
    scale = max(1.0, float(np.abs(lam).max()))
    if abs(lam[0] - lam[1]) < 1e-10 * scale:
        raise DegenerateError("spectrum is degenerate")
    mu, v = _paired_eig(h.conj().T, target=lam.conj())
    rep = VerificationReport("eigenvector relations")
    n_states = len(lam)

    for label, ev, vec, sign in (("u", lam, u, 1.0), ("v", mu, v, -1.0)):
        # H^dagger = H0 - i Gamma, so the Gamma relation flips sign for v
        for m in range(n_states):
            for n in range(n_states):
                params = {"m": m, "n": n}
                overlap = np.vdot(vec[m], vec[n])
                relations = (
                    ("sum", ev[m].conjugate() + ev[n], 2.0 * np.vdot(vec[m], d.H0 @ vec[n])),
                    ("diff", ev[m].conjugate() - ev[n],
                     sign * -2j * np.vdot(vec[m], d.Gamma @ vec[n])),
                )
                for kind, coeff, rhs in relations:
                    name = f"{label}_{kind}"
                    if abs(coeff) >= skip_tol * scale:
                        rep.check(name, abs(overlap - rhs / coeff), tol, params)
                    elif m == n:
                        rep.check(name, abs(rhs) / scale, tol, params,
                                  note="coefficient vanishes; right-hand side checked")
                    else:
                        rep.skip(name, params, note="coefficient of the overlap vanishes")
    for m in range(n_states):
        for n in range(n_states):
            if m != n:
                rep.check("cross", abs(np.vdot(u[m], v[n])), tol, {"m": m, "n": n})
    return rep


def biortho_expectation(F, psi, sys: BiorthoEigensystem, tol: float = 1e-12) -> complex:
    """``<psi_check|F|psi> / <psi_check|psi>`` using the associated state."""
    psi = np.asarray(psi, dtype=complex)
    chk = sys.associated_state(psi)
    den = np.vdot(chk, psi)
    if abs(den) < tol:
        raise DegenerateError("bi-orthogonal norm vanishes; expectation undefined")
    return complex(np.vdot(chk, np.asarray(F, dtype=complex) @ psi) / den)


def theta_identity_residuals(p, f) -> dict:
    """Residuals of the angle identities, in radians.

    ``same_sign``   theta_s(-g, -B) = theta_s(g, B)           (tangent level)
    ``field_flip``  theta_s(g, -B) + theta_-s(g, B) = 0        (tangent level)
    ``gamma_flip``  theta_s(-g, B) + theta_-s(g, B) = 0        (mod 2 pi)

    Tangent-level identities are compared as principal values, since the
    quadrant-aware angles of the first two differ by exactly pi.
    """
    p, f = as_param(p), as_field(f)
    tp, tm = theta_pm(p, f)
    mp, mm = theta_pm(p.negated(), f.negated())
    fp, fm = theta_pm(p, f.negated())
    gp_, gm = theta_pm(p.negated(), f)
    pv = principal_angle
    return {
        "same_sign": max(angle_distance(pv(mp), pv(tp), math.pi),
                         angle_distance(pv(mm), pv(tm), math.pi)),
        "field_flip": max(angle_distance(pv(fp) + pv(tm), 0.0, math.pi),
                          angle_distance(pv(fm) + pv(tp), 0.0, math.pi)),
        "gamma_flip": max(angle_distance(gp_ + tm, 0.0), angle_distance(gm + tp, 0.0)),
    }


def _grade_inversion(m: np.ndarray) -> np.ndarray:
    return cl3.grade_inversion(cl3.from_matrix(m)).to_matrix()


def verify_spectral(p, f, tol: float = 1e-12) -> VerificationReport:
    """Every spectral invariant at a single ``(gamma, B)`` point."""
    p, f = as_param(p), as_field(f)
    params = {"gamma": p.gamma, "B1": f.B1, "B2": f.B2}
    b = f.B
    rep = VerificationReport("spectral")
    sysm = eigensystem(p, f)
    h = sysm.hamiltonian
    hm = build_hamiltonian(p.negated(), f)

    rep.check("adjoint_identity", np.abs(h.conj().T - hm).max(), 1e-13 * max(1.0, b), params)
    rep.check("trace_det", max(abs(np.trace(h)), abs(np.linalg.det(h) + b * b)) / b ** 2,
              tol, params)
    spec_h = np.sort(np.linalg.eigvals(h).real)
    spec_hd = np.sort(np.linalg.eigvals(h.conj().T).real)
    rep.check("isospectral", max(np.abs(spec_h - [-b, b]).max(),
                                 np.abs(spec_hd - [-b, b]).max()), tol * b, params)

    res = max(np.linalg.norm(h @ sysm.psi_plus_g - b * sysm.psi_plus_g),
              np.linalg.norm(h @ sysm.psi_minus_g + b * sysm.psi_minus_g),
              np.linalg.norm(hm @ sysm.psi_plus_mg - b * sysm.psi_plus_mg),
              np.linalg.norm(hm @ sysm.psi_minus_mg + b * sysm.psi_minus_mg))
    rep.check("eigen_residual", res, tol * b, params)

    g = sysm.gram()
    rep.check("gram_offdiag", max(abs(g[0, 1]), abs(g[1, 0])), tol, params)

    pr = projectors(sysm)
    pp, pm = pr.pi_plus, pr.pi_minus
    rep.check("projector_sum", np.abs(pp + pm - SIGMA0).max(), tol, params)
    rep.check("projector_product", max(np.abs(pp @ pm).max(), np.abs(pm @ pp).max()),
              tol, params)
    rep.check("projector_idempotent", max(np.abs(pp @ pp - pp).max(),
                                          np.abs(pm @ pm - pm).max()), tol, params)
    rep.check("spectral_representation", np.abs(h - b * pp + b * pm).max(), tol * b, params)
    cf = projectors_closed_form(sysm)
    rep.check("projector_closed_form", max(np.abs(cf.pi_plus - pp).max(),
                                           np.abs(cf.pi_minus - pm).max()), tol, params)
    if abs(p.gamma * f.B1) > 1e-9 * b:
        # H is normal when gamma = 0 or B1 = 0
        defect = np.abs(pp - pp.conj().T).max()
        rep.condition("projector_non_hermitian", defect > 1e-12, defect, params,
                      note="value is the Hermiticity defect")

    prm = projectors(eigensystem(p.negated(), f))
    rep.check("projector_grade_duality",
              max(np.abs(_grade_inversion(pp) - prm.pi_minus).max(),
                  np.abs(_grade_inversion(pm) - prm.pi_plus).max()), tol, params)

    for name, value in theta_identity_residuals(p, f).items():
        rep.check(f"theta_{name}", value, tol, params)
    return rep
