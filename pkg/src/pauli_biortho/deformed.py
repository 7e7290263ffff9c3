"""Bi-orthogonal vector pairs and the gamma-deformed Cl3 generators.

The deformed generators are

    e1g = (1/omega) [[-i*gamma, 1], [1, i*gamma]]
    e2g = sigma2
    e3g = (1/omega) [[1, i*gamma], [i*gamma, -1]]

with ``omega = sqrt(1 - gamma**2)``.  They are similarity transforms
``T sigma_m T^-1`` of the Pauli matrices by a Hermitian transform ``T``, which
is what the outer-product route below reconstructs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cl3 import SIGMA0, SIGMA1, SIGMA2, SIGMA3
from .errors import InvalidParameterError, SingularTransformError
from .report import VerificationReport

GAMMA_LIMIT = 1.0 - 1e-9
SINGULAR_DET = 1e-12

# orthonormal seed vectors u_j = (1, (-1)^(j-1)) / sqrt(2)
U_SEED = (np.array([1, 1], dtype=complex) / math.sqrt(2),
          np.array([1, -1], dtype=complex) / math.sqrt(2))

_SIGN = np.array([-1.0, 1.0])  # (-1)^j for j = 1, 2
C1 = np.diag(_SIGN)
C3 = 1.0 - _SIGN[:, None] * C1
C2 = _SIGN[:, None] * C3
COEFF_TABLES = (C1, C2, C3)


@dataclass(frozen=True)
class DeformationParam:
    gamma: float

    def __post_init__(self):
        g = float(self.gamma)
        if not math.isfinite(g) or abs(g) >= GAMMA_LIMIT:
            raise InvalidParameterError(f"gamma must lie in (-1, 1), got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)

    @property
    def omega(self) -> float:
        return math.sqrt((1.0 - self.gamma) * (1.0 + self.gamma))

    def negated(self) -> "DeformationParam":
        return DeformationParam(-self.gamma)


def as_param(p) -> DeformationParam:
    return p if isinstance(p, DeformationParam) else DeformationParam(p)


@dataclass(frozen=True)
class BiorthogonalPair:
    phi1: np.ndarray
    phi2: np.ndarray
    chi1: np.ndarray
    chi2: np.ndarray

    @property
    def phis(self):
        return (self.phi1, self.phi2)

    @property
    def chis(self):
        return (self.chi1, self.chi2)

    def gram(self) -> np.ndarray:
        """Matrix of <phi_j|chi_k>; the identity for a bi-orthogonal system."""
        return np.array([[np.vdot(f, c) for c in self.chis] for f in self.phis])


@dataclass(frozen=True)
class DeformedBasis:
    param: DeformationParam
    e1g: np.ndarray
    e2g: np.ndarray
    e3g: np.ndarray

    @property
    def gamma(self) -> float:
        return self.param.gamma

    @property
    def omega(self) -> float:
        return self.param.omega

    @property
    def e12g(self):
        return self.e1g @ self.e2g

    @property
    def e23g(self):
        return self.e2g @ self.e3g

    @property
    def e31g(self):
        return self.e3g @ self.e1g

    @property
    def e123g(self):
        return self.e1g @ self.e2g @ self.e3g

    @property
    def vectors(self):
        return (self.e1g, self.e2g, self.e3g)

    def generators(self) -> dict:
        """All eight elements ``{1, e1, e2, e3, e12, e23, e31, e123}`` by name."""
        return {"1": SIGMA0.copy(), "e1": self.e1g, "e2": self.e2g, "e3": self.e3g,
                "e12": self.e12g, "e23": self.e23g, "e31": self.e31g, "e123": self.e123g}


def auerbach_transform(theta: float, phi: float, sin_weight: float = 2.0) -> np.ndarray:
    """Hermitian transform ``cos(t/2) 1 + w cos(p/2) sin(t/2) s1 - w sin(p/2) sin(t/2) s2``.

    The default weight ``w = 2`` is the transform as originally written.  Use
    :func:`is_singular` before inverting it: with ``w = 2, phi = pi`` the
    determinant ``cos^2(t/2) - 4 sin^2(t/2)`` vanishes at ``tan(t/2) = 1/2``.
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return (c * SIGMA0
            + sin_weight * math.cos(phi / 2) * s * SIGMA1
            - sin_weight * math.sin(phi / 2) * s * SIGMA2)


def is_singular(t: np.ndarray, tol: float = SINGULAR_DET) -> bool:
    return bool(abs(np.linalg.det(t)) < tol)


def biorthogonal_pair_from_transform(t: np.ndarray, seeds=U_SEED) -> BiorthogonalPair:
    """``phi_j = T v_j`` and ``chi_j = (T^-1)^dagger v_j``; raises if ``T`` is singular."""
    if is_singular(t):
        raise SingularTransformError(f"transform is singular (det = {np.linalg.det(t)})")
    tinv_h = np.linalg.inv(t).conj().T
    v1, v2 = seeds
    return BiorthogonalPair(t @ v1, t @ v2, tinv_h @ v1, tinv_h @ v2)


def generating_transform(p) -> np.ndarray:
    """Unit-weight transform at ``theta = arcsin(gamma)``, ``phi = -pi``.

    This is the member of the family whose similarity action reproduces the
    closed-form deformed generators; its determinant is ``omega > 0``.
    """
    p = as_param(p)
    return auerbach_transform(math.asin(p.gamma), -math.pi, sin_weight=1.0)


def biorthogonal_pair(p) -> BiorthogonalPair:
    return biorthogonal_pair_from_transform(generating_transform(p))


def outer_product_generators(pair: BiorthogonalPair, prefactor: float = 1.0) -> tuple:
    """``prefactor * i^(m+1) * sum_jk c_jk^(m) |phi_j><chi_k|`` for m = 1, 2, 3."""
    out = []
    for m, table in enumerate(COEFF_TABLES, start=1):
        acc = np.zeros((2, 2), dtype=complex)
        for j in range(2):
            for k in range(2):
                if table[j, k]:
                    acc += table[j, k] * np.outer(pair.phis[j], pair.chis[k].conj())
        out.append(prefactor * (1j ** (m + 1)) * acc)
    return tuple(out)


def deformed_generators(p) -> DeformedBasis:
    p = as_param(p)
    g, w = p.gamma, p.omega
    e1 = np.array([[-1j * g, 1], [1, 1j * g]], dtype=complex) / w
    e3 = np.array([[1, 1j * g], [1j * g, -1]], dtype=complex) / w
    return DeformedBasis(p, e1, SIGMA2.copy(), e3)


def verify_clifford_relations(b: DeformedBasis, tol: float = 1e-12) -> VerificationReport:
    rep = VerificationReport("clifford relations")
    params = {"gamma": b.gamma}
    gens = b.vectors
    for i, e in enumerate(gens, start=1):
        rep.check(f"square_e{i}", np.abs(e @ e - SIGMA0).max(), tol, params)
    for i in range(3):
        for j in range(i + 1, 3):
            anti = gens[i] @ gens[j] + gens[j] @ gens[i]
            rep.check(f"anticommutator_e{i + 1}e{j + 1}", np.abs(anti).max(), tol, params)
    return rep


def cross_check_constructions(p, tol: float = 1e-13) -> VerificationReport:
    """Compare the closed forms with the outer-product construction.

    The unit-weight route is checked against ``tol``.  The route with the
    originally written transform (weight 2, ``phi = pi``, prefactor
    ``i^(m+1)/2``) is recorded as ``info``: it does not reproduce the closed
    forms and is singular at ``gamma = 0.8``.
    """
    p = as_param(p)
    closed = deformed_generators(p).vectors
    rep = VerificationReport("generator constructions")
    params = {"gamma": p.gamma}

    pair = biorthogonal_pair(p)
    rep.check("biorthogonality", np.abs(pair.gram() - np.eye(2)).max(), tol, params)
    built = outer_product_generators(pair)
    for m, (a, c) in enumerate(zip(built, closed), start=1):
        rep.check(f"outer_product_e{m}", np.abs(a - c).max(), tol, params)

    t = auerbach_transform(math.asin(p.gamma), math.pi)
    if is_singular(t):
        rep.info("original_transform_singular", abs(np.linalg.det(t)), params,
                 note="written transform is not invertible at this gamma")
    else:
        alt = outer_product_generators(biorthogonal_pair_from_transform(t), prefactor=0.5)
        dev = max(np.abs(a - c).max() for a, c in zip(alt, closed))
        rep.info("original_transform_deviation", dev, params,
                 note="written transform and prefactor vs closed forms")
    return rep
