"""Spinor operator and the two Kustaanheimo-Stiefel (KS) maps.

The spinor operator built from even-grade coordinates is

    Xi = [[X0 + i X12,   X31 + i X23],
          [-X31 + i X23, X0 - i X12]]  =  [[Xi1, -conj(Xi2)], [Xi2, conj(Xi1)]]

and its sandwich products with ``e3`` and ``e1`` give quadratic maps
R^4 -> R^3 with ``|x| = r1^2 + r2^2 + r3^2 + r4^2``, using
``Xi1 = r1 + i r2`` and ``Xi2 = r3 + i r4``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import cl3
from .cl3 import Multivector
from .deformed import DeformedBasis
from .errors import DegenerateError, GammaMismatchError, InvalidParameterError
from .time_reversal import TimeReversedBasis, apply_T


class KSVariant(enum.Enum):
    MINUS = 1
    PLUS = 2

    @classmethod
    def parse(cls, value) -> "KSVariant":
        if isinstance(value, cls):
            return value
        return cls(int(value))


@dataclass(frozen=True)
class SpinorOperatorCoords:
    Xi0: float
    Xi12: float
    Xi23: float
    Xi31: float

    def quadruple(self) -> "KSQuadruple":
        return KSQuadruple(self.Xi0, self.Xi12, -self.Xi31, self.Xi23)

    @classmethod
    def from_quadruple(cls, r: "KSQuadruple") -> "SpinorOperatorCoords":
        return cls(r.r1, r.r2, r.r4, -r.r3)


@dataclass(frozen=True)
class KSQuadruple:
    r1: float
    r2: float
    r3: float
    r4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3, self.r4])

    @property
    def norm_sq(self) -> float:
        return self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2 + self.r4 ** 2


def _as_quadruple(r) -> KSQuadruple:
    return r if isinstance(r, KSQuadruple) else KSQuadruple(*map(float, r))


def spinor_operator(c: SpinorOperatorCoords, b: DeformedBasis, tb: TimeReversedBasis) -> np.ndarray:
    """Average of the direct and time-reversed even-grade combinations.

    The gamma dependence of the two halves cancels.
    """
    if b.gamma != tb.gamma:
        raise GammaMismatchError(f"gamma {b.gamma} != {tb.gamma}")
    w = b.omega
    direct = (c.Xi0 * cl3.SIGMA0 + w * c.Xi12 * b.e12g + w * c.Xi23 * b.e23g
              + c.Xi31 * b.e31g)
    reversed_ = (c.Xi0 * tb.one + w * c.Xi12 * tb.e12 + w * c.Xi23 * tb.e23
                 + c.Xi31 * tb.e31)
    return 0.5 * (direct + reversed_)


def spinor_operator_closed_form(c: SpinorOperatorCoords) -> np.ndarray:
    return np.array([[c.Xi0 + 1j * c.Xi12, c.Xi31 + 1j * c.Xi23],
                     [-c.Xi31 + 1j * c.Xi23, c.Xi0 - 1j * c.Xi12]])


def split_columns(Xi) -> tuple:
    """``Xi = X + hat(X)`` with ``X`` the first column embedded in the left ideal."""
    Xi = np.asarray(Xi, dtype=complex)
    col = np.zeros((2, 2), dtype=complex)
    col[:, 0] = Xi[:, 0]
    return col, cl3.grade_inversion_matrix(col)


def column_flip_residual(Xi) -> float:
    """Distance between the second column and the time reverse of the first."""
    Xi = np.asarray(Xi, dtype=complex)
    return float(np.abs(Xi[:, 1] - apply_T(Xi[:, 0])).max())


def ks_map(variant, r) -> np.ndarray:
    variant, r = KSVariant.parse(variant), _as_quadruple(r)
    r1, r2, r3, r4 = r.r1, r.r2, r.r3, r.r4
    if variant is KSVariant.MINUS:
        return np.array([2 * (r2 * r3 - r1 * r4), 2 * (r1 * r3 + r2 * r4),
                         r1 ** 2 + r2 ** 2 - r3 ** 2 - r4 ** 2])
    return np.array([2 * (r1 * r2 + r3 * r4), 2 * (r1 * r3 - r2 * r4),
                     r1 ** 2 - r2 ** 2 - r3 ** 2 + r4 ** 2])


def ks_lift(variant, r: float, theta: float, phi: float, omega1: float) -> KSQuadruple:
    """Quadruple mapping to the point with spherical coordinates ``(r, theta, phi)``.

    ``omega1`` is a free gauge angle; the second angle is ``phi - omega1``
    (MINUS) or ``omega1 - phi`` (PLUS).
    """
    variant = KSVariant.parse(variant)
    if not r >= 0:
        raise InvalidParameterError(f"radius must be non-negative, got {r!r}")
    sr = math.sqrt(r)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if variant is KSVariant.MINUS:
        w2 = phi - omega1
        return KSQuadruple(sr * c * math.sin(omega1), sr * c * math.cos(omega1),
                           sr * s * math.cos(w2), sr * s * math.sin(w2))
    w2 = omega1 - phi
    return KSQuadruple(sr * c * math.sin(omega1), sr * s * math.sin(w2),
                       sr * s * math.cos(w2), sr * c * math.cos(omega1))


def spherical_point(r: float, theta: float, phi: float) -> np.ndarray:
    return r * np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi),
                         math.cos(theta)])


def upsilon(variant, Xi, b: DeformedBasis, tb: TimeReversedBasis) -> Multivector:
    """Sandwich ``(omega/2) Xi (e3g -+ e3g_reversed) rev(Xi)`` as a multivector.

    MINUS uses the difference and is a pure vector; PLUS uses the sum, is a
    pure bivector proportional to gamma and degenerates at ``gamma = 0``.
    """
    variant = KSVariant.parse(variant)
    if b.gamma != tb.gamma:
        raise GammaMismatchError(f"gamma {b.gamma} != {tb.gamma}")
    Xi = np.asarray(Xi, dtype=complex)
    if variant is KSVariant.MINUS:
        core = b.e3g - tb.e3
    else:
        if abs(b.gamma) <= 1e-9:
            raise DegenerateError("PLUS variant vanishes identically at gamma = 0")
        core = b.e3g + tb.e3
    return cl3.from_matrix(0.5 * b.omega * Xi @ core @ cl3.reversion_matrix(Xi))


def ks_from_upsilon(variant, u: Multivector, gamma: float = 1.0) -> np.ndarray:
    """Read ``(x1, x2, x3)`` off a sandwich product.

    MINUS: vector coefficients ``c`` give ``(-c2, c1, c3)``.  PLUS: the
    bivector divided by ``gamma * e123`` gives a vector ``d`` and
    ``(-d2, -d3, d1)``.
    """
    variant = KSVariant.parse(variant)
    c = u.coeffs
    if variant is KSVariant.MINUS:
        return np.array([-c[2], c[1], c[3]])
    d = (u * (-1.0 * cl3.E123)).coeffs / gamma
    return np.array([-d[2], -d[3], d[1]])
