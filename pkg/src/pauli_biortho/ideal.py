"""Spinors as elements of the minimal left ideal ``S = M(2, C) g0`` of Cl3.

An ideal spinor is the matrix ``[[psi1, 0], [psi2, 0]]`` with real
coordinates ``xi`` such that ``psi1 = xi0 + i xi3`` and
``psi2 = -xi2 + i xi1``.  Inner products land in the ring
``R = g0 Cl3 g0 = {[[c, 0], [0, 0]]}``, which is a copy of the complex numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cl3
from .cl3 import Multivector
from .deformed import DeformedBasis
from .errors import DegenerateError, GammaMismatchError
from .report import VerificationReport
from .time_reversal import TimeReversedBasis, apply_T


@dataclass(frozen=True)
class IdealSpinor:
    xi0: float
    xi1: float
    xi2: float
    xi3: float

    @property
    def xi(self) -> np.ndarray:
        return np.array([self.xi0, self.xi1, self.xi2, self.xi3])

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([complex(self.xi0, self.xi3), complex(-self.xi2, self.xi1)])

    @property
    def matrix(self) -> np.ndarray:
        p1, p2 = self.amplitudes
        return np.array([[p1, 0], [p2, 0]], dtype=complex)

    def multivector(self) -> Multivector:
        return cl3.from_matrix(self.matrix)

    @classmethod
    def from_matrix(cls, m, tol: float = 0.0) -> "IdealSpinor":
        """Read an element of ``S``; the second column must vanish to within ``tol``."""
        m = np.asarray(m, dtype=complex)
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m[:, 1]).max() > tol * scale:
            raise ValueError("matrix is not in the left ideal: second column is non-zero")
        return embed(m[:, 0])

    def __neg__(self) -> "IdealSpinor":
        return IdealSpinor(-self.xi0, -self.xi1, -self.xi2, -self.xi3)


def embed(psi) -> IdealSpinor:
    p1, p2 = np.asarray(psi, dtype=complex)
    return IdealSpinor(float(p1.real), float(p2.imag), float(-p2.real), float(p1.imag))


def extract(Psi: IdealSpinor) -> np.ndarray:
    return Psi.amplitudes


def ideal_basis(b: DeformedBasis, tb: TimeReversedBasis) -> tuple:
    """Build ``g0..g3`` from direct and time-reversed deformed generators.

    Their closed forms are ``g0 = [[1,0],[0,0]]``, ``g1 = [[0,0],[i,0]]``,
    ``g2 = [[0,0],[-1,0]]`` and ``g3 = [[i,0],[0,0]]``.
    """
    if b.gamma != tb.gamma:
        raise GammaMismatchError(f"gamma {b.gamma} != {tb.gamma}")
    q = b.omega / 4
    e123 = cl3.E123.to_matrix()
    g0 = 0.5 * cl3.SIGMA0 + q * (b.e3g - tb.e3)
    g1 = 0.5 * b.e2g + q * (b.e23g + tb.e23)
    g2 = 0.5 * b.e31g - q * (b.e1g - tb.e1)
    g3 = 0.5 * e123 + q * (b.e12g + tb.e12)
    return g0, g1, g2, g3


def left_action(u: Multivector, Psi: IdealSpinor) -> IdealSpinor:
    return IdealSpinor.from_matrix(u.to_matrix() @ Psi.matrix)


@dataclass(frozen=True)
class RingElement:
    """Element ``[[c, 0], [0, 0]]`` of the division ring ``g0 Cl3 g0``."""

    c: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.c, 0], [0, 0]], dtype=complex)

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-13) -> "RingElement":
        m = np.asarray(m, dtype=complex)
        scale = max(1.0, float(np.abs(m).max()))
        if max(abs(m[0, 1]), abs(m[1, 0]), abs(m[1, 1])) > tol * scale:
            raise ValueError("matrix is not in g0 Cl3 g0")
        return cls(complex(m[0, 0]))

    def __mul__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.c * other.c)

    def inverse(self, scale: float = 1.0) -> "RingElement":
        if abs(self.c) <= 1e-14 * scale:
            raise DegenerateError("zero has no inverse in the ring")
        return RingElement(1.0 / self.c)


def reversion_product(Psi: IdealSpinor, Phi: IdealSpinor) -> RingElement:
    """``reversion(Psi) Phi``; equals the conventional ``<psi|phi>``."""
    prod = cl3.reversion(Psi.multivector()) * Phi.multivector()
    return RingElement.from_matrix(prod.to_matrix())


def conjugation_product(Phi: IdealSpinor, Psi: IdealSpinor) -> RingElement:
    """``bar(bar(Phi) hat(Psi))``; equals ``phi1 conj(psi1) + phi2 conj(psi2)``."""
    inner = cl3.clifford_conjugation(Phi.multivector()) * cl3.grade_inversion(Psi.multivector())
    return RingElement.from_matrix(cl3.clifford_conjugation(inner).to_matrix())


def double_bracket(phi, psi) -> complex:
    """``(-phi2, phi1) . T psi``, the pairing that the conjugation product realizes."""
    phi = np.asarray(phi, dtype=complex)
    return complex(np.dot(np.array([-phi[1], phi[0]]), apply_T(psi)))


def flip(Psi: IdealSpinor) -> IdealSpinor:
    """Restriction of the basis flip to ``S``; the time reverse of ``Psi``."""
    return IdealSpinor.from_matrix(cl3.basis_flip_matrix(Psi.matrix), tol=1e-15)


def unitary_invariance_check(s: Multivector, Psi: IdealSpinor, Phi: IdealSpinor,
                             tol: float = 1e-12) -> VerificationReport:
    """Check that ``Psi -> s Psi`` preserves the reversion product when ``rev(s) s = 1``."""
    rep = VerificationReport("unitary invariance")
    unit = np.abs((cl3.reversion(s) * s - cl3.E0).coeffs).max()
    if rep.check("precondition_rev_s_s_is_one", unit, tol).status != "pass":
        rep.skip("reversion_product_invariance", note="precondition not met")
        rep.skip("matrix_unitary", note="precondition not met")
        return rep
    before = reversion_product(Psi, Phi).c
    after = reversion_product(left_action(s, Psi), left_action(s, Phi)).c
    scale = max(1.0, abs(before))
    rep.check("reversion_product_invariance", abs(after - before) / scale, tol)
    m = s.to_matrix()
    rep.check("matrix_unitary", np.abs(m.conj().T @ m - cl3.SIGMA0).max(), tol)
    return rep
