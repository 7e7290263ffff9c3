"""Fermionic time reversal ``T = -i sigma2 K`` and Schroedinger evolution.

``K`` is complex conjugation, so ``T (psi1, psi2) = (-conj(psi2), conj(psi1))``
and ``T^2 = -1``.  Conjugating a matrix by ``T`` gives the linear matrix
``sigma2 conj(M) sigma2``; in particular every Pauli matrix changes sign and
``T^-1 H_gamma T = -H_{-gamma} = -H_gamma^dagger``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .cl3 import SIGMA0
from .deformed import DeformedBasis
from .errors import PairingViolationError
from .spectral import BiorthoEigensystem, build_hamiltonian, eigensystem

E13_MATRIX = np.array([[0, -1], [1, 0]], dtype=complex)  # = -i sigma2


@dataclass(frozen=True)
class AntiLinearOp:
    """Antilinear operator ``psi -> M conj(psi)``."""

    M: np.ndarray

    def __call__(self, psi) -> np.ndarray:
        return self.M @ np.conj(np.asarray(psi, dtype=complex))

    def square(self) -> np.ndarray:
        """The product of the operator with itself, which is linear: ``M conj(M)``."""
        return self.M @ self.M.conj()

    def inverse(self) -> "AntiLinearOp":
        return AntiLinearOp(np.linalg.inv(self.M).conj())

    def conjugate(self, A) -> np.ndarray:
        """Linear matrix of ``op^-1 A op``: ``conj(M^-1 A M)``."""
        A = np.asarray(A, dtype=complex)
        return (np.linalg.inv(self.M) @ A @ self.M).conj()

    def compose(self, other: "AntiLinearOp") -> np.ndarray:
        """Linear matrix of ``self . other``."""
        return self.M @ other.M.conj()


TIME_REVERSAL = AntiLinearOp(E13_MATRIX)


def apply_T(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.array([-psi[1].conjugate(), psi[0].conjugate()])


def conjugate_by_T(M) -> np.ndarray:
    return TIME_REVERSAL.conjugate(M)


@dataclass(frozen=True)
class TimeReversedBasis:
    gamma: float
    one: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e12: np.ndarray
    e23: np.ndarray
    e31: np.ndarray
    e123: np.ndarray

    def generators(self) -> dict:
        return {"1": self.one, "e1": self.e1, "e2": self.e2, "e3": self.e3,
                "e12": self.e12, "e23": self.e23, "e31": self.e31, "e123": self.e123}


def time_reversed_generators(b: DeformedBasis) -> TimeReversedBasis:
    g = b.generators()
    return TimeReversedBasis(b.gamma, *(conjugate_by_T(g[k]) for k in
                                        ("1", "e1", "e2", "e3", "e12", "e23", "e31", "e123")))


def time_reversed_closed_forms(b: DeformedBasis) -> TimeReversedBasis:
    """``{1, -s1~, -s2~, -s3~, i s3~, i s1~, i s2~, -i}`` with ``~`` the reversion (adjoint)."""
    r1, r2, r3 = (e.conj().T for e in b.vectors)
    return TimeReversedBasis(b.gamma, SIGMA0.copy(), -r1, -r2, -r3,
                             1j * r3, 1j * r1, 1j * r2, -1j * SIGMA0)


# ---------------------------------------------------------------------------
# Kramers-type pairing

@dataclass(frozen=True)
class BranchPairing:
    sign: int
    n: int
    ratio: complex
    deviation: float
    colinearity: float
    orthogonality: float
    energy_state: float
    energy_reversed: float
    energy_cross: float


@dataclass(frozen=True)
class PairingReport:
    branches: tuple

    @property
    def max_deviation(self) -> float:
        return max(b.deviation for b in self.branches)


def _eigenvalue_of(h: np.ndarray, x: np.ndarray) -> complex:
    return complex(np.vdot(x, h @ x) / np.vdot(x, x))


def kramers_pairing(sys: BiorthoEigensystem, tol: float = 1e-10) -> PairingReport:
    """Compare ``T psi_s^g`` with the bi-orthogonal partner ``psi_{-s}^{-g}``.

    For each branch ``s`` the report holds the ratio ``r`` with
    ``T psi_s = r psi_{-s}^{-g}``, ``n`` from ``r = (-1)^n``, the deviation
    ``|r - (-1)^n|``, the energy of ``psi_s`` under ``H``, the energy of
    ``T psi_s`` under ``H^dagger`` and the energy of ``T psi_{-s}`` under
    ``H^dagger``.
    """
    h = sys.hamiltonian
    hd = h.conj().T
    states = {1: sys.psi_plus_g, -1: sys.psi_minus_g}
    partners = {1: sys.psi_minus_mg, -1: sys.psi_plus_mg}
    out = []
    for s in (1, -1):
        rev = apply_T(states[s])
        partner = partners[s]
        r = complex(np.vdot(partner, rev) / np.vdot(partner, partner))
        if abs(abs(r) - 1.0) > tol:
            raise PairingViolationError(f"ratio {r} is not unimodular")
        n = 0 if r.real >= 0 else 1
        out.append(BranchPairing(
            sign=s,
            n=n,
            ratio=r,
            deviation=abs(r - (-1) ** n),
            colinearity=float(np.linalg.norm(rev - r * partner)),
            orthogonality=abs(np.vdot(rev, states[s])),
            energy_state=_eigenvalue_of(h, states[s]).real,
            energy_reversed=_eigenvalue_of(hd, rev).real,
            energy_cross=_eigenvalue_of(hd, apply_T(states[-s])).real,
        ))
    return PairingReport(tuple(out))


# ---------------------------------------------------------------------------
# evolution

def _sinc(z: complex) -> complex:
    if abs(z) < 1e-4:
        z2 = z * z
        return 1 - z2 / 6 + z2 * z2 / 120
    return cmath.sin(z) / z


def propagator(H, t: float) -> np.ndarray:
    """Exact ``exp(-i H t)`` for a 2x2 matrix from its trace and determinant."""
    H = np.asarray(H, dtype=complex)
    c = np.trace(H) / 2
    K = H - c * SIGMA0
    root = cmath.sqrt(-np.linalg.det(K))  # K @ K = -det(K) * 1
    z = root * t
    return cmath.exp(-1j * c * t) * (cmath.cos(z) * SIGMA0 - 1j * t * _sinc(z) * K)


def evolve(H, psi0, t: float) -> np.ndarray:
    return propagator(H, t) @ np.asarray(psi0, dtype=complex)


def rk4_evolve(H, psi0, t: float, steps: int) -> np.ndarray:
    """Fixed-step classical Runge-Kutta integration of ``i psi' = H psi``."""
    A = -1j * np.asarray(H, dtype=complex)
    psi = np.asarray(psi0, dtype=complex).copy()
    dt = t / steps
    for _ in range(steps):
        k1 = A @ psi
        k2 = A @ (psi + 0.5 * dt * k1)
        k3 = A @ (psi + 0.5 * dt * k2)
        k4 = A @ (psi + dt * k3)
        psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


def propagator_series(H, times) -> np.ndarray:
    """Vectorized :func:`propagator` over an array of times, shape ``(n, 2, 2)``."""
    H = np.asarray(H, dtype=complex)
    times = np.asarray(times, dtype=float)
    c = np.trace(H) / 2
    K = H - c * SIGMA0
    root = np.sqrt(complex(-np.linalg.det(K)))
    z = root * times
    small = np.abs(z) < 1e-4
    safe = np.where(small, 1.0, z)
    sinc = np.where(small, 1 - z * z / 6 + z ** 4 / 120, np.sin(safe) / safe)
    phase = np.exp(-1j * c * times)
    return phase[:, None, None] * (np.cos(z)[:, None, None] * SIGMA0
                                   - 1j * (times * sinc)[:, None, None] * K)


def trajectory(H, psi0, t_final: float, steps: int):
    """Times and states ``exp(-i H t_k) psi0`` on a uniform grid of ``steps + 1`` points."""
    times = np.linspace(0.0, t_final, steps + 1)
    states = propagator_series(H, times) @ np.asarray(psi0, dtype=complex)
    return times, states


def _apply_T_rows(states: np.ndarray) -> np.ndarray:
    return np.stack([-states[..., 1].conj(), states[..., 0].conj()], axis=-1)


def reversed_schrodinger_residual(H, psi0, times, h: float | None = None) -> float:
    """Max over ``times`` of ``|| i d/dt (T psi) - H^dagger (T psi) ||``.

    ``psi(t) = exp(-iHt) psi0``, and the derivative is a five-point central
    difference of step ``h`` (default ``1e-3 / ||H||``).
    """
    H = np.asarray(H, dtype=complex)
    psi0 = np.asarray(psi0, dtype=complex)
    hd = H.conj().T
    if h is None:
        h = 1e-3 / max(np.linalg.norm(H, 2), 1e-300)
    times = np.asarray(times, dtype=float)

    def reversed_states(s):
        return _apply_T_rows(propagator_series(H, s) @ psi0)

    phi = reversed_states(times)
    deriv = (reversed_states(times - 2 * h) - 8 * reversed_states(times - h)
             + 8 * reversed_states(times + h) - reversed_states(times + 2 * h)) / (12 * h)
    resid = 1j * deriv - phi @ hd.T
    return float(np.linalg.norm(resid, axis=1).max())


def evolution_series(gamma: float, B1: float, B2: float, psi0, t_final: float, steps: int):
    """Time series used by the command line: state, conventional and bi-orthogonal norms."""
    sysm = eigensystem(gamma, (B1, B2))
    H = build_hamiltonian(gamma, (B1, B2))
    times, states = trajectory(H, np.asarray(psi0, dtype=complex), t_final, steps)
    return {
        "t": times,
        "psi": states,
        "conv_norm": np.einsum("ij,ij->i", states.conj(), states).real,
        "biortho_norm": sysm.biortho_norms(states),
    }
