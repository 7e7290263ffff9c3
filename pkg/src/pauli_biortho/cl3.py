"""Real Clifford algebra Cl3 and its 2x2 complex matrix representation.

Coefficients are stored in the fixed order

    (u0, u1, u2, u3, u12, u13, u23, u123)

with ``e31 = -e13``.  The representation identifies ``e1, e2, e3`` with the
Pauli matrices, so ``e12 = i*sigma3``, ``e13 = -i*sigma2``, ``e23 = i*sigma1``
and ``e123 = i*1``.

Array-level helpers (``gp``, ``coeffs_to_matrix``, ...) accept any leading
batch shape; :class:`Multivector` wraps a single 8-vector.
"""

from __future__ import annotations

import enum

import numpy as np

BLADE_NAMES = ("1", "e1", "e2", "e3", "e12", "e13", "e23", "e123")
GRADES = np.array([0, 1, 1, 1, 2, 2, 2, 3])
# bit i set <=> e_{i+1} present
_BITMASKS = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def _reorder_sign(a: int, b: int) -> int:
    # Number of transpositions needed to bring a*b to canonical order.
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _product_table() -> np.ndarray:
    index = {m: k for k, m in enumerate(_BITMASKS)}
    table = np.zeros((8, 8, 8))
    for i, a in enumerate(_BITMASKS):
        for j, b in enumerate(_BITMASKS):
            table[i, j, index[a ^ b]] = _reorder_sign(a, b)
    return table


PRODUCT_TABLE = _product_table()
PRODUCT_TABLE.setflags(write=False)


class InvolutionKind(enum.Enum):
    GRADE_INVERSION = "grade_inversion"
    REVERSION = "reversion"
    CLIFFORD_CONJUGATION = "clifford_conjugation"


_INVOLUTION_SIGNS = {
    InvolutionKind.GRADE_INVERSION: (-1.0) ** GRADES,
    InvolutionKind.REVERSION: (-1.0) ** (GRADES * (GRADES - 1) // 2),
    InvolutionKind.CLIFFORD_CONJUGATION: (-1.0) ** (GRADES * (GRADES + 1) // 2),
}

# basis_flip as (source index, target index, sign)
_FLIP = (
    (0, 5, 1.0),   # 1    -> e13
    (5, 0, -1.0),  # e13  -> -1
    (1, 3, -1.0),  # e1   -> -e3
    (3, 1, 1.0),   # e3   -> e1
    (2, 7, 1.0),   # e2   -> e123
    (7, 2, -1.0),  # e123 -> -e2
    (4, 6, -1.0),  # e12  -> -e23
    (6, 4, 1.0),   # e23  -> e12
)


# ---------------------------------------------------------------------------
# array level

def gp(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Geometric product of coefficient arrays of shape (..., 8)."""
    return np.einsum("...i,...j,ijk->...k", a, b, PRODUCT_TABLE)


def coeffs_to_matrix(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    u0, u1, u2, u3, u12, u13, u23, u123 = np.moveaxis(u, -1, 0)
    m = np.empty(u.shape[:-1] + (2, 2), dtype=complex)
    m[..., 0, 0] = (u0 + u3) + 1j * (u12 + u123)
    m[..., 0, 1] = (u1 - u13) - 1j * (u2 - u23)
    m[..., 1, 0] = (u1 + u13) + 1j * (u2 + u23)
    m[..., 1, 1] = (u0 - u3) - 1j * (u12 - u123)
    return m


def matrix_to_coeffs(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    a11, a12 = m[..., 0, 0], m[..., 0, 1]
    a21, a22 = m[..., 1, 0], m[..., 1, 1]
    s, d = a11 + a22, a11 - a22
    p, q = a21 + a12, a21 - a12
    return np.stack(
        [s.real / 2, p.real / 2, q.imag / 2, d.real / 2,
         d.imag / 2, q.real / 2, p.imag / 2, s.imag / 2],
        axis=-1,
    )


def involution_coeffs(u: np.ndarray, kind: InvolutionKind) -> np.ndarray:
    return np.asarray(u, dtype=float) * _INVOLUTION_SIGNS[kind]


def basis_flip_coeffs(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    for src, dst, sign in _FLIP:
        out[..., dst] = sign * u[..., src]
    return out


# matrix forms of the involutions, written directly on the entries;
# leading axes are treated as a batch

def _entries(m):
    m = np.asarray(m, dtype=complex)
    return m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]


def _assemble(a11, a12, a21, a22):
    return np.stack([np.stack([a11, a12], -1), np.stack([a21, a22], -1)], -2)


def grade_inversion_matrix(m: np.ndarray) -> np.ndarray:
    a11, a12, a21, a22 = _entries(m)
    return _assemble(a22.conj(), -a21.conj(), -a12.conj(), a11.conj())


def reversion_matrix(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.asarray(m, dtype=complex), -1, -2).conj()


def clifford_conjugation_matrix(m: np.ndarray) -> np.ndarray:
    a11, a12, a21, a22 = _entries(m)
    return _assemble(a22, -a12, -a21, a11)


def basis_flip_matrix(m: np.ndarray) -> np.ndarray:
    a11, a12, a21, a22 = _entries(m)
    return _assemble(-a21.conj(), -a22.conj(), a11.conj(), a12.conj())


# ---------------------------------------------------------------------------
# value type

class Multivector:
    """Immutable element of Cl3 with eight real coefficients.

    ``*`` is the geometric product, ``+``/``-`` are componentwise and real
    scalars multiply from either side.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = np.zeros(8) if coeffs is None else np.array(coeffs, dtype=float)
        if c.shape != (8,):
            raise ValueError(f"expected 8 coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("multivector coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def scalar(cls, value: float) -> "Multivector":
        return cls(np.eye(8)[0] * value)

    @classmethod
    def blade(cls, name: str, value: float = 1.0) -> "Multivector":
        if name == "e31":
            return cls.blade("e13", -value)
        return cls(np.eye(8)[BLADE_NAMES.index(name)] * value)

    @classmethod
    def from_matrix(cls, m) -> "Multivector":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        return cls(matrix_to_coeffs(m))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    u0 = property(lambda self: float(self._c[0]))
    u1 = property(lambda self: float(self._c[1]))
    u2 = property(lambda self: float(self._c[2]))
    u3 = property(lambda self: float(self._c[3]))
    u12 = property(lambda self: float(self._c[4]))
    u13 = property(lambda self: float(self._c[5]))
    u23 = property(lambda self: float(self._c[6]))
    u123 = property(lambda self: float(self._c[7]))

    def to_matrix(self) -> np.ndarray:
        return coeffs_to_matrix(self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return Multivector(gp(self._c, other._c))
        if np.isscalar(other) and np.isrealobj(other):
            return Multivector(self._c * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other) and np.isrealobj(other):
            return Multivector(self._c * other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return Multivector(self._c + other._c)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return Multivector(self._c - other._c)

    def __neg__(self):
        return Multivector(-self._c)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        """Compare with absolute tolerance ``tol`` scaled by the largest coefficient."""
        scale = max(np.abs(self._c).max(), np.abs(other._c).max())
        if scale == 0.0:
            return True
        return bool(np.abs(self._c - other._c).max() <= tol * scale)

    def __repr__(self):
        terms = [f"{v:+.6g}*{n}" for v, n in zip(self._c, BLADE_NAMES) if v != 0.0]
        return "Multivector(" + (" ".join(terms) if terms else "0") + ")"

    def to_list(self) -> list:
        return [float(x) for x in self._c]


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    return u * v


def to_matrix(u: Multivector) -> np.ndarray:
    return u.to_matrix()


def from_matrix(m) -> Multivector:
    return Multivector.from_matrix(m)


def involution(u: Multivector, kind: InvolutionKind) -> Multivector:
    return Multivector(involution_coeffs(u.coeffs, kind))


def grade_inversion(u: Multivector) -> Multivector:
    return involution(u, InvolutionKind.GRADE_INVERSION)


def reversion(u: Multivector) -> Multivector:
    return involution(u, InvolutionKind.REVERSION)


def clifford_conjugation(u: Multivector) -> Multivector:
    return involution(u, InvolutionKind.CLIFFORD_CONJUGATION)


def grade_part(u: Multivector, k: int) -> Multivector:
    """Return the grade-``k`` part of ``u``; ``k`` must be 0, 1, 2 or 3."""
    if k not in (0, 1, 2, 3) or isinstance(k, bool):
        raise ValueError(f"grade must be 0..3, got {k!r}")
    return Multivector(np.where(GRADES == k, u.coeffs, 0.0))


def basis_flip(u: Multivector) -> Multivector:
    """Basis flip: ``1 -> e13 -> -1``, ``e1 -> -e3``, ``e2 -> e123``, ``e12 -> -e23``, ...

    It squares to minus the identity.
    """
    return Multivector(basis_flip_coeffs(u.coeffs))


E0 = Multivector.scalar(1.0)
E1 = Multivector.blade("e1")
E2 = Multivector.blade("e2")
E3 = Multivector.blade("e3")
E12 = Multivector.blade("e12")
E13 = Multivector.blade("e13")
E23 = Multivector.blade("e23")
E123 = Multivector.blade("e123")
BASIS = (E0, E1, E2, E3, E12, E13, E23, E123)
