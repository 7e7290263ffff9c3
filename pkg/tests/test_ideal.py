import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pauli_biortho import cl3, deformed, ideal, spectral, time_reversal as tr
from pauli_biortho.cl3 import E0, E123, Multivector
from pauli_biortho.errors import DegenerateError, GammaMismatchError
from pauli_biortho.ideal import IdealSpinor, RingElement

parts = arrays(np.float64, (4,), elements=st.floats(-10, 10, allow_nan=False))
coeffs = arrays(np.float64, (8,), elements=st.floats(-10, 10, allow_nan=False))

G0 = np.diag([1, 0]).astype(complex)
G3 = np.diag([1j, 0])


def spinor(a):
    return np.array([complex(a[0], a[1]), complex(a[2], a[3])])


def bases(g):
    b = deformed.deformed_generators(g)
    return b, tr.time_reversed_generators(b)


@pytest.mark.parametrize("g", [0.0, 0.5, -0.9, 0.99])
def test_ideal_basis_closed_forms(g):
    g0, g1, g2, g3 = ideal.ideal_basis(*bases(g))
    np.testing.assert_allclose(g0, G0, atol=1e-14)
    np.testing.assert_allclose(g1, [[0, 0], [1j, 0]], atol=1e-14)
    np.testing.assert_allclose(g2, [[0, 0], [-1, 0]], atol=1e-14)
    np.testing.assert_allclose(g3, G3, atol=1e-14)


def test_ideal_basis_exact_g0_at_zero():
    np.testing.assert_array_equal(ideal.ideal_basis(*bases(0.0))[0], G0)


def test_ideal_basis_gamma_mismatch():
    b, _ = bases(0.3)
    _, tb = bases(0.4)
    with pytest.raises(GammaMismatchError):
        ideal.ideal_basis(b, tb)


def test_embed_examples():
    assert ideal.embed([1, 0]) == IdealSpinor(1, 0, 0, 0)
    np.testing.assert_array_equal(ideal.embed([1, 0]).matrix, G0)
    np.testing.assert_array_equal(ideal.embed([1j, -1]).xi, [0, 0, 1, 1])


@given(parts)
def test_embed_extract_roundtrip(a):
    psi = spinor(a)
    np.testing.assert_array_equal(ideal.extract(ideal.embed(psi)), psi)


def test_from_matrix_rejects_full_matrix():
    with pytest.raises(ValueError):
        IdealSpinor.from_matrix(np.eye(2))


def test_left_action_examples():
    P = ideal.embed([0.3, -2j])
    assert ideal.left_action(E0, P) == P
    np.testing.assert_array_equal(ideal.left_action(E123, ideal.embed([1, 0])).matrix, G3)


@given(coeffs, parts)
def test_left_ideal_closure(c, a):
    m = Multivector(c).to_matrix() @ ideal.embed(spinor(a)).matrix
    assert np.all(m[:, 1] == 0)
    ideal.left_action(Multivector(c), ideal.embed(spinor(a)))


@given(parts, parts)
def test_reversion_product_is_conventional_inner_product(a, b):
    psi, phi = spinor(a), spinor(b)
    c = ideal.reversion_product(ideal.embed(psi), ideal.embed(phi)).c
    assert abs(c - np.vdot(psi, phi)) <= 1e-13 * max(1.0, np.linalg.norm(psi) * np.linalg.norm(phi))


@given(parts, parts)
def test_conjugation_product_formula(a, b):
    psi, phi = spinor(a), spinor(b)
    c = ideal.conjugation_product(ideal.embed(phi), ideal.embed(psi)).c
    expected = phi[0] * psi[0].conjugate() + phi[1] * psi[1].conjugate()
    scale = max(1.0, np.linalg.norm(psi) * np.linalg.norm(phi))
    assert abs(c - expected) <= 1e-13 * scale
    assert abs(ideal.double_bracket(phi, psi) - expected) <= 1e-13 * scale


def test_unit_products():
    P = ideal.embed([1, 0])
    assert ideal.reversion_product(P, P).c == 1
    assert ideal.conjugation_product(P, P).c == 1


@pytest.mark.parametrize("g,f", [(0.5, (1, 1)), (-0.3, (2, -1)), (0.9, (0.4, 3))])
def test_biorthogonality_inside_ideal(g, f):
    s = spectral.eigensystem(g, f)
    e = ideal.embed
    assert abs(ideal.reversion_product(e(s.psi_plus_g), e(s.psi_minus_mg)).c) <= 1e-13
    assert abs(ideal.reversion_product(e(s.psi_minus_g), e(s.psi_plus_mg)).c) <= 1e-13
    assert abs(ideal.conjugation_product(e(s.psi_minus_g), e(s.psi_plus_mg)).c) <= 1e-13
    assert abs(ideal.conjugation_product(e(s.psi_plus_g), e(s.psi_minus_mg)).c) <= 1e-13
    flipped = ideal.reversion_product(ideal.flip(e(s.psi_minus_mg)), ideal.flip(e(s.psi_plus_g)))
    assert abs(flipped.c) <= 1e-13


def test_flip_of_g0():
    assert ideal.flip(ideal.embed([1, 0])).xi.tolist() == [0, 0, -1, 0]


@given(parts)
def test_flip_matches_time_reversal(a):
    psi = spinor(a)
    P = ideal.embed(psi)
    np.testing.assert_allclose(ideal.extract(ideal.flip(P)), tr.apply_T(psi), atol=1e-14)
    assert ideal.flip(ideal.flip(P)) == -P


def test_ring_arithmetic():
    a, b = RingElement(1 + 2j), RingElement(-0.5j)
    assert (a * b).c == (1 + 2j) * (-0.5j)
    np.testing.assert_array_equal((a * b).matrix, a.matrix @ b.matrix)
    assert abs((a * a.inverse()).c - 1) <= 1e-13
    with pytest.raises(DegenerateError):
        RingElement(0).inverse()
    with pytest.raises(ValueError):
        RingElement.from_matrix(np.eye(2))


def _unitary(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    h = (z + z.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    return vecs @ np.diag(np.exp(1j * vals)) @ vecs.conj().T


def test_unitary_invariance_identity():
    rep = ideal.unitary_invariance_check(E0, ideal.embed([1, 2j]), ideal.embed([0.5, -1]))
    assert rep.passed and not any(r.status == "skip" for r in rep.results)


@pytest.mark.parametrize("seed", range(5))
def test_unitary_invariance_random(seed):
    s = Multivector.from_matrix(_unitary(seed))
    rep = ideal.unitary_invariance_check(s, ideal.embed([1, 2j]), ideal.embed([0.5 - 1j, -1]))
    assert rep.passed
    assert rep.by_name("reversion_product_invariance")[0].status == "pass"


def test_unitary_invariance_precondition():
    rep = ideal.unitary_invariance_check(2.0 * E0, ideal.embed([1, 0]), ideal.embed([0, 1]))
    assert not rep.passed
    assert rep.by_name("precondition_rev_s_s_is_one")[0].max_residual == pytest.approx(3.0)
    assert rep.by_name("reversion_product_invariance")[0].status == "skip"


def test_grade_inverted_projectors_swap():
    s, sm = spectral.eigensystem(0.4, (1, 2)), spectral.eigensystem(-0.4, (1, 2))
    pr, prm = spectral.projectors(s), spectral.projectors(sm)
    np.testing.assert_allclose(cl3.grade_inversion_matrix(pr.pi_plus), prm.pi_minus, atol=1e-13)
    np.testing.assert_allclose(cl3.grade_inversion_matrix(pr.pi_minus), prm.pi_plus, atol=1e-13)
