import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pauli_biortho import spectral
from pauli_biortho.cl3 import SIGMA0, SIGMA1
from pauli_biortho.errors import DegenerateError, InvalidParameterError
from pauli_biortho.spectral import FieldConfig

gammas = st.floats(-0.99, 0.99, allow_nan=False)
comps = st.floats(-5, 5, allow_nan=False)


@st.composite
def fields(draw):
    b1, b2 = draw(comps), draw(comps)
    assume(math.hypot(b1, b2) > 1e-3)
    return (b1, b2)


def test_field_rejects_zero():
    with pytest.raises(InvalidParameterError):
        FieldConfig(0.0, 0.0)


def test_hermitian_limit():
    np.testing.assert_array_equal(spectral.build_hamiltonian(0.0, (1, 0)), SIGMA1)


def test_hamiltonian_frozen_value():
    h = spectral.build_hamiltonian(0.6, (1, 1))
    expected = np.array([[-0.6j, 1 - 0.8j], [1 + 0.8j, 0.6j]]) / 0.8
    np.testing.assert_allclose(h, expected, atol=1e-15)


def test_theta_at_gamma_zero():
    tp, tm = spectral.theta_pm(0.0, (1, 1))
    assert tp == pytest.approx(math.pi / 4, abs=1e-15)
    assert tm == pytest.approx(-math.pi / 4, abs=1e-15)
    s = spectral.eigensystem(0.0, (1, 1))
    h = SIGMA1 + np.array([[0, -1j], [1j, 0]])
    np.testing.assert_allclose(h @ s.psi_plus_g, math.sqrt(2) * s.psi_plus_g, atol=1e-15)


@given(gammas, fields(), st.floats(0.1, 10))
def test_theta_is_scale_invariant(g, f, k):
    a = spectral.theta_pm(g, f)
    b = spectral.theta_pm(g, (k * f[0], k * f[1]))
    assert np.allclose(a, b, atol=1e-12)


def test_theta_minus_numerator_sign():
    # the other sign of the w^2 B B2 term does not give an eigenvector
    g, b1, b2 = 0.5, 1.0, 2.0
    w, B = math.sqrt(1 - g * g), math.hypot(b1, b2)
    wrong = math.atan2(g * b1 * b1 + w * w * B * b2, w * B * b1 + g * w * b1 * b2)
    h = spectral.build_hamiltonian(g, (b1, b2))
    psi = np.array([-np.exp(1j * wrong), 1]) / math.sqrt(2)
    assert np.linalg.norm(h @ psi + B * psi) > 1e-2
    s = spectral.eigensystem(g, (b1, b2))
    assert np.linalg.norm(h @ s.psi_minus_g + B * s.psi_minus_g) <= 1e-14


@given(gammas, fields())
def test_eigen_equations(g, f):
    s = spectral.eigensystem(g, f)
    h = s.hamiltonian
    B = math.hypot(*f)
    tol = 1e-12 * B
    assert np.linalg.norm(h @ s.psi_plus_g - B * s.psi_plus_g) <= tol
    assert np.linalg.norm(h @ s.psi_minus_g + B * s.psi_minus_g) <= tol
    hd = h.conj().T
    assert np.linalg.norm(hd @ s.psi_plus_mg - B * s.psi_plus_mg) <= tol
    assert np.linalg.norm(hd @ s.psi_minus_mg + B * s.psi_minus_mg) <= tol


@given(gammas, fields())
def test_gram_is_diagonal(g, f):
    gram = spectral.eigensystem(g, f).gram()
    assert abs(gram[0, 1]) <= 1e-12 and abs(gram[1, 0]) <= 1e-12


@given(gammas, fields())
@settings(max_examples=50)
def test_verify_spectral_passes(g, f):
    rep = spectral.verify_spectral(g, f)
    assert rep.passed, [r for r in rep.failures()]


def test_projectors_hermitian_at_gamma_zero():
    pr = spectral.projectors(spectral.eigensystem(0.0, (0.3, -1.1)))
    for p in (pr.pi_plus, pr.pi_minus):
        np.testing.assert_allclose(p, p.conj().T, atol=1e-15)
    np.testing.assert_allclose(pr.pi_plus @ pr.pi_minus, 0, atol=1e-15)


def test_projectors_not_hermitian_when_deformed():
    pr = spectral.projectors(spectral.eigensystem(0.5, (1.0, 1.0)))
    assert np.abs(pr.pi_plus - pr.pi_plus.conj().T).max() > 1e-3


def test_decompose():
    rng = np.random.default_rng(2)
    h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    d = spectral.decompose(h)
    np.testing.assert_allclose(d.H0 + 1j * d.Gamma, h, atol=1e-15)
    np.testing.assert_allclose(d.H0, d.H0.conj().T)
    np.testing.assert_allclose(d.Gamma, d.Gamma.conj().T)


def test_relations_on_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(50):
        h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rep = spectral.verify_brody_relations(spectral.decompose(h))
        assert rep.passed
        assert not any(r.status == "skip" for r in rep.results)


def test_relation_skips_for_deformed_hamiltonian():
    h = spectral.build_hamiltonian(0.5, (1.0, 1.0))
    rep = spectral.verify_brody_relations(spectral.decompose(h))
    assert rep.passed
    skipped = {(r.name, r.params["m"], r.params["n"]) for r in rep.results if r.status == "skip"}
    expected = set()
    for label in "uv":
        expected |= {(f"{label}_sum", 0, 1), (f"{label}_sum", 1, 0)}
    assert skipped == expected
    # diagonal difference relations reduce to <u|Gamma|u> = 0 for real eigenvalues
    diag = [r for r in rep.by_name("u_diff") if r.params["m"] == r.params["n"]]
    assert len(diag) == 2 and all(r.status == "pass" for r in diag)


def test_relations_reject_degenerate_spectrum():
    with pytest.raises(DegenerateError):
        spectral.verify_brody_relations(spectral.decompose(np.eye(2)))


def test_expectation_examples():
    s = spectral.eigensystem(0.4, (1, 2))
    B = math.sqrt(5)
    h = s.hamiltonian
    assert spectral.biortho_expectation(h, s.psi_plus_g, s) == pytest.approx(B, abs=1e-12)
    psi = np.array([0.3 + 0.1j, -0.4j])
    assert spectral.biortho_expectation(SIGMA0, psi, s) == pytest.approx(1.0, abs=1e-13)
    n = s.expand(s.psi_plus_g)[0]
    sup = s.psi_plus_g / abs(n) + s.psi_minus_g / abs(s.expand(s.psi_minus_g)[1])
    w = np.abs(s.expand(sup)) ** 2 * np.diag(s.gram())
    expected = B * (w[0] - w[1]) / (w[0] + w[1])
    assert spectral.biortho_expectation(h, sup, s) == pytest.approx(expected, abs=1e-12)


def test_equal_weight_superposition_has_zero_energy():
    s = spectral.eigensystem(0.4, (1, 2))
    d = np.diag(s.gram())
    # scale so that |alpha_s|^2 <l_s|r_s> are equal
    sup = s.psi_plus_g / np.sqrt(d[0]) + s.psi_minus_g / np.sqrt(d[1])
    assert abs(spectral.biortho_expectation(s.hamiltonian, sup, s)) <= 1e-12


@given(gammas, fields())
def test_theta_identities(g, f):
    res = spectral.theta_identity_residuals(g, f)
    assert set(res) == {"same_sign", "field_flip", "gamma_flip"}
    assert max(res.values()) <= 1e-12


def test_field_flip_holds_only_modulo_pi():
    g, f = 0.3, (1.0, 0.5)
    fp, _ = spectral.theta_pm(g, (-f[0], -f[1]))
    _, tm = spectral.theta_pm(g, f)
    assert spectral.angle_distance(fp + tm, math.pi) <= 1e-12


def test_principal_angle():
    assert spectral.principal_angle(math.pi / 4 + math.pi) == pytest.approx(math.pi / 4)
    assert spectral.principal_angle(-math.pi / 2) == pytest.approx(-math.pi / 2)
