import json
import math

import pytest

from pauli_biortho import cli
from pauli_biortho.report import SCHEMA
from pauli_biortho.sweep import SweepConfig, run_sweep
from pauli_biortho.errors import InvalidParameterError


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hermitian_limit_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--gamma", "0", "--b1", "1", "--b2", "0",
                         "--trials", "100", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA and doc["passed"]
    assert "verify:" in err


def test_verify_is_byte_identical(capsys):
    args = ("verify", "--gamma", "0.5", "--b1", "1", "--b2", "2", "--trials", "20", "--seed", "42")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_verify_default_grid_enumerates_all_modules(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "10", "--seed", "1")
    assert code == 0
    names = {c["name"] for c in json.loads(out)["report"]["checks"]}
    expected = {
        "oracle_equivalence", "involution_morphism", "matrix_forms", "basis_flip_twice",
        "grade_projection", "square_e1", "anticommutator_e1e2", "biorthogonality",
        "outer_product_e1", "gamma_flip_adjoint", "isospectral", "adjoint_identity",
        "gram_offdiag", "spectral_representation", "theta_same_sign", "theta_field_flip",
        "theta_gamma_flip", "projector_grade_duality", "u_sum", "v_diff", "cross",
        "anti_unitarity", "norm_preservation", "pseudo_hermiticity", "T_noncommuting",
        "biortho_norm_drift", "conventional_norm_spread", "kramers_pairing",
        "kramers_opposite_energy", "reversed_schrodinger", "ideal_closure", "reversion_product",
        "conjugation_product", "ring_division", "biorthogonality_transfer",
        "flip_is_time_reversal", "reversion_product_invariance", "upsilon_purity",
        "ks_norm_identity", "ks_spherical_lift", "column_structure",
        "spinor_operator_gamma_independent", "upsilon_plus_linear_in_gamma",
    }
    assert expected <= names


def test_verify_failure_exits_one(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--gamma", "0.5", "--b1", "1", "--b2", "1",
                         "--trials", "5", "--tol", "eigen_residual=0", "--tol", "spectral=1e-30",
                         "--out", str(out_file))
    assert code == 1
    doc = json.loads(out)
    assert not doc["passed"]
    assert json.loads(out_file.read_text()) == doc
    assert "FAIL" in err


def test_verify_unpaired_fields_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--b1", "1")
    assert code == 2


def test_spectrum_energies(capsys):
    code, out, _ = run(capsys, "spectrum", "--gamma", "0.6", "--b1", "1", "--b2", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["E"] == [math.sqrt(2), -math.sqrt(2)]
    assert doc["omega"] == pytest.approx(0.8)
    assert set(doc["spinors"]) == {"psi_plus_gamma", "psi_minus_gamma", "psi_plus_minus_gamma",
                                   "psi_minus_minus_gamma"}
    assert doc["residuals"]["eigen_residual"] <= 1e-12


def test_gens(capsys):
    code, out, _ = run(capsys, "gens", "--gamma", "0.6")
    assert code == 0
    e1 = json.loads(out)["generators"]["e1"]
    assert e1[0][1] == [1.25, 0.0]
    assert e1[0][0][1] == pytest.approx(-0.75)


def test_ks_forward(capsys):
    code, out, _ = run(capsys, "ks", "--variant", "1", "--r", "1,0,0,0")
    assert code == 0
    assert json.loads(out)["x"] == [0.0, 0.0, 1.0]


def test_ks_lift(capsys):
    code, out, _ = run(capsys, "ks", "--variant", "2", "--spherical", f"2,{math.pi / 2},{math.pi / 3}",
                       "--omega1", "0.7")
    assert code == 0
    x = json.loads(out)["x"]
    assert x == pytest.approx([1.0, math.sqrt(3), 0.0], abs=1e-14)


def test_ideal(capsys):
    code, out, _ = run(capsys, "ideal", "--psi", "0,1,-1,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["xi"] == [0.0, 0.0, 1.0, 1.0]
    assert doc["reversion_product"] == [2.0, 0.0]


def test_evolve(capsys):
    code, out, _ = run(capsys, "evolve", "--gamma", "0.5", "--b1", "1", "--b2", "0.5",
                       "--psi0", "1,0,0,0", "--t", "2", "--steps", "20")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["t"]) == 21 and len(doc["psi"]) == 21
    assert doc["conv_norm"][0] == 1.0


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["ks", "--variant", "3", "--r", "1,0,0,0"],
    ["ks", "--variant", "1"],
    ["ks", "--variant", "1", "--r", "1,0,0"],
    ["spectrum", "--gamma", "1.5", "--b1", "1", "--b2", "0"],
    ["spectrum", "--gamma", "0.1", "--b1", "0", "--b2", "0"],
    ["verify", "--trials", "0"],
    ["evolve", "--gamma", "0", "--b1", "1", "--b2", "0", "--psi0", "1,0", "--t", "1"],
    ["ks", "--variant", "1", "--spherical", "-1,0,0"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_sweep_config_validation():
    with pytest.raises(InvalidParameterError):
        SweepConfig(trials=0)
    with pytest.raises(InvalidParameterError):
        SweepConfig(gammas=(1.0,))
    with pytest.raises(InvalidParameterError):
        SweepConfig(fields=((0.0, 0.0),))


def test_sweep_reproducible():
    cfg = SweepConfig(gammas=(0.3,), fields=((1.0, 2.0),), trials=5, seed=9)
    a, b = run_sweep(cfg), run_sweep(cfg)
    assert [r.to_dict() for r in a.results] == [r.to_dict() for r in b.results]
