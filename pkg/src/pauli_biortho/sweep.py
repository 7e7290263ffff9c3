"""Full invariant sweep behind ``verify``.

All randomness lives here: each module block draws from one
``numpy.random.Generator`` seeded from :class:`SweepConfig`, so a given
configuration always produces the same report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import cl3, deformed, ideal, ks, spectral, time_reversal as tr
from .cl3 import InvolutionKind, Multivector
from .deformed import as_param
from .errors import InvalidParameterError
from .report import VerificationReport
from .spectral import as_field

DEFAULT_GAMMAS = (0.0, 0.1, -0.1, 0.3, -0.3, 0.5, -0.5, 0.9, -0.9, 0.99, -0.99)
DEFAULT_FIELDS = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-2.0, 0.5), (0.3, -1.7), (3.0, 4.0))


@dataclass(frozen=True)
class SweepConfig:
    gammas: tuple = DEFAULT_GAMMAS
    fields: tuple = DEFAULT_FIELDS
    trials: int = 100
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    evolution_steps: int = 1000

    def __post_init__(self):
        if int(self.trials) < 1:
            raise InvalidParameterError("trials must be at least 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InvalidParameterError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "gammas", tuple(as_param(g).gamma for g in self.gammas))
        object.__setattr__(self, "fields", tuple((as_field(f).B1, as_field(f).B2)
                                                 for f in self.fields))
        if not self.gammas or not self.fields:
            raise InvalidParameterError("the sweep grid must not be empty")

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def grid(self):
        for g in self.gammas:
            for f in self.fields:
                yield g, f


def _random_spinors(rng, n):
    return rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))


def random_unitary(rng) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _rel(a, b, scale) -> float:
    return float(np.abs(a - b).max() / max(scale, 1e-300))


def f_b(f) -> float:
    return math.hypot(*f)


# ---------------------------------------------------------------------------
# module blocks

def sweep_cl3(cfg: SweepConfig, rng) -> VerificationReport:
    rep = VerificationReport("cl3")
    n = cfg.trials
    u = rng.normal(size=(n, 8))
    v = rng.normal(size=(n, 8))
    mu, mv = cl3.coeffs_to_matrix(u), cl3.coeffs_to_matrix(v)
    prod = cl3.gp(u, v)
    scale = np.abs(u).max(axis=1) * np.abs(v).max(axis=1)
    oracle = cl3.matrix_to_coeffs(mu @ mv)
    rep.check("oracle_equivalence", (np.abs(prod - oracle).max(axis=1) / scale).max(),
              cfg.tol("oracle_equivalence", 1e-13))

    inv = {k: (lambda x, k=k: cl3.involution_coeffs(x, k)) for k in InvolutionKind}
    worst = max(np.abs(inv[k](inv[k](u)) - u).max() for k in InvolutionKind)
    rep.check("involution_self_inverse", worst, cfg.tol("involution_self_inverse", 0.0))
    gi, rv, cc = (inv[k] for k in (InvolutionKind.GRADE_INVERSION, InvolutionKind.REVERSION,
                                   InvolutionKind.CLIFFORD_CONJUGATION))
    tol = cfg.tol("involution_morphism", 1e-13)
    rep.check("involution_morphism", _rel(gi(prod), cl3.gp(gi(u), gi(v)), scale.max()), tol,
              {"kind": "grade_inversion"})
    rep.check("involution_morphism", _rel(rv(prod), cl3.gp(rv(v), rv(u)), scale.max()), tol,
              {"kind": "reversion"})
    rep.check("involution_morphism", _rel(cc(prod), cl3.gp(cc(v), cc(u)), scale.max()), tol,
              {"kind": "clifford_conjugation"})
    rep.check("involution_composition",
              max(np.abs(cc(u) - rv(gi(u))).max(), np.abs(cc(u) - gi(rv(u))).max()),
              cfg.tol("involution_composition", 0.0))

    tol = cfg.tol("matrix_forms", 1e-15)
    for kind, f in ((InvolutionKind.GRADE_INVERSION, cl3.grade_inversion_matrix),
                    (InvolutionKind.REVERSION, cl3.reversion_matrix),
                    (InvolutionKind.CLIFFORD_CONJUGATION, cl3.clifford_conjugation_matrix)):
        res = max(np.abs(cl3.coeffs_to_matrix(inv[kind](x)) - f(m)).max()
                  for x, m in zip(u[:50], mu[:50]))
        rep.check("matrix_forms", res, tol, {"kind": kind.name.lower()})
    res = max(np.abs(cl3.coeffs_to_matrix(cl3.basis_flip_coeffs(x)) - cl3.basis_flip_matrix(m)).max()
              for x, m in zip(u[:50], mu[:50]))
    rep.check("matrix_forms", res, tol, {"kind": "basis_flip"})

    basis = np.eye(8)
    rep.check("basis_flip_twice",
              max(np.abs(cl3.basis_flip_coeffs(cl3.basis_flip_coeffs(x)) + x).max()
                  for x in np.vstack([basis, u])),
              cfg.tol("basis_flip_twice", 0.0))

    worst = 0.0
    for x in u[:20]:
        mvx = Multivector(x)
        for j in range(4):
            pj = cl3.grade_part(mvx, j)
            for k in range(4):
                expect = pj.coeffs if j == k else np.zeros(8)
                worst = max(worst, np.abs(cl3.grade_part(pj, k).coeffs - expect).max())
    rep.check("grade_projection", worst, cfg.tol("grade_projection", 0.0))
    return rep


def sweep_deformed(cfg: SweepConfig) -> VerificationReport:
    rep = VerificationReport("deformed")
    for g in cfg.gammas:
        b = deformed.deformed_generators(g)
        rep.extend(deformed.verify_clifford_relations(b, cfg.tol("clifford", 1e-12)))
        rep.extend(deformed.cross_check_constructions(g, cfg.tol("construction", 1e-13)))
        bm = deformed.deformed_generators(-g)
        res = max(np.abs(b.e1g.conj().T - bm.e1g).max(), np.abs(b.e3g.conj().T - bm.e3g).max(),
                  np.abs(b.e2g - bm.e2g).max())
        rep.check("gamma_flip_adjoint", res, cfg.tol("gamma_flip_adjoint", 1e-14), {"gamma": g})
    return rep


def sweep_spectral(cfg: SweepConfig, rng) -> VerificationReport:
    rep = VerificationReport("spectral")
    for g, f in cfg.grid():
        rep.extend(spectral.verify_spectral(g, f, cfg.tol("spectral", 1e-12)))
        params = {"gamma": g, "B1": f[0], "B2": f[1]}
        brody = spectral.verify_brody_relations(
            spectral.decompose(spectral.build_hamiltonian(g, f)), cfg.tol("relations", 1e-10))
        for r in brody.results:
            r.params = {**params, **r.params}
        rep.results.extend(brody.results)
        sysm = spectral.eigensystem(g, f)
        psi = _random_spinors(rng, 1)[0]
        w = np.abs(sysm.expand(psi)) ** 2 * np.diag(sysm.gram())
        expect = f_b(f) * (w[0] - w[1]) / (w[0] + w[1])
        got = spectral.biortho_expectation(sysm.hamiltonian, psi, sysm)
        rep.check("biortho_expectation", abs(got - expect),
                  cfg.tol("biortho_expectation", 1e-12) * f_b(f), params)
    for k in range(cfg.trials):
        h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        brody = spectral.verify_brody_relations(spectral.decompose(h), cfg.tol("relations", 1e-10))
        for r in brody.results:
            r.params = {"matrix": k, **r.params}
        rep.results.extend(brody.results)
    return rep


def sweep_time_reversal(cfg: SweepConfig, rng) -> VerificationReport:
    rep = VerificationReport("time_reversal")
    T = tr.TIME_REVERSAL
    rep.check("T_squared", np.abs(T.square() + cl3.SIGMA0).max(), cfg.tol("T_squared", 0.0))
    psi, phi = _random_spinors(rng, cfg.trials), _random_spinors(rng, cfg.trials)
    tpsi = np.array([tr.apply_T(x) for x in psi])
    tphi = np.array([tr.apply_T(x) for x in phi])
    tol = cfg.tol("anti_unitarity", 1e-13)
    scale = np.linalg.norm(psi, axis=1) * np.linalg.norm(phi, axis=1)
    lhs = np.einsum("ij,ij->i", tpsi.conj(), tphi)
    rhs = np.einsum("ij,ij->i", phi.conj(), psi)
    rep.check("anti_unitarity", (np.abs(lhs - rhs) / scale).max(), tol)
    rep.check("norm_preservation",
              (np.abs(np.linalg.norm(tpsi, axis=1) - np.linalg.norm(psi, axis=1))
               / np.linalg.norm(psi, axis=1)).max(), tol)
    rep.check("T_orthogonal",
              (np.abs(np.einsum("ij,ij->i", tpsi.conj(), psi))
               / np.linalg.norm(psi, axis=1) ** 2).max(), tol)

    for g in cfg.gammas:
        b = deformed.deformed_generators(g)
        tb = tr.time_reversed_generators(b)
        cf = tr.time_reversed_closed_forms(b)
        res = max(np.abs(tb.generators()[k] - cf.generators()[k]).max() for k in tb.generators())
        rep.check("time_reversed_generators", res, cfg.tol("time_reversed_generators", 1e-14),
                  {"gamma": g})

    steps = cfg.evolution_steps
    for g, f in cfg.grid():
        params = {"gamma": g, "B1": f[0], "B2": f[1]}
        B = f_b(f)
        h = spectral.build_hamiltonian(g, f)
        hd = h.conj().T
        conj = tr.conjugate_by_T(h)
        rep.check("pseudo_hermiticity", np.abs(conj + hd).max(),
                  cfg.tol("pseudo_hermiticity", 1e-13) * max(1.0, B), params,
                  note="conjugate_by_T(H) = -H^dagger")
        rep.info("pseudo_hermiticity_plus_sign", np.abs(conj - hd).max(), params,
                 note="distance to +H^dagger")
        if g != 0.0:
            dist = np.abs(conj - h).max()
            rep.condition("T_noncommuting", dist > 1e-12 * B, dist, params)

        sysm = spectral.eigensystem(g, f)
        pairing = tr.kramers_pairing(sysm)
        rep.check("kramers_pairing", pairing.max_deviation, cfg.tol("kramers_pairing", 1e-10),
                  params)
        for br in pairing.branches:
            bp = {**params, "n": br.n}
            opposite = br.energy_state * br.energy_reversed < 0
            rep.condition("kramers_opposite_energy", opposite,
                          br.energy_state * br.energy_reversed, bp,
                          note="E(psi_s) E(T psi_s) under H, H^dagger")
            rep.info("kramers_cross_energy_product", br.energy_state * br.energy_cross, bp,
                     note="E(psi_s) E(T psi_-s); positive means same sign")

        a = rng.uniform(0.3, 1.0, size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
        psi0 = a[0] * sysm.psi_plus_g + a[1] * sysm.psi_minus_g
        series = tr.evolution_series(g, f[0], f[1], psi0, 10.0 / B, steps)
        bn = series["biortho_norm"]
        rep.check("biortho_norm_drift", np.abs(bn - bn[0]).max() / abs(bn[0]),
                  cfg.tol("biortho_norm_drift", 1e-8), params)
        rep.check("reversed_schrodinger", tr.reversed_schrodinger_residual(h, psi0, series["t"])
                  / max(1.0, B), cfg.tol("reversed_schrodinger", 1e-8), params)
        if abs(g) >= 0.3 and abs(f[0]) >= 0.25 * B:
            spread = float(np.ptp(series["conv_norm"]))
            rep.condition("conventional_norm_spread", spread > 1e-6, spread, params)
    return rep


def sweep_ideal(cfg: SweepConfig, rng) -> VerificationReport:
    rep = VerificationReport("ideal")
    n = cfg.trials
    tol = cfg.tol("inner_products", 1e-13)
    psis, phis = _random_spinors(rng, n), _random_spinors(rng, n)
    u = rng.normal(size=(n, 8))
    closure = 0.0
    rev_res = conj_res = bracket_res = flip_res = twice_res = embed_res = 0.0
    for x, y, c in zip(psis, phis, u):
        P, Q = ideal.embed(x), ideal.embed(y)
        embed_res = max(embed_res, np.abs(ideal.extract(P) - x).max())
        m = Multivector(c).to_matrix() @ P.matrix
        closure = max(closure, float(np.abs(m[:, 1]).max()))
        scale = np.linalg.norm(x) * np.linalg.norm(y)
        rev_res = max(rev_res, abs(ideal.reversion_product(P, Q).c - np.vdot(x, y)) / scale)
        conj_res = max(conj_res, abs(ideal.conjugation_product(Q, P).c
                                     - (y[0] * x[0].conjugate() + y[1] * x[1].conjugate())) / scale)
        bracket_res = max(bracket_res, abs(ideal.double_bracket(y, x)
                                           - ideal.conjugation_product(Q, P).c) / scale)
        fl = ideal.flip(P)
        flip_res = max(flip_res, np.abs(ideal.extract(fl) - tr.apply_T(x)).max() / np.linalg.norm(x))
        twice_res = max(twice_res, np.abs(ideal.flip(fl).xi + P.xi).max())
    rep.check("embed_roundtrip", embed_res, 0.0)
    rep.check("ideal_closure", closure, cfg.tol("ideal_closure", 0.0))
    rep.check("reversion_product", rev_res, tol)
    rep.check("conjugation_product", conj_res, tol)
    rep.check("double_bracket", bracket_res, tol)
    rep.check("flip_is_time_reversal", flip_res, tol)
    rep.check("flip_twice", twice_res, cfg.tol("flip_twice", 0.0))

    ring_res = 0.0
    for a, c in zip(psis[:, 0], phis[:, 0]):
        ra, rc = ideal.RingElement(a), ideal.RingElement(c)
        prod = ideal.RingElement.from_matrix(ra.matrix @ rc.matrix)
        ring_res = max(ring_res, abs(prod.c - (ra * rc).c) / (abs(a) * abs(c)),
                       abs((ra * ra.inverse()).c - 1.0))
    rep.check("ring_division", ring_res, tol)

    for g in cfg.gammas:
        b = deformed.deformed_generators(g)
        tb = tr.time_reversed_generators(b)
        expect = (np.diag([1, 0]), np.array([[0, 0], [1j, 0]]), np.array([[0, 0], [-1, 0]]),
                  np.diag([1j, 0]))
        res = max(np.abs(gk - ek).max() for gk, ek in zip(ideal.ideal_basis(b, tb), expect))
        rep.check("ideal_basis", res, cfg.tol("ideal_basis", 1e-14), {"gamma": g})

    for g, f in cfg.grid():
        params = {"gamma": g, "B1": f[0], "B2": f[1]}
        sysm = spectral.eigensystem(g, f)
        worst = 0.0
        for r, l_other in ((sysm.psi_plus_g, sysm.psi_minus_mg),
                           (sysm.psi_minus_g, sysm.psi_plus_mg)):
            R, L = ideal.embed(r), ideal.embed(l_other)
            worst = max(worst, abs(ideal.reversion_product(R, L).c),
                        abs(ideal.conjugation_product(R, L).c),
                        abs(ideal.reversion_product(ideal.flip(L), ideal.flip(R)).c))
        rep.check("biorthogonality_transfer", worst, tol, params)

    for k in range(cfg.trials):
        s = Multivector.from_matrix(random_unitary(rng))
        x, y = _random_spinors(rng, 2)
        sub = ideal.unitary_invariance_check(s, ideal.embed(x), ideal.embed(y),
                                             cfg.tol("unitary_invariance", 1e-12))
        for r in sub.results:
            r.params = {"trial": k}
        rep.results.extend(sub.results)
    return rep


def sweep_ks(cfg: SweepConfig, rng) -> VerificationReport:
    rep = VerificationReport("ks")
    rs = rng.normal(size=(cfg.trials, 4))
    tol = cfg.tol("ks", 1e-12)
    for variant in ks.KSVariant:
        vp = {"variant": variant.value}
        worst = 0.0
        for r in rs:
            x = ks.ks_map(variant, r)
            n2 = float(np.sum(r * r))
            worst = max(worst, abs(n2 ** 2 - float(np.dot(x, x))) / n2 ** 2)
        rep.check("ks_norm_identity", worst, tol, vp)

        grid = np.linspace(0.0, 1.0, 7)
        worst = 0.0
        for radius in (0.5, 2.0):
            for th in grid * math.pi:
                for ph in grid * 2 * math.pi:
                    for w in grid * 2 * math.pi:
                        q = ks.ks_lift(variant, radius, th, ph, w)
                        worst = max(worst, np.abs(ks.ks_map(variant, q)
                                                  - ks.spherical_point(radius, th, ph)).max() / radius)
        rep.check("ks_spherical_lift", worst, tol, vp)

    for g in cfg.gammas:
        params = {"gamma": g}
        b = deformed.deformed_generators(g)
        tb = tr.time_reversed_generators(b)
        b_ref = deformed.deformed_generators(0.5)
        tb_ref = tr.time_reversed_generators(b_ref)
        purity = extract = column = gamma_dep = scaling = 0.0
        for r in rs[:20]:
            c = ks.SpinorOperatorCoords.from_quadruple(ks.KSQuadruple(*r))
            xi = ks.spinor_operator(c, b, tb)
            closed = ks.spinor_operator_closed_form(c)
            scale = float(np.sum(r * r))
            gamma_dep = max(gamma_dep, np.abs(xi - closed).max() / math.sqrt(scale))
            column = max(column, ks.column_flip_residual(xi) / math.sqrt(scale))
            um = ks.upsilon(ks.KSVariant.MINUS, xi, b, tb)
            purity = max(purity, max(np.abs(cl3.grade_part(um, k).coeffs).max() for k in (0, 2, 3))
                         / scale)
            extract = max(extract, np.abs(ks.ks_from_upsilon(1, um) - ks.ks_map(1, r)).max() / scale)
            if g != 0.0:
                up = ks.upsilon(ks.KSVariant.PLUS, xi, b, tb)
                purity = max(purity, max(np.abs(cl3.grade_part(up, k).coeffs).max()
                                         for k in (0, 1, 3)) / scale)
                extract = max(extract, np.abs(ks.ks_from_upsilon(2, up, g)
                                              - ks.ks_map(2, r)).max() / scale)
                ref = ks.upsilon(ks.KSVariant.PLUS, xi, b_ref, tb_ref).coeffs / 0.5
                scaling = max(scaling, np.abs(ref - up.coeffs / g).max() / scale)
        rep.check("upsilon_purity", purity, cfg.tol("upsilon_purity", 1e-13), params)
        rep.check("upsilon_extraction", extract, tol, params)
        rep.check("column_structure", column, cfg.tol("column_structure", 1e-14), params)
        rep.check("spinor_operator_gamma_independent", gamma_dep, cfg.tol("ks_gamma", 1e-14),
                  params)
        if g != 0.0:
            rep.check("upsilon_plus_linear_in_gamma", scaling, tol, params)
    return rep


def run_sweep(cfg: SweepConfig) -> VerificationReport:
    """Run every module block and merge the results into one report."""
    seeds = np.random.SeedSequence(int(cfg.seed)).spawn(5)
    rngs = [np.random.default_rng(s) for s in seeds]
    rep = VerificationReport("verify")
    rep.extend(sweep_cl3(cfg, rngs[0]))
    rep.extend(sweep_deformed(cfg))
    rep.extend(sweep_spectral(cfg, rngs[1]))
    rep.extend(sweep_time_reversal(cfg, rngs[2]))
    rep.extend(sweep_ideal(cfg, rngs[3]))
    rep.extend(sweep_ks(cfg, rngs[4]))
    return rep
