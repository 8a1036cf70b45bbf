import math

import numpy as np
import pytest

from qopuc import chainseq, quadlab
from qopuc.cpoly import CPoly, evaluate
from qopuc.exceptions import InvalidParameters
from qopuc.families import p_poly
from qopuc.opuc import (
    MeasureSpec,
    _check_series,
    build_opuc,
    cd_identity_check,
    check_opuc,
    hat_opuc,
    measure_moment,
    norm_constant,
    pastro_opuc,
    szego_approximant,
    szego_function,
)
from qopuc.qcore import QBParams, _qpow, qpoch_infinite

# mpmath, 30 digits, at q = 0.5, b = 0.8 - 0.6i; the hat value also equals
# the reciprocal of mpmath.quad over the unnormalized hat weight
RHO_CHECK = 0.776065205687497900296715805707
RHO_HAT = 0.444611344809248689591444754353


class TestNormalization:
    def test_frozen_values(self, desk):
        assert abs(norm_constant("check", desk) - RHO_CHECK) < 1e-14
        assert abs(norm_constant("hat", desk) - RHO_HAT) < 1e-14

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_anchor_b1(self, q):
        p = QBParams.from_b(q, 1.0)
        assert abs(norm_constant("hat", p) - 0.5) < 1e-14
        assert abs(norm_constant("check", p) - 1.0) < 1e-14

    def test_hat_by_quadrature(self, desk):
        spec = MeasureSpec("hat", desk)
        v, _ = quadlab.auto_refine(None, lambda z: spec.unnormalized_weight(np.angle(z)))
        assert abs(1 / v.real - norm_constant("hat", desk)) < 1e-9

    def test_unknown_family(self, desk):
        with pytest.raises(InvalidParameters):
            norm_constant("other", desk)


class TestMeasureSpec:
    def test_hat_vanishes_at_zero(self, desk):
        assert MeasureSpec("hat", desk).weight(0.0) == 0

    def test_check_lebesgue(self):
        w = MeasureSpec("check", QBParams.from_b(0.5, 1.0)).weight(np.linspace(0, 6, 50))
        assert np.max(np.abs(w - 1)) < 1e-14

    @pytest.mark.parametrize("family,t", [("hat", 0.0), ("check", 0.0), ("check", 0.3), ("pastro", 0.0)])
    def test_total_mass(self, desk, family, t):
        spec = MeasureSpec(family, desk, t)
        assert np.all(spec.weight(np.linspace(0, 2 * np.pi, 200)) >= 0)
        mass, _ = quadlab.auto_refine(spec, lambda z: np.ones_like(z))
        assert abs(mass - 1) < 1e-9

    def test_point_mass_only_for_check(self, desk):
        with pytest.raises(InvalidParameters):
            MeasureSpec("hat", desk, 0.3)
        with pytest.raises(InvalidParameters):
            MeasureSpec("check", desk, 1.0)

    @pytest.mark.parametrize("family,t", [("hat", 0.0), ("check", 0.0), ("check", 0.3), ("pastro", 0.0)])
    def test_moments_closed_vs_quadrature(self, desk, family, t):
        spec = MeasureSpec(family, desk, t)
        for j in range(-4, 5):
            v, _ = quadlab.auto_refine(spec, lambda z: z ** (-j))
            assert abs(v - measure_moment(spec, j)) < 1e-9


class TestHat:
    def test_degree_zero(self, desk):
        assert hat_opuc(desk, 0).monic[0].max_abs_diff([1]) == 0

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_anchor(self, q):
        seq = hat_opuc(QBParams.from_b(q, 1.0), 20)
        for k in range(1, 21):
            assert abs(seq.verblunsky[k - 1] + 1 / (k + 1)) < 1e-12
            # classical |1 - z|^2 polynomials: Phi_k = sum (j+1) z^j / (k+1)
            exact = np.arange(1, k + 2) / (k + 1)
            assert seq.monic[k].max_abs_diff(exact) < 1e-12

    def test_gram(self, desk):
        seq = hat_opuc(desk, 8)
        G, _ = quadlab.gram_matrix_refined(seq.measure, seq.orthonormal())
        assert np.max(np.abs(G - np.eye(9))) < 1e-8

    def test_closed_forms(self, desk):
        seq = hat_opuc(desk, 15)
        assert np.max(np.abs(seq.verblunsky - seq.verblunsky_closed)) < 1e-11
        assert np.max(np.abs(seq.kappa_product() - seq.kappa_inv_sq_closed)) < 1e-10
        assert seq.szego_recurrence_residual() < 1e-10


class TestCheck:
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_lebesgue_anchor(self, q):
        seq = check_opuc(QBParams.from_b(q, 1.0), 0.0, 15)
        for k in range(16):
            assert seq.monic[k].max_abs_diff(CPoly.monomial(k)) < 1e-12
        assert np.max(np.abs(seq.verblunsky)) < 1e-12
        assert np.max(np.abs(seq.kappa_inv_sq - 1)) < 1e-12

    def test_first_verblunsky(self, desk):
        seq = check_opuc(desk, 0.0, 1)
        alpha0 = 1 - 1 / _check_series(desk)
        assert abs(seq.verblunsky[0] - alpha0) < 1e-14
        assert seq.monic[1].max_abs_diff([-np.conj(alpha0), 1]) < 1e-14

    def test_point_mass_orthogonality(self):
        p = QBParams.from_b(0.5, 0.8 - 0.3j)
        seq = check_opuc(p, 0.3, 8)
        G, _ = quadlab.gram_matrix_refined(seq.measure, seq.orthonormal())
        assert np.max(np.abs(G - np.eye(9))) < 1e-8

    def test_monic_gram_is_diagonal(self, desk):
        seq = check_opuc(desk, 0.0, 6)
        G, _ = quadlab.gram_matrix_refined(seq.measure, list(seq.monic))
        assert np.max(np.abs(G - np.diag(seq.kappa_inv_sq_closed))) < 1e-10

    @pytest.mark.parametrize("t", [0.1, 0.3, 0.7])
    def test_point_mass_closed_forms(self, desk, t):
        seq = check_opuc(desk, t, 12)
        assert np.max(np.abs(seq.verblunsky - seq.verblunsky_closed)) < 1e-11
        assert np.max(np.abs(seq.kappa_product() - seq.kappa_inv_sq_closed)) < 1e-10


class TestPastro:
    def test_gram(self):
        seq = pastro_opuc(QBParams.from_b(0.5, 0.3 - 0.2j), 8)
        G, _ = quadlab.gram_matrix_refined(seq.measure, seq.orthonormal())
        assert np.max(np.abs(G - np.eye(9))) < 1e-8

    def test_closed_forms(self):
        seq = pastro_opuc(QBParams.from_b(0.5, 0.3 - 0.2j), 10)
        assert np.max(np.abs(seq.verblunsky - seq.verblunsky_closed)) < 1e-12
        assert np.max(np.abs(seq.kappa_product() - seq.kappa_inv_sq_closed)) < 1e-12


def test_build_unknown(desk):
    with pytest.raises(InvalidParameters):
        build_opuc("other", desk, 3)


class TestKernelIdentity:
    def test_k1(self):
        p = QBParams.from_b(0.5, 0.8 - 0.3j)
        r = cd_identity_check(p, 1)
        q, b = p.q, p.b
        expected = [(1 - _qpow(q, b.conjugate())) / (1 - _qpow(q, b)), 1]
        assert r["A"].max_abs_diff(expected) < 1e-12
        assert r["A_vs_P"] < 1e-12

    def test_b1_trivial(self):
        p = QBParams.from_b(0.5, 1.0)
        seq = check_opuc(p, 0.0, 6)
        assert np.max(np.abs(np.abs(seq.tau) - 1)) < 1e-12
        r = cd_identity_check(p, 3, seq)
        assert max(r["c_relation"], r["M_relation"], r["A_vs_P"]) < 1e-12

    def test_k6(self):
        r = cd_identity_check(QBParams.from_b(0.5, 1.2 - 0.4j), 6)
        assert max(r["A_vs_P"], r["c_relation"], r["M_relation"]) < 1e-10
        assert r["A"].max_abs_diff(p_poly(QBParams.from_b(0.5, 1.2 - 0.4j), 6)) < 1e-10

    def test_rejects_k0(self, desk):
        with pytest.raises(ValueError):
            cd_identity_check(desk, 0)


class TestSzego:
    def test_hat_value_at_zero(self, desk):
        q, b, lam = desk.q, desk.b, desk.lam
        cf = q**lam * math.cos(desk.eta_q)
        expected = math.sqrt(
            qpoch_infinite(q, q).real * qpoch_infinite(q ** (2 * lam), q).real / (2 * (1 - cf))
        ) / abs(qpoch_infinite(_qpow(q, b + 1), q))
        D0 = szego_function("hat", desk, 0.0)
        assert abs(D0 - expected) < 1e-15 and D0.real > 0

    @pytest.mark.parametrize("family", ["hat", "check"])
    def test_boundary_modulus(self, desk, family):
        theta = 2 * math.pi * np.arange(64) / 64
        D = szego_function(family, desk, np.exp(1j * theta))
        assert np.max(np.abs(np.abs(D) ** 2 - MeasureSpec(family, desk).weight(theta))) < 1e-10

    def test_check_approximants(self):
        z = 0.3 + 0.2j
        for b in (0.8 - 0.6j, 0.8, 1.2 - 0.4j):
            p = QBParams.from_b(0.5, b)
            seq = check_opuc(p, 0.0, 80)
            assert abs(szego_approximant(seq, 80, z) - szego_function("check", p, z)) < 1e-6

    def test_check_point_mass_scaling(self, desk):
        z = 0.3 + 0.2j
        seq = check_opuc(desk, 0.3, 320)
        D = szego_function("check", desk, z, t=0.3)
        assert abs(D - math.sqrt(0.7) * szego_function("check", desk, z)) < 1e-15
        # the point mass makes |alpha_k| ~ 1/k, so the error halves per doubling
        errs = np.array([abs(szego_approximant(seq, k, z) - D) for k in (80, 160, 320)])
        assert np.all(np.abs(errs[:-1] / errs[1:] - 2) < 0.05)

    def test_hat_approximants_converge_like_one_over_k(self, desk):
        # the hat weight has a zero at z = 1, so alpha_k ~ -1/k and the
        # approximants close in only at rate O(1/k)
        z = 0.3 + 0.2j
        seq = hat_opuc(desk, 320)
        D = szego_function("hat", desk, z)
        errs = np.array([abs(szego_approximant(seq, k, z) - D) for k in (40, 80, 160, 320)])
        ratios = errs[:-1] / errs[1:]
        assert np.all(np.abs(ratios - 2) < 0.1)
        assert errs[-1] < 5e-3

    def test_hat_anchor_exact_error(self):
        # at b = 1 the weight is |1 - z|^2 / 2 and D(z) = (1 - z)/sqrt(2); the
        # approximant error follows from the explicit Phi*_k
        p = QBParams.from_b(0.5, 1.0)
        seq = hat_opuc(p, 80)
        z = 0.2
        assert abs(szego_function("hat", p, z) - (1 - z) / math.sqrt(2)) < 1e-15
        k = 80
        star_k = sum((k + 1 - j) * z**j for j in range(k + 1)) / (k + 1)
        kappa = math.sqrt(2 * (k + 1) / (k + 2))
        exact = 1 / (kappa * star_k)
        assert abs(szego_approximant(seq, k, z) - exact) < 1e-13
        assert abs(exact - (1 - z) / math.sqrt(2)) > 1e-3

    def test_pastro_rejected(self, desk):
        with pytest.raises(InvalidParameters):
            szego_function("pastro", desk, 0.1)


def test_orthonormal_scaling(desk):
    seq = check_opuc(desk, 0.0, 4)
    assert abs(seq.kappa(3) ** -2 - seq.kappa_inv_sq[3]) < 1e-15
    assert evaluate(seq.orthonormal(2), 0.0) == pytest.approx(seq.kappa(2) * evaluate(seq.monic[2], 0.0))
    assert chainseq.maximal_params(desk, 1)[0] > 0
