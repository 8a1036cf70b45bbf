import numpy as np
import pytest

from qopuc import quadlab
from qopuc.chainseq import c_coeff, d_coeff
from qopuc.cpoly import CPoly, evaluate
from qopuc.exceptions import DegenerateParameters
from qopuc.families import (
    BFamilyParams,
    L_density,
    L_moment,
    NMomentData,
    apply_L,
    apply_N,
    bcd_coeffs,
    bcd_poly,
    bcd_poly_by_recurrence,
    gamma_seq,
    n_density,
    n_moment,
    p_poly,
    pastro_norm,
    pastro_poly,
    q_poly,
    qr_ratio_limit,
    r_asymptotic_limit,
    r_poly,
    r_poly_closed,
    r_scale,
    rho_bc,
)
from qopuc.opuc import MeasureSpec
from qopuc.qcore import QBParams, _qpow, qpoch_infinite


@pytest.fixture
def p():
    return QBParams.from_b(0.5, 0.8 - 0.3j)


class TestBCD:
    def test_degree_zero(self):
        fp = BFamilyParams.pastro(QBParams.from_b(0.5, 0.8))
        assert bcd_poly(fp, 0).max_abs_diff([1]) == 0

    def test_degree_one(self, p):
        fp = BFamilyParams.pastro(p)
        C1 = bcd_coeffs(fp, 1).Cfrak_k
        assert bcd_poly(fp, 1).max_abs_diff([C1, 1]) < 1e-14

    def test_closed_vs_recurrence(self):
        fp = BFamilyParams.pastro(QBParams.from_b(0.5, 0.8))
        rec = bcd_poly_by_recurrence(fp, 5)
        assert bcd_poly(fp, 5).max_abs_diff(rec[5]) < 1e-12

    def test_general_family_biorthogonal(self):
        fp = BFamilyParams(0.5, 0.4 + 0.2j, 0.7 - 0.1j, 0.9 + 0.3j)
        B = bcd_poly_by_recurrence(fp, 6)
        for k in range(1, 7):
            assert bcd_poly(fp, k).max_abs_diff(B[k]) < 1e-11
            for j in range(k):
                assert abs(apply_L(fp, B[k], j)) < 1e-11
            assert abs(apply_L(fp, B[k], k) - rho_bc(fp, k)) < 1e-11

    def test_degenerate(self):
        fp = BFamilyParams(0.5, -1.0, 0.3, 0.5)
        with pytest.raises(DegenerateParameters):
            bcd_poly(fp, 2)


class TestLMoments:
    def test_zero(self, p):
        assert L_moment(BFamilyParams.p_family(p), 0) == 1

    def test_one(self):
        q, b = 0.5, 0.8 + 0j
        fp = BFamilyParams(q, b, 2 * b - 2, b)
        expected = (1 - _qpow(q, -b)) / (1 - _qpow(q, fp.c - b + 2)) * _qpow(q, fp.d)
        assert abs(L_moment(fp, 1) - expected) < 1e-15

    def test_quadrature(self, p):
        fp = BFamilyParams.p_family(p)
        assert fp.integral_rep_valid
        for j in range(-4, 5):
            v, _ = quadlab.auto_refine(None, lambda z: z ** (-j) * L_density(fp, z))
            assert abs(v - L_moment(fp, j)) < 1e-8


class TestPastro:
    def test_degree_zero(self):
        assert pastro_poly(QBParams.from_b(0.5, 0.3 - 0.2j), 0).max_abs_diff([1]) == 0

    @pytest.mark.parametrize("k", [2, 3])
    def test_norm_by_quadrature(self, k):
        params = QBParams.from_b(0.5, 0.3 - 0.2j)
        phi = pastro_poly(params, k)
        spec = MeasureSpec("pastro", params)
        v, _ = quadlab.auto_refine(spec, lambda z: np.abs(evaluate(phi, z)) ** 2)
        assert abs(v - pastro_norm(params, k)) < 1e-8

    def test_negative_lambda_allowed(self):
        params = QBParams.from_b(0.5, -0.3 + 0.1j)
        phi = pastro_poly(params, 3)
        assert phi.degree == 3


class TestPAndR:
    def test_p_degree_one(self, p):
        q, b = p.q, p.b
        expected = (1 - _qpow(q, b.conjugate())) / (1 - _qpow(q, b))
        assert p_poly(p, 1).max_abs_diff([expected, 1]) < 1e-15

    def test_p_is_bcd_member(self, p):
        fp = BFamilyParams.p_family(p)
        for k in range(6):
            assert p_poly(p, k).max_abs_diff(bcd_poly(fp, k)) < 1e-12

    def test_r_is_scaled_p(self, p):
        assert r_poly(p, 5)[5].max_abs_diff(p_poly(p, 5) * r_scale(p, 5)) < 1e-12

    def test_r_initial(self, p):
        R = r_poly(p, 1)
        c1 = c_coeff(p, 1)
        assert R[0].max_abs_diff([1]) == 0
        assert R[1].max_abs_diff([1 - 1j * c1, 1 + 1j * c1]) == 0

    def test_real_b_gives_real_coefficients(self):
        R = r_poly(QBParams.from_b(0.5, 0.8), 8)
        assert all(np.all(r.coeffs.imag == 0) for r in R)

    def test_closed_vs_recurrence(self, p):
        assert r_poly_closed(p, 6).max_abs_diff(r_poly(p, 6)[6]) < 1e-11

    def test_limit_at_zero(self, p):
        q = p.q
        expected = qpoch_infinite(_qpow(q, p.b.conjugate()), q) / qpoch_infinite(
            q**p.lam * np.cos(p.eta_q), q
        )
        assert abs(r_asymptotic_limit(p, 0.0) - expected) < 1e-15

    def test_limit(self):
        params = QBParams.from_b(0.5, 0.8)
        assert abs(r_poly(params, 20)[20](0.2) - r_asymptotic_limit(params, 0.2)) < 1e-5
        assert r_asymptotic_limit(params, 0.2).imag == 0


class TestQ:
    def test_initial(self, p):
        Q = q_poly(p, 0.5, 1)
        assert Q[0].is_zero()
        assert Q[1].max_abs_diff([1.0]) == 0

    def test_degrees(self, p):
        Q = q_poly(p, 0.5, 12)
        assert all(Q[k].degree == k - 1 for k in range(1, 13))

    def test_ratio_limit(self, p):
        R, Q = r_poly(p, 60), q_poly(p, 0.5, 60)
        assert abs(Q[60](0.3) / R[60](0.3) - qr_ratio_limit(p, 0.5, 0.3)) < 1e-6


class TestNMoments:
    def test_nu0(self, p):
        d1 = 0.5
        assert abs(n_moment(p, d1, 0) - 2 * d1 / (1 + 1j * c_coeff(p, 1))) < 1e-15

    def test_symmetry(self, p):
        for j in range(1, 8):
            assert abs(n_moment(p, 0.5, j) + np.conj(n_moment(p, 0.5, 1 - j))) < 1e-14

    def test_nu2_quadrature(self, p):
        v, _ = quadlab.auto_refine(None, lambda z: z ** (-2) * n_density(p, 0.5, z))
        assert abs(v - n_moment(p, 0.5, 2)) < 1e-8

    def test_gamma(self, p):
        g = gamma_seq(p, 0.5, 5)
        assert g[0] == n_moment(p, 0.5, 0)
        for k in range(1, 6):
            assert abs(g[k] - 4 * d_coeff(p, k) / (1 + 1j * c_coeff(p, k + 1)) * g[k - 1]) < 1e-15

    def test_r_quasi_orthogonal(self, p):
        # N[zeta^-j R_k] = 0 for 1 <= j <= k-1
        R = r_poly(p, 6)
        for k in range(2, 7):
            for j in range(1, k):
                assert abs(apply_N(p, 0.5, R[k], j)) < 1e-12

    def test_bundle(self, p):
        data = NMomentData.compute(p, jmax=3, kmax=2)
        assert set(data.nu_j) == set(range(-3, 4))
        assert len(data.gamma_k) == 3


def test_exported_polys_are_cpoly(p):
    assert isinstance(pastro_poly(p, 2), CPoly)
