"""Named invariant checks run by ``qopuc verify``.

Each check yields a residual and a threshold; a check passes when
``residual < threshold``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chainseq, families, opuc, quadlab
from .cpoly import check_interlacing, roots, star
from .qcore import QBParams


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.threshold)


def _max(values):
    values = list(values)
    return float(max(values)) if values else 0.0


def _r_checks(params, kmax):
    R = families.r_poly(params, kmax)
    yield CheckResult(
        "R_k self-inversive", _max(R[k].max_abs_diff(star(R[k], k)) for k in range(kmax + 1)), 1e-12
    )
    yield CheckResult(
        "R_k closed form vs recurrence",
        _max(R[k].max_abs_diff(families.r_poly_closed(params, k)) for k in range(kmax + 1)),
        1e-11,
    )
    yield CheckResult(
        "R_k = scale * P_k",
        _max(
            R[k].max_abs_diff(families.p_poly(params, k) * families.r_scale(params, k))
            for k in range(kmax + 1)
        ),
        1e-11,
    )
    zs = [roots(R[k]) for k in range(1, kmax + 1)]
    yield CheckResult("zeros of R_k on |z| = 1", _max(z.max_radial_residual for z in zs), 1e-8)
    bad = sum(not check_interlacing(zs[i], zs[i + 1])[0] for i in range(len(zs) - 1))
    yield CheckResult("zeros of R_k interlace (failures)", float(bad), 1.0)


def _chain_checks(params, kmax):
    d = np.array([chainseq.d_coeff(params, k) for k in range(1, kmax + 1)])
    ell = chainseq.minimal_params(params, kmax)
    M = chainseq.maximal_params(params, kmax)
    yield CheckResult("chain identity (1-ell_k) ell_{k+1} = d_{k+1}", _max(abs((1 - ell[:-1]) * ell[1:] - d)), 1e-13)
    yield CheckResult("chain identity (1-M_k) M_{k+1} = d_{k+1}", _max(abs((1 - M[:-1]) * M[1:] - d)), 1e-13)
    yield CheckResult("ell_{k+1} < M_{k+1} (max of ell - M)", float(np.max(ell - M)), 0.0)
    R = families.r_poly(params, kmax + 1)
    closed = [1 - R[k + 1](1.0) / (2 * R[k](1.0)) for k in range(kmax + 1)]
    yield CheckResult("ell closed form via R_k(1)", _max(abs(np.array(closed) - ell)), 1e-11)


def _bcd_checks(params, kmax):
    fp = families.BFamilyParams.p_family(params)
    rec = families.bcd_poly_by_recurrence(fp, kmax)
    yield CheckResult(
        "B_k closed form vs recurrence",
        _max(rec[k].max_abs_diff(families.bcd_poly(fp, k)) for k in range(kmax + 1)),
        1e-11,
    )
    res = 0.0
    for k in range(1, kmax + 1):
        for j in range(k + 1):
            target = families.rho_bc(fp, k) if j == k else 0.0
            res = max(res, abs(families.apply_L(fp, rec[k], j) - target))
    yield CheckResult("biorthogonality L[zeta^-j B_k]", res, 1e-10)


def _moment_checks(params, jmax=6, d1=0.5):
    fp = families.BFamilyParams.p_family(params)
    res_L = res_N = 0.0
    for j in range(-jmax, jmax + 1):
        v, _ = quadlab.auto_refine(None, lambda z: z ** (-j) * families.L_density(fp, z))
        res_L = max(res_L, abs(v - families.L_moment(fp, j)))
        v, _ = quadlab.auto_refine(None, lambda z: z ** (-j) * families.n_density(params, d1, z))
        res_N = max(res_N, abs(v - families.n_moment(params, d1, j)))
    yield CheckResult("L moments closed form vs quadrature", res_L, 1e-8)
    yield CheckResult("nu_j closed form vs quadrature", res_N, 1e-8)
    sym = _max(
        abs(families.n_moment(params, d1, j) + np.conj(families.n_moment(params, d1, 1 - j)))
        for j in range(1, jmax + 1)
    )
    yield CheckResult("nu_j = -conj(nu_{1-j})", sym, 1e-14)


def _opuc_checks(label, seq):
    yield CheckResult(f"{label}: Szego recurrence", seq.szego_recurrence_residual(), 1e-10)
    yield CheckResult(f"{label}: max |alpha|", _max(np.abs(seq.verblunsky)), 1.0)
    yield CheckResult(
        f"{label}: alpha closed form vs -conj(Phi_k(0))",
        _max(np.abs(seq.verblunsky - seq.verblunsky_closed)),
        1e-11,
    )
    yield CheckResult(
        f"{label}: kappa^-2 closed form vs product",
        _max(np.abs(seq.kappa_inv_sq - seq.kappa_inv_sq_closed)),
        1e-10,
    )
    spec = seq.measure
    G, _ = quadlab.gram_matrix_refined(spec, seq.orthonormal())
    yield CheckResult(f"{label}: Gram matrix = identity", float(np.max(np.abs(G - np.eye(len(G))))), 1e-8)
    mass, _ = quadlab.auto_refine(spec, lambda z: np.ones_like(z))
    yield CheckResult(f"{label}: total mass = 1", abs(mass - 1), 1e-9)


def _szego_checks(params):
    theta = 2 * np.pi * np.arange(64) / 64
    for fam in ("hat", "check"):
        spec = opuc.MeasureSpec(fam, params)
        D = opuc.szego_function(fam, params, np.exp(1j * theta))
        yield CheckResult(f"{fam}: |D(e^it)|^2 = weight", _max(abs(np.abs(D) ** 2 - spec.weight(theta))), 1e-10)


def run_suite(params: QBParams, kmax: int = 8, t: float = 0.3) -> list[CheckResult]:
    """Run every invariant check at ``params``; ``t`` drives the point-mass family."""
    params.require_positive_lambda()
    out = []
    out += _r_checks(params, kmax)
    out += _chain_checks(params, max(kmax, 60))
    out += _bcd_checks(params, kmax)
    out += _moment_checks(params)
    out += _opuc_checks("hat", opuc.hat_opuc(params, kmax))
    out += _opuc_checks("check", opuc.check_opuc(params, 0.0, kmax))
    if t:
        out += _opuc_checks(f"check t={t:g}", opuc.check_opuc(params, t, kmax))
    out += _szego_checks(params)
    cd = [opuc.cd_identity_check(params, k) for k in range(1, kmax + 1)]
    out.append(CheckResult("A_k = P_k", _max(r["A_vs_P"] for r in cd), 1e-10))
    out.append(CheckResult("tau relation for c_k", _max(r["c_relation"] for r in cd), 1e-10))
    out.append(CheckResult("tau relation for M_k", _max(r["M_relation"] for r in cd), 1e-10))
    return out
