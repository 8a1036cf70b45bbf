"""OPUC for the hat, check and Pastro measures.

Weights (densities with respect to ``dtheta / 2 pi``)::

    hat:    rho_hat   |(zeta;q)_inf|^2        / |(q^b zeta;q)_inf|^2
    check:  rho_check |(q zeta;q)_inf|^2      / |(q^b zeta;q)_inf|^2
    pastro: rho_p     |(q^1/2 zeta;q)_inf|^2  / |(q^{b+1/2} zeta;q)_inf|^2

The monic polynomials are assembled from the self-inversive ``R_k`` and a
parameter sequence of the chain sequence ``d_{k+1}``: the minimal one for
``hat`` and the maximal one (or its ``t``-modified variant) for ``check``.
Verblunsky coefficients follow ``alpha_{k-1} = -conj(Phi_k(0))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import chainseq
from .cpoly import CPoly, divide_by_z_minus_one, evaluate, star
from .exceptions import InvalidParameters
from .families import (
    BFamilyParams,
    L_moment,
    n_moment,
    p_poly,
    pastro_norm,
    pastro_poly,
    r_poly,
)
from .qcore import QBParams, _qpow, phi21_series, qpoch_finite, qpoch_infinite

FAMILIES = ("hat", "check", "pastro")


def _cos_factor(params):
    return params.q**params.lam * math.cos(params.eta_q)


def _check_series(params: QBParams) -> complex:
    """``2phi1(q, q^{1-b}; q^{conj(b)+1}; q, q^b)``."""
    q, b = params.q, params.b
    return phi21_series(q, _qpow(q, 1 - b), _qpow(q, b.conjugate() + 1), q, _qpow(q, b), params.tol)


def norm_constant(family: str, params: QBParams) -> float:
    """Constant making the family's weight a probability density."""
    q, b, tol = params.q, params.b, params.tol
    bbar = b.conjugate()
    qq = qpoch_infinite(q, q, tol).real
    if family == "hat":
        params.require_positive_lambda()
        val = qq * qpoch_infinite(q ** (2 * params.lam), q, tol).real / (
            2 * (1 - _cos_factor(params)) * abs(qpoch_infinite(_qpow(q, b + 1), q, tol)) ** 2
        )
    elif family == "check":
        params.require_positive_lambda()
        lead = (1 - _qpow(q, bbar)) / _check_series(params)
        val = (
            lead
            * qq
            * qpoch_infinite(q ** (2 * params.lam), q, tol)
            / abs(qpoch_infinite(_qpow(q, b), q, tol)) ** 2
        )
        if abs(val.imag) > 1e-10 * abs(val):
            raise ArithmeticError(f"check normalization is not real: {val!r}")
        val = val.real
    elif family == "pastro":
        val = qq * qpoch_infinite(q ** (2 * params.lam + 1), q, tol).real / abs(
            qpoch_infinite(_qpow(q, b + 1), q, tol)
        ) ** 2
    else:
        raise InvalidParameters(f"unknown family {family!r}")
    return float(val)


@dataclass(frozen=True)
class MeasureSpec:
    """A probability measure on the circle from one of the families.

    ``t > 0`` (check family only) mixes in a point mass: ``(1-t) mu + t delta_1``.
    """

    family: str
    params: QBParams
    t: float = 0.0
    norm_const: float = field(init=False, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameters(f"unknown family {self.family!r}")
        if not (0.0 <= self.t < 1.0):
            raise InvalidParameters(f"t must lie in [0, 1), got {self.t!r}")
        if self.t and self.family != "check":
            raise InvalidParameters("a point mass is only defined for the check family")
        object.__setattr__(self, "norm_const", norm_constant(self.family, self.params))

    @property
    def point_mass(self) -> float:
        return self.t

    def unnormalized_weight(self, theta):
        q, b, tol = self.params.q, self.params.b, self.params.tol
        zeta = np.exp(1j * np.asarray(theta, dtype=float))
        sigma, shift = {"hat": (1.0, b), "check": (q, b), "pastro": (math.sqrt(q), b + 0.5)}[
            self.family
        ]
        num = np.abs(qpoch_infinite(sigma * zeta, q, tol)) ** 2
        den = np.abs(qpoch_infinite(_qpow(q, shift) * zeta, q, tol)) ** 2
        return num / den

    def weight(self, theta):
        """Density w.r.t. ``dtheta/2pi`` of the absolutely continuous part."""
        return (1.0 - self.t) * self.norm_const * self.unnormalized_weight(theta)


def weight_density(spec: MeasureSpec, theta):
    return spec.weight(theta)


def measure_moment(spec: MeasureSpec, j: int) -> complex:
    """Closed-form ``int zeta^-j dmu``."""
    params = spec.params
    if j < 0:
        return measure_moment(spec, -j).conjugate()
    if spec.family == "hat":
        c1 = chainseq.c_coeff(params, 1)
        d1 = 0.5
        return (1 + c1**2) / (4 * d1) * (n_moment(params, d1, j) - n_moment(params, d1, j + 1))
    if spec.family == "pastro":
        return L_moment(BFamilyParams.pastro(params), j)
    # check: mu_{m+1} = mu_m - L[zeta^-m] / 2phi1(...)
    lp = BFamilyParams.p_family(params)
    series = _check_series(params)
    mu = 1.0 + 0.0j
    for m in range(j):
        mu -= L_moment(lp, m) / series
    return (1 - spec.t) * mu + spec.t


@dataclass(frozen=True)
class OPUCSequence:
    """Monic OPUC ``Phi_0..Phi_kmax`` with Verblunsky data.

    ``verblunsky[k-1] = alpha_{k-1}`` is read off the polynomials; the
    ``*_closed`` arrays hold the same quantities from closed forms so the two
    can be compared.
    """

    family: str
    params: QBParams
    monic: tuple
    verblunsky: np.ndarray
    kappa_inv_sq: np.ndarray
    verblunsky_closed: np.ndarray
    kappa_inv_sq_closed: np.ndarray
    t: float = 0.0
    tau: np.ndarray | None = None

    @property
    def kmax(self) -> int:
        return len(self.monic) - 1

    @property
    def measure(self) -> MeasureSpec:
        return MeasureSpec(self.family, self.params, self.t)

    def kappa(self, k) -> float:
        return 1.0 / math.sqrt(self.kappa_inv_sq[k])

    def orthonormal(self, k=None):
        if k is None:
            return [self.orthonormal(j) for j in range(self.kmax + 1)]
        return self.monic[k] * self.kappa(k)

    def szego_recurrence_residual(self) -> float:
        """``max_k || Phi_k - z Phi_{k-1} + conj(alpha_{k-1}) Phi*_{k-1} ||_inf``."""
        res = 0.0
        for k in range(1, self.kmax + 1):
            prev = self.monic[k - 1]
            rhs = prev.shift() - np.conj(self.verblunsky[k - 1]) * star(prev, k - 1)
            res = max(res, self.monic[k].max_abs_diff(rhs))
        return res

    def kappa_product(self) -> np.ndarray:
        """``prod_{j<k} (1 - |alpha_j|^2)`` for ``k = 0..kmax``."""
        return np.concatenate([[1.0], np.cumprod(1 - np.abs(self.verblunsky) ** 2)])


def _verblunsky_from_monic(monic):
    return np.array([-np.conj(p.coeffs[0]) for p in monic[1:]], dtype=complex)


def _inv_c_product(params, k):
    """``(q^lam cos;q)_k / (q^b;q)_k = 1 / prod_{j<=k} (1 + i c_j)``."""
    q = params.q
    return qpoch_finite(_cos_factor(params), q, k) / qpoch_finite(_qpow(q, params.b), q, k)


def _pochratio(params, k):
    """``(q^b;q)_k / (q^conj(b);q)_k``."""
    q, b = params.q, params.b
    return qpoch_finite(_qpow(q, b), q, k) / qpoch_finite(_qpow(q, b.conjugate()), q, k)


def hat_opuc(params: QBParams, kmax: int) -> OPUCSequence:
    """Monic OPUC for the hat measure."""
    params.require_positive_lambda()
    q, lam, ceq = params.q, params.lam, math.cos(params.eta_q)
    bbar = params.b.conjugate()
    R = r_poly(params, kmax + 1)
    ell = chainseq.minimal_params(params, kmax)

    monic = []
    for k in range(kmax + 1):
        num = R[k + 1] - 2 * (1 - ell[k]) * R[k]
        monic.append(divide_by_z_minus_one(num) * _inv_c_product(params, k + 1))
    monic[0] = CPoly([1])

    alpha_closed = np.array(
        [
            -(1 - 2 * ell[k] * (1 - q ** (lam + k) * ceq) / (1 - _qpow(q, bbar + k)))
            * _pochratio(params, k)
            for k in range(1, kmax + 1)
        ],
        dtype=complex,
    )
    kap_closed = np.array(
        [
            (
                qpoch_finite(q, q, k)
                * qpoch_finite(q ** (2 * lam), q, k)
                / (qpoch_finite(_qpow(q, params.b + 1), q, k) * qpoch_finite(_qpow(q, bbar + 1), q, k))
                * (1 - q ** (lam + k) * ceq)
                / (1 - q**lam * ceq)
                * (1 - ell[k])
            ).real
            for k in range(kmax + 1)
        ]
    )
    alpha = _verblunsky_from_monic(monic)
    return OPUCSequence(
        family="hat",
        params=params,
        monic=tuple(monic),
        verblunsky=alpha,
        kappa_inv_sq=np.concatenate([[1.0], np.cumprod(1 - np.abs(alpha) ** 2)]),
        verblunsky_closed=alpha_closed,
        kappa_inv_sq_closed=kap_closed,
    )


def check_opuc(params: QBParams, t: float = 0.0, kmax: int = 0) -> OPUCSequence:
    """Monic OPUC for ``(1-t) mu_check + t delta_1``; ``t = 0`` is the check measure."""
    params.require_positive_lambda()
    q, lam, ceq = params.q, params.lam, math.cos(params.eta_q)
    bbar = params.b.conjugate()
    R = r_poly(params, kmax)
    # m[k] = m_k for k = 0..kmax+1 (equals M_k when t = 0)
    if t == 0.0:
        m = np.concatenate([[0.0], chainseq.maximal_params(params, kmax)])
    else:
        m = chainseq.modified_minimal_params(params, t, kmax + 1)

    monic = [CPoly([1])]
    for k in range(1, kmax + 1):
        monic.append((R[k] - 2 * (1 - m[k]) * R[k - 1]) * _inv_c_product(params, k))

    alpha_closed = np.array(
        [
            (1 - 2 * m[k] * (1 - q ** (lam + k - 1) * ceq) / (1 - _qpow(q, bbar + k - 1)))
            * _pochratio(params, k - 1)
            for k in range(1, kmax + 1)
        ],
        dtype=complex,
    )
    kap_closed = np.array(
        [
            (
                qpoch_finite(q, q, k)
                * qpoch_finite(q ** (2 * lam), q, k)
                / (qpoch_finite(_qpow(q, params.b), q, k) * qpoch_finite(_qpow(q, bbar), q, k))
                * (1 - q**lam * ceq)
                / (1 - q ** (lam + k) * ceq)
                * m[1]
                / m[k + 1]
            ).real
            for k in range(kmax + 1)
        ]
    )
    alpha = _verblunsky_from_monic(monic)
    tau = np.array(
        [evaluate(p, 1.0) / evaluate(star(p, k), 1.0) for k, p in enumerate(monic)],
        dtype=complex,
    )
    return OPUCSequence(
        family="check",
        params=params,
        monic=tuple(monic),
        verblunsky=alpha,
        kappa_inv_sq=np.concatenate([[1.0], np.cumprod(1 - np.abs(alpha) ** 2)]),
        verblunsky_closed=alpha_closed,
        kappa_inv_sq_closed=kap_closed,
        t=t,
        tau=tau,
    )


def pastro_opuc(params: QBParams, kmax: int) -> OPUCSequence:
    """Monic Pastro OPUC (``lam > -1/2``) with norms from the closed form."""
    monic = tuple(pastro_poly(params, k) for k in range(kmax + 1))
    alpha = _verblunsky_from_monic(monic)
    q, b = params.q, params.b
    # alpha_{k-1} = -conj(Phi_k(0)) evaluated on the 2phi1 representation
    alpha_closed = np.array(
        [
            -np.conj(
                qpoch_finite(_qpow(q, b.conjugate()), q, k)
                / qpoch_finite(_qpow(q, b + 1), q, k)
                * q ** (k / 2)
            )
            for k in range(1, kmax + 1)
        ],
        dtype=complex,
    )
    return OPUCSequence(
        family="pastro",
        params=params,
        monic=monic,
        verblunsky=alpha,
        kappa_inv_sq=np.concatenate([[1.0], np.cumprod(1 - np.abs(alpha) ** 2)]),
        verblunsky_closed=alpha_closed,
        kappa_inv_sq_closed=np.array([pastro_norm(params, k) for k in range(kmax + 1)]),
    )


def build_opuc(family: str, params: QBParams, kmax: int, t: float = 0.0) -> OPUCSequence:
    if family == "hat":
        return hat_opuc(params, kmax)
    if family == "check":
        return check_opuc(params, t, kmax)
    if family == "pastro":
        return pastro_opuc(params, kmax)
    raise InvalidParameters(f"unknown family {family!r}")


def cd_identity_check(params: QBParams, k: int, seq: OPUCSequence | None = None) -> dict:
    """Residuals of the kernel identity ``A_k = P_k`` and the tau relations.

    ``A_k`` is the monic multiple of ``(Phi_{k+1} - tau_{k+1} Phi*_{k+1})/(z-1)``,
    i.e. of the Christoffel-Darboux kernel ``K_k(z, 1)``. The tau relations
    at index ``k`` are

    * ``-Im(tau_{k-1} alpha_{k-1}) / (1 - Re(tau_{k-1} alpha_{k-1})) = c_k``
    * ``|1 - tau_{k-1} alpha_{k-1}|^2 / (2 (1 - Re(...))) = M_k``
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if seq is None or seq.kmax < k + 1 or seq.t != 0.0 or seq.family != "check":
        seq = check_opuc(params, 0.0, k + 1)
    phi = seq.monic[k + 1]
    raw = divide_by_z_minus_one(phi - seq.tau[k + 1] * star(phi, k + 1))
    A = raw / raw.leading()
    ta = seq.tau[k - 1] * seq.verblunsky[k - 1]
    M_k = chainseq.maximal_param(params, k - 1)
    return {
        "A_vs_P": A.max_abs_diff(p_poly(params, k)),
        "c_relation": abs(-ta.imag / (1 - ta.real) - chainseq.c_coeff(params, k)),
        "M_relation": abs(0.5 * abs(1 - ta) ** 2 / (1 - ta.real) - M_k),
        "A": A,
    }


def szego_function(family: str, params: QBParams, z, t: float = 0.0):
    """Szego function ``D(z)`` for ``|z| <= 1``; ``z`` may be an array.

    For ``t > 0`` (check family) only the absolutely continuous part
    ``(1-t) mu_check`` enters, giving ``sqrt(1-t) * D_check``.
    """
    params.require_positive_lambda()
    q, b, lam, tol = params.q, params.b, params.lam, params.tol
    z = np.asarray(z, dtype=complex)
    qq = qpoch_infinite(q, q, tol).real
    q2l = qpoch_infinite(q ** (2 * lam), q, tol).real
    cf = _cos_factor(params)
    if family == "hat":
        const = math.sqrt(qq * q2l / (2 * (1 - cf))) / abs(qpoch_infinite(_qpow(q, b + 1), q, tol))
        ratio = qpoch_infinite(z, q, tol) / qpoch_infinite(_qpow(q, b) * z, q, tol)
    elif family == "check":
        M1 = chainseq.initial_max_param(params)
        const = math.sqrt(2 * M1 * qq * q2l * (1 - cf)) / abs(qpoch_infinite(_qpow(q, b), q, tol))
        const *= math.sqrt(1 - t)
        ratio = qpoch_infinite(q * z, q, tol) / qpoch_infinite(_qpow(q, b) * z, q, tol)
    else:
        raise InvalidParameters(f"no Szego function for family {family!r}")
    out = const * np.asarray(ratio)
    return complex(out) if out.ndim == 0 else out


def szego_approximant(seq: OPUCSequence, k: int, z) -> complex:
    """``1 / (kappa_k Phi*_k(z))``, which tends to ``D(z)`` inside the disk."""
    return 1.0 / (seq.kappa(k) * evaluate(star(seq.monic[k], k), z))
