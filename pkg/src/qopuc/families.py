"""Basic hypergeometric polynomial families and their moment functionals.

The general monic family is::

    B_k(z) = (q^{c-b+1};q)_k / (q^{b+1};q)_k * q^{k(b-d+1)}
             * 2phi1(q^-k, q^{b+1}; q^{-c+b-k}; q, q^{-c+d-1} z)

with three-term recurrence ``B_{k+1} = (z + C_{k+1}) B_k - D_{k+1} z B_{k-1}``
and moments ``L[zeta^-j] = (q^-b;q)_j / (q^{c-b+2};q)_j * q^{jd}``.
The Pastro OPUC, the polynomials ``P_k``, and the self-inversive ``R_k`` are
special cases or rescalings.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .cpoly import CPoly
from .exceptions import DegenerateParameters, DegenerateLowerParameter
from .qcore import (
    QBParams,
    _qpow,
    _terminating_terms,
    phi21_series,
    qpoch_finite,
    qpoch_infinite,
    qpoch_signed,
)
from .chainseq import c_coeff, d_coeff

logger = logging.getLogger(__name__)

MONIC_TOL = 1e-12
DEFAULT_D1 = 0.5


@dataclass(frozen=True)
class BFamilyParams:
    """Parameters ``(q, b, c, d)`` of the general biorthogonal family."""

    q: float
    b: complex
    c: complex
    d: complex
    tol: float = 1e-15

    def __post_init__(self):
        for name in ("b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not (0.0 < self.q < 1.0):
            raise DegenerateParameters(f"q must lie in (0, 1), got {self.q!r}")

    def check(self, kmax):
        """Quasi-definiteness up to index ``kmax``: no vanishing denominator."""
        q, b, c = self.q, self.b, self.c
        for k in range(1, kmax + 2):
            if abs(1 - _qpow(q, b + k)) < 1e-14:
                raise DegenerateParameters(f"1 - q^(b+{k}) vanishes")
            if abs(1 - _qpow(q, c - b + k)) < 1e-14:
                raise DegenerateParameters(f"1 - q^(c-b+{k}) vanishes")
        return self

    @property
    def integral_rep_valid(self) -> bool:
        return (self.c + 2).real > self.d.real > 0

    @classmethod
    def pastro(cls, params: QBParams):
        b = params.b
        return cls(params.q, b, b + b.conjugate() - 1, b + 0.5, params.tol)

    @classmethod
    def p_family(cls, params: QBParams):
        b = params.b
        return cls(params.q, b - 1, b + b.conjugate() - 2, b, params.tol)


@dataclass(frozen=True)
class RecurrenceCoeffsBCD:
    Cfrak_k: complex
    Dfrak_k1: complex


def bcd_coeffs(params: BFamilyParams, k: int) -> RecurrenceCoeffsBCD:
    """``(C_k, D_{k+1})`` of the three-term recurrence, ``k >= 1``."""
    q, b, c, d = params.q, params.b, params.c, params.d
    s = _qpow(q, b - d + 1)
    C = (1 - _qpow(q, c - b + k)) / (1 - _qpow(q, b + k)) * s
    D = (
        (1 - q**k)
        * (1 - _qpow(q, c + k + 1))
        / ((1 - _qpow(q, b + k)) * (1 - _qpow(q, b + k + 1)))
        * s
    )
    return RecurrenceCoeffsBCD(complex(C), complex(D))


def _monic(p: CPoly, label: str) -> CPoly:
    dev = abs(p.leading() - 1)
    if dev > 1e-6:
        raise DegenerateParameters(f"{label}: leading coefficient {p.leading()!r}")
    if dev > MONIC_TOL:
        logger.debug("%s: leading coefficient deviates from 1 by %.3e", label, dev)
        return p / p.leading()
    return p


def _terminating_poly(k, upper_b, lower_c, q, scale, prefactor):
    try:
        terms = _terminating_terms(k, upper_b, lower_c, q)
    except DegenerateLowerParameter as exc:
        raise DegenerateParameters(str(exc)) from exc
    return CPoly(prefactor * terms * scale ** np.arange(k + 1))


def bcd_poly(params: BFamilyParams, k: int) -> CPoly:
    """Monic ``B_k`` from its terminating 2phi1 representation."""
    if k == 0:
        return CPoly([1])
    params.check(k)
    q, b, c, d = params.q, params.b, params.c, params.d
    pre = (
        qpoch_finite(_qpow(q, c - b + 1), q, k)
        / qpoch_finite(_qpow(q, b + 1), q, k)
        * _qpow(q, k * (b - d + 1))
    )
    p = _terminating_poly(k, _qpow(q, b + 1), _qpow(q, -c + b - k), q, _qpow(q, -c + d - 1), pre)
    return _monic(p, f"B_{k}")


def bcd_poly_by_recurrence(params: BFamilyParams, kmax: int) -> list[CPoly]:
    """``[B_0, ..., B_kmax]`` from the three-term recurrence."""
    params.check(kmax)
    z = CPoly([0, 1])
    out = [CPoly([1])]
    if kmax >= 1:
        out.append(z + bcd_coeffs(params, 1).Cfrak_k)
    for k in range(1, kmax):
        C1 = bcd_coeffs(params, k + 1).Cfrak_k
        D1 = bcd_coeffs(params, k).Dfrak_k1
        nxt = (z + C1) * out[k] - D1 * out[k - 1].shift()
        out.append(_monic(nxt, f"B_{k + 1}"))
    return out


def L_moment(params: BFamilyParams, j: int) -> complex:
    """Closed-form moment ``L[zeta^-j]`` for any integer ``j``."""
    q, b, c, d = params.q, params.b, params.c, params.d
    try:
        num = qpoch_signed(_qpow(q, -b), q, j)
        den = qpoch_signed(_qpow(q, c - b + 2), q, j)
    except DegenerateLowerParameter as exc:
        raise DegenerateParameters(str(exc)) from exc
    if abs(den) < 1e-300:
        raise DegenerateParameters(f"moment denominator vanishes at j = {j}")
    return complex(num / den * _qpow(q, j * d))


def apply_L(params: BFamilyParams, p: CPoly, j: int) -> complex:
    """``L[zeta^-j p(zeta)]`` by linearity over the closed-form moments."""
    return complex(sum(a * L_moment(params, j - m) for m, a in enumerate(p.coeffs)))


def rho_bc(params: BFamilyParams, k: int) -> complex:
    """Biorthogonality constant ``rho_k^{(b,c)}``."""
    q, b, c = params.q, params.b, params.c
    return complex(
        qpoch_finite(q, q, k)
        * qpoch_finite(_qpow(q, c + 2), q, k)
        / (qpoch_finite(_qpow(q, b + 1), q, k) * qpoch_finite(_qpow(q, c - b + 2), q, k))
    )


def L_density(params: BFamilyParams, zeta):
    """Integrand of the contour representation of ``L`` w.r.t. ``dtheta/2pi``.

    Valid when ``Re(c+2) > Re(d) > 0``; then
    ``L[zeta^-j] = mean over the circle of zeta^-j * L_density(zeta)``.
    """
    q, b, c, d, tol = params.q, params.b, params.c, params.d, params.tol
    zeta = np.asarray(zeta, dtype=complex)
    const = (
        qpoch_infinite(q, q, tol)
        * qpoch_infinite(_qpow(q, c + 2), q, tol)
        / (qpoch_infinite(_qpow(q, b + 1), q, tol) * qpoch_infinite(_qpow(q, c - b + 2), q, tol))
    )
    num = qpoch_infinite(_qpow(q, -b + d) * zeta, q, tol) * qpoch_infinite(
        _qpow(q, b - d + 1) / zeta, q, tol
    )
    den = qpoch_infinite(_qpow(q, d) * zeta, q, tol) * qpoch_infinite(
        _qpow(q, c + 2 - d) / zeta, q, tol
    )
    return const * num / den


def pastro_poly(params: QBParams, k: int) -> CPoly:
    """Monic Pastro OPUC ``B_k^{(b, b+conj(b)-1, b+1/2)}``."""
    return bcd_poly(BFamilyParams.pastro(params), k)


def pastro_norm(params: QBParams, k: int) -> float:
    """Squared norm ``rho_k^{(b, b+conj(b)-1)}`` of the monic Pastro polynomial."""
    return rho_bc(BFamilyParams.pastro(params), k).real


def _cos_factor(params: QBParams) -> float:
    return params.q**params.lam * math.cos(params.eta_q)


def p_poly(params: QBParams, k: int) -> CPoly:
    """Monic ``P_k(b; z) = B_k^{(b-1, b+conj(b)-2, b)}``."""
    if k == 0:
        return CPoly([1])
    q, b = params.q, params.b
    bbar = b.conjugate()
    if abs(1 - _qpow(q, b)) < 1e-14:
        raise DegenerateParameters("b must avoid 0, -1, -2, ...")
    pre = qpoch_finite(_qpow(q, bbar), q, k) / qpoch_finite(_qpow(q, b), q, k)
    p = _terminating_poly(k, _qpow(q, b), _qpow(q, -bbar - k + 1), q, _qpow(q, -bbar + 1), pre)
    return _monic(p, f"P_{k}")


def r_scale(params: QBParams, k: int) -> complex:
    """``(q^b;q)_k / (q^lam cos(eta_q);q)_k``, so that ``R_k = r_scale * P_k``."""
    q = params.q
    return complex(
        qpoch_finite(_qpow(q, params.b), q, k) / qpoch_finite(_cos_factor(params), q, k)
    )


def _three_term(params: QBParams, first, second, kmax):
    z = CPoly([0, 1])
    out = [first, second][: kmax + 1]
    for k in range(1, kmax):
        ck = c_coeff(params, k + 1)
        lin = CPoly([1 - 1j * ck, 1 + 1j * ck])
        out.append(lin * out[k] - 4 * d_coeff(params, k) * out[k - 1].shift())
    return out


def r_poly(params: QBParams, kmax: int) -> list[CPoly]:
    """``[R_0, ..., R_kmax]`` from the three-term recurrence."""
    params.require_positive_lambda()
    c1 = c_coeff(params, 1)
    return _three_term(params, CPoly([1]), CPoly([1 - 1j * c1, 1 + 1j * c1]), kmax)


def r_poly_closed(params: QBParams, k: int) -> CPoly:
    """``R_k`` from its terminating 2phi1 representation."""
    if k == 0:
        return CPoly([1])
    q, b = params.q, params.b
    bbar = b.conjugate()
    pre = qpoch_finite(_qpow(q, bbar), q, k) / qpoch_finite(_cos_factor(params), q, k)
    return _terminating_poly(k, _qpow(q, b), _qpow(q, -bbar - k + 1), q, _qpow(q, -bbar + 1), pre)


def q_poly(params: QBParams, d1: float = DEFAULT_D1, kmax: int = 0) -> list[CPoly]:
    """``[Q_0, ..., Q_kmax]``: same recurrence as ``R``, ``Q_0 = 0``, ``Q_1 = 2 d1``."""
    params.require_positive_lambda()
    if d1 == 0:
        raise ValueError("d1 must be nonzero")
    return _three_term(params, CPoly([0]), CPoly([2 * d1]), kmax)


def n_moment(params: QBParams, d1: float, j: int) -> complex:
    """``nu_j = N[zeta^-j]`` for any integer ``j``."""
    q, b = params.q, params.b
    bbar = b.conjugate()
    pre = 2 * d1 * (1 - _cos_factor(params)) / (1 - _qpow(q, b))
    ratio = qpoch_signed(_qpow(q, -b), q, j) / qpoch_signed(_qpow(q, bbar), q, j)
    return complex(pre * ratio * _qpow(q, j * b))


def apply_N(params: QBParams, d1: float, p: CPoly, j: int) -> complex:
    """``N[zeta^-j p(zeta)]`` by linearity."""
    return complex(sum(a * n_moment(params, d1, j - m) for m, a in enumerate(p.coeffs)))


def n_density(params: QBParams, d1: float, zeta):
    """Integrand representing ``N`` on the circle (w.r.t. ``dtheta/2pi``)."""
    q, b, tol = params.q, params.b, params.tol
    bbar = b.conjugate()
    zeta = np.asarray(zeta, dtype=complex)
    const = (
        2
        * d1
        * (1 - _cos_factor(params))
        * qpoch_infinite(q, q, tol)
        * qpoch_infinite(_qpow(q, b + bbar), q, tol)
        / (qpoch_infinite(_qpow(q, b), q, tol) * qpoch_infinite(_qpow(q, bbar), q, tol))
    )
    w = np.abs(qpoch_infinite(q * zeta, q, tol)) ** 2 / np.abs(
        qpoch_infinite(_qpow(q, b) * zeta, q, tol)
    ) ** 2
    return const * w * (1 - zeta)


def gamma_seq(params: QBParams, d1: float, kmax: int) -> np.ndarray:
    """``[gamma_0, ..., gamma_kmax]`` with ``gamma_0 = nu_0``."""
    g = np.empty(kmax + 1, dtype=complex)
    g[0] = n_moment(params, d1, 0)
    for k in range(1, kmax + 1):
        g[k] = 4 * d_coeff(params, k) / (1 + 1j * c_coeff(params, k + 1)) * g[k - 1]
    return g


@dataclass(frozen=True)
class NMomentData:
    d1: float
    nu_j: dict = field(repr=False)
    gamma_k: np.ndarray = field(repr=False)

    @classmethod
    def compute(cls, params: QBParams, d1=DEFAULT_D1, jmax=8, kmax=8):
        nu = {j: n_moment(params, d1, j) for j in range(-jmax, jmax + 1)}
        return cls(d1=d1, nu_j=nu, gamma_k=gamma_seq(params, d1, kmax))


def r_asymptotic_limit(params: QBParams, z) -> complex:
    """``lim R_k(z)`` for ``|z| < 1``."""
    q, b, tol = params.q, params.b, params.tol
    const = qpoch_infinite(_qpow(q, b.conjugate()), q, tol) / qpoch_infinite(
        _cos_factor(params), q, tol
    )
    return complex(const * qpoch_infinite(_qpow(q, b) * z, q, tol) / qpoch_infinite(z, q, tol))


def qr_ratio_limit(params: QBParams, d1: float, z) -> complex:
    """``lim Q_k(z)/R_k(z)`` for ``|z| < 1`` (also ``z = 1`` by Abel continuity)."""
    q, b = params.q, params.b
    bbar = b.conjugate()
    series = phi21_series(
        q, _qpow(q, -b + 1), _qpow(q, bbar + 1), q, _qpow(q, b) * z, params.tol
    )
    return complex(2 * d1 * (1 - _cos_factor(params)) / (1 - _qpow(q, bbar)) * series)
