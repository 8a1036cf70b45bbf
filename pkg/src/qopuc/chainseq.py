"""Recurrence coefficients and the positive chain sequence attached to ``(q, b)``.

For ``b = lam - i*eta`` with ``lam > 0``::

    c_k     = q^(lam+k-1) sin(eta_q) / (1 - q^(lam+k-1) cos(eta_q))
    d_{k+1} = (1-q^k)(1-q^(2lam+k-1)) / (4 (1-q^(lam+k-1)cos)(1-q^(lam+k)cos))

``{d_{k+1}}_{k>=1}`` is a positive chain sequence. Its minimal parameter
sequence ``ell`` starts at ``ell_1 = 0`` and is computed by forward recursion;
the maximal parameter sequence ``M`` is computed index-by-index from a ratio
of convergent 2phi1 series, because the forward recursion is unstable in that
direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameters
from .qcore import QBParams, _qpow, phi21_series

PARAM_SLACK = 1e-12


def c_coeff(params: QBParams, k: int) -> float:
    q, lam, eq = params.q, params.lam, params.eta_q
    x = q ** (lam + k - 1)
    return x * math.sin(eq) / (1.0 - x * math.cos(eq))


def d_coeff(params: QBParams, k: int) -> float:
    """Return ``d_{k+1}`` (note the index shift)."""
    q, lam, ceq = params.q, params.lam, math.cos(params.eta_q)
    num = (1.0 - q**k) * (1.0 - q ** (2 * lam + k - 1))
    den = 4.0 * (1.0 - q ** (lam + k - 1) * ceq) * (1.0 - q ** (lam + k) * ceq)
    return num / den


def _check_unit_interval(values, name, lower_closed=False):
    for i, v in enumerate(values):
        lo_bad = v < -PARAM_SLACK if lower_closed else v <= -PARAM_SLACK
        if lo_bad or v >= 1.0 + PARAM_SLACK or not math.isfinite(v):
            raise ArithmeticError(f"{name}[{i}] = {v!r} left the unit interval")


def minimal_params(params: QBParams, kmax: int) -> np.ndarray:
    """``[ell_1, ..., ell_{kmax+1}]`` with ``ell_1 = 0``."""
    params.require_positive_lambda()
    ell = np.empty(kmax + 1)
    ell[0] = 0.0
    for k in range(1, kmax + 1):
        ell[k] = d_coeff(params, k) / (1.0 - ell[k - 1])
    _check_unit_interval(ell, "ell", lower_closed=True)
    return ell


def initial_max_param(params: QBParams) -> float:
    """``M_1`` from the non-terminating 2phi1 at argument ``q^b``."""
    params.require_positive_lambda()
    return maximal_param(params, 0)


def _max_series(params, k):
    q, b = params.q, params.b
    return phi21_series(
        q**k, _qpow(q, -b + 1), _qpow(q, b.conjugate() + k), q, _qpow(q, b), params.tol
    )


def maximal_param(params: QBParams, k: int) -> float:
    """``M_{k+1}`` as a ratio of two convergent 2phi1 series."""
    q, lam, ceq = params.q, params.lam, math.cos(params.eta_q)
    bbar = params.b.conjugate()
    pre = 0.5 * (1.0 - _qpow(q, bbar + k)) / (1.0 - q ** (lam + k) * ceq)
    val = pre * _max_series(params, k) / _max_series(params, k + 1)
    return float(val.real)


def maximal_params(params: QBParams, kmax: int) -> np.ndarray:
    """``[M_1, ..., M_{kmax+1}]``."""
    params.require_positive_lambda()
    M = np.array([maximal_param(params, k) for k in range(kmax + 1)])
    _check_unit_interval(M, "M")
    return M


def maximal_params_forward(params: QBParams, kmax: int) -> np.ndarray:
    """Forward recursion ``M_{k+1} = d_{k+1}/(1 - M_k)`` from ``M_1``.

    Only a consistency check: errors grow along this direction.
    """
    M = np.empty(kmax + 1)
    M[0] = initial_max_param(params)
    for k in range(1, kmax + 1):
        M[k] = d_coeff(params, k) / (1.0 - M[k - 1])
    return M


def modified_minimal_params(params: QBParams, t: float, kmax: int) -> np.ndarray:
    """Minimal parameters ``[m_0, m_1, ..., m_{kmax}]`` of ``{(1-t) M_1, d_2, d_3, ...}``.

    ``m_0 = 0`` and ``m_1 = (1-t) M_1``; at ``t = 0`` this reproduces ``M``.
    """
    if not (0.0 <= t < 1.0):
        raise InvalidParameters(f"t must lie in [0, 1), got {t!r}")
    params.require_positive_lambda()
    m = np.empty(kmax + 1)
    m[0] = 0.0
    if kmax >= 1:
        m[1] = (1.0 - t) * initial_max_param(params)
    for k in range(2, kmax + 1):
        m[k] = d_coeff(params, k - 1) / (1.0 - m[k - 1])
    _check_unit_interval(m, "m", lower_closed=True)
    return m


@dataclass(frozen=True)
class ChainData:
    """Chain-sequence data for one parameter record.

    Index conventions (0-based arrays):

    * ``c[k-1] = c_k`` and ``d[k-1] = d_{k+1}`` for ``k >= 1``
    * ``ell[k] = ell_{k+1}`` and ``M[k] = M_{k+1}`` for ``k >= 0``
    * ``m_t[k] = m_k^{(t)}`` for ``k >= 0``
    """

    params: QBParams
    c: np.ndarray
    d: np.ndarray
    ell: np.ndarray
    M: np.ndarray
    t: float | None = None
    m_t: np.ndarray | None = None

    @classmethod
    def compute(cls, params: QBParams, kmax: int, t=None):
        params.require_positive_lambda()
        c = np.array([c_coeff(params, k) for k in range(1, kmax + 2)])
        d = np.array([d_coeff(params, k) for k in range(1, kmax + 2)])
        m_t = None if t is None else modified_minimal_params(params, t, kmax + 1)
        return cls(
            params=params,
            c=c,
            d=d,
            ell=minimal_params(params, kmax + 1),
            M=maximal_params(params, kmax + 1),
            t=t,
            m_t=m_t,
        )
