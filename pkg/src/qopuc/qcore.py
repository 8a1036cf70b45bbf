"""Complex q-arithmetic: powers of q, q-Pochhammer symbols and 2phi1 series.

Conventions follow Gasper and Rahman::

    (a; q)_k   = prod_{j=0}^{k-1} (1 - a q^j)
    (a; q)_inf = lim (a; q)_k
    2phi1(A, B; C; q, z) = sum_j (A;q)_j (B;q)_j / ((C;q)_j (q;q)_j) z^j

The complex parameter is written ``b = lam - 1j * eta`` so that
``q**b = q**lam * (cos(eta_q) - 1j * sin(eta_q))`` with ``eta_q = eta * ln q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DegenerateLowerParameter,
    DivisionByNearZero,
    InvalidParameters,
    NoConvergence,
)

Q_MAX = 0.999
MAX_SERIES_TERMS = 10**6
# |1 - C q^j| below this is treated as a vanishing denominator
DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class QBParams:
    """Parameter record ``(q, b)`` with ``b = lam - i*eta``.

    Parameters
    ----------
    q : float
        Base, ``0 < q <= 0.999``.
    lam : float
        Real part of ``b``.
    eta : float
        Minus the imaginary part of ``b``.
    tol : float
        Truncation threshold for infinite products and series.
    """

    q: float
    lam: float
    eta: float = 0.0
    tol: float = 1e-15
    eta_q: float = field(init=False)

    def __post_init__(self):
        q = float(self.q)
        if not (0.0 < q <= Q_MAX) or not math.isfinite(q):
            raise InvalidParameters(f"q must lie in (0, {Q_MAX}], got {self.q!r}")
        if not math.isfinite(self.lam) or not math.isfinite(self.eta):
            raise InvalidParameters("b must be finite")
        if self.lam <= -0.5:
            raise InvalidParameters(f"lambda must exceed -1/2, got {self.lam!r}")
        if not (0.0 < self.tol < 1.0):
            raise InvalidParameters("tol must lie in (0, 1)")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "eta_q", self.eta * math.log(q))

    @classmethod
    def from_b(cls, q, b, tol=1e-15):
        """Build from the complex value ``b`` (so ``eta = -b.imag``)."""
        b = complex(b)
        return cls(q=q, lam=b.real, eta=-b.imag, tol=tol)

    @property
    def b(self) -> complex:
        return complex(self.lam, -self.eta)

    @property
    def b_re(self) -> float:
        return self.lam

    @property
    def b_im(self) -> float:
        return -self.eta

    @property
    def log_q(self) -> float:
        return math.log(self.q)

    def require_positive_lambda(self):
        """Raise unless ``lam > 0`` (needed for chain sequences and OPUC)."""
        if not self.lam > 0:
            raise InvalidParameters(f"lambda must be positive, got {self.lam!r}")
        return self


def qpow(params: QBParams, a) -> complex:
    """Return ``q**a = exp(a ln q)`` for complex ``a``."""
    return complex(np.exp(complex(a) * params.log_q))


def _qpow(q, a):
    return np.exp(a * math.log(q))


def qpoch_finite(a, q, k):
    """Finite q-Pochhammer symbol ``(a; q)_k`` for ``k >= 0``."""
    if k < 0:
        raise ValueError("k must be non-negative; use qpoch_signed for k < 0")
    out = 1.0 + 0.0j
    qj = 1.0
    for _ in range(int(k)):
        out *= 1.0 - a * qj
        qj *= q
    return out


def qpoch_signed(a, q, k):
    """``(a; q)_k`` for any integer ``k``, with ``(a;q)_{-m} = 1/(a q^{-m}; q)_m``."""
    if k >= 0:
        return qpoch_finite(a, q, k)
    m = -int(k)
    den = qpoch_finite(a * q ** (-m), q, m)
    if abs(den) < DEGENERATE_TOL:
        raise DegenerateLowerParameter("(a q^-m; q)_m vanishes")
    return 1.0 / den


def qpoch_infinite(a, q, tol=1e-15):
    """Infinite q-Pochhammer symbol ``(a; q)_inf``.

    ``a`` may be a scalar or an array; the product stops once
    ``max|a| q^j < tol``.
    """
    arr = np.asarray(a, dtype=complex)
    amax = float(np.max(np.abs(arr))) if arr.size else 0.0
    out = np.ones_like(arr)
    if amax > 0.0:
        # smallest n with amax * q**n < tol
        n = max(0, math.ceil(math.log(tol / amax) / math.log(q))) + 1
        term = arr.copy()
        for _ in range(n):
            out *= 1.0 - term
            term *= q
    if np.ndim(a) == 0:
        return complex(out)
    return out


def _terminating_terms(k, upper_b, lower_c, q):
    """Coefficients ``t_j`` with ``2phi1(q^-k, B; C; q, z) = sum t_j z^j``."""
    terms = np.empty(k + 1, dtype=complex)
    t = 1.0 + 0.0j
    terms[0] = t
    for j in range(k):
        den = (1.0 - lower_c * q**j) * (1.0 - q ** (j + 1))
        if abs(1.0 - lower_c * q**j) < DEGENERATE_TOL:
            raise DegenerateLowerParameter(
                f"(C; q)_{j + 1} vanishes for C = {lower_c!r}"
            )
        t = t * (1.0 - q ** (j - k)) * (1.0 - upper_b * q**j) / den
        terms[j + 1] = t
    return terms


def phi21_terminating(k, upper_b, lower_c, q, z):
    """Terminating ``2phi1(q^-k, B; C; q, z)`` summed in ascending order."""
    terms = _terminating_terms(int(k), complex(upper_b), complex(lower_c), q)
    s = 0.0 + 0.0j
    zj = 1.0 + 0.0j
    for t in terms:
        s += t * zj
        zj *= z
    return s


def phi21_series(upper_a, upper_b, lower_c, q, z, tol=1e-15):
    """Convergent ``2phi1(A, B; C; q, z)`` for ``|z| < 1``.

    Terms are accumulated until two consecutive terms are below
    ``tol * (1 + |partial sum|)``, or a term vanishes identically
    (terminating upper parameter).
    """
    upper_a, upper_b, lower_c, z = map(complex, (upper_a, upper_b, lower_c, z))
    if abs(z) >= 1.0:
        raise ValueError(f"series argument must satisfy |z| < 1, got |z| = {abs(z)}")
    s = 0.0 + 0.0j
    t = 1.0 + 0.0j
    qj = 1.0
    small = 0
    for _ in range(MAX_SERIES_TERMS):
        s += t
        if t == 0:
            return s
        if abs(t) < tol * (1.0 + abs(s)):
            small += 1
            if small == 2:
                return s
        else:
            small = 0
        den_c = 1.0 - lower_c * qj
        if abs(den_c) < DEGENERATE_TOL:
            raise DegenerateLowerParameter(f"(C; q)_j vanishes for C = {lower_c!r}")
        t = t * (1.0 - upper_a * qj) * (1.0 - upper_b * qj) / (den_c * (1.0 - qj * q)) * z
        qj *= q
    raise NoConvergence(f"2phi1 series did not converge in {MAX_SERIES_TERMS} terms")


def contiguous_ratio_f(k, params: QBParams, c_param, d_param, z, b_param=None):
    """Ratio of neighbouring 2phi1 series in the Heine contiguous relation.

    ``f_k(z) = 2phi1(q^{k+1}, q^{-b}; q^{c-b+k+2}; q, q^d z)
             / 2phi1(q^k, q^{-b}; q^{c-b+k+1}; q, q^d z)``

    ``b_param`` defaults to ``params.b``.
    """
    q = params.q
    b = params.b if b_param is None else complex(b_param)
    c = complex(c_param)
    arg = _qpow(q, complex(d_param)) * z
    num = phi21_series(q ** (k + 1), _qpow(q, -b), _qpow(q, c - b + k + 2), q, arg, params.tol)
    den = phi21_series(q**k, _qpow(q, -b), _qpow(q, c - b + k + 1), q, arg, params.tol)
    if abs(den) < 1e-14:
        raise DivisionByNearZero(f"denominator series is {den!r}")
    return num / den
