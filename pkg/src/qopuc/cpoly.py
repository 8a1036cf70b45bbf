"""Complex-coefficient polynomials in the monomial basis.

Coefficients are stored in ascending order: ``coeffs[j]`` multiplies ``z**j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegreeOverflow, IllConditioned, NonExactDivision, SizeMismatch

TWO_PI = 2.0 * math.pi


class CPoly:
    """Immutable complex polynomial.

    Exact trailing zeros are trimmed so that the leading stored coefficient
    is nonzero (the zero polynomial is stored as ``[0]``).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.setflags(write=False)
        self._c = c

    @classmethod
    def monomial(cls, k, coef=1.0):
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coef
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f"CPoly({self._c.tolist()!r})"

    def __call__(self, z):
        return evaluate(self, z)

    def padded(self, n) -> np.ndarray:
        """Coefficient vector zero-padded to length ``n``."""
        out = np.zeros(max(n, self._c.size), dtype=complex)
        out[: self._c.size] = self._c
        return out

    def __add__(self, other):
        other = _as_cpoly(other)
        n = max(len(self), len(other))
        return CPoly(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return CPoly(-self._c)

    def __sub__(self, other):
        return self + (-_as_cpoly(other))

    def __rsub__(self, other):
        return _as_cpoly(other) - self

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return CPoly(np.convolve(self._c, other._c))
        return CPoly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return CPoly(self._c / complex(scalar))

    def shift(self, m=1):
        """Multiply by ``z**m``."""
        if self.is_zero():
            return self
        return CPoly(np.concatenate([np.zeros(m, dtype=complex), self._c]))

    def leading(self) -> complex:
        return complex(self._c[-1])

    def max_abs_diff(self, other) -> float:
        other = _as_cpoly(other)
        n = max(len(self), len(other))
        return float(np.max(np.abs(self.padded(n) - other.padded(n))))

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))


def _as_cpoly(p):
    if isinstance(p, CPoly):
        return p
    return CPoly([complex(p)]) if np.ndim(p) == 0 else CPoly(p)


def evaluate(p: CPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        out = out * z + a
    return complex(out) if out.ndim == 0 else out


def star(p: CPoly, k: int) -> CPoly:
    """Reversed conjugate ``z**k * conj(p(1/conj(z)))`` at formal degree ``k``."""
    if p.degree > k:
        raise DegreeOverflow(f"degree {p.degree} exceeds formal degree {k}")
    return CPoly(np.conj(p.padded(k + 1)[::-1]))


def divide_by_z_minus_one(p: CPoly, tol=1e-10, scale=None):
    """Synthetic division of ``p`` by ``(z - 1)``.

    Returns the quotient. Raises :class:`NonExactDivision` when the remainder
    ``p(1)`` exceeds ``tol`` relative to ``scale`` (default ``max|coeff|``).
    """
    c = p.coeffs
    n = c.size - 1
    if n == 0:
        if abs(c[0]) > tol:
            raise NonExactDivision(f"remainder {abs(c[0]):.3e}")
        return CPoly([0])
    quot = np.empty(n, dtype=complex)
    acc = 0.0 + 0.0j
    for j in range(n, 0, -1):
        acc += c[j]
        quot[j - 1] = acc
    rem = acc + c[0]
    ref = float(np.max(np.abs(c))) if scale is None else scale
    if abs(rem) > tol * max(ref, 1.0):
        raise NonExactDivision(f"remainder {abs(rem):.3e} after division by (z - 1)")
    return CPoly(quot)


@dataclass(frozen=True)
class ZeroSet:
    """Zeros sorted by angle in ``(0, 2*pi]`` with their radial residuals."""

    zeros: np.ndarray
    angles: np.ndarray
    radial_residuals: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.zeros)

    @property
    def max_radial_residual(self) -> float:
        return float(np.max(self.radial_residuals)) if len(self) else 0.0


def _angle(z):
    a = math.atan2(z.imag, z.real) % TWO_PI
    # a root at z = 1 sits at the top of the interval, not at 0
    return TWO_PI if a <= 1e-15 else a


def roots(p: CPoly, newton_steps=5) -> ZeroSet:
    """All roots via companion-matrix eigenvalues with Newton polishing."""
    n = p.degree
    if n < 1:
        raise ValueError("roots need a polynomial of degree >= 1")
    c = p.coeffs / p.leading()
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1]
    # LAPACK geev balances the matrix before the QR iteration
    zs = np.linalg.eigvals(comp)

    dp = CPoly(p.coeffs[1:] * np.arange(1, n + 1))
    pnorm = p.norm()
    polished = []
    for z in zs:
        for _ in range(newton_steps):
            fz = evaluate(p, z)
            if abs(fz) < 1e-15 * pnorm:
                break
            dz = evaluate(dp, z)
            if dz == 0:
                break
            z = z - fz / dz
        if abs(evaluate(p, z)) >= 1e-8 * pnorm:
            raise IllConditioned(f"root {z!r} residual {abs(evaluate(p, z)):.3e}")
        polished.append(complex(z))

    angles = np.array([_angle(z) for z in polished])
    order = np.argsort(angles, kind="stable")
    zeros = np.array(polished)[order]
    return ZeroSet(
        zeros=zeros,
        angles=angles[order],
        radial_residuals=np.abs(np.abs(zeros) - 1.0),
    )


def check_interlacing(a: ZeroSet, b: ZeroSet, tol=1e-10):
    """Strict angular interlacing of ``a`` (degree k) with ``b`` (degree k+1).

    Returns ``(ok, violations)`` where ``violations`` lists the indices of
    the merged sequence ``b_1 < a_1 < b_2 < ... < a_k < b_{k+1}`` whose gap is
    not larger than ``tol``.
    """
    if len(b) != len(a) + 1:
        raise SizeMismatch(f"expected {len(a) + 1} zeros, got {len(b)}")
    merged = np.empty(2 * len(a) + 1)
    merged[0::2] = b.angles
    merged[1::2] = a.angles
    gaps = np.diff(merged)
    violations = [int(i) for i in np.flatnonzero(gaps <= tol)]
    ok = not violations and merged[0] > 0.0 and merged[-1] <= TWO_PI
    return ok, violations
