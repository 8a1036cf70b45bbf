"""Uniform trapezoidal quadrature on the unit circle.

For a function analytic in an annulus around the circle the rule
``(1/N) sum_m f(exp(2 pi i m / N))`` converges geometrically, so doubling
``N`` until two results agree gives a reliable oracle for the closed forms
elsewhere in the package. Sums use ``numpy.sum`` over contiguous arrays
(pairwise reduction with a fixed tree), so results do not depend on threading.
"""

from __future__ import annotations

import math

import numpy as np

from .cpoly import evaluate
from .exceptions import NoConvergence

N_START = 256
N_CAP = 2**20


class QuadGrid:
    """``N`` uniform nodes ``theta_m = 2 pi m / N`` on the circle, ``N`` a power of two."""

    def __init__(self, n_nodes: int):
        n = int(n_nodes)
        if n < 1 or n & (n - 1):
            raise ValueError(f"n_nodes must be a power of two, got {n_nodes!r}")
        self.n_nodes = n
        self.theta = 2.0 * math.pi * np.arange(n) / n
        self.zeta = np.exp(1j * self.theta)
        self._weights = {}

    def __repr__(self):
        return f"QuadGrid(n_nodes={self.n_nodes})"

    def weights(self, spec) -> np.ndarray:
        """Density of ``spec`` at the nodes (cached per spec)."""
        if spec is None:
            return np.ones(self.n_nodes)
        w = self._weights.get(spec)
        if w is None:
            w = np.asarray(spec.weight(self.theta), dtype=float)
            w.setflags(write=False)
            self._weights[spec] = w
        return w

    def refined(self) -> "QuadGrid":
        return QuadGrid(2 * self.n_nodes)


def _mean(values) -> complex:
    return complex(np.sum(np.ascontiguousarray(values)) / values.shape[0])


def integrate(spec, f, grid: QuadGrid) -> complex:
    """``int f dmu`` for the measure ``spec`` (``None`` means ``dtheta/2pi``).

    ``f`` is called with the array of nodes on the circle. A point mass at
    ``z = 1`` in ``spec`` contributes ``t * f(1)``.
    """
    vals = np.asarray(f(grid.zeta), dtype=complex) * grid.weights(spec)
    out = _mean(vals)
    t = getattr(spec, "point_mass", 0.0) if spec is not None else 0.0
    if t:
        out += t * complex(np.asarray(f(np.array([1.0 + 0.0j])))[0])
    return out


def _refine(compute, tol, n_start=N_START, n_cap=N_CAP):
    grid = QuadGrid(n_start)
    prev = np.asarray(compute(grid))
    while True:
        if 2 * grid.n_nodes > n_cap:
            raise NoConvergence(f"quadrature did not settle below N = {n_cap}")
        grid = grid.refined()
        cur = np.asarray(compute(grid))
        scale = max(1.0, float(np.max(np.abs(cur))))
        if float(np.max(np.abs(cur - prev))) < tol * scale:
            return cur, grid.n_nodes
        prev = cur


def auto_refine(spec, f, tol=1e-13, n_start=N_START, n_cap=N_CAP):
    """Integrate with ``N`` doubled from ``n_start`` until successive values
    differ by less than ``tol``. Returns ``(value, n_used)``."""
    val, n = _refine(lambda g: integrate(spec, f, g), tol, n_start, n_cap)
    return complex(val), n


def gram_matrix(spec, polys, grid: QuadGrid | None = None, tol=1e-13):
    """``G[j, k] = int conj(p_j) p_k dmu``.

    With ``grid=None`` the grid is refined automatically; the final ``N`` is
    then available as the second element of :func:`gram_matrix_refined`.
    """
    if grid is None:
        return gram_matrix_refined(spec, polys, tol)[0]
    return _gram_on(spec, polys, grid)


def gram_matrix_refined(spec, polys, tol=1e-13):
    return _refine(lambda g: _gram_on(spec, polys, g), tol)


def _gram_on(spec, polys, grid):
    vals = np.stack([evaluate(p, grid.zeta) for p in polys])
    w = grid.weights(spec)
    n = len(polys)
    G = np.empty((n, n), dtype=complex)
    for j in range(n):
        cw = np.conj(vals[j]) * w
        for k in range(j, n):
            G[j, k] = _mean(cw * vals[k])
            G[k, j] = np.conj(G[j, k])
    t = getattr(spec, "point_mass", 0.0) if spec is not None else 0.0
    if t:
        at1 = np.array([evaluate(p, 1.0) for p in polys])
        G = G + t * np.outer(np.conj(at1), at1)
    return G


def moment(spec, j: int, grid: QuadGrid) -> complex:
    """``int zeta^-j dmu``."""
    return integrate(spec, lambda z: z ** (-j), grid)

