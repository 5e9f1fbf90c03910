"""Floating-point orbits on T^r.

Heuristic cross-checks only: hyperbolic maps amplify rounding, so a double
precision orbit is faithful in distribution, not pointwise. Nothing here
feeds an exact verdict.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .autdyn import torus_validate
from .exactlin import RatMatrix


@dataclass(frozen=True)
class OrbitStats:
    iterations: int
    min_dist_to_zero: float
    discrepancy: float

    def to_dict(self) -> dict:
        return asdict(self)


def torus_distance_to_zero(x: np.ndarray) -> np.ndarray:
    """Euclidean distance to 0 in R^r / Z^r, row-wise."""
    d = x - np.round(x)
    return np.sqrt((d * d).sum(axis=-1))


def torus_orbit(m: RatMatrix, x0, iters: int) -> np.ndarray:
    """Points ``x0, m x0, ..., m^iters x0`` reduced mod 1."""
    a = np.array([[float(v) for v in row] for row in m.rows])
    out = np.empty((iters + 1, m.dim))
    x = np.mod(np.asarray(x0, dtype=float), 1.0)
    out[0] = x
    for k in range(1, iters + 1):
        x = np.mod(a @ x, 1.0)
        out[k] = x
    return out


def dyadic_discrepancy(points: np.ndarray) -> float:
    """Max deviation of cell frequencies from uniform on the 2^r grid."""
    r = points.shape[1]
    cells = (points >= 0.5).astype(np.int64) @ (1 << np.arange(r))
    freq = np.bincount(cells, minlength=1 << r) / len(points)
    return float(np.abs(freq - 2.0**-r).max())


def torus_orbit_stats(m: RatMatrix, x0=None, iters: int = 10_000, seed: int = 0, return_orbit: bool = False):
    """Orbit statistics of ``x -> m x mod 1``.

    ``seed`` only matters when ``x0`` is omitted and a start is drawn at
    random. With ``return_orbit`` the raw points come back as well.
    """
    if not torus_validate(m):
        raise ValueError("torus simulation needs an integer unimodular matrix")
    if iters < 1:
        raise ValueError("iters must be positive")
    if x0 is None:
        x0 = np.random.default_rng(seed).random(m.dim)
    pts = torus_orbit(m, x0, iters)
    stats = OrbitStats(
        iterations=iters,
        min_dist_to_zero=float(torus_distance_to_zero(pts).min()),
        discrepancy=dyadic_discrepancy(pts[1:]),
    )
    return (stats, pts) if return_orbit else stats


def running_min_distance(points: np.ndarray) -> np.ndarray:
    return np.minimum.accumulate(torus_distance_to_zero(points))
