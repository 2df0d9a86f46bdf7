"""Norms, distances and the duality map of the finite-dimensional space l_p^n.

Vectors are plain 1-D numpy float arrays.  Functions that take a vector also
accept a 2-D array and then act row by row, which is what the solvers use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LpSpace:
    """The exponent ``p`` (strictly between 1 and infinity) and its conjugate ``q``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p) or p <= 1.0:
            raise ValueError(f"p must be a finite real > 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))

    def conjugate(self) -> "LpSpace":
        return LpSpace(self.q)


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D coordinate vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector coordinates must be finite")
    return arr


@dataclass(frozen=True)
class PointSet:
    """A nonempty finite set of equal-dimension points, stored as rows."""

    space: LpSpace
    points: np.ndarray

    def __post_init__(self):
        pts = self.points
        if not isinstance(pts, np.ndarray):
            rows = [list(r) for r in pts]
            if rows and len({len(r) for r in rows}) != 1:
                raise DimensionMismatch("all points must have the same dimension")
            pts = np.array(rows, dtype=float)
        pts = np.array(pts, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("a point set needs at least one point of positive dimension")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def p(self) -> float:
        return self.space.p

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def scaled(self, s: float) -> "PointSet":
        return PointSet(self.space, self.points * s)


def _abs_pow(x: np.ndarray, e: float) -> np.ndarray:
    # |x|**e with 0 mapped to 0 for e > 0
    return np.power(np.abs(x), e)


def lp_norm(v, s: LpSpace):
    """(sum |v_k|^p)^(1/p); row-wise for 2-D input.

    Coordinates are rescaled by the largest magnitude first so that large
    exponents neither overflow nor underflow.
    """
    v = np.asarray(v, dtype=float)
    m = np.max(np.abs(v), axis=-1, keepdims=True) if v.size else np.zeros(v.shape[:-1] + (1,))
    safe = np.where(m > 0, m, 1.0)
    inner = np.sum(_abs_pow(v / safe, s.p), axis=-1) ** (1.0 / s.p)
    out = np.squeeze(m, axis=-1) * inner
    return float(out) if out.ndim == 0 else out


def lp_distance(u, v, s: LpSpace) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}")
    return lp_norm(u - v, s)


def distance_matrix(A: PointSet) -> np.ndarray:
    X = A.points
    D = np.empty((len(X), len(X)))
    for i in range(len(X)):
        D[i] = lp_norm(X - X[i], A.space)
    return D


def diameter(A: PointSet) -> float:
    """Largest pairwise distance, by exact O(n^2) scan."""
    if len(A) < 2:
        return 0.0
    return float(distance_matrix(A).max())


def duality_map(v, s: LpSpace) -> np.ndarray:
    """Coordinatewise sgn(v_k) |v_k|^(p-1): the functional aligned with ``v``.

    <v, J(v)> = ||v||_p^p and ||J(v)||_q = ||v||_p^(p-1).
    """
    v = np.asarray(v, dtype=float)
    return np.sign(v) * _abs_pow(v, s.p - 1.0)


def dual_pairing(v, g) -> float:
    v = np.asarray(v, dtype=float)
    g = np.asarray(g, dtype=float)
    if v.shape != g.shape:
        raise DimensionMismatch(f"dimension mismatch: {v.shape} vs {g.shape}")
    return float(math.fsum(v * g))
