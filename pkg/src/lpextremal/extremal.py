"""Jung constants of l_p, extremality ratios and the canonical near-extremal families."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .chebyshev import SolverConfig, chebyshev_center
from .lp_core import LpSpace, PointSet, diameter


class DegenerateSet(ValueError):
    pass


@dataclass(frozen=True)
class JungValue:
    p: float
    value: float


@dataclass(frozen=True)
class ExtremalityReport:
    diameter: float
    radius: float
    jung: float
    ratio: float  # radius / (jung * diameter); < 1 for every finite set
    gap: float  # jung * diameter - radius

    def as_dict(self) -> dict:
        return {
            "diameter": self.diameter,
            "radius": self.radius,
            "jung": self.jung,
            "ratio": self.ratio,
            "gap": self.gap,
        }


def jung_constant(s: LpSpace) -> JungValue:
    """Exact Jung constant of l_p: 2^(-1/q) for p <= 2, 2^(-1/p) for p > 2."""
    e = s.q if s.p <= 2.0 else s.p
    return JungValue(s.p, 2.0 ** (-1.0 / e))


def extremality_report(A: PointSet, cfg: SolverConfig | None = None) -> ExtremalityReport:
    if len(np.unique(A.points, axis=0)) < 2:
        raise DegenerateSet("extremality needs at least two distinct points")
    d = diameter(A)
    r = chebyshev_center(A, cfg).radius
    j = jung_constant(A.space).value
    return ExtremalityReport(d, r, j, r / (j * d), j * d - r)


def gulevich_gap(A: PointSet, cfg: SolverConfig | None = None) -> float:
    return extremality_report(A, cfg).gap


def chernykh_check(a, b, s: LpSpace):
    """RHS - LHS of the scalar inequality used coordinatewise in the packing argument.

    For p <= 2:  |J(a) - J(b)| <= 2^(2-p) |a - b|^(p-1)
    for p > 2:   |a|^p + |b|^p - p (a J(b) + b J(a)) <= |a - b|^p
    where J(x) = sgn(x)|x|^(p-1).  Works elementwise on arrays.
    """
    p = s.p
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    Ja = np.sign(a) * np.abs(a) ** (p - 1.0)
    Jb = np.sign(b) * np.abs(b) ** (p - 1.0)
    if p <= 2.0:
        out = 2.0 ** (2.0 - p) * np.abs(a - b) ** (p - 1.0) - np.abs(Ja - Jb)
    else:
        lhs = np.abs(a) ** p + np.abs(b) ** p - p * (a * Jb + b * Ja)
        out = np.abs(a - b) ** p - lhs
    return float(out) if out.ndim == 0 else out


def generate_basis_set(n: int, s: LpSpace) -> PointSet:
    if n < 2:
        raise ValueError("basis set needs n >= 2")
    return PointSet(s, np.eye(n))


def generate_hadamard_set(k: int, s: LpSpace) -> PointSet:
    """Rows of the 2^k x 2^k Sylvester Hadamard matrix scaled to unit l_p norm.

    Any two rows differ by 2 in exactly half the coordinates, so all mutual
    distances equal 2^(1/q).
    """
    if k < 1:
        raise ValueError("hadamard set needs k >= 1")
    n = 2**k
    return PointSet(s, scipy.linalg.hadamard(n).astype(float) * n ** (-1.0 / s.p))


def basis_radius_oracle(n: int, s: LpSpace) -> float:
    """Closed-form Chebyshev radius of the first n unit vectors.

    The center is t(1, ..., 1) with t = 1 / (1 + (n-1)^(1/(p-1))).
    """
    p = s.p
    t = 1.0 / (1.0 + (n - 1) ** (1.0 / (p - 1.0)))
    return ((1.0 - t) ** p + (n - 1) * t**p) ** (1.0 / p)
