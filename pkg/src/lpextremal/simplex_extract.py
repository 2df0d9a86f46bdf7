"""Greedy extraction of m-simplices with near-diameter edges from a certified set.

All thresholds are evaluated on the set rescaled so that J(l_p) * diameter = 1,
where a genuinely extremal set would have Chebyshev radius exactly 1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .chebyshev import Certificate, SolverConfig, chebyshev_center, extract_certificate
from .extremal import DegenerateSet, jung_constant
from .lp_core import PointSet, diameter, distance_matrix, lp_norm

log = logging.getLogger(__name__)

WEIGHT_TIE = 1e-9


class NotNormalized(ValueError):
    pass


class IntersectionEmpty(RuntimeError):
    """The greedy ran out of candidates before collecting m+1 vertices."""

    def __init__(self, message: str, found: list, margin: float, diagnostics: "ExtractionDiagnostics"):
        super().__init__(message)
        self.found = found
        self.margin = margin
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class ExtractionParams:
    m: int
    delta: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")


@dataclass
class ExtractionDiagnostics:
    t_values: np.ndarray
    heavy_set: list
    lam: float  # weight outside the heavy set
    neighborhood_masses: list  # per selected vertex: weight outside its neighborhood
    feasibility_margin: float
    normalized_radius: float
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "t_values": [float(t) for t in self.t_values],
            "heavy_set": [int(i) for i in self.heavy_set],
            "lambda": self.lam,
            "neighborhood_masses": [float(x) for x in self.neighborhood_masses],
            "feasibility_margin": self.feasibility_margin,
            "normalized_radius": self.normalized_radius,
            "warnings": list(self.warnings),
        }


@dataclass
class SimplexResult:
    vertex_indices: list
    min_edge: float
    diagnostics: ExtractionDiagnostics


def _kappa(p: float) -> float:
    return 2.0 ** (2.0 - p) if p <= 2.0 else 1.0


def t_values(A: PointSet, cert: Certificate) -> np.ndarray:
    """T_j = kappa_p * sum_i alpha_i ‖y_i - y_j‖^p for each active j (certificate order)."""
    idx = np.asarray(cert.active_indices)
    if idx.size == 0 or idx.max() >= len(A) or len(cert.weights) != idx.size:
        raise ValueError("certificate does not match the point set")
    Y = A.points[idx]
    s = A.space
    Dp = np.stack([lp_norm(Y - y, s) for y in Y]) ** s.p
    return _kappa(s.p) * (np.asarray(cert.weights) @ Dp)


def _clamped_gap(r: float, p: float, warnings: list | None = None) -> float:
    gap = 1.0 - r**p
    if gap < 0.0:
        msg = f"normalized radius {r!r} exceeds 1; clamping 1 - r^p to 0"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        gap = 0.0
    return gap


def heavy_set(A: PointSet, cert: Certificate, warnings: list | None = None):
    """Active indices j with T_j >= 2 r^p (1 - sqrt(1 - r^p)), plus the weight left outside.

    ``A`` must be normalized (J * diameter = 1).
    """
    d = diameter(A)
    j = jung_constant(A.space).value
    if abs(j * d - 1.0) > 1e-8:
        raise NotNormalized(f"J * d = {j * d!r}, expected 1")
    p = A.p
    rp = cert.radius**p
    threshold = 2.0 * rp * (1.0 - math.sqrt(_clamped_gap(cert.radius, p, warnings)))
    T = t_values(A, cert)
    inside = T >= threshold
    heavy = [int(i) for i in np.asarray(cert.active_indices)[inside]]
    lam = float(math.fsum(np.asarray(cert.weights)[~inside]))
    return heavy, lam


def neighborhood(A: PointSet, cert: Certificate, j: int, delta: float) -> list:
    """Active i with ‖y_i - y_j‖^p >= d^p (1 - delta)."""
    idx = np.asarray(cert.active_indices)
    if not 0 <= j < len(A) or j not in idx:
        raise IndexError(f"index {j} is not an active point")
    d = diameter(A)
    p = A.p
    dp = lp_norm(A.points[idx] - A.points[j], A.space) ** p
    return [int(i) for i in idx[dp >= d**p * (1.0 - delta)]]


def feasibility_check(cert: Certificate, masses, m: int):
    """Union-bound test: min_j (1 - beta_j) - (m - 1) max_j beta_j > 0.

    ``masses`` are the weights outside each candidate's neighborhood (the
    candidate itself not counted).  A positive margin means every m of the
    neighborhoods share a point.  With fewer than m+1 candidates no simplex
    can exist; the margin is then the (negative) shortfall in candidates.
    """
    masses = np.asarray(masses, dtype=float)
    if masses.size < m + 1:
        return False, float(masses.size - (m + 1))
    margin = float(np.min(1.0 - masses) - (m - 1) * np.max(masses))
    return margin > 0.0, margin


def normalize(A: PointSet, cert: Certificate | None = None):
    """Rescale so that J * d = 1; a certificate is carried along (weights and functionals are scale-free)."""
    d = diameter(A)
    if d <= 0.0:
        raise DegenerateSet("diameter is zero")
    scale = 1.0 / (jung_constant(A.space).value * d)
    An = A.scaled(scale)
    if cert is None:
        return An, scale
    return An, scale, replace(cert, radius=cert.radius * scale)


def certificate_bounds(A: PointSet, cert: Certificate) -> dict:
    """Heavy-set weight lambda and the largest weight next to sqrt(1 - r^p), on the normalized set."""
    An, _, cn = normalize(A, cert)
    _, lam = heavy_set(An, cn)
    bound = math.sqrt(max(0.0, 1.0 - cn.radius**A.p))
    return {"lambda": lam, "max_weight": float(np.max(cn.weights)), "bound": bound, "normalized_radius": cn.radius}


def _pick(cands, weight):
    top = max(weight[i] for i in cands)
    return min(i for i in cands if weight[i] >= top - WEIGHT_TIE)


class _Prepared:
    """Normalized set, certificate and pairwise p-th power distances among active points."""

    def __init__(self, A: PointSet, cfg: SolverConfig):
        self.A = A
        self.An, self.scale = normalize(A)
        res = chebyshev_center(self.An, cfg)
        self.cert = extract_certificate(self.An, res.center, cfg.active_tol)
        self.warnings: list = []
        self.heavy, self.lam = heavy_set(self.An, self.cert, self.warnings)
        self.T = t_values(self.An, self.cert)
        p = A.p
        D = distance_matrix(self.An)
        self.dn = float(D.max())
        self.Dp = D**p
        self.weight = {int(i): float(a) for i, a in zip(self.cert.active_indices, self.cert.weights)}

    def greedy(self, params: ExtractionParams) -> SimplexResult:
        p = self.A.p
        active = list(self.weight)
        level = self.dn**p * (1.0 - params.delta)
        nbr = {j: {i for i in active if i != j and self.Dp[j, i] >= level} for j in active}
        outside = {j: math.fsum(self.weight[i] for i in active if i != j and i not in nbr[j]) for j in active}
        _, margin = feasibility_check(self.cert, [outside[j] for j in self.heavy], params.m)

        verts: list = []
        cands = set(self.heavy)
        while len(verts) < params.m + 1 and cands:
            z = _pick(cands, self.weight)
            verts.append(z)
            cands = (cands & nbr[z]) - {z}
        diag = ExtractionDiagnostics(
            t_values=self.T,
            heavy_set=list(self.heavy),
            lam=self.lam,
            neighborhood_masses=[outside[z] for z in verts],
            feasibility_margin=margin,
            normalized_radius=self.cert.radius,
            warnings=list(self.warnings),
        )
        if len(verts) < params.m + 1:
            raise IntersectionEmpty(
                f"greedy found {len(verts)} of {params.m + 1} vertices "
                f"(feasibility margin {margin:.4g}); set is not extremal enough for m={params.m}, "
                f"delta={params.delta}",
                verts,
                margin,
                diag,
            )
        P = self.A.points[verts]
        min_edge = min(float(lp_norm(P[a] - P[b], self.A.space)) for a in range(len(P)) for b in range(a))
        bound = (self.dn / self.scale) * (1.0 - params.delta) ** (1.0 / p)
        if min_edge < bound * (1.0 - 1e-12):
            raise AssertionError(f"min edge {min_edge!r} below guaranteed {bound!r}")
        return SimplexResult(verts, min_edge, diag)


def extract_simplex(A: PointSet, params: ExtractionParams, cfg: SolverConfig | None = None) -> SimplexResult:
    """m+1 points of A whose mutual distances are all >= d (1 - delta)^(1/p).

    Picks z_1 as the heaviest point of the heavy set, then each next vertex as
    the heaviest point of the heavy set lying in the neighborhoods of all
    vertices chosen so far (lowest index on ties).  Raises
    ``IntersectionEmpty`` when the running intersection empties early.
    """
    cfg = cfg or SolverConfig()
    if len(A) < params.m + 1:
        raise DegenerateSet(f"need at least m+1 = {params.m + 1} points, got {len(A)}")
    return _Prepared(A, cfg).greedy(params)


def packing_lower_bound(A: PointSet, m: int, cfg: SolverConfig | None = None, iters: int = 20) -> float:
    """Largest min-edge among simplices found while bisecting delta over (0, 1).

    m+1 points of A pairwise at least this far apart; 0 when every delta fails.
    """
    cfg = cfg or SolverConfig()
    if len(A) < m + 1 or diameter(A) == 0.0:
        return 0.0
    prep = _Prepared(A, cfg)
    lo, hi, best = 0.0, 1.0, 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        try:
            res = prep.greedy(ExtractionParams(m, mid))
        except IntersectionEmpty:
            lo = mid
            continue
        best = max(best, res.min_edge)
        hi = mid
    return best
