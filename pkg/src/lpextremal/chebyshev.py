"""Chebyshev centers of finite sets in l_p^n and their dual optimality certificates.

A point ``c`` is the Chebyshev center of ``A = {a_1, ..., a_n}`` exactly when
there are farthest points ``y_i`` with unit functionals
``f_i = J(y_i - c) / r^(p-1)`` and convex weights ``alpha_i`` such that
``sum alpha_i f_i = 0``.  The solver uses the size of that weighted sum as its
stopping rule.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .lp_core import DimensionMismatch, LpSpace, PointSet, as_vector, duality_map, lp_norm
from .weights import min_norm_weights

log = logging.getLogger(__name__)

DEFAULT_SCHEDULE = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4)


class NonConvergence(RuntimeError):
    """Residual still above tolerance when the iteration budget ran out."""

    def __init__(self, message: str, best: "CenterResult"):
        super().__init__(message)
        self.best = best


class ZeroRadius(ValueError):
    pass


class EmptyActiveSet(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-8
    max_iters: int = 100_000
    smoothing_schedule: tuple = DEFAULT_SCHEDULE
    seed: int = 0
    restarts: int = 2
    active_tol: float = 1e-4
    descent_iters: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        sched = tuple(float(t) for t in self.smoothing_schedule)
        if not sched or any(t <= 0 for t in sched):
            raise ValueError("smoothing temperatures must be positive")
        if any(b >= a for a, b in zip(sched, sched[1:])):
            raise ValueError("smoothing schedule must be strictly decreasing")
        object.__setattr__(self, "smoothing_schedule", sched)


@dataclass
class CenterResult:
    center: np.ndarray
    radius: float
    iterations: int
    certificate_residual: float


@dataclass
class Certificate:
    active_indices: np.ndarray
    functionals: np.ndarray  # one row per active index, dual (l_q) coordinates
    weights: np.ndarray
    radius: float
    residual: float = field(default=float("nan"))


@dataclass
class CertificateCheck:
    pairing: float  # max |<y_i - c, f_i> - r|
    distance: float  # max |‖y_i - c‖ - r|
    unit_norm: float  # max |‖f_i‖_q - 1|
    balance: float  # ‖sum alpha_i f_i‖_q
    weight_sum: float  # |sum alpha_i - 1|
    weights_positive: bool
    tol: float

    @property
    def passed(self) -> bool:
        worst = max(self.pairing, self.distance, self.unit_norm, self.balance, self.weight_sum)
        return bool(self.weights_positive and worst <= self.tol)

    def as_dict(self) -> dict:
        return {
            "condition_i_pairing": self.pairing,
            "condition_i_distance": self.distance,
            "condition_ii_unit_norm": self.unit_norm,
            "condition_iii_balance": self.balance,
            "condition_iii_weight_sum": self.weight_sum,
            "weights_positive": self.weights_positive,
            "passed": self.passed,
        }


def _check_center(A: PointSet, c) -> np.ndarray:
    c = as_vector(c)
    if c.shape[0] != A.dim:
        raise DimensionMismatch(f"center has dimension {c.shape[0]}, points have {A.dim}")
    return c


def radius_at(A: PointSet, c) -> float:
    c = _check_center(A, c)
    return float(np.max(lp_norm(A.points - c, A.space)))


def extract_certificate(A: PointSet, c, active_tol: float = 1e-4, drop_tol: float = 1e-8) -> Certificate:
    c = _check_center(A, c)
    s = A.space
    dist = lp_norm(A.points - c, s)
    r = float(dist.max())
    if r == 0.0:
        raise ZeroRadius("radius at c is zero; no certificate exists")
    active = np.flatnonzero(dist >= (1.0 - active_tol) * r)
    if active.size == 0:
        raise EmptyActiveSet("no point within the active tolerance of the radius")
    F = duality_map(A.points[active] - c, s) / r ** (s.p - 1.0)
    alpha = min_norm_weights(F)
    keep = alpha >= drop_tol
    active, F, alpha = active[keep], F[keep], alpha[keep]
    alpha = alpha / alpha.sum()
    residual = float(lp_norm(alpha @ F, s.conjugate()))
    return Certificate(active, F, alpha, r, residual)


def verify_certificate(A: PointSet, c, cert: Certificate, tol: float) -> CertificateCheck:
    c = _check_center(A, c)
    s = A.space
    Y = A.points[cert.active_indices] - c
    F = np.asarray(cert.functionals, dtype=float)
    alpha = np.asarray(cert.weights, dtype=float)
    if F.shape != Y.shape or alpha.shape != (Y.shape[0],):
        raise DimensionMismatch("certificate shapes do not match the active points")
    r = cert.radius
    pairing = np.einsum("ij,ij->i", Y, F)
    return CertificateCheck(
        pairing=float(np.max(np.abs(pairing - r))),
        distance=float(np.max(np.abs(lp_norm(Y, s) - r))),
        unit_norm=float(np.max(np.abs(lp_norm(F, s.conjugate()) - 1.0))),
        balance=float(lp_norm(alpha @ F, s.conjugate())),
        weight_sum=abs(float(alpha.sum()) - 1.0),
        weights_positive=bool(np.all(alpha > 0)),
        tol=tol,
    )


def t_identity(A: PointSet, c, cert: Certificate) -> float:
    """sum_{i,j} alpha_i alpha_j <y_i - y_j, f_i - f_j>; equals 2r for an exact certificate."""
    Y = A.points[cert.active_indices]
    F = np.asarray(cert.functionals, dtype=float)
    alpha = np.asarray(cert.weights, dtype=float)
    P = Y @ F.T  # P[i, j] = <y_i, f_j>
    d = np.diag(P)
    M = d[:, None] + d[None, :] - P - P.T
    return float(alpha @ M @ alpha)


# ---------------------------------------------------------------- solver


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def take(self, n: int = 1) -> bool:
        self.used += n
        return self.used <= self.limit


def _unit_gradients(X: np.ndarray, dist: np.ndarray, p: float) -> np.ndarray:
    # rows: gradient of ‖c - a_i‖_p w.r.t. c, i.e. J(c - a_i) / ‖c - a_i‖^(p-1)
    G = np.sign(X) * np.power(np.abs(X), p - 1.0)
    safe = np.where(dist > 0, dist, 1.0)
    return np.where(dist[:, None] > 0, G / safe[:, None] ** (p - 1.0), 0.0)


def _smoothed(Z, s, c, tau):
    dist = lp_norm(c - Z, s)
    top = dist.max()
    e = np.exp((dist - top) / tau)
    tot = e.sum()
    return top + tau * np.log(tot), dist, e / tot


def _smoothed_descent(Z, s, c, tau, iters, budget):
    """Gradient descent with Armijo backtracking on tau * logsumexp(dist / tau)."""
    val, dist, w = _smoothed(Z, s, c, tau)
    step = tau
    for _ in range(iters):
        if not budget.take():
            break
        g = w @ _unit_gradients(c - Z, dist, s.p)
        gg = float(g @ g)
        if gg < 1e-24:
            break
        step *= 2.0
        while True:
            c_new = c - step * g
            new_val, new_dist, new_w = _smoothed(Z, s, c_new, tau)
            if new_val <= val - 0.5 * step * gg or step < 1e-20:
                break
            step *= 0.5
        if val - new_val <= 1e-15 * max(1.0, abs(val)):
            c, val, dist, w = c_new, new_val, new_dist, new_w
            break
        c, val, dist, w = c_new, new_val, new_dist, new_w
    return c, w


def _polyak(Z, s, c, iters, budget):
    """Polyak-step subgradient iterations on the true max with a shrinking target gap."""
    dist = lp_norm(c - Z, s)
    best_c, best = c, float(dist.max())
    gap = 1e-3 * best
    for _ in range(iters):
        if not budget.take():
            break
        i = int(np.argmax(dist))
        g = _unit_gradients((c - Z)[i : i + 1], dist[i : i + 1], s.p)[0]
        gg = float(g @ g)
        if gg < 1e-24:
            break
        c = c - ((dist[i] - (best - gap)) / gg) * g
        dist = lp_norm(c - Z, s)
        f = float(dist.max())
        if f < best:
            best_c, best = c, f
        else:
            gap *= 0.7
            c = best_c
    return best_c


def _kkt_newton(Z, s, c, w, budget, rounds=None):
    """Active-set Newton on the KKT system of min t s.t. ‖c - z_i‖_p^p <= t.

    Unknowns: center, level t and multipliers beta on the working set.  A
    point of the working set with negative multiplier is dropped, and the
    most violated outside point is added, until the KKT point is feasible
    with nonnegative multipliers (which is then the global optimum).
    """
    p = s.p
    n, D = Z.shape
    dist = lp_norm(c - Z, s)
    act = list(np.flatnonzero(w >= 1e-3 * w.max()))
    beta = w[act] / w[act].sum()
    t = float(dist.max()) ** p
    rounds = rounds or 2 * n + 2
    floor = 1e-12

    def system(c, t, beta, act):
        X = c - Z[act]
        ax = np.abs(X)
        h = np.sum(np.power(ax, p), axis=1)
        gh = p * np.sign(X) * np.power(ax, p - 1.0)
        E = np.concatenate([h - t, beta @ gh, [beta.sum() - 1.0]])
        return E, X, ax, gh

    for _ in range(rounds):
        m = len(act)
        start = (c, t, beta)
        E, X, ax, gh = system(c, t, beta, act)
        err = float(np.max(np.abs(E)))
        for _ in range(60):
            if err <= 1e-15 or not budget.take():
                break
            curv = p * (p - 1.0) * (beta @ np.power(np.maximum(ax, floor), p - 2.0))
            K = np.zeros((m + D + 1, D + 1 + m))
            K[:m, :D] = gh
            K[:m, D] = -1.0
            K[m : m + D, :D] = np.diag(curv)
            K[m : m + D, D + 1 :] = gh.T
            K[m + D, D + 1 :] = 1.0
            step = np.linalg.lstsq(K, -E, rcond=None)[0]
            lam, improved = 1.0, False
            while lam > 1e-9:
                c2 = c + lam * step[:D]
                t2 = t + lam * step[D]
                b2 = beta + lam * step[D + 1 :]
                E2, X2, ax2, gh2 = system(c2, t2, b2, act)
                err2 = float(np.max(np.abs(E2)))
                if err2 < err:
                    improved = True
                    break
                lam *= 0.5
            if not improved:
                break
            c, t, beta, E, X, ax, gh, err = c2, t2, b2, E2, X2, ax2, gh2, err2
        if err > 1e-9:
            if m == 1:
                return None
            # near-singular working set: drop its least active member and retry
            c, t, beta = start
            k = int(np.argmin(np.sum(np.power(np.abs(c - Z[act]), p), axis=1)))
            act.pop(k)
            beta = np.delete(beta, k)
            beta = beta / beta.sum() if beta.sum() > 0 else np.full(len(act), 1.0 / len(act))
            continue
        if beta.min() < -1e-12 and m > 1:
            k = int(np.argmin(beta))
            act.pop(k)
            beta = np.delete(beta, k)
            beta = np.clip(beta, 0.0, None)
            beta = beta / beta.sum() if beta.sum() > 0 else np.full(len(act), 1.0 / len(act))
            continue
        h_all = np.sum(np.power(np.abs(c - Z), p), axis=1)
        viol = h_all - t
        viol[act] = -np.inf
        j = int(np.argmax(viol))
        if viol[j] > 1e-12 * t:
            act.append(j)
            beta = np.append(beta, 0.0)
            continue
        return c
    return None


def _unique_rows(X: np.ndarray) -> np.ndarray:
    _, idx = np.unique(X, axis=0, return_index=True)
    return np.sort(idx)


def chebyshev_center(A: PointSet, cfg: SolverConfig | None = None) -> CenterResult:
    """Center minimizing the largest l_p distance to the points of ``A``.

    Stages: annealed log-sum-exp smoothing with backtracking gradient
    descent, then Polyak subgradient steps, each followed by an active-set
    Newton polish on the KKT system.  Returns once the certificate residual
    at the candidate is <= ``cfg.tol``.
    """
    cfg = cfg or SolverConfig()
    s = A.space
    X = A.points
    U = X[_unique_rows(X)]
    if len(U) == 1:
        return CenterResult(U[0].copy(), 0.0, 0, 0.0)

    def finish(c, iters):
        cert = extract_certificate(A, c, cfg.active_tol)
        return CenterResult(c, radius_at(A, c), iters, cert.residual)

    if len(U) == 2:
        return finish(0.5 * (U[0] + U[1]), 0)

    budget = _Budget(cfg.max_iters)
    # correctly rounded mean: symmetric sets then start exactly at their center
    shift = np.array([math.fsum(col) for col in U.T]) / len(U)
    scale = float(np.max(lp_norm(U - shift, s)))
    Z = (U - shift) / scale

    best = finish(shift.copy(), 0)
    if best.certificate_residual <= cfg.tol:
        return best

    def consider(c_norm):
        nonlocal best
        cand = finish(shift + scale * c_norm, budget.used)
        better_res = cand.certificate_residual < best.certificate_residual
        if better_res and cand.radius <= best.radius * (1 + 1e-9) or cand.radius < best.radius * (1 - 1e-9):
            best = cand
        return cand.certificate_residual <= cfg.tol

    rng = np.random.default_rng(cfg.seed)
    c = np.zeros(Z.shape[1])
    for attempt in range(cfg.restarts + 1):
        for tau in cfg.smoothing_schedule:
            c, w = _smoothed_descent(Z, s, c, tau, cfg.descent_iters, budget)
            polished = _kkt_newton(Z, s, c, w, budget)
            if polished is not None and consider(polished):
                best.iterations = budget.used
                return best
            if budget.used >= budget.limit:
                break
        c = _polyak(Z, s, c, 10 * cfg.descent_iters, budget)
        _, _, w = _smoothed(Z, s, c, cfg.smoothing_schedule[-1])
        polished = _kkt_newton(Z, s, c, w, budget)
        if polished is not None and consider(polished):
            best.iterations = budget.used
            return best
        consider(c)
        if best.certificate_residual <= cfg.tol:
            return best
        if budget.used >= budget.limit:
            break
        log.debug("restart %d: residual %.3g", attempt + 1, best.certificate_residual)
        c = (best.center - shift) / scale + 1e-2 * rng.standard_normal(Z.shape[1])
    best.iterations = budget.used
    raise NonConvergence(
        f"certificate residual {best.certificate_residual:.3g} above tol {cfg.tol:.3g} "
        f"after {budget.used} iterations",
        best,
    )
