"""Rate-region support functions, Pareto frontiers, containment, time sharing.

Every region handled here is a union, over some parameter domain, of small
polytopes in the (R1, R2) quadrant described by bounds

    p_i*R1 + q_i*R2 <= v_i(params),    p_i, q_i in {0, 1, 2},

so the support function h(mu) = max mu.R is evaluated by vertex enumeration
of the polytope followed by maximization over the parameter domain (coarse
grid argmax + iterated shrinking-box refinement, fully vectorized).
Frontiers are stored as support-direction samples; only convex hulls are
ever compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SEED = 0xC0FFEE
DEFAULT_DIRECTIONS = 64
GRID_POINTS_PER_DIM = 33
REFINE_ROUNDS = 9
MAX_REFINE_STEPS = 60
REFINE_SHRINK = 1.0 / 3.0
HULL_TOL = 1e-7


@dataclass(frozen=True)
class RatePoint:
    r1: float
    r2: float

    def __post_init__(self):
        if not (np.isfinite(self.r1) and np.isfinite(self.r2)
                and self.r1 >= -1e-12 and self.r2 >= -1e-12):
            raise ValueError(f"invalid rate point ({self.r1}, {self.r2})")
        object.__setattr__(self, "r1", max(0.0, float(self.r1)))
        object.__setattr__(self, "r2", max(0.0, float(self.r2)))

    def as_array(self):
        return np.array([self.r1, self.r2])


def directions(n: int):
    """n unit direction vectors spanning the first quadrant, angle-sorted."""
    if n < 3:
        raise ValueError("need at least 3 directions")
    ang = np.linspace(0.0, math.pi / 2, n)
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def _candidate_points(coefs, vals):
    """All vertex candidates of {coefs @ R <= vals, R >= 0}, batched."""
    m = coefs.shape[0]
    batch = vals.shape[:-1]
    zeros = np.zeros(batch)
    pts = [np.stack([zeros, zeros], axis=-1)]
    for i in range(m):
        p, q = coefs[i]
        if p > 0:
            pts.append(np.stack([vals[..., i] / p, zeros], axis=-1))
        if q > 0:
            pts.append(np.stack([zeros, vals[..., i] / q], axis=-1))
    for i in range(m):
        pi, qi = coefs[i]
        for j in range(i + 1, m):
            pj, qj = coefs[j]
            det = pi * qj - pj * qi
            if abs(det) < 1e-12:
                continue
            r1 = (vals[..., i] * qj - vals[..., j] * qi) / det
            r2 = (pi * vals[..., j] - pj * vals[..., i]) / det
            pts.append(np.stack([r1, r2], axis=-1))
    return np.stack(pts, axis=-2)  # (..., n_cand, 2)


def polytope_support(coefs, vals, mu):
    """Support value max mu.R over {coefs @ R <= vals, R >= 0}, batched.

    Negative bound values are clamped to 0 (region pinned to the axes).
    Returns (values, argpoints) with shapes vals.shape[:-1] and (..., 2).
    """
    coefs = np.asarray(coefs, dtype=float)
    vals = np.maximum(np.asarray(vals, dtype=float), 0.0)
    mu = np.asarray(mu, dtype=float)
    pts = _candidate_points(coefs, vals)
    lhs = pts @ coefs.T
    slack = vals[..., None, :] + 1e-9 * (1.0 + np.abs(vals[..., None, :]))
    feas = np.all(lhs <= slack, axis=-1) & np.all(pts >= -1e-12, axis=-1)
    obj = np.where(feas, pts @ mu, -np.inf)
    k = np.argmax(obj, axis=-1)
    value = np.take_along_axis(obj, k[..., None], -1)[..., 0]
    point = np.take_along_axis(pts, k[..., None, None], -2)[..., 0, :]
    return value, np.clip(point, 0.0, None)


class RegionEvaluator:
    """Union over a parameter domain of axis-aligned-coefficient polytopes.

    coefs: (m, 2) fixed bound coefficients.
    bounds_fn: (N, d) parameter array -> (N, m) bound values (vectorized).
    param_grid: (N, d) coarse search grid (N >= 1; d may be 0).
    clip_fn: projects a parameter vector back into the domain (for NM).
    """

    def __init__(self, coefs, bounds_fn, param_grid, clip_fn=None, name=""):
        self.coefs = np.asarray(coefs, dtype=float)
        self.bounds_fn = bounds_fn
        self.param_grid = np.atleast_2d(np.asarray(param_grid, dtype=float))
        self.clip_fn = clip_fn if clip_fn is not None else (lambda x: x)
        self.name = name
        self._grid_bounds = None

    def grid_bounds(self):
        if self._grid_bounds is None:
            self._grid_bounds = np.asarray(self.bounds_fn(self.param_grid))
        return self._grid_bounds

    def bounds_at(self, params):
        params = np.asarray(params, dtype=float)
        return np.asarray(self.bounds_fn(params.reshape(1, -1)))[0]

    def clip(self, params):
        """clip_fn applied row-wise to an (N, d) parameter array."""
        params = np.asarray(params, dtype=float)
        clipped = self.clip_fn(params)
        return np.asarray(clipped, dtype=float)

    def grid_steps(self):
        """Per-dimension coarse-grid spacing (refinement box half-width)."""
        steps = []
        for d in range(self.param_grid.shape[1]):
            u = np.unique(self.param_grid[:, d])
            steps.append(np.median(np.diff(u)) if u.size > 1 else 1.0)
        return np.asarray(steps)


def _refine_offsets(ndim: int):
    pts = 9 if ndim <= 2 else 5
    axes = [np.linspace(-1.0, 1.0, pts)] * ndim
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _feasible_candidates(coefs, vals):
    """(candidate points, feasibility mask) of the bound polytopes.

    vals has shape (..., m); points come back as (..., C, 2) with the mask
    (..., C)."""
    pts = _candidate_points(coefs, vals)
    lhs = pts @ coefs.T
    slack = vals[..., None, :] + 1e-9 * (1.0 + np.abs(vals[..., None, :]))
    feas = np.all(lhs <= slack, axis=-1) & np.all(pts >= -1e-12, axis=-1)
    return np.clip(pts, 0.0, None), feas


def _batched_support(ev: RegionEvaluator, dirs, refine: bool = True):
    """Support values of the union region for several directions at once.

    Coarse-grid argmax per direction, then a compass search over a local
    offset grid (all directions advanced together, each with its own box
    width that shrinks only on rounds without improvement).
    Returns (values (n,), argpoints (n, 2), params (n, d)).
    """
    dirs = np.asarray(dirs, dtype=float)
    n = dirs.shape[0]
    gb = ev.grid_bounds()                              # (N, m)
    cpts, feas = _feasible_candidates(ev.coefs, gb)    # (N, C, 2), (N, C)
    scores = np.einsum("ncd,kd->knc", cpts, dirs)      # (n, N, C)
    obj = np.where(feas[None, :, :], scores, -np.inf).reshape(n, -1)
    k = np.argmax(obj, axis=1)
    gi, ci = np.unravel_index(k, feas.shape)
    best_val = obj[np.arange(n), k]
    best_pt = cpts[gi, ci]
    best_par = np.asarray(ev.param_grid, dtype=float)[gi]
    ndim = best_par.shape[1]
    if not refine or ndim == 0:
        return best_val, best_pt, best_par
    offsets = _refine_offsets(ndim)                    # (K, d)
    width = np.tile(ev.grid_steps(), (n, 1))           # (n, d)
    shrinks = np.zeros(n, dtype=int)
    active = np.ones(n, dtype=bool)
    for _ in range(MAX_REFINE_STEPS):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        cand = (best_par[idx, None, :]
                + offsets[None, :, :] * width[idx, None, :])
        cand = ev.clip(cand.reshape(-1, ndim)).reshape(len(idx), -1, ndim)
        vals = np.asarray(ev.bounds_fn(cand.reshape(-1, ndim)))
        vals = vals.reshape(len(idx), cand.shape[1], -1)
        pts, ok = _feasible_candidates(ev.coefs, vals)  # (i,K,C,2), (i,K,C)
        sc = np.einsum("ikcd,id->ikc", pts, dirs[idx])
        sc = np.where(ok, sc, -np.inf).reshape(len(idx), -1)
        j = np.argmax(sc, axis=1)
        v = sc[np.arange(len(idx)), j]
        ki, ci2 = np.unravel_index(j, ok.shape[1:])
        improved = v > best_val[idx] + 1e-12 * (1.0 + np.abs(best_val[idx]))
        better = v > best_val[idx]
        rows = idx[better]
        best_val[rows] = v[better]
        best_pt[rows] = pts[np.arange(len(idx)), ki, ci2][better]
        best_par[rows] = cand[np.arange(len(idx)), ki][better]
        stalled = idx[~improved]   # crawl along the ridge while improving
        width[stalled] *= REFINE_SHRINK
        shrinks[stalled] += 1
        active[stalled] = shrinks[stalled] < REFINE_ROUNDS
    return best_val, best_pt, best_par


def support_value(ev: RegionEvaluator, mu, refine: bool = True):
    """max mu.R over the evaluator's region.

    Coarse-grid argmax followed by a shrinking-box compass search around the
    incumbent (every round is one batched bounds_fn call).
    Returns (value, argpoint, params).
    """
    mu = np.asarray(mu, dtype=float)
    vals, pts, pars = _batched_support(ev, mu[None, :], refine=refine)
    return float(vals[0]), pts[0], pars[0]


@dataclass
class Frontier:
    """Support-sample representation of (the convex hull of) a rate region."""
    directions: np.ndarray            # (n, 2) unit vectors, angle-sorted
    values: np.ndarray                # (n,) support values in bits
    argpoints: np.ndarray | None = None   # (n, 2) witness rate points
    params: list | None = None        # per-direction witness parameters
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.directions = np.asarray(self.directions, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        n = self.directions.shape[0]
        if self.values.shape != (n,):
            raise ValueError("directions/values length mismatch")
        ang = np.arctan2(self.directions[:, 1], self.directions[:, 0])
        if np.any(np.diff(ang) <= 0):
            raise ValueError("directions must be strictly increasing in angle")
        if np.any(self.values < -1e-12):
            raise ValueError("support values must be nonnegative")
        self.values = np.maximum(self.values, 0.0)
        if self.argpoints is not None:
            self.argpoints = np.asarray(self.argpoints, dtype=float)
            worst = np.max(self.directions @ self.argpoints.T - self.values[:, None])
            if worst > HULL_TOL:
                raise ValueError(f"argpoint escapes half-plane hull by {worst}")

    def support(self, mu):
        """Support of the region induced by the stored half-planes at mu."""
        val, _ = polytope_support(self.directions, self.values[None, :],
                                  np.asarray(mu, dtype=float))
        return float(val[0])

    def resampled(self, new_directions):
        new_directions = np.asarray(new_directions, dtype=float)
        vals = np.array([self.support(mu) for mu in new_directions])
        return Frontier(new_directions, vals, meta=dict(self.meta))


def frontier(ev: RegionEvaluator, n_directions: int = DEFAULT_DIRECTIONS,
             refine: bool = True, meta: dict | None = None) -> Frontier:
    """Sample the region's support function over equiangular directions."""
    dirs = directions(n_directions)
    vals, pts, pars = _batched_support(ev, dirs, refine=refine)
    # monotone cleanup: every sampled value must cover every witness point
    vals = np.maximum(vals, np.max(dirs @ pts.T, axis=1))
    m = dict(meta or {})
    m.setdefault("evaluator", ev.name)
    return Frontier(dirs, vals, argpoints=pts, params=pars, meta=m)


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    max_gap: float                  # max over directions of inner - outer
    worst_direction: tuple
    gaps: np.ndarray

    def __bool__(self):
        return self.contained


def contains(outer: Frontier, inner: Frontier, tol: float = 1e-9) -> ContainmentReport:
    """True iff inner's support <= outer's support + tol at every direction."""
    if (outer.directions.shape == inner.directions.shape
            and np.allclose(outer.directions, inner.directions, atol=1e-12)):
        inner_vals = inner.values
    else:
        inner_vals = inner.resampled(outer.directions).values
    gaps = inner_vals - outer.values
    k = int(np.argmax(gaps))
    return ContainmentReport(
        contained=bool(gaps[k] <= tol),
        max_gap=float(gaps[k]),
        worst_direction=tuple(outer.directions[k]),
        gaps=gaps,
    )


def convexify(points, n_directions: int = DEFAULT_DIRECTIONS) -> Frontier:
    """Upper-right convex hull (time sharing) of a rate-point cloud."""
    pts = np.array([[p.r1, p.r2] if isinstance(p, RatePoint) else list(p)
                    for p in points], dtype=float)
    if pts.size == 0:
        raise ValueError("need at least one point")
    dirs = directions(n_directions)
    scores = dirs @ pts.T
    k = np.argmax(scores, axis=1)
    vals = np.maximum(scores[np.arange(len(dirs)), k], 0.0)
    return Frontier(dirs, vals, argpoints=pts[k], meta={"kind": "convex-hull"})
