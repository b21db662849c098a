"""Computable outer bounds: Sato-type, strong-interference, degraded-weak.

All bounds are unions over the input-covariance coefficients (beta1, beta2);
frontier evaluators search the real unit disk (default sweep mode).  The
Sato-type sum bounds are additionally minimized over the correlation r
between the true noise and its surrogate twin, independently per bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import regions
from .gauss import (ChannelGains, DomainError, InputCoeffs, NoiseCorr,
                    build_joint_covariance, cap, effective_coeffs,
                    mutual_info)
from .regimes import degraded_rho, is_strong_at_rx1, is_strong_at_rx2

R_EDGE = 1.0 - 1e-6     # search interval for the surrogate-noise correlation
GOLDEN_ITERS = 36


@dataclass(frozen=True)
class SatoParams:
    coeffs: InputCoeffs = InputCoeffs()
    r12: NoiseCorr = NoiseCorr(0.0)   # couples Z1 with Ztil2 (first sum bound)
    r21: NoiseCorr = NoiseCorr(0.0)   # couples Z2 with Ztil1 (second sum bound)


@dataclass(frozen=True)
class WeakParams:
    alpha: float
    coeffs: InputCoeffs

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must be in [0,1], got {self.alpha}")
        if abs(self.coeffs.power() - 1.0) > 1e-9:
            raise DomainError("weak-outer coeffs must satisfy "
                              "|beta1|^2+|beta2|^2 = 1")


def _disk_grid(n: int = regions.GRID_POINTS_PER_DIM):
    """Real (beta1, beta2) grid over the closed unit disk (circle included)."""
    ax = np.linspace(-1.0, 1.0, n)
    b1, b2 = np.meshgrid(ax, ax, indexing="ij")
    b1, b2 = b1.ravel(), b2.ravel()
    r = np.hypot(b1, b2)
    scale = np.where(r > 1.0, 1.0 / np.where(r > 1.0, r, 1.0), 1.0)
    return np.stack([b1 * scale, b2 * scale], axis=1)


def _clip_disk(x):
    """Project (..., 2) real coefficient rows back into the unit disk."""
    x = np.asarray(x, dtype=float)
    r = np.hypot(x[..., 0], x[..., 1])
    return x / np.where(r > 1.0, r, 1.0)[..., None]


# ---------------------------------------------------------------------------
# Sato-type bound (Thm-1 shape)

def _golden_min(f, lo, hi, iters: int = GOLDEN_ITERS):
    """Vectorized golden-section minimization of f over [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = f(c), f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def _sato_cross_term(v_self, v_other, s, r):
    """log2 of Var(Y|Ytilde, X_other) / Var(Y|all inputs, Ytilde) at corr r."""
    num = v_self - np.abs(s + r) ** 2 / v_other
    return np.log2(np.maximum(num, 1e-300) / (1.0 - np.abs(r) ** 2))


def _min_over_r(v_self, v_other, s, complex_mode: bool = False):
    """Per-element minimum over the surrogate correlation r."""
    if complex_mode:
        mags = np.linspace(0.0, R_EDGE, 9)
        phases = np.exp(1j * np.linspace(0, 2 * math.pi, 16, endpoint=False))
        best = np.full(np.broadcast(v_self, v_other, s).shape, np.inf)
        for m in mags:
            for ph in phases:
                best = np.minimum(best, _sato_cross_term(v_self, v_other, s, m * ph))
        return best
    rg = np.linspace(-R_EDGE, R_EDGE, 33)
    vals = np.stack([_sato_cross_term(v_self, v_other, s, r) for r in rg])
    k = np.argmin(vals, axis=0)
    coarse = np.min(vals, axis=0)
    step = rg[1] - rg[0]
    lo = np.clip(rg[k] - step, -R_EDGE, R_EDGE)
    hi = np.clip(rg[k] + step, -R_EDGE, R_EDGE)
    _, fmin = _golden_min(lambda r: _sato_cross_term(v_self, v_other, s, r), lo, hi)
    return np.minimum(fmin, coarse)


def sato_bound_values(gains: ChannelGains, b1, b2, minimize_r: bool = True,
                      r12=0.0, r21=0.0, complex_mode: bool = False):
    """Closed-form Sato bounds, vectorized over (beta1, beta2) arrays.

    Returns an (..., 4) array: [R1, R2, sum@Y2+cross, sum@Y1+cross].
    The cross terms are minimized over r when minimize_r is set, else
    evaluated at the given r12/r21.
    """
    u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(gains, b1, b2)
    w1w2 = np.sqrt(w1sq * w2sq)
    r1 = np.log2(1.0 + np.abs(u1) ** 2 + w1sq)
    r2 = np.log2(1.0 + np.abs(v2) ** 2 + w2sq)
    full1 = np.log2(1.0 + np.abs(u1) ** 2 + np.abs(v1) ** 2 + w1sq)
    full2 = np.log2(1.0 + np.abs(u2) ** 2 + np.abs(v2) ** 2 + w2sq)
    # conditioned on X2: Y1 ~ u1*X1 + w1*W + Z1, Ytil2 ~ u2*X1 + w2*W + Ztil2
    va, vb = np.abs(u1) ** 2 + w1sq + 1.0, np.abs(u2) ** 2 + w2sq + 1.0
    s_a = u1 * np.conj(u2) + w1w2
    # conditioned on X1: Y2 ~ v2*X2 + w2*W + Z2, Ytil1 ~ v1*X2 + w1*W + Ztil1
    vc, vd = np.abs(v2) ** 2 + w2sq + 1.0, np.abs(v1) ** 2 + w1sq + 1.0
    s_b = v2 * np.conj(v1) + w1w2
    if minimize_r:
        cross_a = _min_over_r(va, vb, s_a, complex_mode)
        cross_b = _min_over_r(vc, vd, s_b, complex_mode)
    else:
        cross_a = _sato_cross_term(va, vb, s_a, r12)
        cross_b = _sato_cross_term(vc, vd, s_b, r21)
    return np.stack([r1, r2, full2 + cross_a, full1 + cross_b], axis=-1)


SATO_COEFS = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 1.0]])


def sato_polytope(gains: ChannelGains, p: SatoParams):
    """The four Sato-type bounds at fixed coefficients and noise couplings.

    Evaluated through the log-det engine with surrogate outputs:
      R1    <= I(Y1; X1, Xc | X2)
      R2    <= I(Y2; X2, Xc | X1)
      R1+R2 <= I(Y2; X1, X2, Xc) + I(Y1; X1, Xc | Ytil2, X2)
      R1+R2 <= I(Y1; X1, X2, Xc) + I(Y2; X2, Xc | Ytil1, X1)
    """
    cov = build_joint_covariance(gains, p.coeffs, noise=p.r12,
                                 include_surrogates=True, noise2=p.r21)
    b_r1 = mutual_info(cov, ["Y1", "X1", "Xc"], ["X2"])
    b_r2 = mutual_info(cov, ["Y2", "X2", "Xc"], ["X1"])
    b_sa = mutual_info(cov, ["Y2", "X1", "X2", "Xc"]) \
        + mutual_info(cov, ["Y1", "X1", "Xc"], ["Ytil2", "X2"])
    b_sb = mutual_info(cov, ["Y1", "X1", "X2", "Xc"]) \
        + mutual_info(cov, ["Y2", "X2", "Xc"], ["Ytil1", "X1"])
    return np.array([b_r1, b_r2, b_sa, b_sb])


def sato_evaluator(gains: ChannelGains, grid_n: int = regions.GRID_POINTS_PER_DIM,
                   complex_mode: bool = False) -> regions.RegionEvaluator:
    def bounds_fn(params):
        return sato_bound_values(gains, params[:, 0], params[:, 1],
                                 complex_mode=complex_mode)

    return regions.RegionEvaluator(SATO_COEFS, bounds_fn, _disk_grid(grid_n),
                                   clip_fn=_clip_disk, name="sato")


def sato_frontier(gains: ChannelGains, n_dir: int = regions.DEFAULT_DIRECTIONS,
                  complex_mode: bool = False) -> regions.Frontier:
    f = regions.frontier(sato_evaluator(gains, complex_mode=complex_mode),
                         n_dir, meta={"bound": "sato", "valid": True})
    return f


# ---------------------------------------------------------------------------
# Strong-interference outer bounds (Thm-5 shape and its mirror / both-Rx form)

STRONG_COEFS = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
STRONG_BOTH_COEFS = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 1.0]])


def strong_rx1_values(gains: ChannelGains, b1, b2):
    """Vectorized [R1, R2, sum@Y1] bounds for the strong-at-Rx1 region."""
    u1, v1, w1sq, _, v2, w2sq = effective_coeffs(gains, b1, b2)
    return np.stack([
        np.log2(1.0 + np.abs(u1) ** 2 + w1sq),
        np.log2(1.0 + np.abs(v2) ** 2 + w2sq),
        np.log2(1.0 + np.abs(u1) ** 2 + np.abs(v1) ** 2 + w1sq),
    ], axis=-1)


def strong_rx1_outer(gains: ChannelGains, coeffs: InputCoeffs):
    """Three bounds; valid as an outer bound only under strong-at-Rx1."""
    vals = strong_rx1_values(gains, np.array([coeffs.beta1]),
                             np.array([coeffs.beta2]))[0]
    return vals, is_strong_at_rx1(gains)


def strong_rx2_outer(gains: ChannelGains, coeffs: InputCoeffs):
    """Index-swapped twin of strong_rx1_outer; bounds in [R2, R1, sum] order
    re-sorted back to [R1, R2, sum]."""
    swapped = InputCoeffs(beta1=coeffs.beta2, beta2=coeffs.beta1)
    vals, _ = strong_rx1_outer(gains.swapped(), swapped)
    return np.array([vals[1], vals[0], vals[2]]), is_strong_at_rx2(gains)


def strong_both_region(gains: ChannelGains, coeffs: InputCoeffs):
    """Two single-rate bounds plus both sum bounds (at Y1 and at Y2)."""
    b1 = np.array([coeffs.beta1])
    b2 = np.array([coeffs.beta2])
    u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(gains, b1, b2)
    vals = np.array([
        math.log2(1.0 + abs(u1[0]) ** 2 + w1sq[0]),
        math.log2(1.0 + abs(v2[0]) ** 2 + w2sq[0]),
        math.log2(1.0 + abs(u1[0]) ** 2 + abs(v1[0]) ** 2 + w1sq[0]),
        math.log2(1.0 + abs(u2[0]) ** 2 + abs(v2[0]) ** 2 + w2sq[0]),
    ])
    return vals, is_strong_at_rx1(gains) and is_strong_at_rx2(gains)


def strong_rx1_evaluator(gains, grid_n: int = regions.GRID_POINTS_PER_DIM):
    def bounds_fn(params):
        return strong_rx1_values(gains, params[:, 0], params[:, 1])

    return regions.RegionEvaluator(STRONG_COEFS, bounds_fn, _disk_grid(grid_n),
                                   clip_fn=_clip_disk, name="strong_rx1")


def strong_rx1_frontier(gains: ChannelGains,
                        n_dir: int = regions.DEFAULT_DIRECTIONS) -> regions.Frontier:
    return regions.frontier(strong_rx1_evaluator(gains), n_dir,
                            meta={"bound": "strong_rx1",
                                  "valid": is_strong_at_rx1(gains)})


def strong_rx2_frontier(gains: ChannelGains,
                        n_dir: int = regions.DEFAULT_DIRECTIONS) -> regions.Frontier:
    def bounds_fn(params):
        vals = strong_rx1_values(gains.swapped(), params[:, 0], params[:, 1])
        return vals[:, [1, 0, 2]]  # back to [R1, R2, sum] ordering

    ev = regions.RegionEvaluator(STRONG_COEFS, bounds_fn, _disk_grid(),
                                 clip_fn=_clip_disk, name="strong_rx2")
    return regions.frontier(ev, n_dir, meta={"bound": "strong_rx2",
                                             "valid": is_strong_at_rx2(gains)})


def strong_both_evaluator(gains, grid_n: int = regions.GRID_POINTS_PER_DIM):
    def bounds_fn(params):
        u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(gains, params[:, 0],
                                                      params[:, 1])
        return np.stack([
            np.log2(1.0 + np.abs(u1) ** 2 + w1sq),
            np.log2(1.0 + np.abs(v2) ** 2 + w2sq),
            np.log2(1.0 + np.abs(u1) ** 2 + np.abs(v1) ** 2 + w1sq),
            np.log2(1.0 + np.abs(u2) ** 2 + np.abs(v2) ** 2 + w2sq),
        ], axis=-1)

    return regions.RegionEvaluator(STRONG_BOTH_COEFS, bounds_fn,
                                   _disk_grid(grid_n), clip_fn=_clip_disk,
                                   name="strong_both")


def strong_both_frontier(gains: ChannelGains,
                         n_dir: int = regions.DEFAULT_DIRECTIONS) -> regions.Frontier:
    valid = is_strong_at_rx1(gains) and is_strong_at_rx2(gains)
    return regions.frontier(strong_both_evaluator(gains), n_dir,
                            meta={"bound": "strong_both", "valid": valid})


# ---------------------------------------------------------------------------
# Degraded weak-interference outer bound (Thm-8 shape)

WEAK_COEFS = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])


def weak_degraded_values(gains: ChannelGains, rho, alpha, b1, b2):
    """Vectorized [R1, R2-difference, R2-direct] bounds."""
    m1sq = np.abs(gains.h11 + gains.h1c * np.conj(b1)) ** 2
    m2 = gains.h22 + rho * gains.h1c * np.real(np.conj(b2))
    m2sq = m2 ** 2
    return np.stack([
        np.log2(1.0 + m1sq * alpha),
        np.log2(1.0 + rho ** 2 * m1sq + m2sq)
        - np.log2(1.0 + rho ** 2 * m1sq * alpha),
        np.log2(1.0 + m2sq),
    ], axis=-1)


def weak_degraded_outer(gains: ChannelGains, p: WeakParams, rho: float | None = None):
    """Three bounds of the degraded weak-interference outer region.

    rho defaults to degraded_rho(gains); pass it explicitly for reductions
    (e.g. the broadcast sub-case h11 = h21 = h22 = 0 where the ratio is 0/0).
    """
    if rho is None:
        rho = degraded_rho(gains)
        if rho is None:
            raise DomainError("channel is not degraded (no valid rho)")
    vals = weak_degraded_values(gains, rho, np.array([p.alpha]),
                                np.array([p.coeffs.beta1]),
                                np.array([p.coeffs.beta2]))[0]
    return vals, True


def weak_degraded_evaluator(gains, rho=None,
                            grid_n: int = regions.GRID_POINTS_PER_DIM):
    if rho is None:
        rho = degraded_rho(gains)
        if rho is None:
            raise DomainError("channel is not degraded (no valid rho)")
    alphas = np.linspace(0.0, 1.0, grid_n)
    thetas = np.linspace(0.0, 2 * math.pi, 2 * grid_n, endpoint=False)
    aa, tt = np.meshgrid(alphas, thetas, indexing="ij")
    grid = np.stack([aa.ravel(), tt.ravel()], axis=1)

    def bounds_fn(params):
        alpha = np.clip(params[:, 0], 0.0, 1.0)
        theta = params[:, 1]
        return weak_degraded_values(gains, rho, alpha,
                                    np.cos(theta), np.sin(theta))

    def clip_fn(x):
        x = np.asarray(x, dtype=float)
        out = x.copy()
        out[..., 0] = np.clip(x[..., 0], 0.0, 1.0)
        out[..., 1] = x[..., 1] % (2 * math.pi)
        return out

    return regions.RegionEvaluator(WEAK_COEFS, bounds_fn, grid,
                                   clip_fn=clip_fn, name="weak_degraded")


def weak_degraded_frontier(gains: ChannelGains,
                           n_dir: int = regions.DEFAULT_DIRECTIONS,
                           rho: float | None = None) -> regions.Frontier:
    return regions.frontier(weak_degraded_evaluator(gains, rho=rho), n_dir,
                            meta={"bound": "weak_degraded", "valid": True})
