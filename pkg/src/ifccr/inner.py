"""Achievable-rate regions for fixed Gaussian input assignments.

Four named schemes are supported; each fixes the auxiliary codebooks of the
general rate-splitting scheme to a concrete jointly-Gaussian assignment:

  all_common   both messages fully common, relay superposes both
               (relay input from an InputCoeffs pair).
  all_private  both messages private; the relay precodes two independent
               streams against the cross interference (GaussAssign).
  cor5         message 1 private with a relay-binned stream, message 2
               fully common and known to the relay (InputCoeffs).
  cor6         both messages common, the relay stream private to
               destination 1 (InputCoeffs).

Each scheme provides a direct closed-form region evaluated through the
covariance engine, a vectorized evaluator for frontier tracing, and an
MITerms extraction so the closed forms can be certified against the LP
projection of the sub-rate polytope.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gauss import (ChannelGains, InputCoeffs, JointCovariance, DomainError,
                    build_joint_covariance, effective_coeffs, mi_pair)
from .ratesplit import MITerms, VARS, theorem_drops
from . import regions as _regions
from . import regimes as _regimes
from . import outer as _outer

SCHEME_IDS = ("all_common", "all_private", "cor5", "cor6")


@dataclass(frozen=True)
class GaussAssign:
    """Relay coefficients for the all-private scheme.

    Xc = b1*X1 + b2*X2 + c1*V1 + c2*V2 with V1, V2 independent unit-power
    streams; the stream for destination i is precoded against the other
    source with slope lam_i.  lam_i = None selects the MMSE slope.
    """
    b1: float = 0.0
    b2: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    lam1: float | None = None
    lam2: float | None = None

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0:
            raise DomainError("stream gains c1, c2 must be nonnegative")
        p = self.b1 ** 2 + self.b2 ** 2 + self.c1 ** 2 + self.c2 ** 2
        if p > 1.0 + 1e-9:
            raise DomainError(f"relay power {p} exceeds 1")


def mmse_lambdas(gains: ChannelGains, a: GaussAssign):
    """MMSE precoding slopes for the all-private scheme."""
    den1 = gains.h1c ** 2 * (a.c1 ** 2 + a.c2 ** 2) + 1.0
    den2 = gains.h2c ** 2 * (a.c1 ** 2 + a.c2 ** 2) + 1.0
    s1 = gains.h12 + gains.h1c * a.b2
    s2 = gains.h21 + gains.h2c * a.b1
    lam1 = (gains.h1c * a.c1 ** 2 / den1) * s1 if a.c1 > 0 else 0.0
    lam2 = (gains.h2c * a.c2 ** 2 / den2) * s2 if a.c2 > 0 else 0.0
    return lam1, lam2


def _resolved_lambdas(gains, a):
    l1m, l2m = mmse_lambdas(gains, a)
    return (l1m if a.lam1 is None else a.lam1,
            l2m if a.lam2 is None else a.lam2)


# ---------------------------------------------------------------------------
# scheme covariances and auxiliary-label assignments

_AUX = ("U1c", "U2c", "X1", "X2", "U0cb", "U1pb", "U2pb", "Y1", "Y2")

_ASSIGN = {
    "all_common": {"U1c": "X1", "U2c": "X2", "U0cb": "Xc",
                   "U1pb": None, "U2pb": None},
    "cor5": {"U1c": None, "U2c": "X2", "U0cb": "X2",
             "U1pb": "Xc", "U2pb": None},
    "cor6": {"U1c": "X1", "U2c": "X2", "U0cb": "X2",
             "U1pb": "Xc", "U2pb": None},
    "all_private": {"U1c": None, "U2c": None, "U0cb": None,
                    "U1pb": "U1pb", "U2pb": "U2pb"},
}

_MASKS = {
    "all_common": frozenset(set(VARS) - {"R1c", "R2c"}),
    "all_private": frozenset({"R1c", "R2c", "R1cb", "R2cb",
                              "R1pb", "R2pb", "R0cbp"}),
    "cor5": frozenset(set(VARS) - {"R2c", "R1p", "R1pb"}),
    "cor6": frozenset(set(VARS) - {"R1c", "R2c", "R1pb"}),
}

_DEC1 = ("U1c", "U2c", "X1", "U0cb", "U1pb")
_STARS1 = {
    1: frozenset(),
    2: frozenset({"U2c"}),
    3: frozenset({"U1c"}),
    4: frozenset({"U1c", "U2c"}),
    5: frozenset({"U1c", "U2c", "X1"}),
    6: frozenset({"U1c", "U2c", "U0cb"}),
    7: frozenset({"U1c", "X1"}),
    8: frozenset({"U1c", "U2c", "X1", "U0cb"}),
}
_NAME_SWAP = {"U1c": "U2c", "U2c": "U1c", "X1": "X2", "X2": "X1",
              "U0cb": "U0cb", "U1pb": "U2pb", "U2pb": "U1pb",
              "Y1": "Y2", "Y2": "Y1"}
_DEC2 = tuple(_NAME_SWAP[n] for n in _DEC1)
_STARS2 = {e: frozenset(_NAME_SWAP[n] for n in s) for e, s in _STARS1.items()}


def _all_private_cov(gains, a, lam1, lam2):
    # latents: X1, X2, V1, V2, Z1, Z2 (independent, unit variance)
    rows = {
        "X1": [1, 0, 0, 0, 0, 0],
        "X2": [0, 1, 0, 0, 0, 0],
        "U1pb": [0, lam1, a.c1, 0, 0, 0],
        "U2pb": [lam2, 0, 0, a.c2, 0, 0],
        "Y1": [gains.h11 + gains.h1c * a.b1,
               gains.h12 + gains.h1c * a.b2,
               gains.h1c * a.c1, gains.h1c * a.c2, 1, 0],
        "Y2": [gains.h21 + gains.h2c * a.b1,
               gains.h22 + gains.h2c * a.b2,
               gains.h2c * a.c1, gains.h2c * a.c2, 0, 1],
    }
    labels = tuple(rows)
    mat = np.array([rows[k] for k in labels], dtype=complex)
    return JointCovariance(labels, mat @ mat.conj().T)


def scheme_covariance(gains: ChannelGains, scheme: str, params):
    """(JointCovariance, auxiliary-name -> label map) for a scheme."""
    if scheme not in SCHEME_IDS:
        raise DomainError(f"unknown scheme {scheme!r}")
    assign = dict(_ASSIGN[scheme])
    for lab in ("X1", "X2", "Y1", "Y2"):
        assign[lab] = lab
    if scheme == "all_private":
        if not isinstance(params, GaussAssign):
            raise DomainError("all_private takes a GaussAssign")
        lam1, lam2 = _resolved_lambdas(gains, params)
        return _all_private_cov(gains, params, lam1, lam2), assign
    if not isinstance(params, InputCoeffs):
        raise DomainError(f"{scheme} takes an InputCoeffs")
    return build_joint_covariance(gains, params), assign


def _scheme_mi(cov, assign, a_names, b_names, c_names):
    """I(A; B | C) with auxiliary names resolved through the assignment.

    Names mapping to None (unused auxiliaries) vanish; names whose label
    already appears in the conditioning set are removed (they are constant
    given C).  Empty A or B gives 0.
    """
    cond = {assign[n] for n in c_names if assign[n] is not None}
    bset = {assign[n] for n in b_names if assign[n] is not None} - cond
    aset = {assign[n] for n in a_names if assign[n] is not None} - cond
    if not aset or not bset:
        return 0.0
    if aset & bset:
        raise DomainError("degenerate assignment: identical variables on "
                          "both sides of a mutual information")
    return mi_pair(cov, sorted(aset), sorted(bset), sorted(cond))


def mi_terms_for_scheme(gains: ChannelGains, scheme: str, params) -> MITerms:
    """Mutual-information terms of a named scheme's Gaussian assignment."""
    cov, assign = scheme_covariance(gains, scheme, params)
    dec1, dec2 = [], []
    for e in range(1, 9):
        s1 = _STARS1[e]
        dec1.append(_scheme_mi(cov, assign, ["Y1"],
                               [n for n in _DEC1 if n not in s1], sorted(s1)))
        s2 = _STARS2[e]
        dec2.append(_scheme_mi(cov, assign, ["Y2"],
                               [n for n in _DEC2 if n not in s2], sorted(s2)))
    t1 = _scheme_mi(cov, assign, ["X1"], ["U0cb"], ["U1c", "U2c"])
    t2 = _scheme_mi(cov, assign, ["X2"], ["U0cb"], ["U1c", "U2c"])
    b0 = _scheme_mi(cov, assign, ["U0cb"], ["X1", "X2"], ["U1c", "U2c"])
    b1 = _scheme_mi(cov, assign, ["U1pb"], ["X2"],
                    ["U1c", "X1", "U2c", "U0cb"])
    b2 = _scheme_mi(cov, assign, ["U2pb"], ["X1"],
                    ["U2c", "X2", "U1c", "U0cb"])
    b12 = b1 + b2 + _scheme_mi(cov, assign, ["U1pb"], ["U2pb"],
                               ["U1c", "U2c", "U0cb", "X1", "X2"])
    mask = _MASKS[scheme]
    drops1 = theorem_drops(mask, 1)
    drops2 = theorem_drops(mask, 2)
    if scheme == "cor6":
        # destination 2 must still resolve X1's common index against its own
        # signal: its event-3 budget stays active even though the dropping
        # list would allow removing it.
        drops2 = drops2 - {3}
    return MITerms(b0=b0, b1=b1, b2=b2, b12=b12, t1=t1, t2=t2,
                   dec1=tuple(dec1), dec2=tuple(dec2), mask=mask,
                   drops1=drops1, drops2=drops2)


# ---------------------------------------------------------------------------
# direct closed-form regions (engine-backed, single evaluation)

def region_all_common(gains: ChannelGains, coeffs: InputCoeffs):
    """Bound values [R1, R2, sum at Y1, sum at Y2] of the all-common scheme."""
    cov = build_joint_covariance(gains, coeffs)
    return np.array([
        mi_pair(cov, ["Y1"], ["X1", "Xc"], ["X2"]),
        mi_pair(cov, ["Y2"], ["X2", "Xc"], ["X1"]),
        mi_pair(cov, ["Y1"], ["X1", "X2", "Xc"], []),
        mi_pair(cov, ["Y2"], ["X1", "X2", "Xc"], []),
    ])


def region_all_private(gains: ChannelGains, a: GaussAssign):
    """Bound values [R1, R2, R1+R2] of the all-private precoding scheme.

    A zero-power stream (c_i = 0) carries no auxiliary: its precoding cost
    vanishes and the destination decodes the source alone.
    """
    cov, assign = scheme_covariance(gains, "all_private", a)
    lam1, lam2 = _resolved_lambdas(gains, a)
    if a.c1 > 0 or lam1 != 0:
        r1 = (mi_pair(cov, ["Y1"], ["X1", "U1pb"], [])
              - mi_pair(cov, ["U1pb"], ["X2"], ["X1"]))
    else:
        r1 = mi_pair(cov, ["Y1"], ["X1"], [])
    if a.c2 > 0 or lam2 != 0:
        r2 = (mi_pair(cov, ["Y2"], ["X2", "U2pb"], [])
              - mi_pair(cov, ["U2pb"], ["X1"], ["X2"]))
    else:
        r2 = mi_pair(cov, ["Y2"], ["X2"], [])
    return np.array([r1, r2, r1 + r2])


def region_one_common_one_private(gains: ChannelGains, coeffs: InputCoeffs):
    """Bound values [R1, R2, R2, R1+R2] of the cor5 scheme."""
    cov = build_joint_covariance(gains, coeffs)
    return np.array([
        mi_pair(cov, ["Y1"], ["X1", "Xc"], ["X2"]),
        mi_pair(cov, ["Y2"], ["X2"], []),
        mi_pair(cov, ["Y1"], ["X2", "Xc"], ["X1"]),
        mi_pair(cov, ["Y1"], ["X1", "X2", "Xc"], []),
    ])


COR5_COEFS = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [1.0, 1.0]])


def region_common_sources_private_relay(gains: ChannelGains,
                                        coeffs: InputCoeffs):
    """Bound values of the cor6 scheme, ordered as COR6_COEFS rows:
    [R1, R1, R2, R2, R1+R2, R1+R2, R1+R2, R1+2R2]."""
    cov = build_joint_covariance(gains, coeffs)
    B1 = mi_pair(cov, ["Y1"], ["X1", "X2", "Xc"], [])
    B2 = mi_pair(cov, ["Y1"], ["X2", "Xc"], ["X1"])
    B3 = mi_pair(cov, ["Y1"], ["X1", "Xc"], ["X2"])
    B4 = mi_pair(cov, ["Y1"], ["Xc"], ["X1", "X2"])
    B5 = mi_pair(cov, ["Y2"], ["X1", "X2"], [])
    B6 = mi_pair(cov, ["Y2"], ["X2"], ["X1"])
    B7 = mi_pair(cov, ["Y2"], ["X1"], ["X2"])
    return np.array([B3, B4 + B7, B2, B6, B1, B2 + B7, B4 + B5, B2 + B5])


COR6_COEFS = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0],
                       [1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [1.0, 2.0]])


# ---------------------------------------------------------------------------
# vectorized evaluators for frontier tracing

def _cor5_values(gains, b1, b2):
    u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(gains, b1, b2)
    au1, av1 = np.abs(u1) ** 2, np.abs(v1) ** 2
    au2, av2 = np.abs(u2) ** 2, np.abs(v2) ** 2
    r1 = np.log2(1.0 + au1 + w1sq)
    r2a = np.log2(1.0 + au2 + av2 + w2sq) - np.log2(1.0 + au2 + w2sq)
    r2b = np.log2(1.0 + av1 + w1sq)
    s = np.log2(1.0 + au1 + av1 + w1sq)
    return np.stack([r1, r2a, r2b, s], axis=-1)


def _cor6_values(gains, b1, b2):
    u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(gains, b1, b2)
    au1, av1 = np.abs(u1) ** 2, np.abs(v1) ** 2
    au2, av2 = np.abs(u2) ** 2, np.abs(v2) ** 2
    B1 = np.log2(1.0 + au1 + av1 + w1sq)
    B2 = np.log2(1.0 + av1 + w1sq)
    B3 = np.log2(1.0 + au1 + w1sq)
    B4 = np.log2(1.0 + w1sq)
    lw2 = np.log2(1.0 + w2sq)
    B5 = np.log2(1.0 + au2 + av2 + w2sq) - lw2
    B6 = np.log2(1.0 + av2 + w2sq) - lw2
    B7 = np.log2(1.0 + au2 + w2sq) - lw2
    return np.stack([B3, B4 + B7, B2, B6, B1, B2 + B7, B4 + B5, B2 + B5],
                    axis=-1)


def _all_private_values(gains, b1, b2, c1, c2):
    """Rectangle bounds [R1, R2, R1+R2] at MMSE slopes, broadcast over args."""
    b1, b2, c1, c2 = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (b1, b2, c1, c2)))
    csq = c1 ** 2 + c2 ** 2
    s1 = gains.h12 + gains.h1c * b2
    s2 = gains.h21 + gains.h2c * b1
    d1 = gains.h11 + gains.h1c * b1
    d2 = gains.h22 + gains.h2c * b2
    lam1 = np.where(c1 > 0, gains.h1c * c1 ** 2 * s1
                    / (gains.h1c ** 2 * csq + 1.0), 0.0)
    lam2 = np.where(c2 > 0, gains.h2c * c2 ** 2 * s2
                    / (gains.h2c ** 2 * csq + 1.0), 0.0)

    def rate(d, s, hc, cm, lam):
        # I(Y; X_self, U) - I(X_other; U | X_self), U = cm*V_self + lam*X_other
        y_pow = np.abs(d) ** 2 + np.abs(s) ** 2 + hc ** 2 * csq + 1.0
        q = s * np.conj(lam) + hc * cm ** 2   # Cov(Y, U)
        uvar = cm ** 2 + np.abs(lam) ** 2
        resid = y_pow - np.abs(d) ** 2 - np.abs(q) ** 2 / np.maximum(uvar, 1e-300)
        mi_y = np.log2(y_pow) - np.log2(np.maximum(resid, 1e-300))
        # MMSE slopes vanish with cm, so cm = 0 implies lam = 0 and zero cost
        cost = np.log2(np.maximum(uvar, 1e-300)
                       / np.maximum(cm ** 2, 1e-300))
        return mi_y - np.maximum(cost, 0.0)

    r1 = rate(d1, s1, gains.h1c, c1, lam1)
    r2 = rate(d2, s2, gains.h2c, c2, lam2)
    return np.stack([r1, r2, r1 + r2], axis=-1)


def _disk_grid(n):
    t = np.linspace(-1.0, 1.0, n)
    b1, b2 = np.meshgrid(t, t, indexing="ij")
    b1, b2 = b1.ravel(), b2.ravel()
    r = np.hypot(b1, b2)
    scale = np.where(r > 1.0, 1.0 / np.maximum(r, 1e-300), 1.0)
    return np.unique(np.stack([b1 * scale, b2 * scale], axis=1), axis=0)


def _clip_disk(p):
    p = np.asarray(p, dtype=float)
    r = np.hypot(p[..., 0], p[..., 1])
    return p / np.where(r > 1.0, r, 1.0)[..., None]


def _clip_assign(p):
    p = np.array(p, dtype=float)
    p[..., 2:] = np.maximum(p[..., 2:], 0.0)
    n = np.sqrt(np.sum(p ** 2, axis=-1))
    return p / np.where(n > 1.0, n, 1.0)[..., None]


def _assign_grid(n=9):
    t = np.linspace(-1.0, 1.0, n)
    c = np.linspace(0.0, 1.0, n)
    b1, b2, c1, c2 = np.meshgrid(t, t, c, c, indexing="ij")
    pts = np.stack([x.ravel() for x in (b1, b2, c1, c2)], axis=1)
    norm = np.sqrt(np.sum(pts ** 2, axis=1))
    pts = pts / np.maximum(norm, 1.0)[:, None]
    return np.unique(pts, axis=0)


def scheme_evaluator(gains: ChannelGains, scheme: str,
                     grid_n: int = _regions.GRID_POINTS_PER_DIM):
    if scheme == "all_common":
        coefs = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 1.0]])

        def fn(p):
            u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(
                gains, p[..., 0], p[..., 1])
            return np.stack([
                np.log2(1.0 + np.abs(u1) ** 2 + w1sq),
                np.log2(1.0 + np.abs(v2) ** 2 + w2sq),
                np.log2(1.0 + np.abs(u1) ** 2 + np.abs(v1) ** 2 + w1sq),
                np.log2(1.0 + np.abs(u2) ** 2 + np.abs(v2) ** 2 + w2sq),
            ], axis=-1)
        return _regions.RegionEvaluator(coefs, fn, _disk_grid(grid_n),
                                        _clip_disk, name="all_common")
    if scheme == "cor5":
        fn = lambda p: _cor5_values(gains, p[..., 0], p[..., 1])
        return _regions.RegionEvaluator(COR5_COEFS, fn, _disk_grid(grid_n),
                                        _clip_disk, name="cor5")
    if scheme == "cor6":
        fn = lambda p: _cor6_values(gains, p[..., 0], p[..., 1])
        return _regions.RegionEvaluator(COR6_COEFS, fn, _disk_grid(grid_n),
                                        _clip_disk, name="cor6")
    if scheme == "all_private":
        coefs = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        fn = lambda p: _all_private_values(gains, p[..., 0], p[..., 1],
                                           p[..., 2], p[..., 3])
        return _regions.RegionEvaluator(coefs, fn, _assign_grid(9),
                                        _clip_assign, name="all_private")
    raise DomainError(f"unknown scheme {scheme!r}")


def inner_frontier(gains: ChannelGains, scheme: str,
                   n_directions: int = _regions.DEFAULT_DIRECTIONS,
                   refine: bool = True):
    """Frontier of a named scheme, maximized over its free parameters."""
    ev = scheme_evaluator(gains, scheme)
    return _regions.frontier(ev, n_directions=n_directions, refine=refine,
                             meta={"scheme": scheme, "kind": "inner"})


def capacity_vsi(gains: ChannelGains,
                 n_directions: int = _regions.DEFAULT_DIRECTIONS):
    """Exact capacity frontier when a very-strong/strong regime applies.

    Returns None outside those regimes.  Under very strong interference at a
    receiver the strong-interference outer bound there is met by the
    all-common scheme; under strong interference at both receivers the
    four-bound region is the capacity region.
    """
    rep = _regimes.classify(gains)
    if rep.vsi_rx1:
        fr = _outer.strong_rx1_frontier(gains, n_dir=n_directions)
        which = "vsi_rx1"
    elif rep.vsi_rx2:
        fr = _outer.strong_rx2_frontier(gains, n_dir=n_directions)
        which = "vsi_rx2"
    elif rep.strong_both:
        fr = _outer.strong_both_frontier(gains, n_dir=n_directions)
        which = "strong_both"
    else:
        return None
    fr.meta.update({"capacity": True, "regime": which})
    return fr
