"""Sub-rate polytope of the general inner bound, projected onto (R1, R2).

The scheme splits each message into common/private parts sent by the source
and by the relay, plus binning (precoding) indices:

    vars = (R1c, R2c, R1p, R2p, R1cb, R2cb, R1pb, R2pb, R0cb', R1pb', R2pb')
    R1 = R1c + R1p + R1cb + R1pb,     R2 likewise,
    L0cb = R1cb + R2cb + R0cb',       Lipb = Ripb + Ripb'.

Constraints: binning lower bounds on the primed rates, and eight decoding
upper bounds per destination (events indexed 1..8), each of events 1..7
carrying the shared offset term T_d = I(U0cb; X_d | U1c, U2c) on its right
side (event 8 without it).  Events are dropped per the dropping list when
the scheme mask pins the corresponding sub-rates to zero.  The projection
max mu1*R1 + mu2*R2 is a small dense LP solved by a two-phase simplex with
Bland's rule (deterministic; optional exact rational mode).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

VARS = ("R1c", "R2c", "R1p", "R2p", "R1cb", "R2cb", "R1pb", "R2pb",
        "R0cbp", "R1pbp", "R2pbp")
R1_VARS = ("R1c", "R1p", "R1cb", "R1pb")
R2_VARS = ("R2c", "R2p", "R2cb", "R2pb")
L0_VARS = ("R1cb", "R2cb", "R0cbp")

FEAS_TOL = 1e-9

# decoding-event left-hand sides at destination 1 (destination 2 mirrors)
_L1 = ("R1pb", "R1pbp")
_EVENT_LHS_1 = {
    1: ("R1c", "R1p", "R2c") + L0_VARS + _L1,
    2: ("R1c", "R1p") + L0_VARS + _L1,
    3: ("R1p", "R2c") + L0_VARS + _L1,
    4: ("R1p",) + L0_VARS + _L1,
    5: L0_VARS + _L1,
    6: ("R1p",) + _L1,
    7: ("R2c",) + L0_VARS + _L1,
    8: _L1,
}

_SWAP = {"R1c": "R2c", "R2c": "R1c", "R1p": "R2p", "R2p": "R1p",
         "R1cb": "R2cb", "R2cb": "R1cb", "R1pb": "R2pb", "R2pb": "R1pb",
         "R0cbp": "R0cbp", "R1pbp": "R2pbp", "R2pbp": "R1pbp"}

_EVENT_LHS_2 = {e: tuple(_SWAP[v] for v in lhs)
                for e, lhs in _EVENT_LHS_1.items()}

# dropping list: event set -> sub-rates that must all be pinned to zero
_DROP_RULES_1 = (
    (frozenset({1, 2}), ("R1c", "R1p", "R1cb", "R1pb")),
    (frozenset({3, 4}), ("R1p", "R1cb", "R1pb")),
    (frozenset({5, 7}), ("R1cb", "R1pb")),
    (frozenset({6}), ("R1p", "R1pb")),
    (frozenset({8}), ("R1pb",)),
)
_DROP_RULES_2 = tuple((evs, tuple(_SWAP[v] for v in vs))
                      for evs, vs in _DROP_RULES_1)


def theorem_drops(mask, dest: int) -> frozenset:
    """Events droppable at a destination given the pinned sub-rate mask."""
    rules = _DROP_RULES_1 if dest == 1 else _DROP_RULES_2
    out = set()
    for events, pins in rules:
        if all(p in mask for p in pins):
            out |= events
    return frozenset(out)


@dataclass(frozen=True)
class SubRateVector:
    R1c: float = 0.0
    R2c: float = 0.0
    R1p: float = 0.0
    R2p: float = 0.0
    R1cb: float = 0.0
    R2cb: float = 0.0
    R1pb: float = 0.0
    R2pb: float = 0.0
    R0cbp: float = 0.0
    R1pbp: float = 0.0
    R2pbp: float = 0.0

    def __post_init__(self):
        for v in VARS:
            if getattr(self, v) < -1e-12:
                raise ValueError(f"{v} negative")

    @property
    def r1(self):
        return sum(getattr(self, v) for v in R1_VARS)

    @property
    def r2(self):
        return sum(getattr(self, v) for v in R2_VARS)


@dataclass(frozen=True)
class MITerms:
    """Numeric mutual-information terms of one fixed input distribution.

    b0, b1, b2, b12: binning lower bounds on (R0cb', R1pb', R2pb',
    R1pb'+R2pb').  t1/t2: the shared decoding offset per destination.
    dec1/dec2: right-hand mutual informations for events 1..8.  mask: the
    structurally-zero sub-rates of the generating scheme.  drops1/drops2:
    events omitted from the constraint set (None = per the dropping list).
    """
    b0: float = 0.0
    b1: float = 0.0
    b2: float = 0.0
    b12: float = 0.0
    t1: float = 0.0
    t2: float = 0.0
    dec1: tuple = (0.0,) * 8
    dec2: tuple = (0.0,) * 8
    mask: frozenset = frozenset()
    drops1: frozenset | None = None
    drops2: frozenset | None = None

    def __post_init__(self):
        for name in ("b0", "b1", "b2", "b12", "t1", "t2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite nonnegative")
        for name in ("dec1", "dec2"):
            t = tuple(float(x) for x in getattr(self, name))
            if len(t) != 8 or any(not np.isfinite(x) or x < 0 for x in t):
                raise ValueError(f"{name} must be 8 finite nonnegative values")
            object.__setattr__(self, name, t)
        bad = set(self.mask) - set(VARS)
        if bad:
            raise ValueError(f"unknown sub-rates in mask: {bad}")
        object.__setattr__(self, "mask", frozenset(self.mask))
        if self.drops1 is None:
            object.__setattr__(self, "drops1", theorem_drops(self.mask, 1))
        if self.drops2 is None:
            object.__setattr__(self, "drops2", theorem_drops(self.mask, 2))

    def to_text(self) -> str:
        lines = []
        for name in ("b0", "b1", "b2", "b12", "t1", "t2"):
            lines.append(f"{name}={getattr(self, name)!r}")
        for name in ("dec1", "dec2"):
            for i, v in enumerate(getattr(self, name), start=1):
                lines.append(f"{name}.{i}={v!r}")
        lines.append("mask=" + ",".join(sorted(self.mask)))
        lines.append("drops1=" + ",".join(str(e) for e in sorted(self.drops1)))
        lines.append("drops2=" + ",".join(str(e) for e in sorted(self.drops2)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MITerms":
        kv = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            kv[key.strip()] = val.strip()
        dec1 = tuple(float(kv[f"dec1.{i}"]) for i in range(1, 9))
        dec2 = tuple(float(kv[f"dec2.{i}"]) for i in range(1, 9))
        parse_set = lambda s: frozenset(x for x in s.split(",") if x)
        return cls(
            b0=float(kv["b0"]), b1=float(kv["b1"]), b2=float(kv["b2"]),
            b12=float(kv["b12"]), t1=float(kv["t1"]), t2=float(kv["t2"]),
            dec1=dec1, dec2=dec2,
            mask=parse_set(kv.get("mask", "")),
            drops1=frozenset(int(e) for e in parse_set(kv.get("drops1", ""))),
            drops2=frozenset(int(e) for e in parse_set(kv.get("drops2", ""))),
        )


def jiang_mask(mi: MITerms) -> MITerms:
    """Disable U0cb: zero its decoding offset terms and pin its rates.

    The binning requirement b0 is kept: with R0cb' pinned to zero, a
    positive b0 makes the region empty rather than silently waiving the
    requirement.  Dropped-event sets carry over unchanged.  Together these
    make the constraint system a pure tightening of the input one, so the
    projected region never exceeds the full-scheme region.
    """
    return replace(mi, t1=0.0, t2=0.0,
                   mask=mi.mask | {"R0cbp", "R1cb", "R2cb"},
                   drops1=mi.drops1, drops2=mi.drops2)


# ---------------------------------------------------------------------------
# dense two-phase simplex, Bland's rule

class LPError(RuntimeError):
    pass


def simplex_max(c, G, h, exact: bool = False):
    """Maximize c.x subject to G x <= h, x >= 0.

    Returns (status, x, objective) with status in {"optimal", "infeasible"}.
    Deterministic (Bland's rule).  exact=True runs in rational arithmetic.
    """
    if exact:
        conv = lambda v: Fraction(v) if not isinstance(v, Fraction) else v
        c = np.array([conv(v) for v in c], dtype=object)
        G = np.array([[conv(v) for v in row] for row in G], dtype=object)
        h = np.array([conv(v) for v in h], dtype=object)
        zero, tol = Fraction(0), Fraction(0)
    else:
        c = np.asarray(c, dtype=float)
        G = np.asarray(G, dtype=float)
        h = np.asarray(h, dtype=float)
        zero, tol = 0.0, FEAS_TOL
    if G.size == 0:
        # no constraints at all: the origin is optimal unless the objective
        # rewards some coordinate, which is then unbounded
        if any(v > tol for v in c):
            raise LPError("LP unbounded: a free sub-rate has no "
                          "decoding constraint")
        x0 = np.array([zero] * len(c), dtype=c.dtype)
        return "optimal", x0, zero
    G = G.reshape(-1, len(c))
    m, n = G.shape
    # columns: n structural, m slack, then artificials for negated rows
    neg = h < zero
    a_full = np.concatenate([G, np.eye(m, dtype=G.dtype)], axis=1)
    if exact:
        a_full = np.concatenate(
            [G, np.array([[Fraction(int(i == j)) for j in range(m)]
                          for i in range(m)], dtype=object)], axis=1)
    b = h.copy()
    a_full[neg] = -a_full[neg]
    b = np.where(neg, -b, b)
    art_rows = np.nonzero(neg)[0]
    n_art = len(art_rows)
    n_cols = n + m + n_art
    tab = np.zeros((m, n_cols + 1), dtype=a_full.dtype)
    if exact:
        tab = np.array([[zero] * (n_cols + 1) for _ in range(m)], dtype=object)
    tab[:, :n + m] = a_full
    basis = []
    art_cols = []
    for i in range(m):
        if neg[i]:
            col = n + m + len(art_cols)
            tab[i, col] = 1 if not exact else Fraction(1)
            art_cols.append(col)
            basis.append(col)
        else:
            basis.append(n + i)
    tab[:, -1] = b

    def run_phase(obj_coeffs, allowed):
        # objective row holds negated reduced costs; entering col has row < -tol
        z = np.zeros(n_cols + 1, dtype=tab.dtype)
        if exact:
            z = np.array([zero] * (n_cols + 1), dtype=object)
        z[:n_cols] = -obj_coeffs
        for i, bv in enumerate(basis):
            if z[bv] != zero:
                z_bv = z[bv]
                z = z - z_bv * tab[i]
        while True:
            enter = -1
            for j in range(n_cols):
                if allowed[j] and z[j] < -tol:
                    enter = j
                    break
            if enter < 0:
                return z
            ratio_best, leave = None, -1
            for i in range(m):
                if tab[i, enter] > tol if not exact else tab[i, enter] > zero:
                    ratio = tab[i, -1] / tab[i, enter]
                    if (ratio_best is None or ratio < ratio_best
                            or (ratio == ratio_best and basis[i] < basis[leave])):
                        ratio_best, leave = ratio, i
            if leave < 0:
                raise LPError("LP unbounded: a free sub-rate has no "
                              "decoding constraint")
            piv = tab[leave, enter]
            tab[leave] = tab[leave] / piv
            for i in range(m):
                if i != leave and tab[i, enter] != zero:
                    tab[i] = tab[i] - tab[i, enter] * tab[leave]
            if z[enter] != zero:
                z = z - z[enter] * tab[leave]
            basis[leave] = enter

    allowed = np.ones(n_cols, dtype=bool)
    if n_art:
        obj1 = np.zeros(n_cols, dtype=tab.dtype)
        if exact:
            obj1 = np.array([zero] * n_cols, dtype=object)
        for col in art_cols:
            obj1[col] = -1 if not exact else Fraction(-1)
        z = run_phase(obj1, allowed)
        if z[-1] < -max(tol, 1e-9 if not exact else zero):
            return "infeasible", None, zero
        # drive remaining artificials out of the basis where possible
        for i in range(m):
            if basis[i] in art_cols:
                for j in range(n + m):
                    if tab[i, j] != zero and (abs(tab[i, j]) > tol if not exact
                                              else True):
                        piv = tab[i, j]
                        tab[i] = tab[i] / piv
                        for k in range(m):
                            if k != i and tab[k, j] != zero:
                                tab[k] = tab[k] - tab[k, j] * tab[i]
                        basis[i] = j
                        break
        for col in art_cols:
            allowed[col] = False
    obj2 = np.zeros(n_cols, dtype=tab.dtype)
    if exact:
        obj2 = np.array([zero] * n_cols, dtype=object)
    obj2[:n] = c
    z = run_phase(obj2, allowed)
    x = np.zeros(n, dtype=tab.dtype)
    if exact:
        x = np.array([zero] * n, dtype=object)
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i, -1]
    return "optimal", x, z[-1]


# ---------------------------------------------------------------------------
# projection of the sub-rate polytope

def build_constraints(mi: MITerms):
    """(free variable names, G, h) of the sub-rate LP; raises nothing.

    Returns (None, None, None) when a pinned primed rate has a positive
    binning lower bound (structurally empty region).
    """
    free = [v for v in VARS if v not in mi.mask]
    col = {v: i for i, v in enumerate(free)}
    rows, rhs = [], []

    def add_upper(varnames, bound):
        row = [0.0] * len(free)
        nz = False
        for v in varnames:
            if v in col:
                row[col[v]] += 1.0
                nz = True
        if nz or bound < -FEAS_TOL:
            rows.append(row)
            rhs.append(max(bound, 0.0) if nz else bound)
        # all-pinned LHS with nonnegative bound: 0 <= bound, vacuous

    empty = False

    def add_lower(varnames, bound):
        nonlocal empty
        present = [v for v in varnames if v in col]
        if not present:
            if bound > FEAS_TOL:
                empty = True
            return
        row = [0.0] * len(free)
        for v in present:
            row[col[v]] -= 1.0
        rows.append(row)
        rhs.append(-bound)

    add_lower(("R0cbp",), mi.b0)
    add_lower(("R1pbp",), mi.b1)
    add_lower(("R2pbp",), mi.b2)
    add_lower(("R1pbp", "R2pbp"), mi.b12)
    for e in range(1, 9):
        if e not in mi.drops1:
            off = mi.t1 if e != 8 else 0.0
            add_upper(_EVENT_LHS_1[e], off + mi.dec1[e - 1])
        if e not in mi.drops2:
            off = mi.t2 if e != 8 else 0.0
            add_upper(_EVENT_LHS_2[e], off + mi.dec2[e - 1])
    if empty:
        return None, None, None
    return free, np.array(rows, dtype=float), np.array(rhs, dtype=float)


def project(mi: MITerms, mu, exact: bool = False):
    """max mu1*R1 + mu2*R2 over the sub-rate polytope.

    Returns (value, witness SubRateVector or None, status); status is
    "optimal" or "empty" (binning lower bounds incompatible with the
    decoding budgets -- the region contains no rate pair at all).
    """
    free, G, h = build_constraints(mi)
    if free is None:
        return 0.0, None, "empty"
    mu1, mu2 = float(mu[0]), float(mu[1])
    c = np.array([mu1 if v in R1_VARS else mu2 if v in R2_VARS else 0.0
                  for v in free])
    status, x, obj = simplex_max(c, G, h, exact=exact)
    if status == "infeasible":
        return 0.0, None, "empty"
    vals = {v: float(x[i]) for i, v in enumerate(free)}
    witness = SubRateVector(**{v: max(0.0, vals.get(v, 0.0)) for v in VARS})
    return float(obj), witness, "optimal"


def project_frontier(mi: MITerms, n_dir: int = 64):
    """Support samples of the projected polytope over equiangular directions."""
    from . import regions
    dirs = regions.directions(n_dir)
    vals, pts = [], []
    for mu in dirs:
        v, w, status = project(mi, mu)
        vals.append(max(v, 0.0))
        pts.append((w.r1, w.r2) if w is not None else (0.0, 0.0))
    vals = np.array(vals)
    pts = np.array(pts)
    vals = np.maximum(vals, np.max(dirs @ pts.T, axis=1))
    return regions.Frontier(dirs, vals, argpoints=pts,
                            meta={"kind": "ratesplit-lp"})
