"""Interference-regime classifiers.

The "for all input covariances" quantifiers are discharged in closed form:
the gap between the two sides of each condition reduces (on the admissible
set |beta1|^2 + |beta2|^2 <= 1) to

    f(x) = a*x^2 + 2*|b|*x,   x = |beta2| in [0, 1],

with a = |h2c|^2 - |h1c|^2 and b = |h2c||h22| - |h1c|*h12 for the Rx-1 test,
maximized at x* = 1 when a >= 0 and x* = min(1, |b|/|a|) otherwise.  A
brute-force grid oracle over input covariances (log-det engine) backs every
classifier in the tests; it never participates in classification.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .gauss import ChannelGains, mi_batch

DEGRADED_RTOL = 1e-9
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class RegimeReport:
    strong_rx1: bool
    strong_rx2: bool
    vsi_rx1: bool
    vsi_rx2: bool
    strong_both: bool
    degraded: bool
    rho: float | None
    beta2_star_rx1: complex
    beta2_star_rx2: complex


def _quad_ab(gains: ChannelGains):
    """(a, b) of the Rx-1 reduction; b signed complex."""
    a = gains.h2c ** 2 - gains.h1c ** 2
    b = gains.h2c * gains.h22 - gains.h1c * gains.h12
    return a, b


def _xstar(a, babs):
    if a >= 0:
        return 1.0
    if babs == 0.0:
        return 0.0
    return min(1.0, babs / abs(a))


def beta2_star(gains: ChannelGains) -> complex:
    """Maximizer beta2~ of the strong-interference gap at Rx 1."""
    a, b = _quad_ab(gains)
    x = _xstar(a, abs(b))
    phase = cmath.phase(b) if b != 0 else 0.0
    return cmath.exp(1j * phase) * x


def _strong_gap_rx1(gains: ChannelGains) -> float:
    """max over admissible beta of [I(Y2;X2,Xc|X1) - I(Y1;X2,Xc|X1)] sign
    surrogate: f(x*) - (|h12|^2 - |h22|^2).  <= 0 iff strong at Rx 1."""
    a, b = _quad_ab(gains)
    x = _xstar(a, abs(b))
    return a * x * x + 2.0 * abs(b) * x - (abs(gains.h12) ** 2 - gains.h22 ** 2)


def is_strong_at_rx1(gains: ChannelGains) -> bool:
    return _strong_gap_rx1(gains) <= 0.0


def is_strong_at_rx2(gains: ChannelGains) -> bool:
    return _strong_gap_rx1(gains.swapped()) <= 0.0


def vsi_extra_rx1(gains: ChannelGains) -> float:
    """Left side of the very-strong extra condition at Rx 1 (<= 0 inside).

    Equals max over admissible beta of I(Y1;X1,X2,Xc) - I(Y2;X1,X2,Xc) in
    received-power form.
    """
    p1 = gains.h11 ** 2 + gains.h1c ** 2 + abs(gains.h12) ** 2
    p2 = abs(gains.h21) ** 2 + gains.h2c ** 2 + gains.h22 ** 2
    t1 = abs(gains.h11 * gains.h1c - gains.h21 * gains.h2c) ** 2
    t2 = abs(gains.h12 * gains.h1c - gains.h22 * gains.h2c) ** 2
    return p1 - p2 + 2.0 * math.sqrt(t1 + t2)


def is_vsi_at_rx1(gains: ChannelGains) -> bool:
    return is_strong_at_rx1(gains) and vsi_extra_rx1(gains) <= 0.0


def is_vsi_at_rx2(gains: ChannelGains) -> bool:
    return is_vsi_at_rx1(gains.swapped())


def is_strong_both(gains: ChannelGains) -> bool:
    return is_strong_at_rx1(gains) and is_strong_at_rx2(gains)


def degraded_rho(gains: ChannelGains, rtol: float = DEGRADED_RTOL):
    """rho with h21/h11 = h2c/h1c = rho in [0,1] (Y2 degraded wrt Y1), or None.

    Requires h21 real nonnegative; complex-phase channels are not degraded.
    """
    if abs(gains.h21.imag) > rtol * max(1.0, abs(gains.h21)):
        return None
    h21 = gains.h21.real
    if h21 < 0:
        return None
    if gains.h11 <= 0 or gains.h1c <= 0:
        return None
    r1 = h21 / gains.h11
    r2 = gains.h2c / gains.h1c
    if abs(r1 - r2) > rtol * max(1.0, abs(r1), abs(r2)):
        return None
    if not (0.0 <= r1 <= 1.0 + rtol):
        return None
    return min(r1, 1.0)


def classify(gains: ChannelGains) -> RegimeReport:
    s1 = is_strong_at_rx1(gains)
    s2 = is_strong_at_rx2(gains)
    rho = degraded_rho(gains)
    if rho is None:
        rho = degraded_rho(gains.swapped())
    return RegimeReport(
        strong_rx1=s1,
        strong_rx2=s2,
        vsi_rx1=s1 and vsi_extra_rx1(gains) <= 0.0,
        vsi_rx2=s2 and vsi_extra_rx1(gains.swapped()) <= 0.0,
        strong_both=s1 and s2,
        degraded=rho is not None,
        rho=rho,
        beta2_star_rx1=beta2_star(gains),
        beta2_star_rx2=beta2_star(gains.swapped()),
    )


def _beta_grid(grid_n: int):
    """Real (beta1, beta2) grid over the closed unit disk.

    Square grid clipped radially onto the disk so the boundary circle (where
    the quadratic conditions attain their extrema) is represented sharply.
    """
    ax = np.linspace(-1.0, 1.0, grid_n)
    b1, b2 = np.meshgrid(ax, ax, indexing="ij")
    b1, b2 = b1.ravel(), b2.ravel()
    r = np.hypot(b1, b2)
    scale = np.where(r > 1.0, 1.0 / np.where(r > 1.0, r, 1.0), 1.0)
    return b1 * scale, b2 * scale


def _oracle_covariances(gains: ChannelGains, b1, b2, phases=None):
    """Stacked covariances of (X1, X2, Xc, Y1, Y2) over a beta grid."""
    if phases is not None:
        b1 = (b1[:, None] * np.ones_like(phases)[None, :]).ravel()
        b2 = (b2[:, None] * np.exp(1j * phases)[None, :]).ravel()
    n = b1.shape[0]
    k2 = np.clip(1.0 - np.abs(b1) ** 2 - np.abs(b2) ** 2, 0.0, None)
    rows = np.zeros((n, 5, 6), dtype=complex)  # latents X1,X2,W,Z1,Z2 (+pad)
    rows[:, 0, 0] = 1.0
    rows[:, 1, 1] = 1.0
    rows[:, 2, 0] = np.conj(b1)
    rows[:, 2, 1] = np.conj(b2)
    rows[:, 2, 2] = np.sqrt(k2)
    rows[:, 3] = gains.h11 * rows[:, 0] + gains.h12 * rows[:, 1] + gains.h1c * rows[:, 2]
    rows[:, 3, 3] = 1.0
    rows[:, 4] = gains.h21 * rows[:, 0] + gains.h22 * rows[:, 1] + gains.h2c * rows[:, 2]
    rows[:, 4, 4] = 1.0
    return np.einsum("nik,njk->nij", rows, rows.conj())


@functools.lru_cache(maxsize=4)
def _cached_oracle_covariances(gains: ChannelGains, grid_n: int,
                               complex_mode: bool):
    b1, b2 = _beta_grid(grid_n)
    phases = (np.linspace(0.0, 2 * math.pi, 8, endpoint=False)
              if complex_mode else None)
    return _oracle_covariances(gains, b1, b2, phases)


_CONDITION_IDS = ("strong_rx1", "strong_rx2", "vsi_rx1", "vsi_rx2")
_IX1, _IX2, _IXC, _IY1, _IY2 = range(5)


def condition_oracle(gains: ChannelGains, which: str, grid_n: int = 201,
                     complex_mode: bool = False) -> bool:
    """Brute-force check of a regime condition over the input-covariance grid.

    Evaluates the defining mutual-information inequality with the log-det
    engine at every grid point; returns False on the first violation beyond
    1e-9 bits.
    """
    if which not in _CONDITION_IDS:
        raise ValueError(f"unknown condition id {which!r}")
    if grid_n < 11:
        raise ValueError("grid_n must be >= 11")
    g = gains if which.endswith("rx1") else gains.swapped()
    sig = _cached_oracle_covariances(g, grid_n, complex_mode)
    if which.startswith("strong"):
        lhs = mi_batch(sig, [_IY2], [_IX2, _IXC], [_IX1])
        rhs = mi_batch(sig, [_IY1], [_IX2, _IXC], [_IX1])
        if np.max(lhs - rhs) > ORACLE_TOL:
            return False
        return True
    # vsi: strong condition AND I(Y1;X1,X2,Xc) <= I(Y2;X1,X2,Xc) for all beta
    lhs = mi_batch(sig, [_IY2], [_IX2, _IXC], [_IX1])
    rhs = mi_batch(sig, [_IY1], [_IX2, _IXC], [_IX1])
    if np.max(lhs - rhs) > ORACLE_TOL:
        return False
    lhs = mi_batch(sig, [_IY1], [_IX1, _IX2, _IXC], [])
    rhs = mi_batch(sig, [_IY2], [_IX1, _IX2, _IXC], [])
    return not np.max(lhs - rhs) > ORACLE_TOL
