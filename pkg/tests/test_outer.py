"""Outer bounds: closed forms against the log-det engine and known limits."""
import math

import numpy as np
import pytest

from ifccr import ChannelGains, InputCoeffs, NoiseCorr, cap
from ifccr.gauss import DomainError
from ifccr.outer import (
    SatoParams,
    WeakParams,
    _min_over_r,
    _sato_cross_term,
    sato_bound_values,
    sato_frontier,
    sato_polytope,
    strong_both_region,
    strong_rx1_outer,
    strong_rx2_outer,
    weak_degraded_frontier,
    weak_degraded_outer,
)


def _random_gains(rng):
    return ChannelGains(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0),
                        rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
                        rng.normal(), rng.normal())


def _random_coeffs(rng):
    b = rng.uniform(-0.7, 0.7, size=2)
    n = np.hypot(*b)
    if n > 0.9:
        b *= 0.9 / n
    return InputCoeffs(b[0], b[1])


def test_sato_closed_form_matches_engine():
    # dual route: vectorized closed form vs surrogate-output log-det engine
    rng = np.random.default_rng(21)
    for _ in range(15):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        r12, r21 = rng.uniform(-0.9, 0.9, size=2)
        engine = sato_polytope(g, SatoParams(c, NoiseCorr(r12), NoiseCorr(r21)))
        closed = sato_bound_values(g, np.array([c.beta1]), np.array([c.beta2]),
                                   minimize_r=False, r12=r12, r21=r21)[0]
        assert np.max(np.abs(engine - closed)) < 1e-9


def test_min_over_r_matches_dense_grid():
    # draws keep the conditional variance positive over the whole r range
    # (as it is for covariances coming from an actual channel)
    rng = np.random.default_rng(22)
    rg = np.linspace(-0.999999, 0.999999, 200001)
    for _ in range(25):
        v1 = rng.uniform(2.0, 6.0)
        v2 = rng.uniform(2.0, 6.0)
        smax = math.sqrt(v1 * v2) - 1.2
        s = rng.uniform(-smax, smax)
        got = float(_min_over_r(np.array(v1), np.array(v2), np.array(s)))
        ref = float(np.min(_sato_cross_term(v1, v2, s, rg)))
        assert got <= ref + 1e-9
        assert got >= ref - 1e-6


def test_sato_no_channel_unit_square():
    # no interference and no relay: the bound collapses to the unit square
    g = ChannelGains(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    fr = sato_frontier(g, n_dir=9)
    for mu, val in zip(fr.directions, fr.values):
        assert abs(val - (mu[0] + mu[1])) < 1e-6


def test_sato_single_rate_bounds_relayless():
    # without a relay the single-rate bounds are the interference-free caps
    for h12, h21 in ((0.0, 0.0), (0.7, -1.3), (2.0, 0.5)):
        g = ChannelGains(1.0, 1.4, 0.0, 0.0, h12, h21)
        b = sato_bound_values(g, np.array([0.0]), np.array([0.0]))[0]
        assert abs(b[0] - cap(g.h11 ** 2)) < 1e-12
        assert abs(b[1] - cap(g.h22 ** 2)) < 1e-12
        # the sum bounds never exceed the two full received informations,
        # evaluated at the r that decouples nothing (r = 0)
        b_at0 = sato_bound_values(g, np.array([0.0]), np.array([0.0]),
                                  minimize_r=False)[0]
        assert b[2] <= b_at0[2] + 1e-9
        assert b[3] <= b_at0[3] + 1e-9


def test_strong_outer_single_rate_bounds():
    rng = np.random.default_rng(23)
    for _ in range(10):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        vals, valid = strong_rx1_outer(g, c)
        assert isinstance(valid, bool)
        from ifccr.gauss import effective_coeffs
        u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(g, c.beta1, c.beta2)
        assert abs(vals[0] - math.log2(1 + abs(u1) ** 2 + w1sq)) < 1e-9
        assert abs(vals[1] - math.log2(1 + abs(v2) ** 2 + w2sq)) < 1e-9
        assert abs(vals[2] - math.log2(1 + abs(u1) ** 2 + abs(v1) ** 2 + w1sq)) < 1e-9


def test_strong_rx2_is_swapped_rx1():
    g = ChannelGains(1.0, 1.3, 0.7, 1.9, 0.4, -0.8)
    c = InputCoeffs(0.3, -0.5)
    swapped_vals, _ = strong_rx1_outer(g.swapped(), InputCoeffs(c.beta2, c.beta1))
    direct, _ = strong_rx2_outer(g, c)
    # same polytope with the two rates exchanged, sum bound shared
    assert abs(direct[0] - swapped_vals[1]) < 1e-9
    assert abs(direct[1] - swapped_vals[0]) < 1e-9
    assert abs(direct[2] - swapped_vals[2]) < 1e-9


def test_strong_both_region_shares_single_rate_bounds():
    rng = np.random.default_rng(24)
    g = ChannelGains(1.0, 1.0, 1.0, 1.0, 1.5, 1.5)
    for _ in range(10):
        c = _random_coeffs(rng)
        both, valid = strong_both_region(g, c)
        one, _ = strong_rx1_outer(g, c)
        assert valid
        assert abs(both[0] - one[0]) < 1e-9
        assert abs(both[1] - one[1]) < 1e-9
        assert abs(both[2] - one[2]) < 1e-9


def test_weak_outer_requires_degraded_channel():
    g = ChannelGains(1.0, 1.0, 2.0, 1.1, 0.5, 0.4)  # ratios 0.4 vs 0.55
    with pytest.raises(DomainError):
        weak_degraded_outer(g, WeakParams(0.5, InputCoeffs(1.0, 0.0)))


def test_weak_params_validation():
    with pytest.raises(DomainError):
        WeakParams(1.5, InputCoeffs(1.0, 0.0))
    with pytest.raises(DomainError):
        WeakParams(0.5, InputCoeffs(0.5, 0.5))  # power 0.5, must be 1


def test_weak_outer_broadcast_corner():
    # sources silent (broadcast sub-case): with full residual power and a
    # relay power split alpha, the corner rates are the two-user broadcast
    # pair of a degraded Gaussian broadcast channel
    g = ChannelGains(0.0, 0.0, 2.0, 0.8, 0.0, 0.0)
    rho = g.h2c / g.h1c
    for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
        c = InputCoeffs(math.sqrt(alpha), math.sqrt(1.0 - alpha))
        vals, _ = weak_degraded_outer(g, WeakParams(1.0, c), rho=rho)
        r1 = cap(alpha * g.h1c ** 2)
        r2 = cap(g.h2c ** 2) - cap(alpha * g.h2c ** 2)
        assert abs(vals[0] - r1) < 1e-9
        assert abs(min(vals[1], vals[2]) - r2) < 1e-9


def test_weak_frontier_explicit_rho_matches_default():
    g = ChannelGains(1.0, 1.0, 2.0, 0.8, 0.5, 0.4)
    fr_default = weak_degraded_frontier(g, n_dir=9)
    fr_explicit = weak_degraded_frontier(g, n_dir=9, rho=0.4)
    assert np.allclose(fr_default.values, fr_explicit.values, atol=1e-12)
