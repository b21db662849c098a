"""Inner-bound schemes: closed forms, LP certification, and special cases."""
import math

import numpy as np
import pytest

from ifccr import (
    ChannelGains,
    GaussAssign,
    InputCoeffs,
    SCHEME_IDS,
    capacity_vsi,
    cap,
    contains,
    inner_frontier,
    mi_terms_for_scheme,
    mmse_lambdas,
    region_all_common,
    region_all_private,
    region_common_sources_private_relay,
    region_one_common_one_private,
)
from ifccr.gauss import DomainError
from ifccr.inner import (
    _MASKS,
    _all_private_values,
    _cor5_values,
    _cor6_values,
    scheme_evaluator,
)
from ifccr.ratesplit import project, theorem_drops
from ifccr.regions import polytope_support


def _random_gains(rng):
    return ChannelGains(rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5),
                        rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
                        rng.normal(), rng.normal())


def _random_coeffs(rng):
    b = rng.uniform(-0.7, 0.7, size=2)
    n = np.hypot(*b)
    if n > 0.9:
        b *= 0.9 / n
    return InputCoeffs(b[0], b[1])


def _random_assign(rng):
    v = rng.uniform(0.0, 1.0, size=4)
    v[:2] *= np.sign(rng.normal(size=2))
    nrm = np.linalg.norm(v)
    if nrm > 0.95:
        v *= 0.95 / nrm
    return GaussAssign(*v)


def test_gauss_assign_validation():
    with pytest.raises(DomainError):
        GaussAssign(c1=-0.1)
    with pytest.raises(DomainError):
        GaussAssign(0.8, 0.8, 0.1, 0.1)  # power above 1
    GaussAssign(0.5, 0.5, 0.5, 0.5)  # exactly 1 is fine


def test_mmse_lambda_closed_form():
    g = ChannelGains(1.0, 1.0, 1.3, 0.8, 0.6, -0.4)
    a = GaussAssign(0.2, 0.3, 0.5, 0.4)
    lam1, lam2 = mmse_lambdas(g, a)
    den = g.h1c ** 2 * (a.c1 ** 2 + a.c2 ** 2) + 1.0
    s1 = g.h12 + g.h1c * a.b2
    assert abs(lam1 - g.h1c * a.c1 ** 2 * s1 / den) < 1e-12


def test_vectorized_values_match_engine_cor5():
    rng = np.random.default_rng(51)
    for _ in range(15):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        engine = region_one_common_one_private(g, c)
        vec = _cor5_values(g, np.array([c.beta1]), np.array([c.beta2]))[0]
        assert np.max(np.abs(engine - vec)) < 1e-9


def test_vectorized_values_match_engine_cor6():
    rng = np.random.default_rng(52)
    for _ in range(15):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        engine = region_common_sources_private_relay(g, c)
        vec = _cor6_values(g, np.array([c.beta1]), np.array([c.beta2]))[0]
        assert np.max(np.abs(engine - vec)) < 1e-9


def test_vectorized_values_match_engine_all_private():
    rng = np.random.default_rng(53)
    for _ in range(15):
        g = _random_gains(rng)
        a = _random_assign(rng)
        engine = region_all_private(g, a)
        vec = _all_private_values(g, np.array([a.b1]), np.array([a.b2]),
                                  np.array([a.c1]), np.array([a.c2]))[0]
        assert np.max(np.abs(engine - vec)) < 1e-8


def test_scheme_masks_and_drops():
    g = ChannelGains(1.0, 1.0, 1.2, 0.9, 0.5, -0.3)
    for scheme in SCHEME_IDS:
        params = (GaussAssign(0.2, 0.1, 0.4, 0.3) if scheme == "all_private"
                  else InputCoeffs(0.3, 0.4))
        mi = mi_terms_for_scheme(g, scheme, params)
        assert mi.mask == _MASKS[scheme]
        if scheme == "cor6":
            # destination 2 keeps its event-3 budget
            assert 3 not in mi.drops2
            assert mi.drops2 == theorem_drops(mi.mask, 2) - {3}
        else:
            assert mi.drops1 == theorem_drops(mi.mask, 1)
            assert mi.drops2 == theorem_drops(mi.mask, 2)


def test_lp_projection_matches_closed_form_per_scheme():
    # dual route: the corner-point LP and the closed-form bound arrays
    # describe the same polytope
    rng = np.random.default_rng(54)
    dirs = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.8, 0.6), (0.3, 0.95)]
    for _ in range(8):
        g = _random_gains(rng)
        for scheme, coefs_vals in (
            ("all_common", None), ("cor5", None), ("cor6", None),
            ("all_private", None)):
            if scheme == "all_private":
                params = _random_assign(rng)
            else:
                params = _random_coeffs(rng)
            mi = mi_terms_for_scheme(g, scheme, params)
            if scheme == "all_common":
                from ifccr.inner import region_all_common as rf
                coefs = np.array([[1, 0], [0, 1], [1, 1], [1, 1.]])
                vals = rf(g, params)
            elif scheme == "cor5":
                from ifccr.inner import COR5_COEFS as coefs
                vals = region_one_common_one_private(g, params)
            elif scheme == "cor6":
                from ifccr.inner import COR6_COEFS as coefs
                vals = region_common_sources_private_relay(g, params)
            else:
                coefs = np.array([[1, 0], [0, 1], [1, 1.]])
                vals = region_all_private(g, params)
            if np.any(vals < -1e-9):
                continue  # clamped closed form has no LP counterpart
            for mu in dirs:
                v_lp, w, status = project(mi, mu)
                assert status == "optimal", (scheme, mu)
                v_cf, _ = polytope_support(
                    np.asarray(coefs, dtype=float),
                    np.asarray(vals, dtype=float)[None, :],
                    np.asarray(mu, dtype=float))
                assert abs(v_lp - float(v_cf[0])) < 1e-7, (scheme, mu)


def test_all_private_costa_identity():
    # broadcast sub-case: sources silent, relay precodes stream 1 against
    # the residual interference; the rate equals the interference-free cap
    for h12 in (0.0, 1.7, -3.0):
        for c1, c2 in ((0.6, 0.5), (0.9, 0.1), (0.3, 0.7)):
            g = ChannelGains(0.0, 0.0, 2.0, 1.0, h12, 0.0)
            vals = region_all_private(g, GaussAssign(0.0, 0.0, c1, c2))
            dpc = cap((2.0 * c1) ** 2 / (1.0 + (2.0 * c2) ** 2))
            assert abs(vals[0] - dpc) < 1e-9


def test_all_private_zero_stream_is_harmless():
    g = ChannelGains(1.0, 1.0, 1.5, 0.5, 0.7, 0.2)
    vals = region_all_private(g, GaussAssign(0.3, 0.2, 0.0, 0.0))
    assert np.all(np.isfinite(vals))
    assert abs(vals[0] + vals[1] - vals[2]) < 1e-9


def test_all_common_reduces_to_effective_coefficients():
    rng = np.random.default_rng(55)
    from ifccr.gauss import effective_coeffs
    for _ in range(10):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        vals = region_all_common(g, c)
        u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(g, c.beta1, c.beta2)
        assert abs(vals[0] - math.log2(1 + abs(u1) ** 2 + w1sq)) < 1e-9
        assert abs(vals[2] - math.log2(1 + abs(u1) ** 2 + abs(v1) ** 2 + w1sq)) < 1e-9


def test_scheme_evaluator_unknown_scheme():
    with pytest.raises(DomainError):
        scheme_evaluator(ChannelGains(1, 1, 1, 1, 0, 0), "nope")
    with pytest.raises(DomainError):
        inner_frontier(ChannelGains(1, 1, 1, 1, 0, 0), "nope")


def test_capacity_vsi_regimes():
    # strong interference at both receivers without the very-strong extra
    g_both = ChannelGains(1.0, 1.0, 1.0, 1.0, 1.5, 1.5)
    fr = capacity_vsi(g_both, n_directions=9)
    assert fr is not None and fr.meta.get("capacity") is True
    assert fr.meta.get("regime") in ("strong_both", "vsi_rx1", "vsi_rx2")
    # weak channel: no capacity statement
    g_weak = ChannelGains(1.0, 1.0, 1.0, 1.0, 0.2, 0.1)
    assert capacity_vsi(g_weak, n_directions=9) is None


def test_capacity_vsi_no_relay_very_strong():
    # relayless very strong interference: the capacity box [C1] x [C2]
    g = ChannelGains(1.0, 1.0, 0.0, 0.0, 3.0, 3.0)
    fr = capacity_vsi(g, n_directions=9)
    assert fr is not None
    assert abs(fr.support([1.0, 0.0]) - 1.0) < 1e-6
    assert abs(fr.support([0.0, 1.0]) - 1.0) < 1e-6


def test_inner_frontiers_nested_in_capacity_when_strong_both():
    g = ChannelGains(1.0, 1.0, 1.0, 1.0, 1.5, 1.5)
    cap_fr = capacity_vsi(g, n_directions=16)
    inn = inner_frontier(g, "all_common", n_directions=16, refine=False)
    assert contains(cap_fr, inn, tol=1e-6)
