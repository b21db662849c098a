"""Support-function frontier machinery on analytically known regions."""
import numpy as np
import pytest

from ifccr import RatePoint, convexify, contains, frontier
from ifccr.regions import (
    Frontier,
    RegionEvaluator,
    directions,
    polytope_support,
    support_value,
)


def _square_evaluator(side=1.0):
    coefs = np.array([[1.0, 0.0], [0.0, 1.0]])

    def bounds_fn(params):
        return np.full((params.shape[0], 2), side)

    return RegionEvaluator(coefs, bounds_fn, np.zeros((1, 0)), name="square")


def test_directions_span_first_quadrant():
    d = directions(16)
    assert d.shape == (16, 2)
    assert np.allclose(np.linalg.norm(d, axis=1), 1.0)
    assert np.allclose(d[0], [1.0, 0.0])
    assert np.allclose(d[-1], [0.0, 1.0])
    with pytest.raises(ValueError):
        directions(2)


def test_polytope_support_square_and_pentagon():
    # unit square
    coefs = np.array([[1.0, 0.0], [0.0, 1.0]])
    vals = np.array([[1.0, 1.0]])
    v, p = polytope_support(coefs, vals, np.array([1.0, 1.0]))
    assert abs(v[0] - 2.0) < 1e-12
    assert np.allclose(p[0], [1.0, 1.0])
    # pentagon with a sum bound: corner moves onto the sum facet
    coefs = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    vals = np.array([[1.0, 1.0, 1.5]])
    v, p = polytope_support(coefs, vals, np.array([1.0, 1.0]))
    assert abs(v[0] - 1.5) < 1e-12
    v, p = polytope_support(coefs, vals, np.array([1.0, 0.0]))
    assert abs(v[0] - 1.0) < 1e-12


def test_polytope_support_clamps_negative_bounds():
    coefs = np.array([[1.0, 0.0], [0.0, 1.0]])
    vals = np.array([[-0.5, 1.0]])
    v, p = polytope_support(coefs, vals, np.array([1.0, 1.0]))
    assert abs(v[0] - 1.0) < 1e-12
    assert p[0][0] >= -1e-12


def test_support_value_parametric_union():
    # union over t in [0,1] of rectangles [0,t] x [0,sqrt(1-t^2)]:
    # support at mu is max_t (mu1*t + mu2*sqrt(1-t^2)) = |mu| = 1
    coefs = np.array([[1.0, 0.0], [0.0, 1.0]])

    def bounds_fn(params):
        t = np.clip(params[:, 0], 0.0, 1.0)
        return np.stack([t, np.sqrt(np.clip(1.0 - t * t, 0.0, None))], axis=1)

    ev = RegionEvaluator(coefs, bounds_fn, np.linspace(0, 1, 33)[:, None],
                         clip_fn=lambda x: np.clip(x, 0.0, 1.0))
    for ang in np.linspace(0.0, np.pi / 2, 9):
        mu = np.array([np.cos(ang), np.sin(ang)])
        v, pt, par = support_value(ev, mu)
        assert abs(v - 1.0) < 1e-7
        assert abs(mu @ pt - v) < 1e-9


def test_frontier_square_support():
    fr = frontier(_square_evaluator(), n_directions=17)
    for mu, val in zip(fr.directions, fr.values):
        assert abs(val - (mu[0] + mu[1])) < 1e-12


def test_frontier_values_cover_witnesses():
    fr = frontier(_square_evaluator(), n_directions=9)
    assert np.max(fr.directions @ fr.argpoints.T - fr.values[:, None]) <= 1e-7


def test_frontier_validation_rejects_bad_input():
    d = directions(8)
    with pytest.raises(ValueError):
        Frontier(d, np.ones(7))
    with pytest.raises(ValueError):
        Frontier(d[::-1], np.ones(8))
    with pytest.raises(ValueError):
        Frontier(d, -np.ones(8))


def test_contains_nested_squares():
    small = frontier(_square_evaluator(1.0), n_directions=16)
    big = frontier(_square_evaluator(1.5), n_directions=16)
    assert contains(big, small)
    rep = contains(small, big)
    assert not rep
    assert rep.max_gap > 0.4


def test_contains_resamples_mismatched_directions():
    small = frontier(_square_evaluator(1.0), n_directions=16)
    big = frontier(_square_evaluator(1.5), n_directions=24)
    assert contains(big, small)
    assert not contains(small, big)


def test_convexify_time_sharing():
    pts = [RatePoint(1.0, 0.0), RatePoint(0.0, 1.0), RatePoint(0.4, 0.4)]
    fr = convexify(pts, n_directions=33)
    # the interior point is dominated by the time-sharing line R1+R2 = 1
    mu = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert abs(fr.support(mu) - 1.0 / np.sqrt(2.0)) < 1e-9
    assert abs(fr.support([1.0, 0.0]) - 1.0) < 1e-12


def test_frontier_support_interpolates_halfplanes():
    fr = frontier(_square_evaluator(), n_directions=33)
    # support() at unsampled directions over-approximates by at most the
    # half-plane discretization error and never undercuts the region
    for ang in np.linspace(0.05, np.pi / 2 - 0.05, 7):
        mu = [np.cos(ang), np.sin(ang)]
        exact = mu[0] + mu[1]
        assert fr.support(mu) >= exact - 1e-9
        assert fr.support(mu) <= exact + 5e-3
