"""Outline reconstruction from support samples."""
import numpy as np
import pytest

from plotviz import frontier_outline


def _dirs(n):
    th = np.linspace(0.0, np.pi / 2.0, n)
    return np.column_stack([np.cos(th), np.sin(th)])


def test_square_round_trip():
    # a square [0, a] x [0, b] has support a*mu1 + b*mu2
    a, b = 1.25, 0.75
    dirs = _dirs(33)
    vals = a * dirs[:, 0] + b * dirs[:, 1]
    poly = frontier_outline(dirs, vals)
    want = {(0.0, 0.0), (a, 0.0), (a, b), (0.0, b)}
    got = {tuple(np.round(p, 9)) for p in poly}
    assert got == want
    # support values recomputed from the outline match the inputs
    back = np.max(dirs @ poly.T, axis=1)
    assert np.max(np.abs(back - vals)) < 1e-9


def test_pentagon_round_trip():
    # rectangle with the top-right corner cut by a sum-rate constraint
    verts = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 0.5],
                      [0.5, 1.5], [0.0, 1.5]])
    dirs = _dirs(65)
    vals = np.max(dirs @ verts.T, axis=1)
    poly = frontier_outline(dirs, vals)
    back = np.max(dirs @ poly.T, axis=1)
    assert np.max(np.abs(back - vals)) < 1e-6


def test_outline_rejects_bad_shapes():
    with pytest.raises(ValueError):
        frontier_outline(np.ones((3, 3)), np.ones(3))
    with pytest.raises(ValueError):
        frontier_outline(np.ones((1, 2)), np.ones(1))
