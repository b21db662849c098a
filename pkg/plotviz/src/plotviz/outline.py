"""Convert frontier support samples to a drawable region outline.

The samples describe a convex region through its support function: for each
direction mu, every region point R satisfies mu . R <= h(mu).  The outline
is the boundary of the intersection of those half-planes with the positive
quadrant — the canonical reconstruction from support samples.
"""
from __future__ import annotations

import numpy as np


def frontier_outline(directions, values, tol: float = 1e-9) -> np.ndarray:
    """Vertices (counter-clockwise, starting on the R1 axis) of the region
    cut out by mu . R <= h(mu) for the sampled directions and R >= 0."""
    mus = np.asarray(directions, dtype=float)
    vals = np.asarray(values, dtype=float)
    if mus.ndim != 2 or mus.shape[1] != 2 or mus.shape[0] != len(vals):
        raise ValueError("directions must be (n, 2) matching values")
    if len(vals) < 2:
        raise ValueError("need at least two support samples")
    # stack the axis constraints -R1 <= 0, -R2 <= 0 with the samples
    A = np.vstack([mus, [[-1.0, 0.0], [0.0, -1.0]]])
    b = np.concatenate([vals, [0.0, 0.0]])
    n = len(b)
    pts = []
    for i in range(n):
        for j in range(i + 1, n):
            M = np.array([A[i], A[j]])
            det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
            if abs(det) < 1e-12:
                continue
            p = np.linalg.solve(M, [b[i], b[j]])
            pts.append(p)
    if not pts:
        raise ValueError("support samples define no bounded corner")
    pts = np.array(pts)
    scale = 1.0 + np.abs(b).max()
    feas = np.all(pts @ A.T <= b[None, :] + tol * scale, axis=1)
    pts = pts[feas]
    if len(pts) == 0:
        raise ValueError("half-plane intersection is empty")
    # deduplicate (keeping exact coordinates) and walk the hull
    # counter-clockwise around the interior
    keys = np.round(pts / (10.0 * tol * scale)).astype(np.int64)
    _, keep = np.unique(keys, axis=0, return_index=True)
    pts = pts[np.sort(keep)]
    center = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - center[1],
                                  pts[:, 0] - center[0]))
    pts = pts[order]
    start = int(np.lexsort((pts[:, 0], pts[:, 1]))[0])
    return np.clip(np.roll(pts, -start, axis=0), 0.0, None)
