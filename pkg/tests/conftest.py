"""Shared test oracles and instance generators.

The brute-force projection oracle enumerates every constraint subset,
solves the equality-constrained least-squares system for each, and keeps
the feasible candidate nearest to the query point. It is independent of the
active-set kernel it validates.
"""

import numpy as np
import pytest


def brute_force_projection(x0, normals, offsets, feas_tol=1e-9):
    """Exact projection onto {x : normals @ x <= offsets} by enumeration.

    Returns the nearest feasible candidate or None when no subset yields a
    feasible point (empty polyhedron).
    """
    x0 = np.asarray(x0, dtype=float)
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    offsets = np.atleast_1d(np.asarray(offsets, dtype=float))
    k = normals.shape[0]
    row_norms = np.linalg.norm(normals, axis=1)

    best = None
    best_dist = np.inf
    for mask in range(2**k):
        subset = [j for j in range(k) if (mask >> j) & 1]
        if subset:
            A = normals[subset]
            b = offsets[subset]
            gram = A @ A.T
            lam = np.linalg.pinv(gram) @ (A @ x0 - b)
            cand = x0 - A.T @ lam
            residual = np.abs(A @ cand - b) / row_norms[subset]
            if np.max(residual) > 1e-7:
                continue
        else:
            cand = x0.copy()
        scaled = (normals @ cand - offsets) / row_norms
        if np.max(scaled) > feas_tol:
            continue
        dist = float(np.linalg.norm(cand - x0))
        if dist < best_dist:
            best_dist = dist
            best = cand
    return best


def random_projection_instance(rng):
    """One random polyhedral-projection instance with n <= 5, k <= 6.

    Mixes interior starts, exterior starts, and (occasionally) an explicit
    contradicting constraint pair so empty intersections are exercised too.
    """
    n = int(rng.integers(1, 6))
    force_empty = rng.random() < 0.1
    k = int(rng.integers(1, 5 if force_empty else 7))

    rows = []
    for _ in range(k):
        a = rng.standard_normal(n)
        while np.linalg.norm(a) < 1e-3:
            a = rng.standard_normal(n)
        rows.append(a)
    A = np.array(rows) * (10.0 ** rng.uniform(-1.0, 1.0, size=k))[:, None]

    anchor = rng.standard_normal(n)
    slack = rng.uniform(-0.5, 1.0, size=k)
    b = A @ anchor + slack * np.linalg.norm(A, axis=1)

    if force_empty:
        a = rng.standard_normal(n)
        while np.linalg.norm(a) < 1e-3:
            a = rng.standard_normal(n)
        c = float(rng.standard_normal())
        A = np.vstack([A, a, -a])
        b = np.append(b, [c, -c - 1.0])

    if rng.random() < 0.15:
        x0 = anchor.copy()
    else:
        x0 = anchor + 2.0 * rng.standard_normal(n)
    return x0, A, b


def radial_ball_reference(t0, eps0, max_iter=1000):
    """Independent 1-D resolution of the ball run along the positive axis.

    For f(x) = ||x||^2 - 1 started on the axis, the whole iteration stays on
    the axis, so scalar arithmetic reproduces it: t <- t - (eps + f)/(2 t).
    Returns (termination index, final radius) or (None, t) if the budget
    runs out.
    """
    t = float(t0)
    for i in range(max_iter + 1):
        f = t * t - 1.0
        if f <= 0.0:
            return i, t
        eps = eps0 / (i + 1)
        t = t - (eps + f) / (2.0 * t)
    return None, t


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
