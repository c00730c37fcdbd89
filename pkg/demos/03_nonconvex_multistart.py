"""Local behavior on a nonconvex instance: multistart near a boundary corner.

f(x) = max(x2 - x1^2, ||x||^2 - 4); the feasible region (below the parabola,
inside the disk) is not convex. Finite termination is a local phenomenon, so
we probe it empirically with seeded starts around the corner where the
parabola meets the circle.

Run:  python demos/03_nonconvex_multistart.py
"""

import numpy as np

from epscut import (
    SolveOptions,
    TerminationStatus,
    nonconvex_default_boundary,
    nonconvex_default_problem,
    solve_multistart,
)

problem = nonconvex_default_problem()
corner = nonconvex_default_boundary()
print("boundary corner:", corner, " f =", problem.value(corner))

rng = np.random.default_rng(2024)
directions = rng.standard_normal((20, 2))
directions /= np.linalg.norm(directions, axis=1, keepdims=True)
starts = corner + directions * (0.5 * rng.random((20, 1)) ** 0.5)

traces = solve_multistart(problem, starts, SolveOptions(max_iter=500))
found = 0
for start, trace in zip(starts, traces):
    ok = trace.status is TerminationStatus.FEASIBLE_FOUND
    found += ok
    print(f"start ({start[0]:+.3f}, {start[1]:+.3f})  f0={problem.value(start):+.4f}"
          f"  -> {trace.status.value:>15} at i={trace.status_iteration}")
print(f"\nfeasible: {found}/20 starts within 500 iterations")
