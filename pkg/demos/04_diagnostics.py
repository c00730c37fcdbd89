"""Run diagnostics: decay-rate fits, error-bound modulus, trace contrast.

Run:  python demos/04_diagnostics.py
"""

import numpy as np

from epscut import (
    BallProblem,
    SolveOptions,
    claim_contrast,
    estimate_kappa,
    fit_decay_rate,
    solve,
)

ball = BallProblem([0.0, 0.0], 1.0)

# fit_decay_rate summarizes a positive sequence by exp(slope) of the
# log-linear least-squares fit. A geometric sequence is recovered exactly;
# a harmonic one is flagged by the poor late fit and ratios creeping to 1.
geometric = fit_decay_rate([1.0, 0.5, 0.25, 0.125])
harmonic = fit_decay_rate([1.0, 1 / 2, 1 / 3, 1 / 4, 1 / 5])
print(f"geometric values: rho={geometric.rho:.4f} r2={geometric.r2:.4f}")
print(f"harmonic values:  rho={harmonic.rho:.4f} r2={harmonic.r2:.4f}")

# The sampled lower bound for the modulus in d(x, S_eps) <= kappa (f(x)+eps):
# along the ray {(t, 0)}, the ratio (t-1)/(t^2-1) peaks at the smallest t.
points = [[t, 0.0] for t in np.linspace(1.1, 3.0, 40)]
print(f"\nkappa lower bound on the ray: {estimate_kappa(ball, points, eps=0.0):.4f}"
      f" (analytic max 1/2.1 = {1/2.1:.4f})")

# claim_contrast packages the tension that forces finite termination: the
# recorded distances d(x_i, S_{eps_i}) decay geometrically while eps_i/d_i
# stays bounded, and a geometric sequence cannot stay above a sublinearly
# decaying floor forever.
trace = solve(ball, [2.0, 0.0], SolveOptions(record_sublevel_distance=True))
report = claim_contrast(trace)
print("\ndistances:", ["%.4g" % d for d in report.dist])
print("eps_i/d_i:", ["%.4g" % v for v in report.eps_over_dist])
print("fitted rho:", f"{report.rate.rho:.4f}", " l_hat:", f"{report.l_hat:.4f}")
print("verdict:", report.verdict)
