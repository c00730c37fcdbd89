"""Projection kernels onto halfspaces and polyhedra.

Points are plain 1-D ``numpy.float64`` arrays. A halfspace is ``{x : <a, x> <= b}``
with a nonzero normal ``a``; a polyhedron is a finite intersection of halfspaces.
The polyhedral projection is an exact small dense QP solved with a dual
active-set method, and it returns a KKT certificate (active set plus
nonnegative multipliers). All feasibility tests are scale-aware: violations
``<a, x> - b`` are measured relative to ``||a||`` so that cuts with wildly
different normal magnitudes are treated uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DimensionMismatchError,
    InfeasiblePolyhedronError,
    NoFeasibleSampleFoundError,
    ZeroNormalError,
)

# Multiplier sign tolerance for dropping constraints inside the active-set loop.
MULTIPLIER_TOL = 1e-12
# Relative threshold below which a normal counts as linearly dependent on the
# current working set. Conservative on purpose: admitting a direction that
# contributes less than ~1e-7 of the normal's magnitude would push the Gram
# system's conditioning beyond what double precision can factor reliably, so
# such constraints are handled by dual steps (swaps) instead. Wedges thinner
# than this are treated as numerically empty.
_DEPENDENCE_TOL = 1e-7


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate and convert ``x`` to a finite 1-D float64 array.

    Raises DimensionMismatchError if ``dim`` is given and does not match,
    ValueError on NaN/Inf entries or empty input.
    """
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    if dim is not None and v.size != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {v.size}")
    return v


@dataclass(frozen=True)
class Halfspace:
    """The set {x : <normal, x> <= offset}."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = as_vector(self.normal)
        if float(np.dot(n, n)) == 0.0:
            raise ZeroNormalError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self) -> int:
        return self.normal.size

    def violation(self, x) -> float:
        """Signed constraint value <a, x> - b (positive means outside)."""
        return float(np.dot(self.normal, as_vector(x, self.dim))) - self.offset

    def contains(self, x, tol: float = 0.0) -> bool:
        """Membership test; ``tol`` is scaled by the normal's length."""
        return self.violation(x) <= tol * float(np.linalg.norm(self.normal))


class CutPolyhedron:
    """Intersection of finitely many halfspaces sharing one dimension."""

    def __init__(self, halfspaces):
        halfspaces = list(halfspaces)
        if not halfspaces:
            raise ValueError("a polyhedron needs at least one halfspace")
        dim = halfspaces[0].dim
        for h in halfspaces:
            if h.dim != dim:
                raise DimensionMismatchError(
                    f"halfspace dims differ: {h.dim} vs {dim}"
                )
        self.halfspaces = halfspaces
        self.dim = dim
        self.normals = np.array([h.normal for h in halfspaces])
        self.offsets = np.array([h.offset for h in halfspaces])
        self.normal_norms = np.linalg.norm(self.normals, axis=1)

    @classmethod
    def from_arrays(cls, normals, offsets) -> "CutPolyhedron":
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        offsets = np.atleast_1d(np.asarray(offsets, dtype=float))
        return cls([Halfspace(a, b) for a, b in zip(normals, offsets)])

    def __len__(self) -> int:
        return len(self.halfspaces)

    def scaled_violations(self, x) -> np.ndarray:
        x = as_vector(x, self.dim)
        return (self.normals @ x - self.offsets) / self.normal_norms

    def contains(self, x, tol: float = 0.0) -> bool:
        return bool(np.max(self.scaled_violations(x)) <= tol)


@dataclass(frozen=True)
class ProjectionResult:
    """Nearest point of a polyhedron plus its KKT certificate.

    ``point = x0 - sum(multipliers[j] * normals[active_set[j]])`` holds within
    round-off, all multipliers are nonnegative, and ``feasible`` records
    whether the query point already satisfied every halfspace (in which case
    the active set is empty and the point is the query itself).
    """

    point: np.ndarray
    active_set: list[int] = field(default_factory=list)
    multipliers: np.ndarray = field(default_factory=lambda: np.zeros(0))
    feasible: bool = False


def project_halfspace(x0, h: Halfspace) -> np.ndarray:
    """Project a point onto a single halfspace (closed form).

    Returns ``x0`` unchanged when it already satisfies the constraint;
    otherwise the nearest point on the bounding hyperplane,
    ``x0 - (<a,x0> - b)/||a||^2 * a``.
    """
    x0 = as_vector(x0, h.dim)
    a = h.normal
    viol = float(np.dot(a, x0)) - h.offset
    if viol <= 0.0:
        return x0.copy()
    return x0 - (viol / float(np.dot(a, a))) * a


def project_polyhedron(x0, poly: CutPolyhedron, tol: float = 1e-10) -> ProjectionResult:
    """Project a point onto a halfspace intersection (exact dense QP).

    Dual active-set iteration: starting from the unconstrained optimum
    ``x0``, repeatedly pick the most violated constraint (ties broken by
    lowest index), move onto it along the component of its normal that is
    orthogonal to the current working set, and drop working-set constraints
    whose multipliers would turn negative. Terminates finitely for small
    dense problems. An empty intersection is certified by an unbounded dual
    ray and raises InfeasiblePolyhedronError.

    ``tol`` bounds the accepted scaled violation ``(<a,x> - b)/||a||``.
    """
    x = as_vector(x0, poly.dim).copy()
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    A = poly.normals
    b = poly.offsets
    norms = poly.normal_norms
    k = len(poly)

    work: list[int] = []          # working set, insertion order
    lam = np.zeros(0)             # multipliers aligned with `work`, kept >= 0

    first_pass = True
    feasible_at_entry = False
    max_outer = 50 * (k + 1)
    for _ in range(max_outer):
        if not np.all(np.isfinite(x)):
            raise RuntimeError("active-set iterate became nonfinite")
        scaled = (A @ x - b) / norms
        p = int(np.argmax(scaled))
        if scaled[p] <= tol:
            if first_pass:
                feasible_at_entry = True
            break
        first_pass = False

        lam_p = 0.0
        for _ in range(2 * (k + 1)):
            a_p = A[p]
            if work:
                Aw = A[work]
                gram = Aw @ Aw.T
                # Min-norm least squares: near-parallel working sets make the
                # Gram numerically singular, and a plain solve would raise.
                r = np.linalg.lstsq(gram, Aw @ a_p, rcond=None)[0]
                z = a_p - Aw.T @ r
            else:
                r = np.zeros(0)
                z = a_p.copy()

            znorm = float(np.linalg.norm(z))
            if znorm > _DEPENDENCE_TOL * norms[p]:
                viol = float(np.dot(a_p, x)) - b[p]
                t_full = viol / float(np.dot(z, z))
                t_part, j_drop = _min_ratio(lam, r)
                if t_part < t_full:
                    x -= t_part * z
                    lam = lam - t_part * r
                    lam_p += t_part
                    del work[j_drop]
                    lam = np.delete(lam, j_drop)
                    continue
                x -= t_full * z
                lam = lam - t_full * r
                lam_p += t_full
                work.append(p)
                lam = np.append(lam, lam_p)
                break
            # Normal lies in the span of the working set: pure dual step.
            if not np.any(r > MULTIPLIER_TOL):
                raise InfeasiblePolyhedronError(
                    "empty halfspace intersection (dual ray found)"
                )
            t_part, j_drop = _min_ratio(lam, r)
            lam = lam - t_part * r
            lam_p += t_part
            del work[j_drop]
            lam = np.delete(lam, j_drop)
        else:
            raise RuntimeError("active-set inner loop failed to converge")
    else:
        raise RuntimeError("active-set outer loop failed to converge")

    lam = np.maximum(lam, 0.0)
    if feasible_at_entry:
        return ProjectionResult(point=x, feasible=True)
    order = np.argsort(work)
    return ProjectionResult(
        point=x,
        active_set=[work[i] for i in order],
        multipliers=lam[order],
        feasible=False,
    )


def _min_ratio(lam: np.ndarray, r: np.ndarray) -> tuple[float, int]:
    """Smallest lam_j / r_j over r_j > 0; (inf, -1) when none qualifies."""
    best = np.inf
    j_best = -1
    for j in range(lam.size):
        if r[j] > MULTIPLIER_TOL:
            ratio = lam[j] / r[j]
            if ratio < best:
                best = ratio
                j_best = j
    return best, j_best


@dataclass(frozen=True)
class VariationalInequalityReport:
    """Sampled check of <x0 - x1, y - x1> <= 0 over feasible points y.

    ``max_violation`` is the raw maximum inner product; the normalized
    variant divides each sample by ``1 + ||x0-x1|| * ||y-x1||`` so a single
    threshold works across scales.
    """

    max_violation: float
    max_normalized_violation: float
    n_samples: int
    n_attempts: int


def chebyshev_point(poly: CutPolyhedron, radius_cap: float = 1e3,
                    box: float = 1e4) -> np.ndarray | None:
    """Deepest-ball center of the polyhedron, or None when the LP fails.

    Solves max r s.t. <a_j, c> + r ||a_j|| <= b_j with r capped and the
    center boxed, so unbounded polyhedra still yield a finite point. Returns
    None unless the inradius found is strictly positive.
    """
    n = poly.dim
    c_obj = np.zeros(n + 1)
    c_obj[-1] = -1.0
    A_ub = np.hstack([poly.normals, poly.normal_norms[:, None]])
    res = linprog(
        c_obj,
        A_ub=A_ub,
        b_ub=poly.offsets,
        bounds=[(-box, box)] * n + [(0.0, radius_cap)],
        method="highs",
    )
    if not res.success or res.x is None or res.x[-1] <= 1e-12:
        return None
    return np.asarray(res.x[:n], dtype=float)


def check_variational_inequality(
    x0,
    result: ProjectionResult,
    poly: CutPolyhedron,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
) -> VariationalInequalityReport:
    """Sample feasible points and bound the projection inner product.

    The projection x1 of x0 satisfies <x0 - x1, y - x1> <= 0 for every
    feasible y; this estimates the worst case over ``samples`` points drawn
    by seeded rejection sampling around x1, topped up with the deepest-ball
    interior point and segments toward it when rejection alone cannot fill
    the quota. Raises NoFeasibleSampleFoundError if the quota cannot be met.
    """
    x0 = as_vector(x0, poly.dim)
    x1 = as_vector(result.point, poly.dim)
    if samples < 1:
        raise ValueError("samples must be positive")
    if not poly.contains(x1, tol):
        raise ValueError("result.point does not lie in the polyhedron")

    rng = np.random.default_rng(seed)
    gap = x0 - x1
    scale = 1.0 + float(np.linalg.norm(gap))
    interior = chebyshev_point(poly)

    ys: list[np.ndarray] = []
    if interior is not None:
        ys.append(interior)
    budget = 200 * samples
    attempts = 0
    radii = (0.5 * scale, 2.0 * scale, 0.05 * scale)
    while len(ys) < samples and attempts < budget:
        radius = radii[attempts % len(radii)]
        y = x1 + radius * rng.standard_normal(poly.dim)
        attempts += 1
        # Samples must be strictly feasible; only the projection point
        # itself is granted the tolerance.
        if poly.contains(y, 0.0):
            ys.append(y)
    if len(ys) < samples and interior is not None:
        # Segment [x1, interior] is feasible by convexity.
        while len(ys) < samples:
            t = rng.uniform(0.0, 1.0)
            ys.append(x1 + t * (interior - x1))
    if len(ys) < samples:
        raise NoFeasibleSampleFoundError(
            f"found {len(ys)}/{samples} feasible samples in {attempts} attempts"
        )

    max_violation = -np.inf
    max_normalized = -np.inf
    for y in ys:
        v = float(np.dot(gap, y - x1))
        denom = 1.0 + float(np.linalg.norm(gap)) * float(np.linalg.norm(y - x1))
        max_violation = max(max_violation, v)
        max_normalized = max(max_normalized, v / denom)
    return VariationalInequalityReport(
        max_violation=max_violation,
        max_normalized_violation=max_normalized,
        n_samples=len(ys),
        n_attempts=attempts,
    )
