"""Problem zoo and the function/subgradient oracle contract.

Every problem evaluates f(x) as the pointwise maximum of finitely many
pieces and returns, besides the value, a bundle of generalized gradients:
the gradients of all pieces active within a small threshold, most active
first. For a maximum of C1 pieces the generalized gradients at x form the
convex hull of the active-piece gradients, so each bundle member is a valid
element of it. Smooth instances are single-piece maxima.

Instances:
  ball                     f(x) = ||x - c||^2 - r^2          (smooth, convex)
  max_affine               f(x) = max_j <c_j, x> + d_j       (convex, kinks)
  max_quadratics           f(x) = max_j x'Q_j x + b_j'x + c_j (possibly nonconvex)
  sip_distance             f(x) = max_i dist(x, K_i)         (set intersection)
  shifted_ball_infeasible  f(x) = ||x||^2 + 1                (no feasible point;
                           the gradient vanishes at the origin, which is the
                           designated trigger for the zero-subgradient path)
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasiblePolyhedronError,
    NotAvailableError,
    SublevelEmptyError,
)
from .geometry import CutPolyhedron, Halfspace, as_vector, project_polyhedron

DEFAULT_J_MAX = 8

KINDS = (
    "ball",
    "max_affine",
    "max_quadratics",
    "sip_distance",
    "shifted_ball_infeasible",
)


@dataclass(frozen=True)
class Evaluation:
    """Oracle output at one point: value, subgradient bundle, active pieces."""

    value: float
    bundle: list[np.ndarray]
    active: list[int]


class Problem(ABC):
    """A feasibility instance f(x) <= 0 given as a finite maximum of pieces."""

    kind: str = ""

    def __init__(self, dim: int, activity_tol: float | None = None,
                 name: str | None = None):
        if dim < 1:
            raise ValueError("dim must be at least 1")
        if activity_tol is not None and activity_tol < 0.0:
            raise ValueError("activity_tol must be nonnegative")
        self.dim = int(dim)
        self.activity_tol = activity_tol
        self.name = name or self.kind

    @abstractmethod
    def piece_values(self, x: np.ndarray) -> np.ndarray:
        """Values of all pieces at x, shape (k,)."""

    @abstractmethod
    def piece_gradient(self, x: np.ndarray, j: int) -> np.ndarray:
        """Gradient of piece j at x, shape (n,)."""

    def piece_values_batch(self, X: np.ndarray) -> np.ndarray:
        """Piece values at many points, shape (B, k). Default: row loop."""
        return np.array([self.piece_values(x) for x in X])

    def piece_gradients_batch(self, X: np.ndarray) -> np.ndarray:
        """All piece gradients at many points, shape (B, k, n)."""
        k = self.piece_values(X[0]).size
        return np.array(
            [[self.piece_gradient(x, j) for j in range(k)] for x in X]
        )

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        return float(np.max(self.piece_values(x)))

    def effective_activity_tol(self, f_value: float) -> float:
        if self.activity_tol is not None:
            return self.activity_tol
        return 1e-8 * (1.0 + abs(f_value))

    def select_active(self, values: np.ndarray, f: float, tau: float) -> list[int]:
        """Indices of bundle pieces, most active first (ties by index)."""
        order = sorted(range(values.size), key=lambda j: (-values[j], j))
        return [j for j in order if values[j] >= f - tau]


def evaluate(problem: Problem, x, j_max: int = DEFAULT_J_MAX) -> Evaluation:
    """Value and subgradient bundle at x.

    The bundle holds the gradients of every piece whose value is within the
    activity threshold of the maximum, ordered most active first (ties by
    piece index) and capped at ``j_max``.
    """
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    x = as_vector(x, problem.dim)
    values = problem.piece_values(x)
    f = float(np.max(values))
    tau = problem.effective_activity_tol(f)
    active = problem.select_active(values, f, tau)[:j_max]
    bundle = [problem.piece_gradient(x, j) for j in active]
    return Evaluation(value=f, bundle=bundle, active=active)


class BallProblem(Problem):
    """f(x) = ||x - center||^2 - radius^2."""

    kind = "ball"

    def __init__(self, center=(0.0, 0.0), radius: float = 1.0,
                 activity_tol: float | None = None, name: str | None = None):
        center = as_vector(center)
        if not radius > 0.0:
            raise ValueError("radius must be positive")
        super().__init__(center.size, activity_tol, name)
        self.center = center
        self.radius = float(radius)

    def piece_values(self, x):
        d = x - self.center
        return np.array([float(np.dot(d, d)) - self.radius**2])

    def piece_gradient(self, x, j):
        return 2.0 * (x - self.center)

    def piece_values_batch(self, X):
        D = X - self.center
        return (np.einsum("bn,bn->b", D, D) - self.radius**2)[:, None]

    def piece_gradients_batch(self, X):
        return (2.0 * (X - self.center))[:, None, :]


class ShiftedBallProblem(Problem):
    """f(x) = ||x||^2 + 1, infeasible everywhere; gradient vanishes at 0."""

    kind = "shifted_ball_infeasible"

    def __init__(self, dim: int = 2, activity_tol: float | None = None,
                 name: str | None = None):
        super().__init__(dim, activity_tol, name)

    def piece_values(self, x):
        return np.array([float(np.dot(x, x)) + 1.0])

    def piece_gradient(self, x, j):
        return 2.0 * x

    def piece_values_batch(self, X):
        return (np.einsum("bn,bn->b", X, X) + 1.0)[:, None]

    def piece_gradients_batch(self, X):
        return (2.0 * X)[:, None, :]


class MaxAffineProblem(Problem):
    """f(x) = max_j <coefs[j], x> + intercepts[j]."""

    kind = "max_affine"

    def __init__(self, coefs, intercepts, activity_tol: float | None = None,
                 name: str | None = None):
        coefs = np.atleast_2d(np.asarray(coefs, dtype=float))
        intercepts = np.atleast_1d(np.asarray(intercepts, dtype=float))
        if coefs.shape[0] != intercepts.size:
            raise ValueError("coefs and intercepts must have matching length")
        super().__init__(coefs.shape[1], activity_tol, name)
        self.coefs = coefs
        self.intercepts = intercepts

    def piece_values(self, x):
        return self.coefs @ x + self.intercepts

    def piece_gradient(self, x, j):
        return self.coefs[j].copy()

    def piece_values_batch(self, X):
        return X @ self.coefs.T + self.intercepts

    def piece_gradients_batch(self, X):
        return np.broadcast_to(
            self.coefs[None, :, :], (X.shape[0],) + self.coefs.shape
        ).copy()


@dataclass(frozen=True)
class QuadraticPiece:
    """One piece x'Qx + <b, x> + c with Q stored symmetrized."""

    quad: np.ndarray
    lin: np.ndarray
    const: float

    def __post_init__(self):
        q = np.atleast_2d(np.asarray(self.quad, dtype=float))
        lin = as_vector(self.lin)
        if q.shape != (lin.size, lin.size):
            raise ValueError("quadratic matrix shape must match the linear term")
        object.__setattr__(self, "quad", 0.5 * (q + q.T))
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "const", float(self.const))


class MaxQuadraticsProblem(Problem):
    """f(x) = max over quadratic pieces; pieces may be nonconvex."""

    kind = "max_quadratics"

    def __init__(self, pieces, activity_tol: float | None = None,
                 name: str | None = None):
        pieces = [
            p if isinstance(p, QuadraticPiece) else QuadraticPiece(*p)
            for p in pieces
        ]
        if not pieces:
            raise ValueError("at least one quadratic piece is required")
        dim = pieces[0].lin.size
        for p in pieces:
            if p.lin.size != dim:
                raise ValueError("all pieces must share one dimension")
        super().__init__(dim, activity_tol, name)
        self.pieces = pieces

    def piece_values(self, x):
        return np.array(
            [float(x @ p.quad @ x + np.dot(p.lin, x) + p.const) for p in self.pieces]
        )

    def piece_gradient(self, x, j):
        p = self.pieces[j]
        return 2.0 * (p.quad @ x) + p.lin

    def piece_values_batch(self, X):
        cols = [
            np.einsum("bn,bn->b", X @ p.quad, X) + X @ p.lin + p.const
            for p in self.pieces
        ]
        return np.stack(cols, axis=1)

    def piece_gradients_batch(self, X):
        grads = [2.0 * (X @ p.quad) + p.lin for p in self.pieces]
        return np.stack(grads, axis=1)


@dataclass(frozen=True)
class BallBody:
    """Closed ball used as one target set of a distance maximum."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_vector(self.center)
        if not self.radius > 0.0:
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return self.center.size

    def distance(self, x) -> float:
        return max(0.0, float(np.linalg.norm(x - self.center)) - self.radius)

    def distance_gradient(self, x) -> np.ndarray:
        gap = x - self.center
        norm = float(np.linalg.norm(gap))
        if norm <= self.radius:
            return np.zeros(self.dim)
        return gap / norm


class HalfspaceBody:
    """Halfspace used as one target set of a distance maximum."""

    def __init__(self, normal, offset: float):
        self.halfspace = Halfspace(normal, offset)

    @property
    def dim(self) -> int:
        return self.halfspace.dim

    @property
    def normal(self) -> np.ndarray:
        return self.halfspace.normal

    @property
    def offset(self) -> float:
        return self.halfspace.offset

    def distance(self, x) -> float:
        viol = self.halfspace.violation(x)
        if viol <= 0.0:
            return 0.0
        return viol / float(np.linalg.norm(self.normal))

    def distance_gradient(self, x) -> np.ndarray:
        if self.halfspace.violation(x) <= 0.0:
            return np.zeros(self.dim)
        return self.normal / float(np.linalg.norm(self.normal))


class SipDistanceProblem(Problem):
    """f(x) = max_i dist(x, K_i) over balls and halfspaces.

    f(x) = 0 exactly on the intersection of the bodies; where f(x) > 0 every
    bundle member is the unit vector from the nearest point of an (almost)
    farthest body, and at feasible points the zero vector is returned (it is
    a valid generalized gradient of each distance there).
    """

    kind = "sip_distance"

    def __init__(self, bodies, activity_tol: float | None = None,
                 name: str | None = None):
        bodies = list(bodies)
        if not bodies:
            raise ValueError("at least one body is required")
        dim = bodies[0].dim
        for body in bodies:
            if body.dim != dim:
                raise ValueError("all bodies must share one dimension")
        super().__init__(dim, activity_tol, name)
        self.bodies = bodies

    def piece_values(self, x):
        return np.array([body.distance(x) for body in self.bodies])

    def piece_gradient(self, x, j):
        return self.bodies[j].distance_gradient(x)

    def select_active(self, values, f, tau):
        # A body already containing x has distance 0 and only the zero
        # vector as its gradient here; while f > 0 such bodies are excluded
        # so the bundle stays usable for cuts.
        active = super().select_active(values, f, tau)
        if f > 0.0:
            active = [j for j in active if values[j] > 0.0]
        return active


@dataclass(frozen=True)
class ApproxConvexityReport:
    worst_violation: float
    n_pairs: int


def check_approximate_convexity(
    problem: Problem,
    center,
    delta: float,
    eps_ac: float,
    pairs: int = 10_000,
    seed: int = 0,
):
    """Sampled test of the slackened convexity inequality on a ball.

    Draws ``pairs`` point pairs (x, y) uniformly from the ball of radius
    ``delta`` around ``center`` and, for every bundle gradient s at x,
    evaluates f(x) + <s, y-x> - eps_ac*||y-x|| - f(y). A nonpositive worst
    case means every sampled pair satisfied the inequality. Deterministic
    for a fixed seed.
    """
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    if not eps_ac > 0.0:
        raise ValueError("eps_ac must be positive")
    if pairs < 1:
        raise ValueError("pairs must be positive")
    center = as_vector(center, problem.dim)
    rng = np.random.default_rng(seed)

    X = center + delta * ball_samples(rng, pairs, problem.dim)
    Y = center + delta * ball_samples(rng, pairs, problem.dim)

    VX = problem.piece_values_batch(X)
    VY = problem.piece_values_batch(Y)
    fx = VX.max(axis=1)
    fy = VY.max(axis=1)
    if problem.activity_tol is not None:
        tau = np.full(pairs, problem.activity_tol)
    else:
        tau = 1e-8 * (1.0 + np.abs(fx))
    active = VX >= (fx - tau)[:, None]

    G = problem.piece_gradients_batch(X)
    diff = Y - X
    inner = np.einsum("bkn,bn->bk", G, diff)
    dist = np.linalg.norm(diff, axis=1)
    viol = fx[:, None] + inner - eps_ac * dist[:, None] - fy[:, None]
    viol = np.where(active, viol, -np.inf)
    worst = float(viol.max())
    return ApproxConvexityReport(worst_violation=worst, n_pairs=pairs)


def ball_samples(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform samples from the closed unit ball, shape (count, dim)."""
    raw = rng.standard_normal((count, dim))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    radii = rng.random(count) ** (1.0 / dim)
    return raw / norms * radii[:, None]


def supports_sublevel_distance(problem: Problem) -> bool:
    """Whether exact_sublevel_distance has an analytic formula here."""
    return isinstance(problem, (BallProblem, MaxAffineProblem))


def exact_sublevel_distance(problem: Problem, x, eps: float) -> float:
    """Exact distance from x to the shifted sublevel set {f <= -eps}.

    Ball instances reduce to a concentric-ball distance; max-affine
    instances reduce to a polyhedral projection. Raises NotAvailableError
    for other kinds and SublevelEmptyError when the shifted set is empty.
    """
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    x = as_vector(x, problem.dim)
    if isinstance(problem, BallProblem):
        rr = problem.radius**2 - eps
        if rr <= 0.0:
            raise SublevelEmptyError(
                f"no point satisfies f <= -{eps} for this ball instance"
            )
        gap = float(np.linalg.norm(x - problem.center))
        return max(0.0, gap - math.sqrt(rr))
    if isinstance(problem, MaxAffineProblem):
        halfspaces = []
        for coef, intercept in zip(problem.coefs, problem.intercepts):
            if float(np.dot(coef, coef)) == 0.0:
                if intercept > -eps:
                    raise SublevelEmptyError(
                        "a constant piece exceeds the shift everywhere"
                    )
                continue
            halfspaces.append(Halfspace(coef, -eps - float(intercept)))
        if not halfspaces:
            return 0.0
        try:
            result = project_polyhedron(x, CutPolyhedron(halfspaces))
        except InfeasiblePolyhedronError as exc:
            raise SublevelEmptyError(str(exc)) from exc
        return float(np.linalg.norm(x - result.point))
    raise NotAvailableError(
        f"no analytic sublevel distance for kind {problem.kind!r}"
    )


def nonconvex_default_problem(activity_tol: float | None = None) -> MaxQuadraticsProblem:
    """f(x) = max(x2 - x1^2, ||x||^2 - 4) on the plane.

    The feasible region {x2 <= x1^2, ||x|| <= 2} is nonconvex; f is a
    maximum of two smooth pieces.
    """
    below_parabola = QuadraticPiece([[-1.0, 0.0], [0.0, 0.0]], [0.0, 1.0], 0.0)
    inside_disk = QuadraticPiece(np.eye(2), [0.0, 0.0], -4.0)
    return MaxQuadraticsProblem(
        [below_parabola, inside_disk],
        activity_tol=activity_tol,
        name="parabola-disk",
    )


def nonconvex_default_boundary() -> np.ndarray:
    """Corner of the default nonconvex instance: parabola meets circle."""
    t = (math.sqrt(17.0) - 1.0) / 2.0
    return np.array([math.sqrt(t), t])


def problem_from_dict(spec: dict) -> Problem:
    """Build a problem from its JSON description.

    Schema: {"name": str?, "kind": str, "dim": int, "params": {...},
    "activity_tol": float?}. Raises ValueError naming the offending field.
    """
    if not isinstance(spec, dict):
        raise ValueError("problem spec: expected a JSON object")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise ValueError(f"problem spec field 'kind': expected one of {KINDS}, got {kind!r}")
    dim = spec.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError("problem spec field 'dim': expected a positive integer")
    params = spec.get("params", {})
    if not isinstance(params, dict):
        raise ValueError("problem spec field 'params': expected an object")
    name = spec.get("name")
    activity_tol = spec.get("activity_tol")
    if activity_tol is not None and (
        not isinstance(activity_tol, (int, float)) or activity_tol < 0
    ):
        raise ValueError("problem spec field 'activity_tol': expected a nonnegative number")

    try:
        if kind == "ball":
            center = params.get("center", [0.0] * dim)
            radius = params.get("radius", 1.0)
            problem = BallProblem(center, radius, activity_tol, name)
        elif kind == "shifted_ball_infeasible":
            problem = ShiftedBallProblem(dim, activity_tol, name)
        elif kind == "max_affine":
            pieces = params.get("pieces")
            if not pieces:
                raise ValueError("field 'params.pieces' is required and nonempty")
            coefs = [p["coef"] for p in pieces]
            intercepts = [p.get("intercept", 0.0) for p in pieces]
            problem = MaxAffineProblem(coefs, intercepts, activity_tol, name)
        elif kind == "max_quadratics":
            pieces = params.get("pieces")
            if not pieces:
                raise ValueError("field 'params.pieces' is required and nonempty")
            built = [
                QuadraticPiece(
                    p.get("quad", np.zeros((dim, dim))),
                    p.get("lin", np.zeros(dim)),
                    p.get("const", 0.0),
                )
                for p in pieces
            ]
            problem = MaxQuadraticsProblem(built, activity_tol, name)
        else:
            bodies_spec = params.get("bodies")
            if not bodies_spec:
                raise ValueError("field 'params.bodies' is required and nonempty")
            bodies = []
            for entry in bodies_spec:
                body_type = entry.get("type")
                if body_type == "ball":
                    bodies.append(BallBody(entry["center"], entry["radius"]))
                elif body_type == "halfspace":
                    bodies.append(HalfspaceBody(entry["normal"], entry["offset"]))
                else:
                    raise ValueError(
                        f"field 'params.bodies[].type': expected 'ball' or 'halfspace', got {body_type!r}"
                    )
            problem = SipDistanceProblem(bodies, activity_tol, name)
    except KeyError as exc:
        raise ValueError(f"problem spec params: missing field {exc.args[0]!r}") from exc

    if problem.dim != dim:
        raise ValueError(
            f"problem spec field 'dim': params imply dimension {problem.dim}, spec says {dim}"
        )
    return problem


def problem_to_dict(problem: Problem) -> dict:
    """Inverse of problem_from_dict for the supported kinds."""
    spec: dict = {"name": problem.name, "kind": problem.kind, "dim": problem.dim}
    if isinstance(problem, BallProblem):
        spec["params"] = {
            "center": problem.center.tolist(),
            "radius": problem.radius,
        }
    elif isinstance(problem, ShiftedBallProblem):
        spec["params"] = {}
    elif isinstance(problem, MaxAffineProblem):
        spec["params"] = {
            "pieces": [
                {"coef": c.tolist(), "intercept": float(d)}
                for c, d in zip(problem.coefs, problem.intercepts)
            ]
        }
    elif isinstance(problem, MaxQuadraticsProblem):
        spec["params"] = {
            "pieces": [
                {"quad": p.quad.tolist(), "lin": p.lin.tolist(), "const": p.const}
                for p in problem.pieces
            ]
        }
    elif isinstance(problem, SipDistanceProblem):
        bodies = []
        for body in problem.bodies:
            if isinstance(body, BallBody):
                bodies.append(
                    {"type": "ball", "center": body.center.tolist(), "radius": body.radius}
                )
            else:
                bodies.append(
                    {
                        "type": "halfspace",
                        "normal": body.normal.tolist(),
                        "offset": body.offset,
                    }
                )
        spec["params"] = {"bodies": bodies}
    else:
        raise ValueError(f"cannot serialize problem kind {problem.kind!r}")
    if problem.activity_tol is not None:
        spec["activity_tol"] = problem.activity_tol
    return spec
