# Copyright 2026 The Unistable Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convex loss families over the Euclidean unit ball.

Every family has losses in [0, 1] and gradients of norm at most 1 on the
ball. Objectives are weighted averages of per-point losses, which covers both
the empirical objective of a dataset (uniform weights) and the population
objective of a finite distribution (its probabilities).
"""

import abc
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Dict, Optional, Sequence, Tuple, Type, Union

import numpy as np
from scipy import optimize, special

from unistable.core._dataset import (
    Dataset,
    FiniteDistribution,
    Point,
    PointKind,
)
from unistable.core._errors import (
    KindMismatchError,
    SolverDidNotConverge,
    UnknownPresetError,
)
from unistable.core._seeding import make_rng

_logger = logging.getLogger(__name__)

# Tolerance of the reference minimization behind excess_risk
REFERENCE_TOL = 1e-10
_POLISH_STEPS = 5000

_LOG1PE = math.log1p(math.e)


def project_ball(w: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Euclidean projection onto the ball of the given radius."""
    w = np.asarray(w, dtype=float)
    norm = float(np.linalg.norm(w))
    if norm <= radius:
        return w
    return w * (radius / norm)


@dataclass(frozen=True, eq=False)
class Design:
    """Points of a dataset or distribution as arrays, with their weights."""

    features: np.ndarray
    labels: Optional[np.ndarray]
    weights: np.ndarray


@dataclass(frozen=True)
class ConvexProblem(abc.ABC):
    """A family of convex losses l(w, z) over the unit ball in R^dim."""

    dim: int

    id: ClassVar[str] = ""
    point_kind: ClassVar[PointKind] = PointKind.VECTOR
    lipschitz: ClassVar[float] = 1.0
    smoothness: ClassVar[Optional[float]] = None
    strong_convexity: ClassVar[Optional[float]] = None

    @abc.abstractmethod
    def losses(
        self, w: np.ndarray, features: np.ndarray, labels: Optional[np.ndarray]
    ) -> np.ndarray:
        """Per-point losses, shape (k,)."""

    @abc.abstractmethod
    def gradients(
        self, w: np.ndarray, features: np.ndarray, labels: Optional[np.ndarray]
    ) -> np.ndarray:
        """Per-point gradients in w, shape (k, dim)."""

    def closed_form_minimizer(
        self, design: Design, lam: float
    ) -> Optional[np.ndarray]:
        """argmin over the ball of the weighted objective plus lam/2 |w|^2,
        when the family has one."""
        return None

    def check_kind(self, points: Union[Dataset, FiniteDistribution]) -> None:
        if points.kind is not self.point_kind or points.dim != self.dim:
            raise KindMismatchError(
                f"{self.id} problem in {self.dim}d needs "
                f"{self.point_kind.value} points, got "
                f"{points.kind.value}/{points.dim}d"
            )

    def design(self, points: Union[Dataset, FiniteDistribution]) -> Design:
        self.check_kind(points)
        labeled = self.point_kind is PointKind.LABELED
        if isinstance(points, Dataset):
            return Design(
                points.features,
                points.labels if labeled else None,
                np.full(points.n, 1.0 / points.n),
            )
        return Design(
            np.array([z.x for z in points.support], dtype=float),
            (
                np.array([z.y for z in points.support], dtype=int)
                if labeled
                else None
            ),
            np.asarray(points.weights, dtype=float),
        )

    def loss(self, w: np.ndarray, z: Point) -> float:
        labels = None if z.y is None else np.array([z.y])
        return float(self.losses(np.asarray(w), np.array([z.x]), labels)[0])

    def grad(self, w: np.ndarray, z: Point) -> np.ndarray:
        labels = None if z.y is None else np.array([z.y])
        return self.gradients(np.asarray(w), np.array([z.x]), labels)[0]

    def objective(self, w: np.ndarray, design: Design) -> float:
        return float(
            design.weights @ self.losses(w, design.features, design.labels)
        )

    def objective_grad(self, w: np.ndarray, design: Design) -> np.ndarray:
        return design.weights @ self.gradients(
            w, design.features, design.labels
        )


@dataclass(frozen=True)
class QuadraticFamily(ConvexProblem):
    """l(w, z) = |w - z|^2 / 4 for vector points z."""

    id = "quadratic"
    smoothness = 0.5

    def losses(self, w, features, labels):
        diff = features - w
        return 0.25 * np.einsum("ij,ij->i", diff, diff)

    def gradients(self, w, features, labels):
        return 0.5 * (w - features)

    def closed_form_minimizer(self, design, lam):
        # mean of points in the ball stays in the ball
        return (design.weights @ design.features) / (1.0 + 2.0 * lam)


@dataclass(frozen=True)
class ScaledLogisticFamily(ConvexProblem):
    """l(w, (x, y)) = log(1 + exp(-(2y - 1) <w, x>)) / log(1 + e)."""

    id = "logistic"
    point_kind = PointKind.LABELED
    lipschitz = 1.0 / _LOG1PE
    smoothness = 0.25 / _LOG1PE

    def losses(self, w, features, labels):
        margins = (2 * labels - 1) * (features @ w)
        return np.logaddexp(0.0, -margins) / _LOG1PE

    def gradients(self, w, features, labels):
        signs = 2 * labels - 1
        margins = signs * (features @ w)
        scale = -signs * special.expit(-margins) / _LOG1PE
        return scale[:, None] * features


_PROBLEMS: Dict[str, Type[ConvexProblem]] = {
    QuadraticFamily.id: QuadraticFamily,
    ScaledLogisticFamily.id: ScaledLogisticFamily,
}


def problem_from_id(problem_id: str, dim: int = 1) -> ConvexProblem:
    try:
        problem_type = _PROBLEMS[problem_id]
    except KeyError:
        raise UnknownPresetError(
            f"unknown problem {problem_id!r}, expected one of "
            f"{sorted(_PROBLEMS)}"
        ) from None
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    return problem_type(dim)


def minimize_over_ball(
    problem: ConvexProblem,
    design: Design,
    lam: float = 0.0,
    tol: float = REFERENCE_TOL,
) -> Tuple[np.ndarray, float]:
    """High-accuracy minimizer of the weighted objective plus lam/2 |w|^2.

    Uses the family's closed form when it has one, otherwise SLSQP with the
    ball as an inequality constraint followed by projected gradient steps.
    """
    closed = problem.closed_form_minimizer(design, lam)
    if closed is not None:
        w = project_ball(closed)
        return w, _regularized(problem, w, design, lam)

    def fun(w):
        return _regularized(problem, w, design, lam)

    def jac(w):
        return problem.objective_grad(w, design) + lam * w

    result = optimize.minimize(
        fun,
        np.zeros(problem.dim),
        jac=jac,
        method="SLSQP",
        constraints=[
            {
                "type": "ineq",
                "fun": lambda w: 1.0 - w @ w,
                "jac": lambda w: -2.0 * w,
            }
        ],
        options={"ftol": 1e-15, "maxiter": 1000},
    )
    if not result.success:
        _logger.debug("SLSQP stopped early: %s", result.message)
    w = project_ball(result.x)
    step = 1.0 / ((problem.smoothness or 1.0) + lam)
    mapping = math.inf
    for _ in range(_POLISH_STEPS):
        candidate = project_ball(w - step * jac(w))
        mapping = float(np.linalg.norm(candidate - w)) / step
        w = candidate
        if mapping <= tol:
            break
    if mapping > math.sqrt(tol):
        raise SolverDidNotConverge(
            f"reference solve of {problem.id} stalled with gradient mapping "
            f"{mapping:g}: {result.message}"
        )
    return w, fun(w)


def _regularized(
    problem: ConvexProblem, w: np.ndarray, design: Design, lam: float
) -> float:
    return problem.objective(w, design) + 0.5 * lam * float(w @ w)


@lru_cache(maxsize=64)
def population_minimum(
    problem: ConvexProblem, p: FiniteDistribution
) -> Tuple[Tuple[float, ...], float]:
    """(argmin, min) of F_P over the ball."""
    w, value = minimize_over_ball(problem, problem.design(p))
    _logger.debug("%s: F* = %.12g at %s", problem.id, value, w)
    return tuple(w), value


def excess_risk(
    problem: ConvexProblem,
    p: FiniteDistribution,
    w: Union[Sequence[float], np.ndarray],
) -> float:
    """F_P(w) - min over the ball of F_P."""
    w = np.asarray(w, dtype=float)
    _, best = population_minimum(problem, p)
    return problem.objective(w, problem.design(p)) - best


@dataclass(frozen=True)
class ConstantsReport:
    max_gradient_error: float
    lipschitz_observed: float
    smoothness_observed: float
    loss_min: float
    loss_max: float
    passed: bool


def verify_constants(
    problem: ConvexProblem,
    points: Sequence[Point],
    probes: int = 200,
    seed: int = 0,
    rel_tol: float = 1e-5,
) -> ConstantsReport:
    """Spot-checks a family's gradient and declared constants on the ball.

    Analytic gradients are compared with central finite differences, and the
    Lipschitz and smoothness constants with secants between random pairs.
    """
    rng = make_rng(seed)
    h = 1e-6
    grad_error = 0.0
    lipschitz = 0.0
    smoothness = 0.0
    loss_min = math.inf
    loss_max = -math.inf
    for _ in range(probes):
        z = points[int(rng.integers(len(points)))]
        w1 = _random_in_ball(problem.dim, rng)
        w2 = _random_in_ball(problem.dim, rng)
        g1 = problem.grad(w1, z)
        g2 = problem.grad(w2, z)
        fd = np.array(
            [
                (problem.loss(w1 + h * e, z) - problem.loss(w1 - h * e, z))
                / (2 * h)
                for e in np.eye(problem.dim)
            ]
        )
        grad_error = max(
            grad_error,
            float(np.linalg.norm(fd - g1)) / max(np.linalg.norm(g1), 1e-3),
        )
        l1, l2 = problem.loss(w1, z), problem.loss(w2, z)
        loss_min = min(loss_min, l1, l2)
        loss_max = max(loss_max, l1, l2)
        gap = float(np.linalg.norm(w1 - w2))
        lipschitz = max(lipschitz, float(np.linalg.norm(g1)))
        if gap > 1e-9:
            lipschitz = max(lipschitz, abs(l1 - l2) / gap)
            smoothness = max(smoothness, float(np.linalg.norm(g1 - g2)) / gap)
    slack = 1e-9
    passed = (
        grad_error <= rel_tol
        and lipschitz <= problem.lipschitz + slack
        and (
            problem.smoothness is None
            or smoothness <= problem.smoothness + slack
        )
        and loss_min >= -slack
        and loss_max <= 1.0 + slack
    )
    return ConstantsReport(
        max_gradient_error=grad_error,
        lipschitz_observed=lipschitz,
        smoothness_observed=smoothness,
        loss_min=loss_min,
        loss_max=loss_max,
        passed=passed,
    )


def _random_in_ball(dim: int, rng: np.random.Generator) -> np.ndarray:
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    return direction * rng.random() ** (1.0 / dim)
