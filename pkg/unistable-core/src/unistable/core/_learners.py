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

"""Uniformly stable learners and the statistics they induce.

Both learners return a LearnerOutput whose ``gamma`` is the stability of the
loss of the learned weights under single-element replacement:

* regularized ERM with parameter lam: 4 / (lam * n)
* projected gradient descent for T steps of size 1/sqrt(T): sqrt(T) / n
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from unistable.core._dataset import Dataset, Point
from unistable.core._errors import (
    PreconditionViolated,
    SolverDidNotConverge,
    UnknownPresetError,
)
from unistable.core._problems import ConvexProblem, Design, project_ball
from unistable.core._statistic import Evaluator, StableStatistic

_logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
_CAP_SAFETY = 10
_LEARN_CACHE_SIZE = 1024


@dataclass(frozen=True)
class LearnerOutput:
    weights: Tuple[float, ...]
    iterations: int
    objective: float
    gamma: float
    tol: Optional[float] = None

    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def learner_output_to_json(out: LearnerOutput) -> Dict[str, Any]:
    return {
        "weights": list(out.weights),
        "gamma": out.gamma,
        "iterations": out.iterations,
        "objective": out.objective,
        "tol": out.tol,
    }


def erm_iteration_cap(smoothness: float, lam: float, tol: float) -> int:
    return (
        math.ceil((smoothness / lam + 1.0) * math.log(2.0 / tol))
        * _CAP_SAFETY
    )


def regularized_erm(
    problem: ConvexProblem,
    s: Dataset,
    lam: float,
    tol: float = DEFAULT_TOL,
) -> LearnerOutput:
    """argmin over the ball of F_s(w) + lam/2 |w|^2.

    Runs projected gradient descent with step 1/(sigma + lam) until the
    gradient mapping has norm at most ``tol``, or uses the family's closed
    form when it has one.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    design = problem.design(s)
    gamma = 4.0 / (lam * s.n)

    closed = problem.closed_form_minimizer(design, lam)
    if closed is not None:
        w = project_ball(closed)
        iterations = 0
    else:
        w, iterations = _solve_regularized(problem, design, lam, tol)

    objective = problem.objective(w, design) + 0.5 * lam * float(w @ w)
    _logger.debug(
        "erm(%s, lam=%g, n=%d): gamma=%g tol=%g after %d iterations",
        problem.id,
        lam,
        s.n,
        gamma,
        tol,
        iterations,
    )
    return LearnerOutput(
        weights=tuple(float(v) for v in w),
        iterations=iterations,
        objective=objective,
        gamma=gamma,
        tol=tol,
    )


def _solve_regularized(
    problem: ConvexProblem, design: Design, lam: float, tol: float
) -> Tuple[np.ndarray, int]:
    smoothness = problem.smoothness or 1.0
    step = 1.0 / (smoothness + lam)
    cap = erm_iteration_cap(smoothness, lam, tol)
    w = np.zeros(problem.dim)
    for iteration in range(1, cap + 1):
        grad = problem.objective_grad(w, design) + lam * w
        candidate = project_ball(w - step * grad)
        mapping = float(np.linalg.norm(candidate - w)) / step
        w = candidate
        if mapping <= tol:
            return w, iteration
    raise SolverDidNotConverge(
        f"erm on {problem.id} did not reach gradient mapping {tol:g} "
        f"within {cap} iterations (last {mapping:g})"
    )


def check_pgd_preconditions(problem: ConvexProblem, steps: int) -> None:
    if steps < 1:
        raise PreconditionViolated(f"T must be >= 1, got {steps}")
    if problem.smoothness is None:
        raise PreconditionViolated(
            f"pgd needs a smooth problem, {problem.id} declares no smoothness"
        )
    if problem.smoothness > 2.0 * math.sqrt(steps):
        raise PreconditionViolated(
            f"smoothness {problem.smoothness:g} exceeds 2 sqrt(T) for "
            f"T={steps}"
        )


def pgd(problem: ConvexProblem, s: Dataset, steps: int) -> LearnerOutput:
    """T steps of w <- proj(w - grad F_s(w) / sqrt(T)) from the origin."""
    check_pgd_preconditions(problem, steps)
    design = problem.design(s)
    rate = 1.0 / math.sqrt(steps)
    w = np.zeros(problem.dim)
    for _ in range(steps):
        w = project_ball(w - rate * problem.objective_grad(w, design))
    return LearnerOutput(
        weights=tuple(float(v) for v in w),
        iterations=steps,
        objective=problem.objective(w, design),
        gamma=math.sqrt(steps) / s.n,
    )


class LearnerStatistic(StableStatistic):
    """M(s, z) = l(w_s, z) for the weights w_s a learner fits on s."""

    def __init__(
        self,
        name: str,
        problem: ConvexProblem,
        learner: Callable[[Dataset], LearnerOutput],
        gamma: Callable[[int], float],
    ):
        self.problem = problem
        self.learn = lru_cache(maxsize=_LEARN_CACHE_SIZE)(learner)
        super().__init__(name, self._fit_learner, gamma)

    def _fit_learner(self, s: Dataset) -> Evaluator:
        w = self.learn(s).array()
        problem = self.problem

        def evaluate(z: Point) -> float:
            return problem.loss(w, z)

        return evaluate


def make_erm_statistic(
    problem: ConvexProblem, lam: float, tol: float = DEFAULT_TOL
) -> LearnerStatistic:
    """Statistic of regularized ERM, declared gamma 4 / (lam * n).

    The solver tolerance is tightened to gamma / 100 when that is smaller.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")

    def gamma(n: int) -> float:
        return 4.0 / (lam * n)

    def learn(s: Dataset) -> LearnerOutput:
        return regularized_erm(
            problem, s, lam, tol=min(tol, gamma(s.n) / 100.0)
        )

    return LearnerStatistic(
        f"erm({problem.id}, lam={lam:g})", problem, learn, gamma
    )


def make_pgd_statistic(problem: ConvexProblem, steps: int) -> LearnerStatistic:
    """Statistic of projected gradient descent, declared gamma sqrt(T) / n."""
    check_pgd_preconditions(problem, steps)
    root = math.sqrt(steps)
    return LearnerStatistic(
        f"pgd({problem.id}, T={steps})",
        problem,
        lambda s: pgd(problem, s, steps),
        lambda n: root / n,
    )


SCHEDULES = (
    "ssss_lambda",
    "secondmoment_lambda",
    "highprob_lambda",
    "expected_risk_T",
)


def hyperparam_schedule(
    kind: str, n: int, delta: Optional[float] = None, c: float = 1.0
) -> float:
    """Hyperparameter schedules of the stable learners.

    ``ssss_lambda``          4 / sqrt(delta n)
    ``secondmoment_lambda``  c / sqrt(sqrt(delta) n)
    ``highprob_lambda``      c / n^(2/3)
    ``expected_risk_T``      ceil(n / sqrt(2))
    """
    if kind not in SCHEDULES:
        raise UnknownPresetError(
            f"unknown schedule {kind!r}, expected one of {list(SCHEDULES)}"
        )
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if kind == "highprob_lambda":
        return c / n ** (2.0 / 3.0)
    if kind == "expected_risk_T":
        return float(math.ceil(n / math.sqrt(2.0)))
    if delta is None or not 0 < delta < 1:
        raise ValueError(f"{kind} needs delta in (0, 1), got {delta}")
    if kind == "ssss_lambda":
        return 4.0 / math.sqrt(delta * n)
    return c / math.sqrt(math.sqrt(delta) * n)
