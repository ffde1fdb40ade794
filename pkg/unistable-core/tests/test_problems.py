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

import math

import numpy as np
import pytest
from unistable.core import (
    Dataset,
    FiniteDistribution,
    KindMismatchError,
    Point,
    QuadraticFamily,
    ScaledLogisticFamily,
    UnknownPresetError,
    excess_risk,
    minimize_over_ball,
    population_minimum,
    problem_from_id,
    project_ball,
    verify_constants,
)


def test_project_ball() -> None:
    np.testing.assert_allclose(project_ball(np.array([3.0, 4.0])), [0.6, 0.8])
    inside = np.array([0.1, 0.2])
    np.testing.assert_array_equal(project_ball(inside), inside)
    np.testing.assert_allclose(
        project_ball(np.array([2.0]), radius=0.5), [0.5]
    )


def test_problem_presets() -> None:
    assert isinstance(problem_from_id("quadratic", 2), QuadraticFamily)
    assert problem_from_id("logistic").dim == 1
    with pytest.raises(UnknownPresetError):
        problem_from_id("hinge")
    with pytest.raises(ValueError):
        problem_from_id("quadratic", 0)


def test_quadratic_loss_and_gradient() -> None:
    problem = QuadraticFamily(1)
    z = Point.vector(0.6)
    assert problem.loss(np.array([0.2]), z) == pytest.approx(0.04)
    np.testing.assert_allclose(problem.grad(np.array([0.2]), z), [-0.2])


def test_logistic_loss_range() -> None:
    problem = ScaledLogisticFamily(1)
    # worst margin on the ball is -1, which the scaling maps to loss 1
    assert problem.loss(np.array([1.0]), Point.labeled(1.0, 0)) == (
        pytest.approx(1.0)
    )
    assert problem.loss(np.array([0.0]), Point.labeled(0.5, 1)) == (
        pytest.approx(math.log(2) / math.log1p(math.e))
    )


def test_kind_mismatch(coin: FiniteDistribution) -> None:
    with pytest.raises(KindMismatchError):
        ScaledLogisticFamily(1).design(coin)
    with pytest.raises(KindMismatchError):
        QuadraticFamily(2).design(Dataset.of_scalars((0.1,)))


@pytest.mark.parametrize(
    "problem,points",
    [
        pytest.param(
            QuadraticFamily(2),
            [Point.vector([0.6, 0.0]), Point.vector([-0.3, 0.4])],
            id="quadratic",
        ),
        pytest.param(
            ScaledLogisticFamily(2),
            [Point.labeled([0.6, 0.8], 1), Point.labeled([-0.3, 0.4], 0)],
            id="logistic",
        ),
    ],
)
def test_verify_constants(problem, points) -> None:
    report = verify_constants(problem, points, probes=100, seed=2)
    assert report.passed
    assert report.max_gradient_error <= 1e-5
    assert report.lipschitz_observed <= problem.lipschitz + 1e-9
    assert 0.0 <= report.loss_min <= report.loss_max <= 1.0


def test_excess_risk_quadratic(symmetric_pair: FiniteDistribution) -> None:
    problem = QuadraticFamily(1)
    w_star, best = population_minimum(problem, symmetric_pair)
    assert w_star == pytest.approx((0.0,))
    assert best == pytest.approx(0.0625)
    assert excess_risk(problem, symmetric_pair, [0.5]) == pytest.approx(
        0.0625
    )
    assert excess_risk(problem, symmetric_pair, w_star) == pytest.approx(
        0.0, abs=1e-15
    )


def test_minimize_over_ball_logistic(labeled: FiniteDistribution) -> None:
    problem = ScaledLogisticFamily(1)
    design = problem.design(labeled)
    w, value = minimize_over_ball(problem, design)
    assert abs(w[0]) <= 1.0 + 1e-12
    for candidate in np.linspace(-1.0, 1.0, 201):
        assert value <= problem.objective(np.array([candidate]), design) + 1e-9


def test_regularized_minimizer_matches_closed_form() -> None:
    problem = QuadraticFamily(1)
    s = Dataset.of_scalars((0.6, 0.6))
    w, _ = minimize_over_ball(problem, problem.design(s), lam=0.5)
    assert w == pytest.approx([0.3])
