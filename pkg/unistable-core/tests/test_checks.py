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

import pytest
from unistable.core import (
    FiniteDistribution,
    QuadraticFamily,
    SandwichReport,
    absolute_mean_check,
    clopper_pearson,
    estimation_error,
    expected_max_check,
    frequency_check,
    make_erm_statistic,
    max_to_tail_check,
    mean_check,
    score_sensitivity_audit,
    selector_sandwich_check,
    synthetic,
)


def test_clopper_pearson_edges() -> None:
    assert clopper_pearson(0, 10)[0] == 0.0
    assert clopper_pearson(10, 10)[1] == 1.0
    low, high = clopper_pearson(5, 10)
    assert low == pytest.approx(0.187086, abs=1e-6)
    assert high == pytest.approx(0.812914, abs=1e-6)
    with pytest.raises(ValueError):
        clopper_pearson(3, 2)


def test_mean_check_uses_three_standard_errors() -> None:
    report = mean_check("m", [0.0, 2.0] * 50, 0.8)
    se = report.detail["se"]
    assert report.statistic == 1.0
    assert report.ci_low == pytest.approx(1.0 - 3 * se)
    assert report.passed == (1.0 - 3 * se <= 0.8)
    assert report.to_json()["pass"] == report.passed


def test_absolute_mean_check() -> None:
    straddling = absolute_mean_check("a", [-1.0, 1.0] * 50, 0.0)
    assert straddling.statistic == 0.0
    assert straddling.ci_low == 0.0
    assert straddling.passed
    negative = absolute_mean_check("a", [-0.5] * 100, 0.4, bound_id="x")
    assert negative.statistic == 0.5
    assert negative.ci_low == 0.5
    assert not negative.passed
    assert negative.detail["bound_id"] == "x"
    assert absolute_mean_check("a", [-0.5] * 100, 0.5).passed


def test_frequency_check() -> None:
    report = frequency_check("f", 0, 100, 0.01)
    assert report.passed
    assert report.ci_low == 0.0
    assert not frequency_check("f", 50, 100, 0.1).passed


def test_max_to_tail_point_mass() -> None:
    report = max_to_tail_check(lambda rng: 0.0, m=5)
    assert report.statistic == 0.0
    assert report.bound == pytest.approx(math.log(2) / 5)
    assert report.passed


def test_max_to_tail_coin() -> None:
    report = max_to_tail_check(lambda rng: float(rng.integers(2)), m=3)
    assert report.detail["threshold"] > 1.0
    assert report.statistic == 0.0
    assert report.passed


@pytest.mark.parametrize("m", [5, 10])
def test_max_to_tail_estimation_errors(
    m: int, symmetric_pair: FiniteDistribution
) -> None:
    erm = make_erm_statistic(QuadraticFamily(1), lam=0.5)

    def sampler(rng):
        s = symmetric_pair.sample(20, rng)
        return estimation_error(erm, s, symmetric_pair)

    report = max_to_tail_check(sampler, m=m, trials=200, seed=m)
    assert report.passed


def test_max_to_tail_argument_errors() -> None:
    with pytest.raises(ValueError):
        max_to_tail_check(lambda rng: 0.0, m=5, trials=10)
    with pytest.raises(ValueError):
        max_to_tail_check(lambda rng: 0.0, m=0)


def test_score_sensitivity_audit(coin: FiniteDistribution) -> None:
    report = score_sensitivity_audit(
        synthetic("mean"), coin, subsets=3, n=5, probes=200
    )
    assert report.gamma_declared == pytest.approx(2 * 0.2 + 0.2)
    assert report.passed


def test_score_sensitivity_of_erm(
    symmetric_pair: FiniteDistribution,
) -> None:
    erm = make_erm_statistic(QuadraticFamily(1), lam=0.4)
    report = score_sensitivity_audit(
        erm, symmetric_pair, subsets=3, n=20, probes=100, seed=4
    )
    assert report.gamma_declared == pytest.approx(2 * 0.5 + 0.05)
    assert report.passed


@pytest.mark.slow
def test_score_sensitivity_of_erm_acceptance(
    symmetric_pair: FiniteDistribution,
) -> None:
    erm = make_erm_statistic(QuadraticFamily(1), lam=0.4)
    report = score_sensitivity_audit(
        erm, symmetric_pair, subsets=3, n=20, probes=10_000, seed=4
    )
    assert report.probes == 10_000
    assert 0.0 < report.gamma_observed
    assert report.passed


@pytest.mark.parametrize("eps", [0.0, 0.5])
def test_sandwich_constant_statistic(
    eps: float, coin: FiniteDistribution
) -> None:
    report = selector_sandwich_check(
        synthetic("const", 0.6), coin, subsets=3, n=4, eps=eps, trials=100
    )
    assert report.v_s == pytest.approx(0.6)
    assert report.true_mean == pytest.approx(0.6)
    assert report.passed
    assert report.to_json()["pass"] is True


def test_sandwich_uniform_selection(coin: FiniteDistribution) -> None:
    report = selector_sandwich_check(
        synthetic("absdev"), coin, subsets=4, n=5, eps=0.0, trials=300
    )
    assert report.upper - report.lower == pytest.approx(0.4)
    assert report.passed


def _erm_sandwich(p: FiniteDistribution, trials: int) -> SandwichReport:
    return selector_sandwich_check(
        make_erm_statistic(QuadraticFamily(1), lam=0.8),
        p,
        subsets=5,
        n=50,
        eps=0.5,
        trials=trials,
        seed=12,
    )


def test_sandwich_erm(symmetric_pair: FiniteDistribution) -> None:
    report = _erm_sandwich(symmetric_pair, 200)
    assert report.passed
    assert [c.name for c in report.checks] == [
        "sandwich_upper",
        "sandwich_lower",
        "selected_estimation_error",
    ]


@pytest.mark.slow
def test_sandwich_erm_acceptance(symmetric_pair: FiniteDistribution) -> None:
    assert _erm_sandwich(symmetric_pair, 2000).passed


def test_expected_max_check(coin: FiniteDistribution) -> None:
    report = expected_max_check(
        synthetic("mean"), coin, n=20, delta=0.5, trials=100, seed=6
    )
    assert report.detail["m"] == 2
    assert report.bound == pytest.approx(
        4 * math.sqrt((2 / 20 + 1 / 20) * math.log(16))
    )
    assert report.passed
    with pytest.raises(ValueError):
        expected_max_check(synthetic("mean"), coin, n=20, delta=1.0)
