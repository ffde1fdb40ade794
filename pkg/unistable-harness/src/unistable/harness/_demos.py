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

"""Property demos of the selection tools, each returning CheckReports."""

import logging
import math
from typing import Any, List

import numpy as np

from unistable.core import (
    CheckReport,
    FiniteDistribution,
    ScoreVector,
    StableStatistic,
    dp_ratio_check,
    estimation_error,
    exp_mechanism,
    make_rng,
    max_to_tail_check,
    selector_sandwich_check,
    stable_max,
)

_logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12
MAX_SCORES = 30


def _count_check(name: str, violations: int, **detail: Any) -> CheckReport:
    return CheckReport(
        name=name,
        statistic=float(violations),
        bound=0.0,
        ci_low=float(violations),
        ci_high=float(violations),
        passed=violations == 0,
        detail=detail,
    )


def stablemax_demo(trials: int, seed: int) -> List[CheckReport]:
    """max - ln(m)/eps <= stable_max <= max on random inputs."""
    rng = make_rng(seed)
    violations = 0
    for _ in range(trials):
        m = int(rng.integers(1, MAX_SCORES))
        values = rng.normal(size=m) * rng.uniform(0.1, 10.0)
        eps = float(rng.uniform(0.01, 10.0))
        top = float(values.max())
        result = stable_max(values, eps)
        if not top - math.log(m) / eps - EXACT_TOL <= result <= top:
            violations += 1
    return [_count_check("stable_max", violations, trials=trials)]


def expmech_demo(trials: int, seed: int) -> List[CheckReport]:
    """Utility and privacy of the exponential mechanism on random scores."""
    rng = make_rng(seed)
    utility = privacy = 0
    for _ in range(trials):
        m = int(rng.integers(2, MAX_SCORES))
        sensitivity = float(rng.uniform(0.01, 1.0))
        eps = float(rng.uniform(0.05, 5.0))
        values = rng.uniform(-1.0, 1.0, size=m)
        scores = ScoreVector(tuple(values), sensitivity)
        floor = values.max() - 2.0 * sensitivity / eps * math.log(m)
        if exp_mechanism(scores, eps).expected_score < floor - EXACT_TOL:
            utility += 1
        moved = values + rng.uniform(-1.0, 1.0, size=m) * sensitivity
        neighbor = ScoreVector(tuple(moved), sensitivity)
        if dp_ratio_check(scores, neighbor, eps) > eps + EXACT_TOL:
            privacy += 1
    return [
        _count_check("expmech_utility", utility, trials=trials),
        _count_check("expmech_dp_ratio", privacy, trials=trials),
    ]


def max_to_tail_demo(
    m: StableStatistic,
    p: FiniteDistribution,
    n: int,
    subsets: int,
    trials: int,
    seed: int,
) -> List[CheckReport]:
    """Tail of one estimation error against the mean of a maximum of
    ``subsets`` of them."""

    def sampler(rng: np.random.Generator) -> float:
        return estimation_error(m, p.sample(n, rng), p)

    return [max_to_tail_check(sampler, m=subsets, trials=trials, seed=seed)]


def sandwich_demo(
    m: StableStatistic,
    p: FiniteDistribution,
    n: int,
    subsets: int,
    eps: float,
    trials: int,
    seed: int,
) -> List[CheckReport]:
    """Sandwich of the mechanism-selected estimation error."""
    report = selector_sandwich_check(
        m, p, subsets=subsets, n=n, eps=eps, trials=trials, seed=seed
    )
    return list(report.checks)
