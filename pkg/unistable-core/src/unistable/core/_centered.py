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

"""The unbiased (centered) statistic and its leave-one-out estimate."""

import logging
import math
from typing import List

from unistable.core import environment_variables
from unistable.core._dataset import Dataset, FiniteDistribution
from unistable.core._reporting import CheckReport, mean_check
from unistable.core._seeding import make_rng
from unistable.core._statistic import (
    Evaluator,
    StableStatistic,
    empirical_mean,
)

_logger = logging.getLogger(__name__)


class CenteredStatistic(StableStatistic):
    """L(s, z) = M(s, z) - E_P[M(s, .)], with range [-1, 1].

    Replacing one element of s moves both terms by at most gamma, so the
    declared stability is twice that of the base statistic.
    """

    low = -1.0
    high = 1.0

    def __init__(
        self, base: StableStatistic, distribution: FiniteDistribution
    ):
        self.base = base
        self.distribution = distribution
        super().__init__(
            f"centered({base.name})",
            self._fit_centered,
            lambda n: 2.0 * base.declared_gamma(n),
        )

    def _fit_centered(self, s: Dataset) -> Evaluator:
        evaluate = self.base.fit(s)
        mean = self.distribution.expect(evaluate)
        return lambda z: evaluate(z) - mean


def center(m: StableStatistic, p: FiniteDistribution) -> CenteredStatistic:
    return CenteredStatistic(m, p)


def loo_estimate(centered: CenteredStatistic, s: Dataset) -> float:
    """sum_z P(z) (1/n) sum_i L(s^{i<-z}, s_i), exact over the support."""
    if not isinstance(centered, CenteredStatistic):
        raise TypeError(
            f"loo_estimate needs a centered statistic, got {centered!r}"
        )
    p = centered.distribution

    def replaced_at(z):
        total = math.fsum(
            centered(s.replace(i, z), s[i]) for i in range(s.n)
        )
        return total / s.n

    return p.expect(replaced_at)


def unbiased_second_moment_check(
    centered: CenteredStatistic, n: int, trials: int, seed: int = 0
) -> List[CheckReport]:
    """Monte Carlo check of the second moments of the empirical mean of L and
    of its leave-one-out estimate, plus the pointwise gap between the two.

    Datasets are drawn from the distribution L was centered on.
    """
    gamma = centered.declared_gamma(n)
    rng = make_rng(seed)
    means: List[float] = []
    loos: List[float] = []
    worst_gap = 0.0
    for _ in range(trials):
        s = centered.distribution.sample(n, rng)
        mean = empirical_mean(centered, s)
        loo = loo_estimate(centered, s)
        means.append(mean * mean)
        loos.append(loo * loo)
        worst_gap = max(worst_gap, abs(mean - loo))
    _logger.debug(
        "%s: %d datasets of size %d, worst leave-one-out gap %g",
        centered.name,
        trials,
        n,
        worst_gap,
    )
    slack = environment_variables.audit_slack()
    return [
        CheckReport(
            name="loo_pointwise",
            statistic=worst_gap,
            bound=gamma,
            ci_low=worst_gap,
            ci_high=worst_gap,
            passed=worst_gap <= gamma + slack,
            detail={"trials": trials},
        ),
        mean_check("unbiased_moment", means, 4 * gamma**2 + 2.0 / n),
        mean_check("loo_moment", loos, gamma**2 + 1.0 / n),
    ]
