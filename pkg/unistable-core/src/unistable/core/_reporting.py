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
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

# Monte Carlo checks allow this many standard errors of slack
MC_SIGMAS = 3.0


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one empirical check of a bound.

    ``passed`` is None for checks against constant-parameterized bounds,
    which are reported but never decide pass/fail.
    """

    name: str
    statistic: float
    bound: float
    ci_low: float
    ci_high: float
    passed: Optional[bool]
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "bound": self.bound,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "pass": self.passed,
            "detail": dict(self.detail),
        }


def clopper_pearson(
    successes: int, trials: int, alpha: float = 0.05
) -> Tuple[float, float]:
    """Exact two-sided binomial confidence interval at level 1 - alpha."""
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError(
            f"need 0 <= successes <= trials and trials >= 1, "
            f"got {successes}/{trials}"
        )
    low = stats.beta.ppf(alpha / 2, successes, trials - successes + 1)
    high = stats.beta.ppf(1 - alpha / 2, successes + 1, trials - successes)
    return (
        0.0 if math.isnan(low) else float(low),
        1.0 if math.isnan(high) else float(high),
    )


@dataclass(frozen=True)
class MonteCarloSummary:
    mean: float
    se: float
    count: int

    @property
    def ci_low(self) -> float:
        return self.mean - MC_SIGMAS * self.se

    @property
    def ci_high(self) -> float:
        return self.mean + MC_SIGMAS * self.se


def summarize(samples: Sequence[float]) -> MonteCarloSummary:
    values = np.asarray(samples, dtype=float)
    count = values.size
    if count == 0:
        raise ValueError("cannot summarize an empty sample")
    se = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return MonteCarloSummary(float(values.mean()), se, count)


def mean_check(
    name: str,
    samples: Sequence[float],
    bound: float,
    **detail: Any,
) -> CheckReport:
    """Passes when the sample mean is within MC_SIGMAS standard errors of
    being below ``bound``."""
    summary = summarize(samples)
    return CheckReport(
        name=name,
        statistic=summary.mean,
        bound=bound,
        ci_low=summary.ci_low,
        ci_high=summary.ci_high,
        passed=summary.ci_low <= bound,
        detail={"se": summary.se, "count": summary.count, **detail},
    )


def absolute_mean_check(
    name: str,
    samples: Sequence[float],
    bound: float,
    **detail: Any,
) -> CheckReport:
    """Passes when the absolute sample mean is within MC_SIGMAS standard
    errors of being below ``bound``."""
    report = mean_check(name, samples, bound, **detail)
    # |mean| <= bound within the interval on either side
    low = max(report.ci_low, -report.ci_high, 0.0)
    return CheckReport(
        name=report.name,
        statistic=abs(report.statistic),
        bound=bound,
        ci_low=low,
        ci_high=max(abs(report.ci_low), abs(report.ci_high)),
        passed=low <= bound,
        detail=report.detail,
    )


def frequency_check(
    name: str,
    successes: int,
    trials: int,
    bound: float,
    **detail: Any,
) -> CheckReport:
    """Passes when the Clopper-Pearson lower limit is at most ``bound``."""
    low, high = clopper_pearson(successes, trials)
    return CheckReport(
        name=name,
        statistic=successes / trials,
        bound=bound,
        ci_low=low,
        ci_high=high,
        passed=low <= bound,
        detail={"successes": successes, "trials": trials, **detail},
    )
