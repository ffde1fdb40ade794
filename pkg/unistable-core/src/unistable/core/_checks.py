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

"""Monte Carlo checks of the selection arguments behind the tail bound.

Each check draws its randomness from a generator seeded with ``seed`` and
returns CheckReports, so a rerun with the same arguments reproduces it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from opentelemetry import trace

from unistable.core import environment_variables
from unistable.core._audit import StabilityAuditReport, Witness
from unistable.core._dataset import FiniteDistribution
from unistable.core._mechanism import (
    MultiDataset,
    estimation_scores,
    mechanism_probabilities,
)
from unistable.core._reporting import (
    CheckReport,
    absolute_mean_check,
    frequency_check,
    mean_check,
)
from unistable.core._seeding import make_rng
from unistable.core._statistic import (
    StableStatistic,
    empirical_mean,
    estimation_error,
    true_mean,
)

_logger = logging.getLogger(__name__)
_tracer = trace.get_tracer(__name__)

MIN_TRIALS = 100


def score_sensitivity_audit(
    m: StableStatistic,
    p: FiniteDistribution,
    subsets: int,
    n: int,
    probes: int = 1000,
    seed: int = 0,
) -> StabilityAuditReport:
    """Largest change of any estimation-error score under replacement of one
    element of a random multi-dataset, against 2 gamma + 1/n."""
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    declared = 2.0 * m.declared_gamma(n) + 1.0 / n
    with _tracer.start_as_current_span(
        "score_sensitivity_audit",
        attributes={"statistic": m.name, "m": subsets, "n": n},
    ):
        rng = make_rng(seed)
        worst = 0.0
        witness: Optional[Witness] = None
        for _ in range(probes):
            multi = MultiDataset.sample(p, subsets, n, rng)
            j = int(rng.integers(subsets))
            i = int(rng.integers(n))
            z = p.draw(rng)
            before = estimation_scores(m, p, multi).values
            after = estimation_scores(m, p, multi.replace(j, i, z)).values
            diff = max(abs(a - b) for a, b in zip(before, after))
            if diff > worst or witness is None:
                worst = diff
                witness = Witness(multi.datasets[j], i, z)
    return StabilityAuditReport(
        gamma_declared=declared,
        gamma_observed=worst,
        probes=probes,
        exhaustive=False,
        worst_witness=witness,
        slack=environment_variables.audit_slack(),
    )


def max_to_tail_check(
    sampler: Callable[[np.random.Generator], float],
    m: int,
    trials: int = 1000,
    seed: int = 0,
) -> CheckReport:
    """For v, v_1..v_m i.i.d. from ``sampler``, the frequency of
    v > 2 E[max{0, v_1, ..., v_m}] is at most ln(2)/m.

    The expectation is estimated from ``trials`` draws of m values and the
    frequency from ``trials`` fresh draws.
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be >= {MIN_TRIALS}, got {trials}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    with _tracer.start_as_current_span(
        "max_to_tail_check", attributes={"m": m, "trials": trials}
    ):
        rng = make_rng(seed)
        maxima = [
            max(0.0, *(sampler(rng) for _ in range(m)))
            for _ in range(trials)
        ]
        expected_max = float(np.mean(maxima))
        threshold = 2.0 * expected_max
        exceed = sum(1 for _ in range(trials) if sampler(rng) > threshold)
    return frequency_check(
        "max_to_tail",
        exceed,
        trials,
        math.log(2.0) / m,
        m=m,
        expected_max=expected_max,
        threshold=threshold,
    )


@dataclass(frozen=True)
class SandwichReport:
    """Both sides of exp(-eps) V - gamma <= E <= exp(eps) V + gamma.

    V is the expected empirical mean and E the expected true mean of M on
    the sub-dataset the exponential mechanism selects.
    """

    v_s: float
    true_mean: float
    lower: float
    upper: float
    checks: List[CheckReport]

    @property
    def slack(self) -> float:
        return min(self.true_mean - self.lower, self.upper - self.true_mean)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def to_json(self) -> Dict[str, Any]:
        return {
            "v_s": self.v_s,
            "true_mean": self.true_mean,
            "lower": self.lower,
            "upper": self.upper,
            "slack": self.slack,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def selector_sandwich_check(
    m: StableStatistic,
    p: FiniteDistribution,
    subsets: int,
    n: int,
    eps: float,
    trials: int = 1000,
    seed: int = 0,
) -> SandwichReport:
    """Monte Carlo over multi-datasets S ~ P^(m x n) with the exponential
    mechanism on estimation-error scores as the selector.

    Expectations over the selector are exact; only S is sampled. Each side is
    checked through the paired per-trial differences with 3 standard errors
    of slack, and so is |E - V| <= e^eps - 1 + gamma.
    """
    gamma = m.declared_gamma(n)
    with _tracer.start_as_current_span(
        "selector_sandwich_check",
        attributes={
            "statistic": m.name,
            "m": subsets,
            "n": n,
            "eps": eps,
            "trials": trials,
        },
    ):
        rng = make_rng(seed)
        empirical = np.empty(trials)
        true = np.empty(trials)
        for t in range(trials):
            multi = MultiDataset.sample(p, subsets, n, rng)
            probabilities = mechanism_probabilities(
                estimation_scores(m, p, multi), eps
            )
            empirical[t] = probabilities @ [
                empirical_mean(m, s) for s in multi.datasets
            ]
            true[t] = probabilities @ [
                true_mean(m, s, p) for s in multi.datasets
            ]
    grow = math.exp(eps)
    v_s = float(empirical.mean())
    expected_true = float(true.mean())
    checks = [
        mean_check(
            "sandwich_upper", true - grow * empirical, gamma, eps=eps
        ),
        mean_check(
            "sandwich_lower", empirical / grow - true, gamma, eps=eps
        ),
        absolute_mean_check(
            "selected_estimation_error",
            true - empirical,
            math.expm1(eps) + gamma,
        ),
    ]
    report = SandwichReport(
        v_s=v_s,
        true_mean=expected_true,
        lower=v_s / grow - gamma,
        upper=v_s * grow + gamma,
        checks=checks,
    )
    _logger.info(
        "sandwich %s: %.6g <= %.6g <= %.6g (pass=%s)",
        m.name,
        report.lower,
        expected_true,
        report.upper,
        report.passed,
    )
    return report


def expected_max_check(
    m: StableStatistic,
    p: FiniteDistribution,
    n: int,
    delta: float,
    trials: int = 200,
    seed: int = 0,
) -> CheckReport:
    """E[max{0, Delta_1, ..., Delta_k}] over k = ceil(ln 2 / delta)
    independent datasets, against 4 sqrt((2 gamma + 1/n) ln(8 / delta))."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    subsets = math.ceil(math.log(2.0) / delta)
    gamma = m.declared_gamma(n)
    bound = 4.0 * math.sqrt((2.0 * gamma + 1.0 / n) * math.log(8.0 / delta))
    with _tracer.start_as_current_span(
        "expected_max_check",
        attributes={"statistic": m.name, "m": subsets, "n": n},
    ):
        rng = make_rng(seed)
        maxima = [
            max(
                0.0,
                *(
                    estimation_error(m, p.sample(n, rng), p)
                    for _ in range(subsets)
                ),
            )
            for _ in range(trials)
        ]
    return mean_check(
        "expected_max", maxima, bound, m=subsets, delta=delta
    )
