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

"""Independent Monte Carlo trials of a sweep."""

import csv
import functools
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from opentelemetry import trace

from unistable.core import (
    Dataset,
    FiniteDistribution,
    LearnerStatistic,
    StableStatistic,
    empirical_mean,
    make_rng,
    mix64,
    population_minimum,
    true_mean,
)
from unistable.harness import environment_variables
from unistable.harness._config import ExperimentConfig
from unistable.harness._presets import build_statistic, make_distribution

_logger = logging.getLogger(__name__)
_tracer = trace.get_tracer(__name__)

TRIAL_COLUMNS = (
    "index",
    "seed",
    "delta",
    "emp_mean",
    "true_mean",
    "excess_risk",
    "error",
)


@dataclass(frozen=True)
class TrialRecord:
    """One draw s ~ P^n and the estimation error of the statistic on it.

    Failed trials keep their index and seed, carry NaN values and the
    error message.
    """

    index: int
    seed: int
    estimation_error: float
    emp_mean: float
    true_mean: float
    excess_risk: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_row(self) -> List[str]:
        return [
            str(self.index),
            str(self.seed),
            _float(self.estimation_error),
            _float(self.emp_mean),
            _float(self.true_mean),
            "" if self.excess_risk is None else _float(self.excess_risk),
            self.error or "",
        ]


def _float(value: float) -> str:
    return repr(float(value))


@dataclass(frozen=True)
class _Sweep:
    m: StableStatistic
    p: FiniteDistribution
    n: int
    master_seed: int
    excess_risk: Optional[Callable[[Dataset], float]]


def _excess_risk_fn(
    m: StableStatistic, p: FiniteDistribution
) -> Optional[Callable[[Dataset], float]]:
    if not isinstance(m, LearnerStatistic):
        return None
    problem = m.problem
    design = problem.design(p)
    _, best = population_minimum(problem, p)

    def excess(s: Dataset) -> float:
        w = m.learn(s).array()
        return max(0.0, problem.objective(w, design) - best)

    return excess


def _run_trial(sweep: _Sweep, index: int) -> TrialRecord:
    seed = mix64(sweep.master_seed, index)
    try:
        s = sweep.p.sample(sweep.n, make_rng(seed))
        emp = empirical_mean(sweep.m, s)
        true = true_mean(sweep.m, s, sweep.p)
        excess = None if sweep.excess_risk is None else sweep.excess_risk(s)
    except Exception as ex:  # pylint: disable=broad-except
        _logger.warning(
            "trial %d (seed %d) failed", index, seed, exc_info=True
        )
        return TrialRecord(
            index=index,
            seed=seed,
            estimation_error=math.nan,
            emp_mean=math.nan,
            true_mean=math.nan,
            error=f"{type(ex).__name__}: {ex}",
        )
    return TrialRecord(
        index=index,
        seed=seed,
        estimation_error=true - emp,
        emp_mean=emp,
        true_mean=true,
        excess_risk=excess,
    )


def resolve_workers(
    workers: Optional[int], config: Optional[ExperimentConfig] = None
) -> int:
    """Explicit argument, then the config, then UNISTABLE_WORKERS."""
    if workers is None and config is not None:
        workers = config.workers
    if workers is None:
        workers = environment_variables.workers()
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


def run_trials(
    config: ExperimentConfig,
    workers: Optional[int] = None,
    *,
    statistic: Optional[StableStatistic] = None,
) -> List[TrialRecord]:
    """Runs ``config.trials`` trials, trial t seeded with
    ``mix64(config.seed, t)``.

    Records come back in trial order whatever the number of workers. A
    trial that raises is logged and recorded with its error; the sweep
    goes on.
    """
    p = make_distribution(config.distribution)
    m = statistic or build_statistic(config.statistic, p)
    sweep = _Sweep(m, p, config.n, config.seed, _excess_risk_fn(m, p))
    workers = resolve_workers(workers, config)
    with _tracer.start_as_current_span(
        "run_trials",
        attributes={
            "statistic": m.name,
            "n": config.n,
            "trials": config.trials,
            "workers": workers,
        },
    ) as span:
        run = functools.partial(_run_trial, sweep)
        if workers == 1:
            records = [run(t) for t in range(config.trials)]
        else:
            with ThreadPoolExecutor(workers) as executor:
                records = list(executor.map(run, range(config.trials)))
        failed = sum(not r.ok for r in records)
        span.set_attribute("failed_trials", failed)
    if failed:
        _logger.warning(
            "%d of %d trials of %s failed", failed, len(records), m.name
        )
    _logger.info("ran %d trials of %s", len(records), m.name)
    return records


def trials_csv(records: Sequence[TrialRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRIAL_COLUMNS)
    for record in records:
        writer.writerow(record.to_row())
    return out.getvalue()
