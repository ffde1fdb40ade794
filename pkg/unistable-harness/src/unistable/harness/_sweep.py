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

import logging
from typing import List, Optional, Tuple

from unistable.core import BoundInputs
from unistable.harness._config import (
    ErmSpec,
    ExperimentConfig,
    PgdSpec,
    RRSpec,
)
from unistable.harness._presets import build_statistic, make_distribution
from unistable.harness._report import (
    SweepReport,
    moment_and_tail_report,
    with_beta,
)
from unistable.harness._sensitivity import delta_sensitivity_audit
from unistable.harness._trials import TrialRecord, run_trials

_logger = logging.getLogger(__name__)


def sweep_inputs(config: ExperimentConfig) -> BoundInputs:
    """Bound inputs fixed by the configuration rather than measured."""
    spec = config.statistic
    return BoundInputs(
        lam=spec.lam if isinstance(spec, ErmSpec) else None,
        T=spec.T if isinstance(spec, PgdSpec) else None,
        eps=spec.eps if isinstance(spec, RRSpec) else None,
        c=config.c,
        c1=config.c,
        c2=config.c,
    )


def run_sweep(
    config: ExperimentConfig, workers: Optional[int] = None
) -> Tuple[List[TrialRecord], SweepReport]:
    """Trials, moment and tail report and, when ``config.beta_probes`` is
    positive, the estimation-error sensitivity audit."""
    p = make_distribution(config.distribution)
    m = build_statistic(config.statistic, p)
    records = run_trials(config, workers, statistic=m)
    report = moment_and_tail_report(
        records,
        m.declared_gamma(config.n),
        config.n,
        config.deltas,
        config.bounds,
        inputs=sweep_inputs(config),
        name=config.name,
        statistic=m.name,
    )
    if config.beta_probes:
        audit = delta_sensitivity_audit(
            config, config.beta_probes, statistic=m
        )
        report = with_beta(report, audit)
    return records, report
