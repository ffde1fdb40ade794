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
from typing import Optional

from opentelemetry import trace

from unistable.core import (
    Dataset,
    StabilityAuditReport,
    StableStatistic,
    audit_sensitivity,
    estimation_error,
)
from unistable.harness._config import ExperimentConfig
from unistable.harness._presets import build_statistic, make_distribution

_logger = logging.getLogger(__name__)
_tracer = trace.get_tracer(__name__)


def delta_sensitivity_audit(
    config: ExperimentConfig,
    probes: int,
    *,
    seed: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
    statistic: Optional[StableStatistic] = None,
) -> StabilityAuditReport:
    """Audits how far one replaced element moves the estimation error.

    The observed value estimates beta, the estimation-error stability; the
    declared value is 2 gamma + 1/n. Small finite spaces are enumerated
    like in audit_stability.
    """
    p = make_distribution(config.distribution)
    m = statistic or build_statistic(config.statistic, p)
    n = config.n
    declared = 2.0 * m.declared_gamma(n) + 1.0 / n

    def gap(s: Dataset) -> float:
        return estimation_error(m, s, p)

    with _tracer.start_as_current_span(
        "delta_sensitivity_audit",
        attributes={"statistic": m.name, "n": n, "probes": probes},
    ):
        report = audit_sensitivity(
            gap,
            declared,
            p,
            n,
            probes,
            exhaustive_limit=exhaustive_limit,
            seed=config.seed if seed is None else seed,
            name=f"estimation_error({m.name})",
        )
    _logger.info(
        "beta of %s at n=%d: %.6g (2 gamma + 1/n = %.6g)",
        m.name,
        n,
        report.gamma_observed,
        declared,
    )
    return report
