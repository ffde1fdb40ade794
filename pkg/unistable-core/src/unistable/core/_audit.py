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

"""Brute-force audits of uniform stability and of sensitivity.

An audit probes single-element replacements s -> s^{i<-z'} and records the
largest change it sees. Over a finite distribution with a small enough
support and dataset size the whole replacement space is enumerated and the
observed value is the exact maximum.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, Optional, Tuple, Union

import numpy as np
from opentelemetry import trace

from unistable.core import environment_variables
from unistable.core._dataset import (
    Dataset,
    FiniteDistribution,
    Point,
    dataset_to_json,
)
from unistable.core._errors import SamplerExhaustedError
from unistable.core._seeding import make_rng
from unistable.core._statistic import StableStatistic

_logger = logging.getLogger(__name__)
_tracer = trace.get_tracer(__name__)

Domain = Union[FiniteDistribution, Callable[[np.random.Generator], Point]]


@dataclass(frozen=True)
class Witness:
    dataset: Dataset
    index: int
    replacement: Point
    test_point: Optional[Point] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "dataset": dataset_to_json(self.dataset),
            "index": self.index,
            "replacement": self.replacement.to_json(),
            "test_point": (
                None if self.test_point is None else self.test_point.to_json()
            ),
        }


@dataclass(frozen=True)
class StabilityAuditReport:
    gamma_declared: float
    gamma_observed: float
    probes: int
    exhaustive: bool
    worst_witness: Optional[Witness]
    slack: float = 0.0

    @property
    def passed(self) -> bool:
        return self.gamma_observed <= self.gamma_declared + self.slack

    def to_json(self) -> Dict[str, Any]:
        return {
            "gamma_declared": self.gamma_declared,
            "gamma_observed": self.gamma_observed,
            "probes": self.probes,
            "exhaustive": self.exhaustive,
            "pass": self.passed,
            "worst_witness": (
                None
                if self.worst_witness is None
                else self.worst_witness.to_json()
            ),
        }


def audit_stability(
    m: StableStatistic,
    domain: Domain,
    n: int,
    probes: int = 1000,
    *,
    exhaustive_limit: Optional[int] = None,
    seed: int = 0,
    slack: Optional[float] = None,
) -> StabilityAuditReport:
    """Estimates the uniform stability of ``m`` on datasets of size ``n``.

    ``domain`` is either a FiniteDistribution or a callable drawing one point
    from a numpy Generator. Against a finite distribution every probe compares
    M(s, z) and M(s^{i<-z'}, z) at every support point z; against a sampler
    it compares at a fresh draw, at s_i and at z'.

    When ``domain`` is finite with k support points and k^(n+2) * n is at
    most ``exhaustive_limit`` the replacement space is enumerated instead and
    ``probes`` is ignored.
    """
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    limit = _resolve_limit(exhaustive_limit)
    exhaustive = (
        isinstance(domain, FiniteDistribution)
        and domain.size ** (n + 2) * n <= limit
    )
    with _tracer.start_as_current_span(
        "audit_stability",
        attributes={
            "statistic": m.name,
            "n": n,
            "probes": probes,
            "exhaustive": exhaustive,
        },
    ):
        rng = make_rng(seed)
        worst = 0.0
        witness: Optional[Witness] = None
        count = 0
        for s, i, replacement in _replacements(
            domain, n, probes, exhaustive, rng
        ):
            before = m.fit(s)
            after = m.fit(s.replace(i, replacement))
            for z in _test_points(domain, s[i], replacement, rng):
                count += 1
                diff = abs(before(z) - after(z))
                if diff > worst or witness is None:
                    worst = diff
                    witness = Witness(s, i, replacement, z)
        report = StabilityAuditReport(
            gamma_declared=m.declared_gamma(n),
            gamma_observed=worst,
            probes=count,
            exhaustive=exhaustive,
            worst_witness=witness,
            slack=_resolve_slack(slack),
        )
        trace.get_current_span().set_attribute("gamma_observed", worst)
    _log_report(m.name, report)
    return report


def audit_sensitivity(
    f: Callable[[Dataset], float],
    declared: float,
    domain: Domain,
    n: int,
    probes: int = 1000,
    *,
    exhaustive_limit: Optional[int] = None,
    seed: int = 0,
    slack: Optional[float] = None,
    name: str = "sensitivity",
) -> StabilityAuditReport:
    """Estimates max |f(s) - f(s^{i<-z'})| over single-element replacements.

    Enumerates exhaustively when the finite domain has k support points and
    k^(n+1) * n is at most ``exhaustive_limit``. The report's gamma fields
    hold the declared and observed sensitivities.
    """
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    limit = _resolve_limit(exhaustive_limit)
    exhaustive = (
        isinstance(domain, FiniteDistribution)
        and domain.size ** (n + 1) * n <= limit
    )
    with _tracer.start_as_current_span(
        "audit_sensitivity",
        attributes={
            "function": name,
            "n": n,
            "probes": probes,
            "exhaustive": exhaustive,
        },
    ):
        rng = make_rng(seed)
        values: Dict[Dataset, float] = {}
        worst = 0.0
        witness: Optional[Witness] = None
        count = 0
        for s, i, replacement in _replacements(
            domain, n, probes, exhaustive, rng
        ):
            count += 1
            replaced = s.replace(i, replacement)
            for d in (s, replaced):
                if d not in values:
                    values[d] = f(d)
            diff = abs(values[s] - values[replaced])
            if diff > worst or witness is None:
                worst = diff
                witness = Witness(s, i, replacement)
            if not exhaustive:
                values.clear()
        report = StabilityAuditReport(
            gamma_declared=declared,
            gamma_observed=worst,
            probes=count,
            exhaustive=exhaustive,
            worst_witness=witness,
            slack=_resolve_slack(slack),
        )
        trace.get_current_span().set_attribute("gamma_observed", worst)
    _log_report(name, report)
    return report


def _resolve_limit(limit: Optional[int]) -> int:
    if limit is None:
        return environment_variables.exhaustive_limit()
    return limit


def _resolve_slack(slack: Optional[float]) -> float:
    if slack is None:
        return environment_variables.audit_slack()
    return slack


def _log_report(name: str, report: StabilityAuditReport) -> None:
    _logger.info(
        "%s: observed %g, declared %g over %d probes (exhaustive=%s)",
        name,
        report.gamma_observed,
        report.gamma_declared,
        report.probes,
        report.exhaustive,
    )
    if not report.passed:
        _logger.warning(
            "%s exceeds its declared constant: %g > %g",
            name,
            report.gamma_observed,
            report.gamma_declared,
        )


def _draw(domain: Domain, rng: np.random.Generator) -> Point:
    if isinstance(domain, FiniteDistribution):
        return domain.draw(rng)
    try:
        return domain(rng)
    except StopIteration as ex:
        raise SamplerExhaustedError("domain sampler ran out of points") from ex


def _replacements(
    domain: Domain,
    n: int,
    probes: int,
    exhaustive: bool,
    rng: np.random.Generator,
) -> Iterator[Tuple[Dataset, int, Point]]:
    if exhaustive:
        assert isinstance(domain, FiniteDistribution)
        support = domain.support
        for points in itertools.product(support, repeat=n):
            s = Dataset(points)
            for i in range(n):
                for replacement in support:
                    yield s, i, replacement
        return
    for _ in range(probes):
        if isinstance(domain, FiniteDistribution):
            s = domain.sample(n, rng)
        else:
            s = Dataset(tuple(_draw(domain, rng) for _ in range(n)))
        i = int(rng.integers(n))
        yield s, i, _draw(domain, rng)


def _test_points(
    domain: Domain,
    original: Point,
    replacement: Point,
    rng: np.random.Generator,
) -> Tuple[Point, ...]:
    if isinstance(domain, FiniteDistribution):
        return domain.support
    return (_draw(domain, rng), original, replacement)
