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

"""Builds distributions and statistics from their config specs."""

import itertools
import logging
import math
from typing import Any, Dict, List, Tuple

import numpy as np

from unistable.core import (
    FiniteDistribution,
    KindMismatchError,
    LearnerStatistic,
    Point,
    PointKind,
    RRPredictor,
    StableStatistic,
    base_predictor,
    make_erm_statistic,
    make_pgd_statistic,
    problem_from_id,
    rr_loss_statistic,
    synthetic,
)
from unistable.harness._config import (
    ConfigError,
    ErmSpec,
    LabeledThresholdSpec,
    PgdSpec,
    RRSpec,
    SyntheticSpec,
    TwoPointSpec,
    UniformGridSpec,
)

_logger = logging.getLogger(__name__)


def make_distribution(spec: Any) -> FiniteDistribution:
    if isinstance(spec, TwoPointSpec):
        return _two_point(spec)
    if isinstance(spec, UniformGridSpec):
        return _uniform_grid(spec)
    if isinstance(spec, LabeledThresholdSpec):
        return _labeled_threshold(spec)
    raise ConfigError(f"not a distribution spec: {spec!r}")


def _two_point(spec: TwoPointSpec) -> FiniteDistribution:
    if spec.z0 == spec.z1:
        raise ConfigError(f"two_point needs z0 != z1, got {spec.z0}")
    return FiniteDistribution(
        (Point.vector(spec.z0), Point.vector(spec.z1)),
        (1.0 - spec.p, spec.p),
    )


def _uniform_grid(spec: UniformGridSpec) -> FiniteDistribution:
    axis = np.linspace(-1.0, 1.0, spec.k) / math.sqrt(spec.d)
    support = [
        Point.vector(coords)
        for coords in itertools.product(axis, repeat=spec.d)
    ]
    return FiniteDistribution.uniform(support)


def _labeled_threshold(spec: LabeledThresholdSpec) -> FiniteDistribution:
    support = []
    weights = []
    for x in np.linspace(-1.0, 1.0, spec.k):
        clean = int(x >= 0.0)
        support += [Point.labeled(x, clean), Point.labeled(x, 1 - clean)]
        weights += [(1.0 - spec.noise) / spec.k, spec.noise / spec.k]
    return FiniteDistribution(tuple(support), tuple(weights))


def bayes_error(p: FiniteDistribution) -> float:
    """Smallest 0/1 risk of any classifier of the features of ``p``."""
    if p.kind is not PointKind.LABELED:
        raise KindMismatchError("bayes error needs a labeled distribution")
    mass: Dict[Tuple[float, ...], List[float]] = {}
    for z, w in zip(p.support, p.weights):
        pair = mass.setdefault(z.x, [0.0, 0.0])
        pair[z.y] += w
    return math.fsum(min(pair) for pair in mass.values())


def build_statistic(spec: Any, p: FiniteDistribution) -> StableStatistic:
    """The statistic ``spec`` describes, checked against the point kind of
    ``p``."""
    if isinstance(spec, ErmSpec):
        m: StableStatistic = make_erm_statistic(
            problem_from_id(spec.problem, spec.dim), spec.lam
        )
    elif isinstance(spec, PgdSpec):
        m = make_pgd_statistic(problem_from_id(spec.problem, spec.dim), spec.T)
    elif isinstance(spec, RRSpec):
        m = rr_loss_statistic(RRPredictor(base_predictor(spec.base), spec.eps))
    elif isinstance(spec, SyntheticSpec):
        m = synthetic(spec.name, spec.value)
    else:
        raise ConfigError(f"not a statistic spec: {spec!r}")
    try:
        _check_kind(spec, m, p)
    except KindMismatchError as ex:
        raise ConfigError(
            f"{m.name} cannot run on this distribution: {ex}"
        ) from ex
    _logger.debug("built statistic %s", m.name)
    return m


def _check_kind(spec: Any, m: StableStatistic, p: FiniteDistribution) -> None:
    if isinstance(m, LearnerStatistic):
        m.problem.design(p)
    elif isinstance(spec, RRSpec):
        if p.kind is not PointKind.LABELED:
            raise KindMismatchError("randomized response needs labels")
    elif spec.name in ("identity", "mean", "absdev") and p.dim != 1:
        raise KindMismatchError(f"{spec.name} needs scalar points")
