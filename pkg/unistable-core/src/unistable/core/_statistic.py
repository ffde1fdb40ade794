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
from functools import lru_cache
from typing import Callable, Dict, Union

import numpy as np

from unistable.core._dataset import (
    EXACT_TOL,
    Dataset,
    FiniteDistribution,
    Point,
    check_compatible,
)
from unistable.core._errors import StatisticRangeError, UnknownPresetError

Evaluator = Callable[[Point], float]
Fitter = Callable[[Dataset], Evaluator]
Gamma = Union[float, Callable[[int], float]]

_FIT_CACHE_SIZE = 1024


class StableStatistic:
    """A data-dependent function M(s, z) with a declared stability constant.

    ``fit`` maps a dataset to the function ``z -> M(s, z)``. Fitted functions
    are cached per dataset, so evaluating many test points against one
    dataset runs the underlying learner once.

    ``gamma`` is either a constant or a function of the dataset size n.
    """

    low = 0.0
    high = 1.0

    def __init__(self, name: str, fit: Fitter, gamma: Gamma):
        self.name = name
        self._gamma = gamma
        self._fit = lru_cache(maxsize=_FIT_CACHE_SIZE)(fit)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"

    def declared_gamma(self, n: int) -> float:
        if callable(self._gamma):
            return float(self._gamma(n))
        return float(self._gamma)

    def fit(self, s: Dataset) -> Evaluator:
        evaluate = self._fit(s)

        def checked(z: Point) -> float:
            return self._check_range(evaluate(z), s, z)

        return checked

    def __call__(self, s: Dataset, z: Point) -> float:
        return self.fit(s)(z)

    def _check_range(self, value: float, s: Dataset, z: Point) -> float:
        value = float(value)
        if not self.low - EXACT_TOL <= value <= self.high + EXACT_TOL:
            raise StatisticRangeError(
                f"{self.name} returned {value} at {z} for a dataset of size "
                f"{s.n}, outside [{self.low}, {self.high}]"
            )
        return min(max(value, self.low), self.high)


def empirical_mean(m: StableStatistic, s: Dataset) -> float:
    """(1/n) sum_i M(s, s_i)."""
    evaluate = m.fit(s)
    return math.fsum(evaluate(z) for z in s) / s.n


def true_mean(
    m: StableStatistic, s: Dataset, p: FiniteDistribution
) -> float:
    """sum_z P(z) M(s, z), exact over the support of P."""
    check_compatible(s, p)
    return p.expect(m.fit(s))


def estimation_error(
    m: StableStatistic, s: Dataset, p: FiniteDistribution
) -> float:
    """Distribution mean minus empirical mean of M on s."""
    return true_mean(m, s, p) - empirical_mean(m, s)


def constant(c: float) -> StableStatistic:
    return StableStatistic(f"const({c:g})", lambda s: lambda z: c, 0.0)


def identity() -> StableStatistic:
    """M(s, z) = z for scalar points; ignores s."""
    return StableStatistic("identity", lambda s: _point_value, 0.0)


def _point_value(z: Point) -> float:
    return z.value


def dataset_mean() -> StableStatistic:
    """M(s, z) = mean(s) for scalar points in [0, 1]."""

    def fit(s: Dataset) -> Evaluator:
        mean = float(np.mean(s.features[:, 0]))
        return lambda z: mean

    return StableStatistic("mean", fit, lambda n: 1.0 / n)


def abs_deviation() -> StableStatistic:
    """M(s, z) = |z - mean(s)| clipped to [0, 1] for scalar points."""

    def fit(s: Dataset) -> Evaluator:
        mean = float(np.mean(s.features[:, 0]))
        return lambda z: min(1.0, abs(z.value - mean))

    return StableStatistic("absdev", fit, lambda n: 1.0 / n)


_SYNTHETIC: Dict[str, Callable[[], StableStatistic]] = {
    "identity": identity,
    "mean": dataset_mean,
    "absdev": abs_deviation,
}


def synthetic(name: str, value: float = 1.0) -> StableStatistic:
    """Synthetic statistic preset by id; ``value`` is used by "const"."""
    if name == "const":
        return constant(value)
    try:
        return _SYNTHETIC[name]()
    except KeyError:
        raise UnknownPresetError(
            f"unknown synthetic statistic {name!r}, expected one of "
            f"{sorted([*_SYNTHETIC, 'const'])}"
        ) from None
