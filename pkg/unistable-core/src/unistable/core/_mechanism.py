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

"""Stable-max and the exponential mechanism over score vectors."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from unistable.core._dataset import Dataset, FiniteDistribution, Point
from unistable.core._errors import InvalidDatasetError, SensitivityExceeded
from unistable.core._seeding import make_rng
from unistable.core._statistic import StableStatistic, estimation_error

_logger = logging.getLogger(__name__)

_PERTURBATION_TOL = 1e-12


@dataclass(frozen=True)
class ScoreVector:
    """m scores of a dataset, each of sensitivity at most ``sensitivity``."""

    values: Tuple[float, ...]
    sensitivity: float

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("a score vector needs at least one score")
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"scores must be finite, got {values}")
        if not self.sensitivity > 0:
            raise ValueError(
                f"sensitivity must be positive, got {self.sensitivity}"
            )
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class MechanismOutput:
    probabilities: Tuple[float, ...]
    expected_score: float
    index: Optional[int] = None


@dataclass(frozen=True)
class MultiDataset:
    """m sub-datasets of a common size n."""

    datasets: Tuple[Dataset, ...]

    def __post_init__(self) -> None:
        datasets = tuple(self.datasets)
        if not datasets:
            raise InvalidDatasetError("a multi-dataset needs a sub-dataset")
        sizes = {s.n for s in datasets}
        if len(sizes) != 1:
            raise InvalidDatasetError(
                f"sub-datasets have different sizes {sorted(sizes)}"
            )
        object.__setattr__(self, "datasets", datasets)

    @classmethod
    def sample(
        cls, p: FiniteDistribution, m: int, n: int, rng: np.random.Generator
    ) -> "MultiDataset":
        return cls(tuple(p.sample(n, rng) for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.datasets)

    @property
    def n(self) -> int:
        return self.datasets[0].n

    def replace(self, j: int, i: int, z: Point) -> "MultiDataset":
        """Replaces element i of sub-dataset j."""
        datasets = list(self.datasets)
        datasets[j] = datasets[j].replace(i, z)
        return MultiDataset(tuple(datasets))


def _values(values: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1 or array.size == 0:
        raise ValueError("values must be a nonempty sequence of reals")
    return array


def stable_max(
    values: Union[Sequence[float], np.ndarray], eps: float
) -> float:
    """sum_i v_i e^{eps v_i} / sum_l e^{eps v_l}.

    Lies in [max - ln(m) / eps, max].
    """
    array = _values(values)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    weights = special.softmax(eps * array)
    result = float(weights @ array)
    return min(max(result, float(array.min())), float(array.max()))


def mechanism_probabilities(scores: ScoreVector, eps: float) -> np.ndarray:
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    logits = eps * np.asarray(scores.values) / (2.0 * scores.sensitivity)
    return special.softmax(logits)


def exp_mechanism(
    scores: ScoreVector,
    eps: float,
    seed: Union[int, np.random.Generator, None] = None,
) -> MechanismOutput:
    """Exponential mechanism: index l with probability proportional to
    exp(eps f_l / (2 Delta)).

    With ``seed`` set, also samples an index by inverse CDF over the
    cumulative probabilities.
    """
    probabilities = mechanism_probabilities(scores, eps)
    expected = float(probabilities @ np.asarray(scores.values))
    index = None
    if seed is not None:
        rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
        cdf = np.cumsum(probabilities)
        index = min(
            int(np.searchsorted(cdf, rng.random(), side="right")),
            scores.m - 1,
        )
    return MechanismOutput(
        probabilities=tuple(float(v) for v in probabilities),
        expected_score=expected,
        index=index,
    )


def dp_ratio_check(
    scores: ScoreVector, neighbor: ScoreVector, eps: float
) -> float:
    """max_l |ln p_l - ln p'_l| between the mechanism's output laws on two
    score vectors that differ by at most the sensitivity."""
    if scores.m != neighbor.m:
        raise ValueError(
            f"score vectors have lengths {scores.m} and {neighbor.m}"
        )
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    sensitivity = scores.sensitivity
    gap = float(
        np.max(np.abs(np.subtract(scores.values, neighbor.values)))
    )
    if gap > sensitivity + _PERTURBATION_TOL:
        raise SensitivityExceeded(
            f"scores moved by {gap:g}, more than the sensitivity "
            f"{sensitivity:g}"
        )
    scale = eps / (2.0 * sensitivity)
    before = special.log_softmax(scale * np.asarray(scores.values))
    after = special.log_softmax(scale * np.asarray(neighbor.values))
    return float(np.max(np.abs(before - after)))


def estimation_scores(
    m: StableStatistic,
    p: FiniteDistribution,
    multi: MultiDataset,
    include_null: bool = False,
) -> ScoreVector:
    """f_l = estimation error of M on sub-dataset l, sensitivity 2 gamma + 1/n.

    ``include_null`` appends the constant score 0.
    """
    n = multi.n
    values = [estimation_error(m, s, p) for s in multi.datasets]
    if include_null:
        values.append(0.0)
    return ScoreVector(
        tuple(values), 2.0 * m.declared_gamma(n) + 1.0 / n
    )
