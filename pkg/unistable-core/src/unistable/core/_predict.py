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

"""Private prediction by randomized response over a base classifier."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Sequence, Tuple, Union

import numpy as np
from scipy import special

from unistable.core._bounds import evaluate_bound
from unistable.core._dataset import Dataset, Point, PointKind
from unistable.core._errors import KindMismatchError, UnknownPresetError
from unistable.core._seeding import make_rng
from unistable.core._statistic import Evaluator, StableStatistic

_logger = logging.getLogger(__name__)

Features = Union[Sequence[float], np.ndarray]
Classifier = Callable[[Features], int]


@dataclass(frozen=True)
class BasePredictor:
    """A deterministic map from a labeled dataset and features to {0, 1}.

    ``train`` fits on a dataset and returns the classifier; nothing bounds
    how much it may change under replacement of one example.
    """

    name: str
    train: Callable[[Dataset], Classifier]

    def fit(self, s: Dataset) -> Classifier:
        if s.kind is not PointKind.LABELED:
            raise KindMismatchError(
                f"{self.name} needs labeled examples, got {s.kind.value}"
            )
        return self.train(s)

    def __call__(self, s: Dataset, x: Features) -> int:
        return self.fit(s)(x)


def _nearest_neighbor(s: Dataset) -> Classifier:
    features = s.features
    labels = s.labels

    def classify(x: Features) -> int:
        distances = np.linalg.norm(features - np.asarray(x, float), axis=1)
        # argmin keeps the lowest index among equidistant examples
        return int(labels[int(np.argmin(distances))])

    return classify


def _first_coordinate_threshold(s: Dataset) -> Classifier:
    xs = s.features[:, 0]
    labels = s.labels
    distinct = np.unique(xs)
    candidates = np.concatenate(
        (
            [distinct[0] - 1.0],
            (distinct[:-1] + distinct[1:]) / 2.0,
            [distinct[-1] + 1.0],
        )
    )
    predictions = xs[None, :] >= candidates[:, None]
    errors = np.count_nonzero(predictions != labels[None, :], axis=1)
    threshold = float(candidates[int(np.argmin(errors))])

    def classify(x: Features) -> int:
        return int(float(np.asarray(x, float)[0]) >= threshold)

    return classify


_BASE_PREDICTORS: Dict[str, Callable[[Dataset], Classifier]] = {
    "1nn": _nearest_neighbor,
    "threshold": _first_coordinate_threshold,
}


def base_predictor(name: str) -> BasePredictor:
    try:
        return BasePredictor(name, _BASE_PREDICTORS[name])
    except KeyError:
        raise UnknownPresetError(
            f"unknown base predictor {name!r}, expected one of "
            f"{sorted(_BASE_PREDICTORS)}"
        ) from None


@dataclass(frozen=True)
class RRPredictor:
    """Answers the base prediction with probability e^eps / (1 + e^eps)
    and its flip otherwise."""

    base: BasePredictor
    eps: float

    def __post_init__(self) -> None:
        if math.isnan(self.eps) or self.eps < 0:
            raise ValueError(f"eps must be nonnegative, got {self.eps}")

    @property
    def flip_probability(self) -> float:
        return float(special.expit(-self.eps))

    @property
    def gamma(self) -> float:
        """(e^eps - 1) / (e^eps + 1)"""
        return math.tanh(self.eps / 2.0)


def rr_output_distribution(
    p: RRPredictor, s: Dataset, x: Features
) -> Tuple[float, float]:
    """(P[label = 0], P[label = 1]) of rr_predict on (s, x)."""
    flip = p.flip_probability
    if p.base(s, x) == 1:
        return flip, 1.0 - flip
    return 1.0 - flip, flip


def rr_predict(
    p: RRPredictor,
    s: Dataset,
    x: Features,
    seed: Union[int, np.random.Generator],
) -> int:
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    label = p.base(s, x)
    if rng.random() < p.flip_probability:
        return 1 - label
    return label


def rr_loss_statistic(p: RRPredictor) -> StableStatistic:
    """Expected 0/1 loss of rr_predict, in closed form.

    M(s, (x, y)) = q + (1 - 2q) [base(s, x) != y] with q the flip
    probability, so M lies in [q, 1 - q] and moves by at most
    (e^eps - 1) / (e^eps + 1) when one example of s is replaced.
    """
    flip = p.flip_probability
    spread = 1.0 - 2.0 * flip

    def fit(s: Dataset) -> Evaluator:
        classify = p.base.fit(s)

        def evaluate(z: Point) -> float:
            if z.y is None:
                raise KindMismatchError(
                    f"{p.base.name} loss needs a labeled point, got {z.x}"
                )
            wrong = classify(z.x) != z.y
            return flip + spread * wrong

        return evaluate

    return StableStatistic(f"rr({p.base.name}, eps={p.eps:g})", fit, p.gamma)


@dataclass(frozen=True)
class PrivatePredictionReport:
    """Second-moment and tail bounds of a private predictor's loss.

    ``var``/``hp`` use gamma = e^eps - 1; the ``rr_`` values use the
    randomized-response constant (e^eps - 1) / (e^eps + 1).
    """

    eps: float
    n: float
    delta: float
    var: float
    hp: float
    rr_gamma: float
    rr_var: float
    rr_hp: float

    def to_json(self) -> Dict[str, Any]:
        return {
            "eps": self.eps,
            "n": self.n,
            "delta": self.delta,
            "thm5_var": self.var,
            "thm5_hp": self.hp,
            "rr_gamma": self.rr_gamma,
            "rr_var_e5": self.rr_var,
            "rr_hp_e6": self.rr_hp,
        }


def thm5_report(eps: float, n: float, delta: float) -> PrivatePredictionReport:
    rr_gamma = math.tanh(eps / 2.0)
    return PrivatePredictionReport(
        eps=eps,
        n=n,
        delta=delta,
        var=evaluate_bound("thm5_var", eps=eps, n=n),
        hp=evaluate_bound("thm5_hp", eps=eps, n=n, delta=delta),
        rr_gamma=rr_gamma,
        rr_var=evaluate_bound("var_e5", gamma=rr_gamma, n=n),
        rr_hp=evaluate_bound("hp_e6", gamma=rr_gamma, n=n, delta=delta),
    )
