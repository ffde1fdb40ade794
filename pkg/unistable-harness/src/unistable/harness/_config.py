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

"""Sweep configuration documents.

A sweep is described by one JSON object, validated by the pydantic models
below. Distribution and statistic specs are tagged unions on ``kind``;
unknown keys anywhere are rejected.
"""

import logging
from pathlib import Path
from typing import Annotated, Any, Literal, Mapping, Optional, Tuple, Union

import pydantic
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

from unistable.core import CATALOG, UnistableError

_logger = logging.getLogger(__name__)

MIN_TRIALS = 100
DEFAULT_DELTAS = (0.5, 0.2, 0.1)
DEFAULT_BOUNDS = ("exp_e1", "var_e2", "var_e5", "hp_e3", "hp_e6")

# second-moment entries about other estimators than the estimation error
NOT_SWEEP_CHECKABLE = frozenset(("loo_moment", "unbiased_moment"))


class ConfigError(UnistableError, ValueError):
    """A sweep configuration is malformed or inconsistent"""


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TwoPointSpec(_Spec):
    """Scalar points z0 and z1, with z1 drawn with probability p."""

    kind: Literal["two_point"]
    p: float = Field(ge=0.0, le=1.0)
    z0: float = Field(default=0.0, ge=-1.0, le=1.0)
    z1: float = Field(default=1.0, ge=-1.0, le=1.0)


class UniformGridSpec(_Spec):
    """k evenly spaced values per coordinate in d dimensions, scaled into
    the unit ball."""

    kind: Literal["uniform_grid"]
    k: int = Field(ge=2)
    d: int = Field(default=1, ge=1)


class LabeledThresholdSpec(_Spec):
    """k positions on [-1, 1] labeled by the sign of the position, each
    label flipped with probability ``noise``."""

    kind: Literal["labeled_threshold"]
    k: int = Field(ge=2)
    noise: float = Field(default=0.0, ge=0.0, le=0.5)


DistributionSpec = Annotated[
    Union[TwoPointSpec, UniformGridSpec, LabeledThresholdSpec],
    Field(discriminator="kind"),
]


class ErmSpec(_Spec):
    kind: Literal["erm"]
    problem: Literal["quadratic", "logistic"] = "quadratic"
    dim: int = Field(default=1, ge=1)
    lam: float = Field(gt=0.0)


class PgdSpec(_Spec):
    kind: Literal["pgd"]
    problem: Literal["quadratic", "logistic"] = "quadratic"
    dim: int = Field(default=1, ge=1)
    T: int = Field(ge=1)


class RRSpec(_Spec):
    kind: Literal["rr"]
    base: Literal["1nn", "threshold"] = "1nn"
    eps: float = Field(ge=0.0, allow_inf_nan=False)


class SyntheticSpec(_Spec):
    kind: Literal["synthetic"]
    name: Literal["const", "identity", "mean", "absdev"]
    value: float = Field(default=1.0, ge=0.0, le=1.0)


StatisticSpec = Annotated[
    Union[ErmSpec, PgdSpec, RRSpec, SyntheticSpec],
    Field(discriminator="kind"),
]


class ExperimentConfig(_Spec):
    name: str = "sweep"
    distribution: DistributionSpec
    statistic: StatisticSpec
    n: int = Field(ge=1)
    trials: int = Field(ge=MIN_TRIALS)
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    deltas: Tuple[float, ...] = DEFAULT_DELTAS
    bounds: Tuple[str, ...] = DEFAULT_BOUNDS
    c: float = Field(default=1.0, gt=0.0)
    """Value of the unnamed constant of constant-parameterized bounds"""
    beta_probes: int = Field(default=0, ge=0)
    """Probes of the estimation-error sensitivity audit, 0 to skip it"""
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("deltas")
    @classmethod
    def _check_deltas(cls, deltas: Tuple[float, ...]) -> Tuple[float, ...]:
        if not deltas:
            raise ValueError("the delta grid must not be empty")
        for delta in deltas:
            if not 0.0 < delta < 1.0:
                raise ValueError(f"delta={delta} is not in (0, 1)")
        return deltas

    @field_validator("bounds")
    @classmethod
    def _check_bound_ids(cls, bounds: Tuple[str, ...]) -> Tuple[str, ...]:
        for bound_id in bounds:
            if bound_id not in CATALOG:
                raise ValueError(f"unknown bound id {bound_id!r}")
            if bound_id in NOT_SWEEP_CHECKABLE:
                raise ValueError(
                    f"{bound_id} does not bound the estimation error"
                )
        return bounds

    @model_validator(mode="after")
    def _check_bound_inputs(self) -> "ExperimentConfig":
        available = set(available_inputs(self.statistic))
        for bound_id in self.bounds:
            formula = CATALOG[bound_id]
            missing = set(formula.requires) - available
            if missing:
                raise ValueError(
                    f"{bound_id} needs {sorted(missing)}, which a "
                    f"{self.statistic.kind} statistic does not provide"
                )
            if formula.kind == "risk" and not is_learner(self.statistic):
                raise ValueError(
                    f"{bound_id} bounds excess risk and needs an erm or "
                    "pgd statistic"
                )
        return self


def is_learner(spec: Any) -> bool:
    return isinstance(spec, (ErmSpec, PgdSpec))


def available_inputs(spec: Any) -> Tuple[str, ...]:
    """BoundInputs names a sweep over ``spec`` can fill in."""
    names: Tuple[str, ...] = ("gamma", "n", "delta")
    if isinstance(spec, ErmSpec):
        names += ("lam",)
    elif isinstance(spec, PgdSpec):
        names += ("T",)
    elif isinstance(spec, RRSpec):
        names += ("eps",)
    return names


_DISTRIBUTION_ADAPTER: pydantic.TypeAdapter = pydantic.TypeAdapter(
    DistributionSpec
)
_STATISTIC_ADAPTER: pydantic.TypeAdapter = pydantic.TypeAdapter(
    StatisticSpec
)


def config_from_dict(doc: Mapping[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(doc)
    except pydantic.ValidationError as ex:
        raise ConfigError(str(ex)) from ex


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise ConfigError(f"cannot read config {path}: {ex}") from ex
    try:
        config = ExperimentConfig.model_validate_json(text)
    except pydantic.ValidationError as ex:
        raise ConfigError(f"invalid config {path}: {ex}") from ex
    _logger.debug("loaded config %s from %s", config.name, path)
    return config


def parse_distribution_spec(doc: Mapping[str, Any]) -> Any:
    try:
        return _DISTRIBUTION_ADAPTER.validate_python(doc)
    except pydantic.ValidationError as ex:
        raise ConfigError(str(ex)) from ex


def parse_statistic_spec(doc: Mapping[str, Any]) -> Any:
    try:
        return _STATISTIC_ADAPTER.validate_python(doc)
    except pydantic.ValidationError as ex:
        raise ConfigError(str(ex)) from ex


def config_to_json(config: ExperimentConfig) -> Any:
    return config.model_dump(mode="json")
