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

"""Catalog of closed-form estimation-error and excess-risk bounds.

Inputs are the stability constant ``gamma``, the dataset size ``n`` (which
may be ``math.inf``), the failure probability ``delta``, the privacy
parameter ``eps``, the regularization ``lam``, the number of gradient steps
``T`` and the estimation-error stability ``beta``. Bounds stated only up to an
unnamed constant take it as ``c``, ``c1`` or ``c2`` (default 1) and are
flagged constant-parameterized.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from unistable.core._errors import InvalidBoundInputs, UnknownBoundError

_logger = logging.getLogger(__name__)

EXPECTATION = "expectation"
SECOND_MOMENT = "second_moment"
TAIL = "tail"
RISK = "risk"


@dataclass(frozen=True)
class BoundInputs:
    gamma: Optional[float] = None
    n: Optional[float] = None
    delta: Optional[float] = None
    eps: Optional[float] = None
    lam: Optional[float] = None
    T: Optional[float] = None
    beta: Optional[float] = None
    c: float = 1.0
    c1: float = 1.0
    c2: float = 1.0

    def __post_init__(self) -> None:
        checks = {
            "gamma": lambda v: v >= 0,
            "n": lambda v: v >= 1,
            "delta": lambda v: 0 < v < 1,
            "eps": lambda v: v >= 0 and math.isfinite(v),
            "lam": lambda v: v > 0,
            "T": lambda v: v >= 1,
            "beta": lambda v: v >= 0,
            "c": lambda v: v > 0,
            "c1": lambda v: v > 0,
            "c2": lambda v: v > 0,
        }
        for name, check in checks.items():
            value = getattr(self, name)
            if value is None:
                continue
            if math.isnan(value) or not check(value):
                raise InvalidBoundInputs(f"{name}={value} is out of range")

    def describe(self, names: Sequence[str]) -> str:
        return ";".join(f"{name}={getattr(self, name):g}" for name in names)


class BoundFormula:
    kind: str
    """One of expectation, second_moment, tail or risk"""

    formula: str
    """ASCII rendering of the formula"""

    requires: Tuple[str, ...]
    """Inputs that must be set to evaluate the formula"""

    constants: Tuple[str, ...]
    """Unnamed constants the formula is parameterized by"""

    schedule: Optional[str]
    """Schedule lam must follow for the bound to hold, if any"""

    def __init__(
        self,
        kind: str,
        formula: str,
        requires: Tuple[str, ...],
        evaluate: Callable[[BoundInputs], float],
        constants: Tuple[str, ...] = (),
        schedule: Optional[str] = None,
    ):
        self.kind = kind
        self.formula = formula
        self.requires = requires
        self.constants = constants
        self.schedule = schedule
        self._evaluate = evaluate

    @property
    def constant_parameterized(self) -> bool:
        return bool(self.constants)

    def __call__(self, inputs: BoundInputs) -> float:
        missing = [
            name for name in self.requires if getattr(inputs, name) is None
        ]
        if missing:
            raise InvalidBoundInputs(f"missing inputs {missing}")
        return max(0.0, float(self._evaluate(inputs)))


def _inv(n: float) -> float:
    return 0.0 if math.isinf(n) else 1.0 / n


def _inv_sqrt(n: float) -> float:
    return 0.0 if math.isinf(n) else 1.0 / math.sqrt(n)


def _times_sqrt_n(coef: float, n: float) -> float:
    return 0.0 if coef == 0 else coef * math.sqrt(n)


def _var_e5(i: BoundInputs) -> float:
    return 16.0 * i.gamma**2 + 2.0 * _inv(i.n)


def _hp_e6(i: BoundInputs) -> float:
    return 8.0 * math.sqrt(
        (2.0 * i.gamma + _inv(i.n)) * math.log(8.0 / i.delta)
    )


def _with_private_gamma(i: BoundInputs) -> BoundInputs:
    return replace(i, gamma=math.expm1(i.eps))


def _hp_e3(i: BoundInputs) -> float:
    # (4 gamma + 1/n) sqrt(n) with n = inf handled term by term
    spread = _times_sqrt_n(4.0 * i.gamma, i.n) + _inv_sqrt(i.n)
    return spread * math.sqrt(math.log(1.0 / i.delta) / 2.0) + 2.0 * i.gamma


def _hp_fv19(i: BoundInputs) -> float:
    n, delta = i.n, i.delta
    growth = 0.0
    if i.gamma > 0:
        growth = i.gamma * math.log(n) * math.log(n / delta)
    return i.c * (growth + math.sqrt(math.log(1.0 / delta)) * _inv_sqrt(n))


def _hp_beta(i: BoundInputs) -> float:
    beta = 2.0 * i.gamma + _inv(i.n) if i.beta is None else i.beta
    return i.c * (math.sqrt(beta * math.log(1.0 / i.delta)) + i.gamma)


def _cor2(i: BoundInputs) -> float:
    dn = i.delta * i.n
    return 4.0 / math.sqrt(dn) * (1.0 + 8.0 / dn)


CATALOG: Dict[str, BoundFormula] = {
    "exp_e1": BoundFormula(
        EXPECTATION, "gamma", ("gamma",), lambda i: i.gamma
    ),
    "var_e2": BoundFormula(
        SECOND_MOMENT,
        "1/(2n) + 6*gamma",
        ("gamma", "n"),
        lambda i: 0.5 * _inv(i.n) + 6.0 * i.gamma,
    ),
    "hp_e3": BoundFormula(
        TAIL,
        "(4*gamma + 1/n)*sqrt(n*ln(1/delta)/2) + 2*gamma",
        ("gamma", "n", "delta"),
        _hp_e3,
    ),
    "firstmoment_e4": BoundFormula(
        EXPECTATION,
        "c*(gamma + 1/sqrt(n))",
        ("gamma", "n"),
        lambda i: i.c * (i.gamma + _inv_sqrt(i.n)),
        constants=("c",),
    ),
    "var_e5": BoundFormula(
        SECOND_MOMENT, "16*gamma^2 + 2/n", ("gamma", "n"), _var_e5
    ),
    "hp_e6": BoundFormula(
        TAIL,
        "8*sqrt((2*gamma + 1/n)*ln(8/delta))",
        ("gamma", "n", "delta"),
        _hp_e6,
    ),
    "hp_fv19": BoundFormula(
        TAIL,
        "c*(gamma*ln(n)*ln(n/delta) + sqrt(ln(1/delta))/sqrt(n))",
        ("gamma", "n", "delta"),
        _hp_fv19,
        constants=("c",),
    ),
    "thm5_var": BoundFormula(
        SECOND_MOMENT,
        "16*(e^eps - 1)^2 + 2/n",
        ("eps", "n"),
        lambda i: _var_e5(_with_private_gamma(i)),
    ),
    "thm5_hp": BoundFormula(
        TAIL,
        "8*sqrt((2*(e^eps - 1) + 1/n)*ln(8/delta))",
        ("eps", "n", "delta"),
        lambda i: _hp_e6(_with_private_gamma(i)),
    ),
    "ssss_thm3": BoundFormula(
        RISK,
        "4/(delta*lam*n)",
        ("lam", "n", "delta"),
        lambda i: 4.0 * _inv(i.delta * i.lam * i.n),
        schedule="ssss_lambda",
    ),
    "cor2": BoundFormula(
        RISK,
        "4/sqrt(delta*n)*(1 + 8/(delta*n))",
        ("n", "delta"),
        _cor2,
        schedule="ssss_lambda",
    ),
    "cor3_a": BoundFormula(
        RISK,
        "c1*(1/(sqrt(delta)*lam*n) + 1/sqrt(n))",
        ("lam", "n", "delta"),
        lambda i: i.c1
        * (_inv(math.sqrt(i.delta) * i.lam * i.n) + _inv_sqrt(i.n)),
        constants=("c1",),
    ),
    "cor3_b": BoundFormula(
        RISK,
        "c2*sqrt(ln(1/delta))/sqrt(lam*n)",
        ("lam", "n", "delta"),
        lambda i: i.c2
        * math.sqrt(math.log(1.0 / i.delta))
        * _inv_sqrt(i.lam * i.n),
        constants=("c2",),
    ),
    "cor4_a": BoundFormula(
        RISK,
        "c1/(delta^(1/4)*sqrt(n))",
        ("n", "delta"),
        lambda i: i.c1 * _inv_sqrt(i.n) / i.delta**0.25,
        constants=("c1",),
    ),
    "cor4_b": BoundFormula(
        RISK,
        "c2*sqrt(ln(1/delta))/n^(1/3)",
        ("n", "delta"),
        lambda i: i.c2
        * math.sqrt(math.log(1.0 / i.delta))
        * _inv(i.n ** (1.0 / 3.0)),
        constants=("c2",),
    ),
    "cor5_a": BoundFormula(
        RISK,
        "c1/(delta^(1/4)*sqrt(n))",
        ("n", "delta"),
        lambda i: i.c1 * _inv_sqrt(i.n) / i.delta**0.25,
        constants=("c1",),
    ),
    "cor5_b": BoundFormula(
        RISK,
        "c2*sqrt(ln(1/delta))/n^(1/3)",
        ("n", "delta"),
        lambda i: i.c2
        * math.sqrt(math.log(1.0 / i.delta))
        * _inv(i.n ** (1.0 / 3.0)),
        constants=("c2",),
    ),
    "thm4_expected": BoundFormula(
        RISK,
        "2/sqrt(T) + sqrt(T)/n",
        ("T", "n"),
        lambda i: 2.0 / math.sqrt(i.T) + math.sqrt(i.T) * _inv(i.n),
    ),
    "loo_moment": BoundFormula(
        SECOND_MOMENT,
        "gamma^2 + 1/n",
        ("gamma", "n"),
        lambda i: i.gamma**2 + _inv(i.n),
    ),
    "unbiased_moment": BoundFormula(
        SECOND_MOMENT,
        "4*gamma^2 + 2/n",
        ("gamma", "n"),
        lambda i: 4.0 * i.gamma**2 + 2.0 * _inv(i.n),
    ),
    "hp_beta": BoundFormula(
        TAIL,
        "c*(sqrt(beta*ln(1/delta)) + gamma), beta = 2*gamma + 1/n by default",
        ("gamma", "n", "delta"),
        _hp_beta,
        constants=("c",),
    ),
    "pgd_cheb": BoundFormula(
        RISK,
        "2/sqrt(T) + (c1/sqrt(delta))*(sqrt(T)/n + 1/sqrt(n))",
        ("T", "n", "delta"),
        lambda i: 2.0 / math.sqrt(i.T)
        + i.c1
        / math.sqrt(i.delta)
        * (math.sqrt(i.T) * _inv(i.n) + _inv_sqrt(i.n)),
        constants=("c1",),
    ),
    "pgd_hp": BoundFormula(
        RISK,
        "2/sqrt(T) + c2*T^(1/4)*sqrt(ln(1/delta))/sqrt(n)",
        ("T", "n", "delta"),
        lambda i: 2.0 / math.sqrt(i.T)
        + i.c2
        * i.T**0.25
        * math.sqrt(math.log(1.0 / i.delta))
        * _inv_sqrt(i.n),
        constants=("c2",),
    ),
}

CANDIDATES = {
    SECOND_MOMENT: ("var_e2", "var_e5"),
    TAIL: ("hp_e3", "hp_e6"),
}


@dataclass(frozen=True)
class BoundCatalogEntry:
    id: str
    kind: str
    formula: str
    inputs: BoundInputs
    value: float
    constant_parameterized: bool

    @property
    def vacuous(self) -> bool:
        """Estimation errors of [0, 1]-valued statistics never exceed 1."""
        return self.value >= 1.0


def _formula(bound_id: str) -> BoundFormula:
    try:
        return CATALOG[bound_id]
    except KeyError:
        raise UnknownBoundError(bound_id) from None


def _as_inputs(inputs: Optional[BoundInputs], **kwargs: float) -> BoundInputs:
    if inputs is None:
        return BoundInputs(**kwargs)
    if kwargs:
        return replace(inputs, **kwargs)
    return inputs


def evaluate_bound(
    bound_id: str, inputs: Optional[BoundInputs] = None, **kwargs: float
) -> float:
    """Value of the catalog formula ``bound_id``.

    Inputs are given as a BoundInputs, as keyword arguments, or both (keyword
    arguments override).
    """
    return _formula(bound_id)(_as_inputs(inputs, **kwargs))


def catalog_entry(
    bound_id: str, inputs: Optional[BoundInputs] = None, **kwargs: float
) -> BoundCatalogEntry:
    formula = _formula(bound_id)
    resolved = _as_inputs(inputs, **kwargs)
    return BoundCatalogEntry(
        id=bound_id,
        kind=formula.kind,
        formula=formula.formula,
        inputs=resolved,
        value=formula(resolved),
        constant_parameterized=formula.constant_parameterized,
    )


def evaluate_catalog(
    inputs: BoundInputs, ids: Optional[Sequence[str]] = None
) -> List[BoundCatalogEntry]:
    """Evaluates every requested entry (default: all) whose inputs are set.

    Entries missing an input are skipped when ``ids`` is not given and raise
    InvalidBoundInputs when they were asked for explicitly.
    """
    entries = []
    for bound_id in CATALOG if ids is None else ids:
        formula = _formula(bound_id)
        if ids is None and any(
            getattr(inputs, name) is None for name in formula.requires
        ):
            _logger.debug("skipping %s, missing inputs", bound_id)
            continue
        entries.append(catalog_entry(bound_id, inputs))
    return entries


def tightest_bound(
    kind: str, inputs: Optional[BoundInputs] = None, **kwargs: float
) -> Tuple[str, float]:
    """Smallest candidate bound of a kind; ties go to catalog order."""
    try:
        candidates = CANDIDATES[kind]
    except KeyError:
        raise UnknownBoundError(
            f"no candidates of kind {kind!r}, expected one of "
            f"{sorted(CANDIDATES)}"
        ) from None
    resolved = _as_inputs(inputs, **kwargs)
    best: Optional[Tuple[str, float]] = None
    for bound_id in candidates:
        value = evaluate_bound(bound_id, resolved)
        if best is None or value < best[1]:
            best = (bound_id, value)
    assert best is not None
    return best


CSV_COLUMNS = (
    "id",
    "formula",
    "inputs",
    "value",
    "vacuous",
    "constant_parameterized",
)


def catalog_csv(entries: Sequence[BoundCatalogEntry]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in entries:
        formula = CATALOG[entry.id]
        names = formula.requires + formula.constants
        writer.writerow(
            (
                entry.id,
                entry.formula,
                entry.inputs.describe(names),
                format(entry.value, ".12g"),
                str(entry.vacuous).lower(),
                str(entry.constant_parameterized).lower(),
            )
        )
    return out.getvalue()
