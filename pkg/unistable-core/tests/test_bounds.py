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

import csv
import io
import math

import pytest
from unistable.core import (
    CATALOG,
    BoundInputs,
    InvalidBoundInputs,
    UnknownBoundError,
    catalog_csv,
    catalog_entry,
    evaluate_bound,
    evaluate_catalog,
    tightest_bound,
)

# bounds that grow with n for a fixed positive gamma
_GROWING_IN_N = {"hp_e3", "hp_fv19"}


def test_bound_formulas(snapshot_json) -> None:
    listing = {
        bound_id: {
            "kind": formula.kind,
            "formula": formula.formula,
            "constant_parameterized": formula.constant_parameterized,
        }
        for bound_id, formula in CATALOG.items()
    }
    assert listing == snapshot_json


def test_scheduled_bounds() -> None:
    scheduled = {
        bound_id: formula.schedule
        for bound_id, formula in CATALOG.items()
        if formula.schedule is not None
    }
    assert scheduled == {"ssss_thm3": "ssss_lambda", "cor2": "ssss_lambda"}

@pytest.mark.parametrize(
    "bound_id,inputs,expected,tol",
    [
        pytest.param("var_e2", {"gamma": 0.1, "n": 100}, 0.605, 1e-12),
        pytest.param("var_e5", {"gamma": 0.1, "n": 100}, 0.18, 1e-12),
        pytest.param(
            "hp_e6",
            {"gamma": 0.0, "n": math.inf, "delta": 0.1},
            0.0,
            0.0,
            id="hp_e6-limit",
        ),
        pytest.param(
            "hp_e6", {"gamma": 0.001, "n": 10_000, "delta": 0.1}, 0.76745, 1e-4
        ),
        pytest.param(
            "hp_e3", {"gamma": 0.1, "n": 100, "delta": 0.1}, 4.6, 1e-3
        ),
        pytest.param("thm5_var", {"eps": 0.1, "n": 400}, 0.18199, 1e-4),
        pytest.param(
            "ssss_thm3", {"lam": 1.0, "n": 400, "delta": 0.04}, 0.25, 1e-12
        ),
        pytest.param("cor2", {"n": 400, "delta": 0.04}, 1.5, 1e-12),
        pytest.param("thm4_expected", {"T": 16, "n": 100}, 0.54, 1e-12),
        pytest.param("exp_e1", {"gamma": 0.3}, 0.3, 0.0),
        pytest.param("firstmoment_e4", {"gamma": 0.1, "n": 4}, 0.6, 1e-12),
        pytest.param(
            "firstmoment_e4",
            {"gamma": 0.1, "n": 4, "c": 2.0},
            1.2,
            1e-12,
            id="firstmoment_e4-constant",
        ),
        pytest.param("loo_moment", {"gamma": 0.2, "n": 50}, 0.06, 1e-12),
        pytest.param(
            "unbiased_moment", {"gamma": 0.2, "n": 50}, 0.2, 1e-12
        ),
        pytest.param(
            "hp_beta",
            {"gamma": 0.0, "n": 100, "delta": math.exp(-1.0), "beta": 0.04},
            0.2,
            1e-12,
        ),
    ],
)
def test_evaluate_bound(bound_id, inputs, expected, tol) -> None:
    assert evaluate_bound(bound_id, **inputs) == pytest.approx(
        expected, abs=tol
    )


def test_private_entries_substitute_gamma() -> None:
    for eps in (0.0, 0.1, 0.5, 2.0):
        gamma = math.expm1(eps)
        assert evaluate_bound("thm5_var", eps=eps, n=400) == evaluate_bound(
            "var_e5", gamma=gamma, n=400
        )
        assert evaluate_bound(
            "thm5_hp", eps=eps, n=400, delta=0.1
        ) == evaluate_bound("hp_e6", gamma=gamma, n=400, delta=0.1)


def test_private_entries_at_zero_eps() -> None:
    assert evaluate_bound("thm5_var", eps=0.0, n=50) == pytest.approx(0.04)
    assert evaluate_bound(
        "thm5_hp", eps=0.0, n=50, delta=0.1
    ) == pytest.approx(8 * math.sqrt(math.log(80) / 50))


def test_hp_beta_default_beta() -> None:
    inputs = BoundInputs(gamma=0.1, n=100, delta=0.1)
    assert evaluate_bound("hp_beta", inputs) == pytest.approx(
        evaluate_bound("hp_beta", inputs, beta=0.21)
    )


@pytest.mark.parametrize(
    "kind,inputs,expected",
    [
        pytest.param(
            "second_moment",
            {"gamma": 0.1, "n": 100},
            ("var_e5", 0.18),
            id="new bound wins",
        ),
        pytest.param(
            "second_moment",
            {"gamma": 0.001, "n": 100},
            ("var_e2", 0.011),
            id="old bound wins at gamma of order 1/n",
        ),
        pytest.param(
            "tail",
            {"gamma": 0.0, "n": 100, "delta": 0.1},
            ("hp_e3", 0.01 * math.sqrt(100 * math.log(10) / 2)),
            id="tail at zero gamma",
        ),
    ],
)
def test_tightest_bound(kind, inputs, expected) -> None:
    bound_id, value = tightest_bound(kind, **inputs)
    assert bound_id == expected[0]
    assert value == pytest.approx(expected[1])


def test_tightest_bound_unknown_kind() -> None:
    with pytest.raises(UnknownBoundError):
        tightest_bound("risk", gamma=0.1, n=100)


def test_new_second_moment_bound_is_smaller() -> None:
    for n in (9, 16, 100, 1000, 10_000):
        gamma = 1 / math.sqrt(n)
        new = evaluate_bound("var_e5", gamma=gamma, n=n)
        assert new == pytest.approx(18 / n)
        assert new < evaluate_bound("var_e2", gamma=gamma, n=n)


_GRID_BASE = {"delta": 0.1, "eps": 0.5, "lam": 0.2, "T": 16.0}
_GAMMAS = (0.0, 0.001, 0.01, 0.1, 0.5)
_SIZES = (1, 10, 100, 1000, math.inf)


def test_monotone_in_gamma() -> None:
    for bound_id, formula in CATALOG.items():
        if "gamma" not in formula.requires:
            continue
        for n in _SIZES:
            values = [
                evaluate_bound(bound_id, gamma=g, n=n, **_GRID_BASE)
                for g in _GAMMAS
            ]
            assert values == sorted(values), (bound_id, n)


def test_monotone_in_n() -> None:
    for bound_id, formula in CATALOG.items():
        if bound_id in _GROWING_IN_N or "n" not in formula.requires:
            continue
        for gamma in _GAMMAS:
            values = [
                evaluate_bound(bound_id, gamma=gamma, n=n, **_GRID_BASE)
                for n in _SIZES
            ]
            assert values == sorted(values, reverse=True), (bound_id, gamma)


def test_growing_tail_bounds_decrease_without_gamma() -> None:
    for bound_id in _GROWING_IN_N:
        values = [
            evaluate_bound(bound_id, gamma=0.0, n=n, delta=0.1)
            for n in _SIZES
        ]
        assert values == sorted(values, reverse=True), bound_id


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"delta": 1.0}, id="delta at one"),
        pytest.param({"delta": 0.0}, id="delta at zero"),
        pytest.param({"n": 0.5}, id="n below one"),
        pytest.param({"gamma": -0.1}, id="negative gamma"),
        pytest.param({"eps": -1.0}, id="negative eps"),
        pytest.param({"lam": 0.0}, id="zero lambda"),
        pytest.param({"T": 0}, id="zero steps"),
        pytest.param({"c": 0.0}, id="zero constant"),
        pytest.param({"gamma": math.nan}, id="nan gamma"),
    ],
)
def test_invalid_inputs(kwargs) -> None:
    with pytest.raises(InvalidBoundInputs):
        BoundInputs(**kwargs)


def test_missing_inputs() -> None:
    with pytest.raises(InvalidBoundInputs):
        evaluate_bound("var_e2", gamma=0.1)


def test_unknown_bound() -> None:
    with pytest.raises(UnknownBoundError):
        evaluate_bound("eq7", gamma=0.1, n=10)
    with pytest.raises(KeyError):
        catalog_entry("eq7")


def test_vacuous_flag() -> None:
    assert catalog_entry("hp_e3", gamma=0.1, n=100, delta=0.1).vacuous
    assert not catalog_entry("var_e5", gamma=0.1, n=100).vacuous


def test_evaluate_catalog_skips_missing_inputs() -> None:
    entries = evaluate_catalog(BoundInputs(gamma=0.1, n=100, delta=0.1))
    ids = [e.id for e in entries]
    assert "var_e2" in ids
    assert "thm5_var" not in ids
    assert "ssss_thm3" not in ids
    assert "pgd_hp" not in ids
    assert all(e.value >= 0 for e in entries)
    with pytest.raises(InvalidBoundInputs):
        evaluate_catalog(BoundInputs(gamma=0.1, n=100), ids=["hp_e6"])


def test_catalog_csv() -> None:
    inputs = BoundInputs(gamma=0.1, n=100, delta=0.1)
    text = catalog_csv(evaluate_catalog(inputs, ids=["var_e2", "var_e5"]))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [
        [
            "id",
            "formula",
            "inputs",
            "value",
            "vacuous",
            "constant_parameterized",
        ],
        ["var_e2", "1/(2n) + 6*gamma", "gamma=0.1;n=100", "0.605"]
        + ["false", "false"],
        ["var_e5", "16*gamma^2 + 2/n", "gamma=0.1;n=100", "0.18"]
        + ["false", "false"],
    ]


def test_catalog_csv_quotes_formulas_with_commas() -> None:
    inputs = BoundInputs(gamma=0.1, n=100, delta=0.1)
    text = catalog_csv(evaluate_catalog(inputs, ids=["hp_beta"]))
    (row,) = list(csv.reader(io.StringIO(text)))[1:]
    assert row[0] == "hp_beta"
    assert row[1] == CATALOG["hp_beta"].formula
    assert row[2] == "gamma=0.1;n=100;delta=0.1;c=1"
    assert row[5] == "true"
