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
import json

import pytest
from unistable.harness import cli
from unistable.harness import environment_variables


@pytest.fixture(name="quiet_env", autouse=True)
def fixture_quiet_env(monkeypatch):
    monkeypatch.delenv(environment_variables.UNISTABLE_TRACES_CONSOLE, False)
    monkeypatch.delenv(environment_variables.UNISTABLE_LOG_FORMAT, False)
    monkeypatch.delenv(environment_variables.UNISTABLE_LOG_LEVEL, False)


@pytest.fixture(name="erm_file")
def fixture_erm_file(tmp_path, erm_config):
    path = tmp_path / "erm.json"
    path.write_text(json.dumps({**erm_config, "trials": 100}))
    return path


def test_bounds(capsys, tmp_path) -> None:
    code = cli.main(
        ["bounds", "--gamma", "0.1", "--n", "100", "--out", str(tmp_path)]
    )
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    rows = {row[0]: row for row in csv.reader(io.StringIO(out))}
    assert rows["var_e2"][3] == "0.605"
    assert rows["var_e5"][3] == "0.18"
    assert "hp_e6" not in rows
    assert (tmp_path / "bounds.csv").read_text() == out


def test_bounds_with_selected_ids(capsys) -> None:
    code = cli.main(
        ["bounds", "--gamma", "0.1", "--n", "100", "--delta", "0.1"]
        + ["--ids", "hp_e3", "hp_e6"]
    )
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(",")[0] for line in lines] == ["id", "hp_e3", "hp_e6"]


def test_audit_constant(capsys, tmp_path) -> None:
    code = cli.main(
        ["audit", "--statistic", "const", "--n", "10", "--probes", "100"]
        + ["--out", str(tmp_path)]
    )
    assert code == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["gamma_observed"] == 0.0
    assert doc["pass"] is True
    assert doc["statistic"] == "const(1)"
    assert json.loads((tmp_path / "audit.json").read_text()) == doc


def test_audit_mean_is_exhaustive(capsys) -> None:
    code = cli.main(
        ["audit", "--statistic", "mean", "--n", "3", "--exhaustive"]
    )
    assert code == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["exhaustive"] is True
    assert doc["gamma_observed"] == pytest.approx(1 / 3)


def test_audit_coin_flip_classifier(capsys) -> None:
    # at eps = 0 every prediction is a fair coin whatever the data
    code = cli.main(
        ["audit", "--statistic", "rr", "--rr-eps", "0.0", "--n", "3"]
        + ["--distribution", '{"kind": "labeled_threshold", "k": 2}']
    )
    assert code == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["gamma_observed"] == pytest.approx(0.0, abs=1e-12)


def test_sweep_is_reproducible(capsys, tmp_path, erm_file) -> None:
    first, second = tmp_path / "first", tmp_path / "second"
    outputs = []
    for out in (first, second):
        code = cli.main(
            ["sweep", "--config", str(erm_file), "--out", str(out)]
        )
        assert code == cli.EXIT_OK
        outputs.append(capsys.readouterr().out)
    for name in ("trials.csv", "report.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert outputs[0] == outputs[1]
    assert outputs[0] == (first / "report.json").read_text()
    assert json.loads(outputs[0])["name"] == "erm_n100"


def test_sweep_workers_flag(tmp_path, erm_file) -> None:
    serial, threaded = tmp_path / "serial", tmp_path / "threaded"
    assert cli.main(
        ["sweep", "--config", str(erm_file), "--out", str(serial)]
    ) == cli.EXIT_OK
    assert cli.main(
        ["sweep", "--config", str(erm_file), "--out", str(threaded)]
        + ["--workers", "3"]
    ) == cli.EXIT_OK
    assert (serial / "trials.csv").read_bytes() == (
        threaded / "trials.csv"
    ).read_bytes()


def test_report(capsys, tmp_path, erm_file) -> None:
    cli.main(["sweep", "--config", str(erm_file), "--out", str(tmp_path)])
    capsys.readouterr()
    assert cli.main(["report", "--in", str(tmp_path)]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert lines[2].startswith("| erm_n100 | 100 | 0.1 |")
    assert lines[2].endswith("| yes |")


def test_report_of_failed_sweep(capsys, tmp_path) -> None:
    (tmp_path / "report.json").write_text(
        json.dumps(
            {
                "name": "broken",
                "n": 10,
                "gamma": 0.0,
                "mean_delta": 0.3,
                "mean_delta_sq": 0.09,
                "all_passed": False,
            }
        )
    )
    assert cli.main(["report", "--in", str(tmp_path)]) == cli.EXIT_FAILED
    assert capsys.readouterr().out.splitlines()[2].endswith("| no |")


@pytest.mark.parametrize(
    "demo,extra,names",
    [
        pytest.param("stablemax", [], ["stable_max"], id="stablemax"),
        pytest.param(
            "expmech",
            [],
            ["expmech_utility", "expmech_dp_ratio"],
            id="expmech",
        ),
        pytest.param("maxtail", [], ["max_to_tail"], id="maxtail"),
        pytest.param(
            "sandwich",
            ["--statistic", "const", "--n", "4", "--m", "3"],
            ["sandwich_upper", "sandwich_lower", "selected_estimation_error"],
            id="sandwich",
        ),
        pytest.param("lemma1", [], ["max_to_tail"], id="lemma1"),
        pytest.param(
            "lemma4",
            ["--statistic", "const", "--n", "4", "--m", "3"],
            ["sandwich_upper", "sandwich_lower", "selected_estimation_error"],
            id="lemma4",
        ),
    ],
)
def test_mech(capsys, tmp_path, demo, extra, names) -> None:
    code = cli.main(
        ["mech", "--demo", demo, "--trials", "200", "--out", str(tmp_path)]
        + extra
    )
    assert code == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["demo"] == demo
    assert [c["name"] for c in doc["checks"]] == names
    assert all(c["pass"] for c in doc["checks"])
    assert (tmp_path / "mech.json").exists()


@pytest.mark.parametrize(
    "alias,demo", [("lemma1", "maxtail"), ("lemma4", "sandwich")]
)
def test_mech_aliases(capsys, alias: str, demo: str) -> None:
    codes, outputs = [], []
    for name in (alias, demo):
        codes.append(cli.main(["mech", "--demo", name, "--trials", "150"]))
        outputs.append(json.loads(capsys.readouterr().out))
    assert codes[0] == codes[1]
    assert outputs[0]["checks"] == outputs[1]["checks"]


@pytest.mark.parametrize(
    "argv",
    [
        pytest.param([], id="no command"),
        pytest.param(["bounds", "--gamma", "x", "--n", "10"], id="bad float"),
        pytest.param(["audit", "--n", "10"], id="missing statistic"),
        pytest.param(
            ["audit", "--statistic", "mean", "--n", "0"], id="empty dataset"
        ),
        pytest.param(
            ["audit", "--statistic", "mean", "--n", "3"]
            + ["--distribution", "[1, 2]"],
            id="distribution not an object",
        ),
        pytest.param(["mech", "--demo", "lottery"], id="unknown demo"),
    ],
)
def test_usage_errors(capsys, argv) -> None:
    assert cli.main(argv) == cli.EXIT_USAGE
    assert "usage: unistable" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        pytest.param(
            ["bounds", "--gamma", "0.1", "--n", "10", "--delta", "1.5"],
            id="delta out of range",
        ),
        pytest.param(
            ["audit", "--statistic", "rr", "--rr-eps", "0.5", "--n", "3"],
            id="rr without labels",
        ),
        pytest.param(
            ["audit", "--statistic", "erm", "--n", "3"], id="erm without lam"
        ),
        pytest.param(["report", "--in", "."], id="no reports"),
    ],
)
def test_command_errors(capsys, tmp_path, monkeypatch, argv) -> None:
    monkeypatch.chdir(tmp_path)
    assert cli.main(argv) == cli.EXIT_USAGE
    assert f"unistable {argv[0]}: error:" in capsys.readouterr().err


def test_missing_config_file(capsys, tmp_path) -> None:
    code = cli.main(["sweep", "--config", str(tmp_path / "missing.json")])
    assert code == cli.EXIT_USAGE
    assert "unistable sweep: error:" in capsys.readouterr().err


def test_help_exits_cleanly(capsys) -> None:
    assert cli.main(["--help"]) == cli.EXIT_OK
    assert "audit" in capsys.readouterr().out


def test_resolved_configuration_is_logged(capsys) -> None:
    cli.main(["bounds", "--gamma", "0.1", "--n", "100"])
    records = [
        json.loads(line)
        for line in capsys.readouterr().err.splitlines()
        if line.startswith("{")
    ]
    (resolved,) = [
        r for r in records if r["message"] == "resolved bounds configuration"
    ]
    assert resolved["severity"] == "INFO"
    assert resolved["command"] == "bounds"
    assert resolved["config"]["gamma"] == 0.1
    assert resolved["config"]["n"] == 100.0
