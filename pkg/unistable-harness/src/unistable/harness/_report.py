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

"""Moments and tails of a sweep's estimation errors against the catalog."""

import json
import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from opentelemetry import trace

from unistable.core import (
    CATALOG,
    BoundInputs,
    CheckReport,
    StabilityAuditReport,
    absolute_mean_check,
    evaluate_bound,
    frequency_check,
    hyperparam_schedule,
    mean_check,
)
from unistable.harness._trials import TrialRecord, trials_csv

_logger = logging.getLogger(__name__)
_tracer = trace.get_tracer(__name__)

TRIALS_FILE = "trials.csv"
REPORT_FILE = "report.json"
SCHEDULE_RTOL = 1e-6


@dataclass(frozen=True)
class BoundResult:
    id: str
    delta: Optional[float]
    value: float
    vacuous: bool
    constant_parameterized: bool
    passed: Optional[bool]

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "delta": self.delta,
            "value": self.value,
            "vacuous": self.vacuous,
            "constant_parameterized": self.constant_parameterized,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class SweepReport:
    name: str
    statistic: str
    n: int
    trials: int
    failed_trials: int
    gamma: float
    mean_delta: float
    mean_delta_sq: float
    quantiles: Tuple[Tuple[float, float], ...]
    """(delta, empirical (1 - delta)-quantile of the estimation error)"""
    bounds: Tuple[BoundResult, ...]
    checks: Tuple[CheckReport, ...]
    mean_excess_risk: Optional[float] = None
    beta: Optional[float] = None

    @property
    def all_passed(self) -> bool:
        """No check failed; unresolved (None) checks do not count."""
        return all(check.passed is not False for check in self.checks)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "n": self.n,
            "trials": self.trials,
            "failed_trials": self.failed_trials,
            "gamma": self.gamma,
            "mean_delta": self.mean_delta,
            "mean_delta_sq": self.mean_delta_sq,
            "mean_excess_risk": self.mean_excess_risk,
            "quantiles": [
                {"delta": delta, "quantile": q} for delta, q in self.quantiles
            ],
            "bounds": [b.to_json() for b in self.bounds],
            "checks": [c.to_json() for c in self.checks],
            "beta": self.beta,
            "all_passed": self.all_passed,
        }


def _follows_schedule(schedule: str, inputs: BoundInputs) -> bool:
    if inputs.lam is None:
        return False
    expected = hyperparam_schedule(schedule, int(inputs.n), inputs.delta)
    return math.isclose(inputs.lam, expected, rel_tol=SCHEDULE_RTOL)


def _check(
    bound_id: str,
    inputs: BoundInputs,
    errors: np.ndarray,
    excess: np.ndarray,
) -> Optional[CheckReport]:
    formula = CATALOG[bound_id]
    value = evaluate_bound(bound_id, inputs)
    delta = inputs.delta if "delta" in formula.requires else None
    name = bound_id if delta is None else f"{bound_id}@delta={delta:g}"
    detail: Dict[str, Any] = {"bound_id": bound_id}
    if delta is not None:
        detail["delta"] = delta
    if formula.kind == "risk":
        if excess.size == 0:
            _logger.warning("no excess risks recorded, skipping %s", name)
            return None
        samples = excess
    else:
        samples = errors
    if delta is not None:
        # P[sample >= bound] <= delta
        check = frequency_check(
            name,
            int(np.count_nonzero(samples >= value)),
            samples.size,
            delta,
            threshold=value,
            **detail,
        )
    elif bound_id == "exp_e1":
        check = absolute_mean_check(
            name, samples.tolist(), value, **detail
        )
    elif formula.kind == "expectation":
        check = mean_check(name, np.abs(samples).tolist(), value, **detail)
    elif formula.kind == "second_moment":
        check = mean_check(name, (samples**2).tolist(), value, **detail)
    else:
        check = mean_check(name, samples.tolist(), value, **detail)
    if formula.constant_parameterized:
        return replace(check, passed=None)
    if formula.schedule is not None and not _follows_schedule(
        formula.schedule, inputs
    ):
        return replace(
            check,
            passed=None,
            detail={**check.detail, "schedule": formula.schedule},
        )
    if value >= 1.0:
        # estimation errors and excess risks of [0, 1] losses stay below 1
        return replace(
            check, passed=True, detail={**check.detail, "vacuous": True}
        )
    return check


def moment_and_tail_report(
    records: Sequence[TrialRecord],
    gamma: float,
    n: int,
    deltas: Sequence[float],
    bound_ids: Sequence[str],
    *,
    inputs: Optional[BoundInputs] = None,
    name: str = "sweep",
    statistic: str = "",
) -> SweepReport:
    """Compares the successful trials of a sweep with each bound.

    ``inputs`` carries the bound inputs a sweep does not measure (lam, T,
    eps and the unnamed constants); gamma, n and each delta of ``deltas``
    are filled in here. Bounds that take delta are checked once per delta.
    """
    if not records:
        raise ValueError("records must not be empty")
    ok = [r for r in records if r.ok]
    if not ok:
        raise ValueError(f"all {len(records)} trials failed")
    errors = np.array([r.estimation_error for r in ok])
    excess = np.array(
        [r.excess_risk for r in ok if r.excess_risk is not None], dtype=float
    )
    base = replace(inputs or BoundInputs(), gamma=gamma, n=n)
    with _tracer.start_as_current_span(
        "moment_and_tail_report",
        attributes={"n": n, "trials": len(ok), "gamma": gamma},
    ):
        checks: List[CheckReport] = []
        bounds: List[BoundResult] = []
        for bound_id in bound_ids:
            formula = CATALOG[bound_id]
            grid: Sequence[Optional[float]] = (
                deltas if "delta" in formula.requires else (None,)
            )
            for delta in grid:
                resolved = replace(base, delta=delta) if delta else base
                check = _check(bound_id, resolved, errors, excess)
                if check is None:
                    continue
                checks.append(check)
                value = evaluate_bound(bound_id, resolved)
                bounds.append(
                    BoundResult(
                        id=bound_id,
                        delta=delta,
                        value=value,
                        vacuous=value >= 1.0,
                        constant_parameterized=formula.constant_parameterized,
                        passed=check.passed,
                    )
                )
        report = SweepReport(
            name=name,
            statistic=statistic,
            n=n,
            trials=len(records),
            failed_trials=len(records) - len(ok),
            gamma=gamma,
            mean_delta=float(errors.mean()),
            mean_delta_sq=float(np.mean(errors**2)),
            quantiles=tuple(
                (float(delta), float(np.quantile(errors, 1.0 - delta)))
                for delta in deltas
            ),
            bounds=tuple(bounds),
            checks=tuple(checks),
            mean_excess_risk=float(excess.mean()) if excess.size else None,
        )
    failed = [c.name for c in checks if c.passed is False]
    if failed:
        _logger.warning("%s: checks failed: %s", name, ", ".join(failed))
    else:
        _logger.info("%s: all %d checks passed", name, len(checks))
    return report


def with_beta(report: SweepReport, audit: StabilityAuditReport) -> SweepReport:
    """Adds the estimation-error sensitivity audit to a sweep report."""
    check = CheckReport(
        name="beta",
        statistic=audit.gamma_observed,
        bound=audit.gamma_declared,
        ci_low=audit.gamma_observed,
        ci_high=audit.gamma_observed,
        passed=audit.passed,
        detail={"probes": audit.probes, "exhaustive": audit.exhaustive},
    )
    return replace(
        report, beta=audit.gamma_observed, checks=report.checks + (check,)
    )


def report_json(report: SweepReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"


def write_sweep_outputs(
    out_dir: Union[str, Path],
    records: Sequence[TrialRecord],
    report: SweepReport,
) -> Tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    trials_path = out / TRIALS_FILE
    report_path = out / REPORT_FILE
    trials_path.write_text(trials_csv(records), encoding="utf-8")
    report_path.write_text(report_json(report), encoding="utf-8")
    _logger.info("wrote %s and %s", trials_path, report_path)
    return trials_path, report_path


SUMMARY_COLUMNS = (
    "sweep",
    "n",
    "γ",
    "mean Δ",
    "mean Δ²",
    "var_e5",
    "all_passed",
)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def markdown_summary(reports: Sequence[Dict[str, Any]]) -> str:
    """Markdown table with one row per report.json document."""
    lines = [
        "| " + " | ".join(SUMMARY_COLUMNS) + " |",
        "|" + "---|" * len(SUMMARY_COLUMNS),
    ]
    for doc in reports:
        gamma, n = float(doc["gamma"]), int(doc["n"])
        row = (
            doc["name"],
            n,
            gamma,
            float(doc["mean_delta"]),
            float(doc["mean_delta_sq"]),
            evaluate_bound("var_e5", gamma=gamma, n=n),
            "yes" if doc["all_passed"] else "no",
        )
        lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
    return "\n".join(lines) + "\n"


def find_reports(root: Union[str, Path]) -> List[Tuple[Path, Dict[str, Any]]]:
    """Every report.json below ``root``, in path order."""
    found = []
    for path in sorted(Path(root).rglob(REPORT_FILE)):
        with path.open(encoding="utf-8") as f:
            found.append((path, json.load(f)))
    return found
