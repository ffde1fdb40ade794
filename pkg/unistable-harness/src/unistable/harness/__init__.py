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

"""
Monte Carlo sweeps over :mod:`unistable.core` statistics and the
``unistable`` command line.

Usage
-----

.. code-block:: python

    from unistable.harness import config_from_dict, run_sweep

    config = config_from_dict(
        {
            "name": "erm_n100",
            "distribution": {"kind": "two_point", "p": 0.5},
            "statistic": {"kind": "erm", "lam": 0.4},
            "n": 100,
            "trials": 1000,
            "seed": 7,
        }
    )
    records, report = run_sweep(config, workers=4)
    print(report.mean_delta_sq, report.all_passed)

The same sweep from the command line, with the config saved as
``erm_n100.json``::

    unistable sweep --config erm_n100.json --out results/erm_n100

See :envvar:`UNISTABLE_WORKERS` and :envvar:`UNISTABLE_LOG_FORMAT` for the
process-level settings.
"""

from unistable.harness._config import (
    ConfigError,
    ErmSpec,
    ExperimentConfig,
    LabeledThresholdSpec,
    PgdSpec,
    RRSpec,
    SyntheticSpec,
    TwoPointSpec,
    UniformGridSpec,
    config_from_dict,
    config_to_json,
    load_config,
)
from unistable.harness._presets import (
    bayes_error,
    build_statistic,
    make_distribution,
)
from unistable.harness._report import (
    BoundResult,
    SweepReport,
    markdown_summary,
    moment_and_tail_report,
    report_json,
    with_beta,
    write_sweep_outputs,
)
from unistable.harness._sensitivity import delta_sensitivity_audit
from unistable.harness._sweep import run_sweep, sweep_inputs
from unistable.harness._trials import TrialRecord, run_trials, trials_csv
from unistable.harness.version import __version__

__all__ = [
    "BoundResult",
    "ConfigError",
    "ErmSpec",
    "ExperimentConfig",
    "LabeledThresholdSpec",
    "PgdSpec",
    "RRSpec",
    "SweepReport",
    "SyntheticSpec",
    "TrialRecord",
    "TwoPointSpec",
    "UniformGridSpec",
    "__version__",
    "bayes_error",
    "build_statistic",
    "config_from_dict",
    "config_to_json",
    "delta_sensitivity_audit",
    "load_config",
    "make_distribution",
    "markdown_summary",
    "moment_and_tail_report",
    "report_json",
    "run_sweep",
    "run_trials",
    "sweep_inputs",
    "trials_csv",
    "with_beta",
    "write_sweep_outputs",
]
