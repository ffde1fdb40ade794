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
Uniformly stable statistics, learners and the bounds on their estimation
error.

Usage
-----

.. code-block:: python

    from unistable.core import (
        FiniteDistribution,
        Point,
        audit_stability,
        make_erm_statistic,
        problem_from_id,
    )

    p = FiniteDistribution.uniform([Point.vector(0.0), Point.vector(1.0)])
    m = make_erm_statistic(problem_from_id("quadratic"), lam=0.4)
    report = audit_stability(m, p, n=4)
    assert report.passed

Audits pick exhaustive enumeration or random probing according to
:envvar:`UNISTABLE_EXHAUSTIVE_LIMIT` and compare against the declared
constant with :envvar:`UNISTABLE_AUDIT_SLACK` of slack.

API
---
"""

from unistable.core._audit import (
    StabilityAuditReport,
    Witness,
    audit_sensitivity,
    audit_stability,
)
from unistable.core._bounds import (
    CATALOG,
    BoundCatalogEntry,
    BoundInputs,
    catalog_csv,
    catalog_entry,
    evaluate_bound,
    evaluate_catalog,
    tightest_bound,
)
from unistable.core._centered import (
    CenteredStatistic,
    center,
    loo_estimate,
    unbiased_second_moment_check,
)
from unistable.core._checks import (
    SandwichReport,
    expected_max_check,
    max_to_tail_check,
    score_sensitivity_audit,
    selector_sandwich_check,
)
from unistable.core._dataset import (
    Dataset,
    FiniteDistribution,
    Point,
    PointKind,
    check_compatible,
    dataset_from_json,
    dataset_to_json,
    distribution_from_json,
    distribution_to_json,
    replace,
)
from unistable.core._errors import (
    DatasetIndexError,
    InvalidBoundInputs,
    InvalidDatasetError,
    InvalidDistributionError,
    InvalidPointError,
    KindMismatchError,
    PreconditionViolated,
    SamplerExhaustedError,
    SensitivityExceeded,
    SolverDidNotConverge,
    StatisticRangeError,
    UnistableError,
    UnknownBoundError,
    UnknownPresetError,
)
from unistable.core._learners import (
    LearnerOutput,
    LearnerStatistic,
    hyperparam_schedule,
    learner_output_to_json,
    make_erm_statistic,
    make_pgd_statistic,
    pgd,
    regularized_erm,
)
from unistable.core._mechanism import (
    MechanismOutput,
    MultiDataset,
    ScoreVector,
    dp_ratio_check,
    estimation_scores,
    exp_mechanism,
    mechanism_probabilities,
    stable_max,
)
from unistable.core._predict import (
    BasePredictor,
    PrivatePredictionReport,
    RRPredictor,
    base_predictor,
    rr_loss_statistic,
    rr_output_distribution,
    rr_predict,
    thm5_report,
)
from unistable.core._problems import (
    ConvexProblem,
    QuadraticFamily,
    ScaledLogisticFamily,
    excess_risk,
    minimize_over_ball,
    population_minimum,
    problem_from_id,
    project_ball,
    verify_constants,
)
from unistable.core._reporting import (
    CheckReport,
    MonteCarloSummary,
    absolute_mean_check,
    clopper_pearson,
    frequency_check,
    mean_check,
    summarize,
)
from unistable.core._seeding import make_rng, mix64
from unistable.core._statistic import (
    StableStatistic,
    empirical_mean,
    estimation_error,
    synthetic,
    true_mean,
)
from unistable.core.version import __version__

__all__ = [
    "BasePredictor",
    "BoundCatalogEntry",
    "BoundInputs",
    "CATALOG",
    "CenteredStatistic",
    "CheckReport",
    "ConvexProblem",
    "Dataset",
    "DatasetIndexError",
    "FiniteDistribution",
    "InvalidBoundInputs",
    "InvalidDatasetError",
    "InvalidDistributionError",
    "InvalidPointError",
    "KindMismatchError",
    "LearnerOutput",
    "LearnerStatistic",
    "MechanismOutput",
    "MonteCarloSummary",
    "MultiDataset",
    "Point",
    "PointKind",
    "PreconditionViolated",
    "PrivatePredictionReport",
    "QuadraticFamily",
    "RRPredictor",
    "SamplerExhaustedError",
    "SandwichReport",
    "ScaledLogisticFamily",
    "ScoreVector",
    "SensitivityExceeded",
    "SolverDidNotConverge",
    "StabilityAuditReport",
    "StableStatistic",
    "StatisticRangeError",
    "UnistableError",
    "UnknownBoundError",
    "UnknownPresetError",
    "Witness",
    "__version__",
    "absolute_mean_check",
    "audit_sensitivity",
    "audit_stability",
    "base_predictor",
    "catalog_csv",
    "catalog_entry",
    "center",
    "check_compatible",
    "clopper_pearson",
    "dataset_from_json",
    "dataset_to_json",
    "distribution_from_json",
    "distribution_to_json",
    "dp_ratio_check",
    "empirical_mean",
    "estimation_error",
    "estimation_scores",
    "evaluate_bound",
    "evaluate_catalog",
    "excess_risk",
    "exp_mechanism",
    "expected_max_check",
    "frequency_check",
    "hyperparam_schedule",
    "learner_output_to_json",
    "loo_estimate",
    "make_erm_statistic",
    "make_pgd_statistic",
    "make_rng",
    "max_to_tail_check",
    "mean_check",
    "mechanism_probabilities",
    "minimize_over_ball",
    "mix64",
    "pgd",
    "population_minimum",
    "problem_from_id",
    "project_ball",
    "regularized_erm",
    "replace",
    "rr_loss_statistic",
    "rr_output_distribution",
    "rr_predict",
    "score_sensitivity_audit",
    "selector_sandwich_check",
    "stable_max",
    "summarize",
    "synthetic",
    "thm5_report",
    "tightest_bound",
    "true_mean",
    "unbiased_second_moment_check",
    "verify_constants",
]
