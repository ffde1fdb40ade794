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

"""Command line of the unistable harness.

Exit codes: 0 when every decided check passes, 1 when a check fails, 2 on
usage errors and on errors raised while running a command. Results go to
standard output (and to files below ``--out``), logs to standard error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from unistable.core import (
    BoundInputs,
    CheckReport,
    FiniteDistribution,
    StableStatistic,
    UnistableError,
    audit_stability,
    catalog_csv,
    evaluate_catalog,
)
from unistable.harness._config import (
    ConfigError,
    config_to_json,
    load_config,
    parse_distribution_spec,
    parse_statistic_spec,
)
from unistable.harness._demos import (
    expmech_demo,
    max_to_tail_demo,
    sandwich_demo,
    stablemax_demo,
)
from unistable.harness._logging import configure_logging
from unistable.harness._presets import build_statistic, make_distribution
from unistable.harness._report import (
    find_reports,
    markdown_summary,
    report_json,
    write_sweep_outputs,
)
from unistable.harness._sweep import run_sweep
from unistable.harness._tracing import configure_tracing

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SYNTHETIC_IDS = ("const", "identity", "mean", "absdev")
STATISTIC_IDS = SYNTHETIC_IDS + ("erm", "pgd", "rr")
DEMOS = ("stablemax", "expmech", "maxtail", "sandwich", "lemma1", "lemma4")
# alternative names accepted by --demo
DEMO_ALIASES = {"lemma1": "maxtail", "lemma4": "sandwich"}
DEFAULT_DISTRIBUTION = '{"kind": "two_point", "p": 0.5}'


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {raw}")
    return value


def _json_object(raw: str) -> Dict[str, Any]:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as ex:
        raise argparse.ArgumentTypeError(f"invalid JSON: {ex}") from ex
    if not isinstance(doc, dict):
        raise argparse.ArgumentTypeError("expected a JSON object")
    return doc


def _add_statistic_args(
    parser: argparse.ArgumentParser, **kwargs: Any
) -> None:
    group = parser.add_argument_group("statistic and distribution")
    group.add_argument("--statistic", choices=STATISTIC_IDS, **kwargs)
    group.add_argument("--value", type=float, help="value of const")
    group.add_argument("--problem", choices=("quadratic", "logistic"))
    group.add_argument("--dim", type=_positive_int)
    group.add_argument("--lam", type=float, help="erm regularization")
    group.add_argument("--T", type=_positive_int, help="pgd steps")
    group.add_argument("--base", choices=("1nn", "threshold"))
    group.add_argument("--rr-eps", type=float, help="rr privacy parameter")
    group.add_argument(
        "--distribution",
        type=_json_object,
        default=_json_object(DEFAULT_DISTRIBUTION),
        help="distribution spec as a JSON object (default: %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unistable",
        description="Audits, sweeps and bound evaluation for uniformly "
        "stable statistics.",
    )
    commands = parser.add_subparsers(
        dest="command", metavar="COMMAND", required=True
    )

    audit = commands.add_parser(
        "audit", help="audit the uniform stability of a statistic"
    )
    _add_statistic_args(audit, required=True)
    audit.add_argument("--n", type=_positive_int, required=True)
    audit.add_argument("--probes", type=_positive_int, default=1000)
    audit.add_argument(
        "--exhaustive",
        action="store_true",
        help="enumerate every replacement whatever the size of the space",
    )
    audit.add_argument("--seed", type=int, default=0)
    audit.add_argument("--out", type=Path)
    audit.set_defaults(handler=_audit)

    sweep = commands.add_parser(
        "sweep", help="run a Monte Carlo sweep from a JSON config"
    )
    sweep.add_argument("--config", type=Path, required=True)
    sweep.add_argument("--out", type=Path, default=Path("."))
    sweep.add_argument("--workers", type=_positive_int)
    sweep.set_defaults(handler=_sweep)

    bounds = commands.add_parser(
        "bounds", help="evaluate the bound catalog as CSV"
    )
    bounds.add_argument("--gamma", type=float, required=True)
    bounds.add_argument("--n", type=float, required=True)
    bounds.add_argument("--delta", type=float)
    bounds.add_argument("--eps", type=float)
    bounds.add_argument("--lam", type=float)
    bounds.add_argument("--T", type=float)
    bounds.add_argument("--beta", type=float)
    for constant in ("c", "c1", "c2"):
        bounds.add_argument(f"--{constant}", type=float, default=1.0)
    bounds.add_argument("--ids", nargs="+", metavar="ID")
    bounds.add_argument("--out", type=Path)
    bounds.set_defaults(handler=_bounds)

    mech = commands.add_parser(
        "mech", help="property demos of the exponential mechanism"
    )
    mech.add_argument("--demo", choices=DEMOS, required=True)
    mech.add_argument("--trials", type=_positive_int, default=1000)
    mech.add_argument("--seed", type=int, default=0)
    mech.add_argument("--m", type=_positive_int, default=5, help="subsets")
    mech.add_argument("--n", type=_positive_int, default=50)
    mech.add_argument("--eps", type=float, default=0.5)
    _add_statistic_args(mech, default="mean")
    mech.add_argument("--out", type=Path)
    mech.set_defaults(handler=_mech)

    report = commands.add_parser(
        "report", help="markdown summary of the sweeps below a directory"
    )
    report.add_argument("--in", dest="in_dir", type=Path, required=True)
    report.set_defaults(handler=_report)
    return parser


def _statistic_doc(args: argparse.Namespace) -> Dict[str, Any]:
    if args.statistic in SYNTHETIC_IDS:
        doc: Dict[str, Any] = {"kind": "synthetic", "name": args.statistic}
        options = {"value": args.value}
    else:
        doc = {"kind": args.statistic}
        options = {
            "erm": {"problem": args.problem, "dim": args.dim, "lam": args.lam},
            "pgd": {"problem": args.problem, "dim": args.dim, "T": args.T},
            "rr": {"base": args.base, "eps": args.rr_eps},
        }[args.statistic]
    doc.update((k, v) for k, v in options.items() if v is not None)
    return doc


def _resolved(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        k: str(v) if isinstance(v, Path) else v
        for k, v in vars(args).items()
        if k != "handler"
    }


def _log_config(command: str, config: Dict[str, Any]) -> None:
    _logger.info(
        "resolved %s configuration",
        command,
        extra={"command": command, "config": config},
    )


def _dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out_dir: Optional[Path], filename: str) -> None:
    sys.stdout.write(text)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / filename).write_text(text, encoding="utf-8")


def _statistic_and_distribution(
    args: argparse.Namespace,
) -> Tuple[StableStatistic, FiniteDistribution]:
    p = make_distribution(parse_distribution_spec(args.distribution))
    m = build_statistic(parse_statistic_spec(_statistic_doc(args)), p)
    return m, p


def _audit(args: argparse.Namespace) -> int:
    _log_config("audit", _resolved(args))
    m, p = _statistic_and_distribution(args)
    report = audit_stability(
        m,
        p,
        args.n,
        args.probes,
        exhaustive_limit=sys.maxsize if args.exhaustive else None,
        seed=args.seed,
    )
    doc = {"statistic": m.name, "n": args.n, **report.to_json()}
    _emit(_dumps(doc), args.out, "audit.json")
    return EXIT_OK if report.passed else EXIT_FAILED


def _sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    _log_config(
        "sweep",
        {**_resolved(args), "experiment": config_to_json(config)},
    )
    records, report = run_sweep(config, args.workers)
    write_sweep_outputs(args.out, records, report)
    sys.stdout.write(report_json(report))
    return EXIT_OK if report.all_passed else EXIT_FAILED


def _bounds(args: argparse.Namespace) -> int:
    _log_config("bounds", _resolved(args))
    inputs = BoundInputs(
        gamma=args.gamma,
        n=args.n,
        delta=args.delta,
        eps=args.eps,
        lam=args.lam,
        T=args.T,
        beta=args.beta,
        c=args.c,
        c1=args.c1,
        c2=args.c2,
    )
    entries = evaluate_catalog(inputs, args.ids)
    _emit(catalog_csv(entries), args.out, "bounds.csv")
    return EXIT_OK


def _mech(args: argparse.Namespace) -> int:
    _log_config("mech", _resolved(args))
    demo = DEMO_ALIASES.get(args.demo, args.demo)
    checks: List[CheckReport]
    if demo == "stablemax":
        checks = stablemax_demo(args.trials, args.seed)
    elif demo == "expmech":
        checks = expmech_demo(args.trials, args.seed)
    else:
        m, p = _statistic_and_distribution(args)
        if demo == "maxtail":
            checks = max_to_tail_demo(
                m, p, args.n, args.m, args.trials, args.seed
            )
        else:
            checks = sandwich_demo(
                m, p, args.n, args.m, args.eps, args.trials, args.seed
            )
    doc = {"demo": args.demo, "checks": [c.to_json() for c in checks]}
    _emit(_dumps(doc), args.out, "mech.json")
    passed = all(c.passed is not False for c in checks)
    return EXIT_OK if passed else EXIT_FAILED


def _report(args: argparse.Namespace) -> int:
    _log_config("report", _resolved(args))
    found = find_reports(args.in_dir)
    if not found:
        raise ConfigError(f"no report.json below {args.in_dir}")
    docs = [doc for _, doc in found]
    sys.stdout.write(markdown_summary(docs))
    passed = all(doc["all_passed"] for doc in docs)
    return EXIT_OK if passed else EXIT_FAILED


def _exit_code(code: Any) -> int:
    if code is None:
        return EXIT_OK
    if isinstance(code, int):
        return code
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return _exit_code(ex.code)
    configure_logging()
    configure_tracing()
    try:
        return args.handler(args)
    except (UnistableError, OSError, ValueError) as ex:
        _logger.debug("%s failed", args.command, exc_info=True)
        print(f"unistable {args.command}: error: {ex}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())
