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

import logging
from os import environ
from typing import Callable, Optional, TypeVar

_logger = logging.getLogger(__name__)

UNISTABLE_WORKERS = "UNISTABLE_WORKERS"
"""
.. envvar:: UNISTABLE_WORKERS

    Number of worker threads :func:`unistable.harness.run_trials` uses when
    neither its ``workers`` argument nor the sweep configuration sets one.
    Results do not depend on it. Defaults to 1.
"""

UNISTABLE_LOG_FORMAT = "UNISTABLE_LOG_FORMAT"
"""
.. envvar:: UNISTABLE_LOG_FORMAT

    ``json`` (the default) for one JSON object per log record on standard
    error, ``text`` for plain lines.
"""

UNISTABLE_LOG_LEVEL = "UNISTABLE_LOG_LEVEL"
"""
.. envvar:: UNISTABLE_LOG_LEVEL

    Level name of the command line's root logger. Defaults to ``INFO``.
"""

UNISTABLE_TRACES_CONSOLE = "UNISTABLE_TRACES_CONSOLE"
"""
.. envvar:: UNISTABLE_TRACES_CONSOLE

    When set to ``true`` or ``1`` the command line writes every finished
    span to standard error.
"""

DEFAULT_WORKERS = 1
LOG_FORMATS = ("json", "text")
DEFAULT_LOG_FORMAT = "json"
DEFAULT_LOG_LEVEL = "INFO"

_T = TypeVar("_T")


def workers() -> int:
    return _read(UNISTABLE_WORKERS, _positive_int, DEFAULT_WORKERS)


def log_format() -> str:
    return _read(UNISTABLE_LOG_FORMAT, _log_format, DEFAULT_LOG_FORMAT)


def log_level() -> str:
    return _read(UNISTABLE_LOG_LEVEL, _level_name, DEFAULT_LOG_LEVEL)


def traces_console() -> bool:
    return environ.get(UNISTABLE_TRACES_CONSOLE, "").strip().lower() in (
        "1",
        "true",
    )


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise ValueError(raw)
    return value


def _log_format(raw: str) -> str:
    value = raw.strip().lower()
    if value not in LOG_FORMATS:
        raise ValueError(raw)
    return value


def _level_name(raw: str) -> str:
    value = raw.strip().upper()
    if not isinstance(logging.getLevelName(value), int):
        raise ValueError(raw)
    return value


def _read(name: str, parse: Callable[[str], _T], default: _T) -> _T:
    raw: Optional[str] = environ.get(name)
    if not raw:
        return default
    try:
        return parse(raw)
    except ValueError:
        _logger.warning(
            "Ignoring invalid value %r for %s, using default %s",
            raw,
            name,
            default,
        )
        return default
