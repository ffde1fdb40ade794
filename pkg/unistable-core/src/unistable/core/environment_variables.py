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

_logger = logging.getLogger(__name__)

UNISTABLE_EXHAUSTIVE_LIMIT = "UNISTABLE_EXHAUSTIVE_LIMIT"
"""
.. envvar:: UNISTABLE_EXHAUSTIVE_LIMIT

    Largest probe space that :func:`unistable.core.audit_stability` and
    :func:`unistable.core.audit_sensitivity` enumerate exhaustively instead
    of sampling. Equivalent to the ``exhaustive_limit`` parameter of those
    functions. Defaults to 200000.
"""

UNISTABLE_AUDIT_SLACK = "UNISTABLE_AUDIT_SLACK"
"""
.. envvar:: UNISTABLE_AUDIT_SLACK

    Absolute slack added to a declared stability or sensitivity constant
    when an audit decides pass/fail. Defaults to 1e-9.
"""

DEFAULT_EXHAUSTIVE_LIMIT = 200_000
DEFAULT_AUDIT_SLACK = 1e-9


def exhaustive_limit() -> int:
    return _read(UNISTABLE_EXHAUSTIVE_LIMIT, int, DEFAULT_EXHAUSTIVE_LIMIT)


def audit_slack() -> float:
    return _read(UNISTABLE_AUDIT_SLACK, float, DEFAULT_AUDIT_SLACK)


def _read(name, parse, default):
    raw = environ.get(name)
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
