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
import sys
from typing import IO, Optional

from pythonjsonlogger.json import JsonFormatter

from unistable.harness import environment_variables

JSON_FIELDS = "%(asctime)s %(levelname)s %(name)s %(message)s"
TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DATEFMT = "%Y-%m-%dT%H:%M:%SZ"

_handler: Optional[logging.Handler] = None


def make_formatter(fmt: str) -> logging.Formatter:
    if fmt == "json":
        return JsonFormatter(
            JSON_FIELDS,
            rename_fields={"levelname": "severity", "asctime": "timestamp"},
            datefmt=DATEFMT,
        )
    return logging.Formatter(TEXT_FORMAT, datefmt=DATEFMT)


def configure_logging(
    fmt: Optional[str] = None,
    level: Optional[str] = None,
    stream: Optional[IO[str]] = None,
) -> logging.Handler:
    """Routes the root logger to one stderr handler.

    Calling it again replaces the handler installed by the previous call.
    """
    global _handler  # pylint: disable=global-statement
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(
        make_formatter(fmt or environment_variables.log_format())
    )
    root = logging.getLogger()
    if _handler is not None:
        root.removeHandler(_handler)
    root.addHandler(handler)
    root.setLevel(level or environment_variables.log_level())
    _handler = handler
    return handler
