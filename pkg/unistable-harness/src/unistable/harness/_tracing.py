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
from typing import Optional

from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import (
    ConsoleSpanExporter,
    SimpleSpanProcessor,
)

from unistable.harness import environment_variables

_logger = logging.getLogger(__name__)


def configure_tracing(
    console: Optional[bool] = None,
) -> Optional[TracerProvider]:
    """Installs an SDK tracer provider printing spans to stderr.

    Does nothing unless ``console`` (default: UNISTABLE_TRACES_CONSOLE) is
    true; without a provider every span is a no-op.
    """
    if console is None:
        console = environment_variables.traces_console()
    if not console:
        return None
    provider = TracerProvider()
    provider.add_span_processor(
        SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr))
    )
    trace.set_tracer_provider(provider)
    _logger.debug("writing spans to stderr")
    return provider
