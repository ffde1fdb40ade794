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
from typing import Any, Dict

import pytest
from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import SimpleSpanProcessor
from opentelemetry.sdk.trace.export.in_memory_span_exporter import (
    InMemorySpanExporter,
)
from unistable.harness import _logging

_EXPORTER = InMemorySpanExporter()


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line(
        "markers", "slow: acceptance-size Monte Carlo runs"
    )
    # the global provider can only be set once per process; when another
    # conftest in the same session already installed one, attach to it
    provider = trace.get_tracer_provider()
    if not isinstance(provider, TracerProvider):
        provider = TracerProvider()
        trace.set_tracer_provider(provider)
    provider.add_span_processor(SimpleSpanProcessor(_EXPORTER))


@pytest.fixture(name="span_exporter")
def fixture_span_exporter() -> InMemorySpanExporter:
    _EXPORTER.clear()
    return _EXPORTER


@pytest.fixture(name="restore_root_logger", autouse=True)
def fixture_restore_root_logger():
    root = logging.getLogger()
    level = root.level
    yield
    if _logging._handler is not None:
        root.removeHandler(_logging._handler)
        _logging._handler = None
    root.setLevel(level)


@pytest.fixture(name="coin_config")
def fixture_coin_config() -> Dict[str, Any]:
    """Sweep of the identity statistic over uniform{0, 1}."""
    return {
        "name": "coin",
        "distribution": {"kind": "two_point", "p": 0.5},
        "statistic": {"kind": "synthetic", "name": "identity"},
        "n": 10,
        "trials": 400,
        "seed": 3,
    }


@pytest.fixture(name="erm_config")
def fixture_erm_config() -> Dict[str, Any]:
    return {
        "name": "erm_n100",
        "distribution": {"kind": "two_point", "p": 0.5},
        "statistic": {"kind": "erm", "lam": 0.4},
        "n": 100,
        "trials": 400,
        "seed": 11,
    }
