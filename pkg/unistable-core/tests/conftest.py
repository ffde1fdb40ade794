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

import pytest
from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import SimpleSpanProcessor
from opentelemetry.sdk.trace.export.in_memory_span_exporter import (
    InMemorySpanExporter,
)
from syrupy.extensions.json import JSONSnapshotExtension
from unistable.core import FiniteDistribution, Point

_EXPORTER = InMemorySpanExporter()


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line(
        "markers", "slow: acceptance-size Monte Carlo runs"
    )
    provider = TracerProvider()
    provider.add_span_processor(SimpleSpanProcessor(_EXPORTER))
    trace.set_tracer_provider(provider)


@pytest.fixture(name="span_exporter")
def fixture_span_exporter() -> InMemorySpanExporter:
    _EXPORTER.clear()
    return _EXPORTER


@pytest.fixture(name="snapshot_json")
def fixture_snapshot_json(snapshot):
    return snapshot.use_extension(JSONSnapshotExtension)


@pytest.fixture(name="coin")
def fixture_coin() -> FiniteDistribution:
    """uniform{0, 1} on the real line"""
    return FiniteDistribution.uniform([Point.vector(0.0), Point.vector(1.0)])


@pytest.fixture(name="three_point")
def fixture_three_point() -> FiniteDistribution:
    return FiniteDistribution(
        (Point.vector(0.0), Point.vector(0.5), Point.vector(1.0)),
        (0.2, 0.5, 0.3),
    )


@pytest.fixture(name="symmetric_pair")
def fixture_symmetric_pair() -> FiniteDistribution:
    """uniform{-0.5, 0.5}"""
    return FiniteDistribution.uniform(
        [Point.vector(-0.5), Point.vector(0.5)]
    )


@pytest.fixture(name="labeled")
def fixture_labeled() -> FiniteDistribution:
    """Four labeled points on the line, label 1 to the right of zero with
    one noisy point."""
    return FiniteDistribution(
        (
            Point.labeled(-0.8, 0),
            Point.labeled(-0.2, 0),
            Point.labeled(0.3, 1),
            Point.labeled(0.7, 0),
        ),
        (0.3, 0.2, 0.3, 0.2),
    )
