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
from unistable.core import make_rng, mix64


@pytest.mark.parametrize(
    "index,expected",
    [
        pytest.param(0, 0xE220A8397B1DCDAF, id="first"),
        pytest.param(1, 0x6E789E6AA1B965F4, id="second"),
        pytest.param(2, 0x06C45D188009454F, id="third"),
    ],
)
def test_mix64_matches_splitmix64_stream(index: int, expected: int) -> None:
    assert mix64(0, index) == expected


def test_mix64_is_64_bit() -> None:
    seeds = {mix64(2**64 - 1, t) for t in range(1000)}
    assert len(seeds) == 1000
    assert all(0 <= s < 2**64 for s in seeds)


def test_make_rng_is_deterministic() -> None:
    assert make_rng(mix64(5, 3)).random() == make_rng(mix64(5, 3)).random()
    assert make_rng(1).random() != make_rng(2).random()
