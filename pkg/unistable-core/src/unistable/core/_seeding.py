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

"""Seed derivation shared by every randomized routine.

``mix64(master, index)`` is the splitmix64 output function applied to
``master + (index + 1) * 0x9E3779B97F4A7C15`` modulo 2**64. It is the seed of
trial ``index`` in a sweep seeded with ``master``, so a trial's randomness does
not depend on which worker runs it or in which order.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(master: int, index: int) -> int:
    z = (master + (index + 1) * _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def make_rng(seed: int) -> np.random.Generator:
    """A PCG64 generator seeded with a nonnegative integer."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))
