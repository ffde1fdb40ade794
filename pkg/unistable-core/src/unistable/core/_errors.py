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


class UnistableError(Exception):
    """Base class for every error raised by unistable"""


class InvalidPointError(UnistableError, ValueError):
    pass


class InvalidDatasetError(UnistableError, ValueError):
    pass


class DatasetIndexError(UnistableError, IndexError):
    pass


class KindMismatchError(UnistableError, ValueError):
    """Dataset, distribution or point kinds (or dimensions) do not agree"""


class InvalidDistributionError(UnistableError, ValueError):
    pass


class StatisticRangeError(UnistableError, ValueError):
    """A statistic produced a value outside its declared range"""


class SamplerExhaustedError(UnistableError):
    """The domain sampler of an audit ran out of points"""


class SolverDidNotConverge(UnistableError):
    pass


class PreconditionViolated(UnistableError, ValueError):
    pass


class SensitivityExceeded(UnistableError, ValueError):
    """A score perturbation is larger than the declared sensitivity"""


class UnknownBoundError(UnistableError, KeyError):
    pass


class InvalidBoundInputs(UnistableError, ValueError):
    pass


class UnknownPresetError(UnistableError, ValueError):
    """No preset (problem, statistic, predictor) is registered under an id"""
