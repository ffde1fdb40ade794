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

"""Domain points, datasets and finite-support distributions.

All three are immutable value types. They hash and compare by value so they
can key caches and be shared between worker threads.
"""

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from unistable.core._errors import (
    DatasetIndexError,
    InvalidDatasetError,
    InvalidDistributionError,
    InvalidPointError,
    KindMismatchError,
)

# Exactness tolerance for norms and probability sums
EXACT_TOL = 1e-12

Scalar = Union[float, int]


class PointKind(str, enum.Enum):
    VECTOR = "vector"
    LABELED = "labeled"


@dataclass(frozen=True)
class Point:
    """A domain point: a vector in the unit ball, optionally labeled 0 or 1."""

    x: Tuple[float, ...]
    y: Optional[int] = None

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in np.atleast_1d(self.x))
        if not coords:
            raise InvalidPointError("point must have at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise InvalidPointError(f"non-finite coordinate in {coords}")
        norm = math.sqrt(math.fsum(c * c for c in coords))
        if norm > 1.0 + EXACT_TOL:
            raise InvalidPointError(
                f"point {coords} has norm {norm} outside the unit ball"
            )
        object.__setattr__(self, "x", coords)
        if self.y is not None:
            if self.y not in (0, 1):
                raise InvalidPointError(f"label must be 0 or 1, got {self.y}")
            object.__setattr__(self, "y", int(self.y))

    @classmethod
    def vector(cls, x: Union[Scalar, Sequence[Scalar]]) -> "Point":
        return cls(x=x)  # type: ignore[arg-type]

    @classmethod
    def labeled(cls, x: Union[Scalar, Sequence[Scalar]], y: int) -> "Point":
        return cls(x=x, y=y)  # type: ignore[arg-type]

    @property
    def kind(self) -> PointKind:
        return PointKind.VECTOR if self.y is None else PointKind.LABELED

    @property
    def dim(self) -> int:
        return len(self.x)

    @property
    def value(self) -> float:
        """The scalar of a one-dimensional vector point."""
        if self.dim != 1 or self.kind is not PointKind.VECTOR:
            raise InvalidPointError(
                f"{self} is not a one-dimensional vector point"
            )
        return self.x[0]

    def array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)

    def to_json(self) -> Any:
        if self.kind is PointKind.VECTOR:
            return list(self.x)
        return {"x": list(self.x), "y": self.y}

    @classmethod
    def from_json(cls, doc: Any, kind: PointKind) -> "Point":
        if kind is PointKind.LABELED:
            if not isinstance(doc, Mapping):
                raise InvalidPointError(
                    f"labeled point must be an object, got {doc!r}"
                )
            return cls(x=doc["x"], y=doc["y"])
        return cls(x=doc)


def _check_same_kind(
    points: Iterable[Point], what: str
) -> Tuple[PointKind, int]:
    kinds = {(p.kind, p.dim) for p in points}
    if len(kinds) > 1:
        raise KindMismatchError(f"{what} mixes point kinds {sorted(kinds)}")
    return kinds.pop()


@dataclass(frozen=True)
class Dataset:
    """An ordered n-tuple of points of a single kind."""

    points: Tuple[Point, ...]

    def __post_init__(self) -> None:
        points = tuple(self.points)
        if not points:
            raise InvalidDatasetError("a dataset needs at least one point")
        for p in points:
            if not isinstance(p, Point):
                raise InvalidDatasetError(f"{p!r} is not a Point")
        _check_same_kind(points, "dataset")
        object.__setattr__(self, "points", points)

    @classmethod
    def of_scalars(cls, values: Iterable[Scalar]) -> "Dataset":
        return cls(tuple(Point.vector(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def kind(self) -> PointKind:
        return self.points[0].kind

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    @cached_property
    def features(self) -> np.ndarray:
        """n x d matrix of the point coordinates."""
        return np.array([p.x for p in self.points], dtype=float)

    @cached_property
    def labels(self) -> np.ndarray:
        if self.kind is not PointKind.LABELED:
            raise KindMismatchError("vector dataset has no labels")
        return np.array([p.y for p in self.points], dtype=int)

    def replace(self, i: int, z: Point) -> "Dataset":
        """Returns the dataset with position ``i`` set to ``z``."""
        if not 0 <= i < self.n:
            raise DatasetIndexError(
                f"index {i} out of range for dataset of size {self.n}"
            )
        check_compatible(self, z)
        if self.points[i] == z:
            return self
        return Dataset(self.points[:i] + (z,) + self.points[i + 1 :])


def replace(s: Dataset, i: int, z: Point) -> Dataset:
    return s.replace(i, z)


def check_compatible(a: Any, b: Any) -> None:
    """Raises KindMismatchError unless both operands hold the same point kind
    and dimension."""
    if (a.kind, a.dim) != (b.kind, b.dim):
        raise KindMismatchError(
            f"{a.kind.value}/{a.dim}d does not match {b.kind.value}/{b.dim}d"
        )


@dataclass(frozen=True)
class FiniteDistribution:
    """A probability distribution with finite support over domain points."""

    support: Tuple[Point, ...]
    weights: Tuple[float, ...]
    _cdf: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        support = tuple(self.support)
        weights = tuple(float(w) for w in self.weights)
        if not support:
            raise InvalidDistributionError("support must not be empty")
        if len(support) != len(weights):
            raise InvalidDistributionError(
                f"{len(support)} support points but {len(weights)} weights"
            )
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise InvalidDistributionError(
                f"weights must be nonnegative, got {weights}"
            )
        total = math.fsum(weights)
        if abs(total - 1.0) > EXACT_TOL:
            raise InvalidDistributionError(
                f"weights sum to {total!r}, not 1"
            )
        if len(set(support)) != len(support):
            raise InvalidDistributionError("support points must be distinct")
        _check_same_kind(support, "support")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_cdf", np.cumsum(weights))

    @classmethod
    def uniform(cls, support: Sequence[Point]) -> "FiniteDistribution":
        k = len(support)
        return cls(tuple(support), (1.0 / k,) * k)

    @property
    def kind(self) -> PointKind:
        return self.support[0].kind

    @property
    def dim(self) -> int:
        return self.support[0].dim

    @property
    def size(self) -> int:
        return len(self.support)

    def expect(self, f: Callable[[Point], float]) -> float:
        """Exact expectation of ``f`` under the distribution."""
        values = np.fromiter((f(z) for z in self.support), dtype=float)
        return float(np.dot(self.weights, values))

    def sample_indices(self, n: int, rng: np.random.Generator) -> np.ndarray:
        # inverse CDF; zero-weight points are never selected
        u = rng.random(n)
        idx = np.searchsorted(self._cdf, u, side="right")
        return np.minimum(idx, self.size - 1)

    def sample(self, n: int, rng: np.random.Generator) -> Dataset:
        """Draws s ~ P^n."""
        if n < 1:
            raise InvalidDatasetError(f"sample size must be >= 1, got {n}")
        indices = self.sample_indices(n, rng)
        return Dataset(tuple(self.support[i] for i in indices))

    def draw(self, rng: np.random.Generator) -> Point:
        return self.support[int(self.sample_indices(1, rng)[0])]


def dataset_to_json(s: Dataset) -> Dict[str, Any]:
    return {
        "kind": s.kind.value,
        "dim": s.dim,
        "points": [p.to_json() for p in s.points],
    }


def dataset_from_json(doc: Mapping[str, Any]) -> Dataset:
    kind, points = _points_from_json(doc)
    dataset = Dataset(points)
    if dataset.kind is not kind:
        raise KindMismatchError(
            f"document kind {kind.value} does not match its points"
        )
    return dataset


def distribution_to_json(p: FiniteDistribution) -> Dict[str, Any]:
    return {
        "kind": p.kind.value,
        "dim": p.dim,
        "points": [z.to_json() for z in p.support],
        "weights": list(p.weights),
    }


def distribution_from_json(doc: Mapping[str, Any]) -> FiniteDistribution:
    _, points = _points_from_json(doc)
    if "weights" not in doc:
        raise InvalidDistributionError("distribution document has no weights")
    return FiniteDistribution(points, tuple(doc["weights"]))


def _points_from_json(
    doc: Mapping[str, Any]
) -> Tuple[PointKind, Tuple[Point, ...]]:
    try:
        kind = PointKind(doc["kind"])
        points = tuple(Point.from_json(p, kind) for p in doc["points"])
    except (KeyError, TypeError, ValueError) as ex:
        if isinstance(ex, (InvalidPointError, KindMismatchError)):
            raise
        raise InvalidDatasetError(f"malformed point document: {ex}") from ex
    dim = doc.get("dim")
    if dim is not None and any(p.dim != dim for p in points):
        raise KindMismatchError(f"points do not all have dimension {dim}")
    return kind, points
