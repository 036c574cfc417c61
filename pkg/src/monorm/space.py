"""Discretized measure spaces and the simple functions living on them.

A non-atomic sigma-finite measure space is simulated by a finite list of
weighted atoms; refinement splits every cell so that statements relying on
non-atomicity can be tested along refinement ladders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpaceMismatchError

__all__ = ["GridMeasureSpace", "SimpleFunction", "pairing", "sgn"]


def sgn(x: float) -> int:
    """Sign with sgn(0) = 0."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class GridMeasureSpace:
    """Ordered atoms (coordinate, weight > 0); each atom stands for a cell
    of width equal to its weight, centred at its coordinate."""

    coords: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("measure space needs at least one atom")
        if len(self.coords) != len(self.weights):
            raise ValueError("coordinate/weight lists differ in length")
        for i, w in enumerate(self.weights):
            if not w > 0:
                raise ValueError(f"atom {i}: weight must be > 0, got {w}")
        for i in range(len(self.coords) - 1):
            if not self.coords[i] < self.coords[i + 1]:
                raise ValueError(
                    f"atom coordinates must be strictly increasing at index {i}"
                )

    @classmethod
    def uniform(cls, n: int, a: float = 0.0, b: float = 1.0) -> "GridMeasureSpace":
        """Midpoints of a uniform partition of [a, b] into n cells."""
        if n < 1:
            raise ValueError("need at least one cell")
        h = (b - a) / n
        coords = tuple(a + (j + 0.5) * h for j in range(n))
        return cls(coords, (h,) * n)

    @property
    def total_mass(self) -> float:
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.coords)

    def items(self):
        return zip(self.coords, self.weights)

    def refine(self, k: int) -> "GridMeasureSpace":
        """Split every cell into k equal subcells (k*n atoms, same mass)."""
        if k < 1:
            raise ValueError("refinement factor must be >= 1")
        coords: list[float] = []
        weights: list[float] = []
        for t, w in self.items():
            left = t - w / 2.0
            sub = w / k
            for j in range(k):
                coords.append(left + (j + 0.5) * sub)
                weights.append(sub)
        return GridMeasureSpace(tuple(coords), tuple(weights))


@dataclass(frozen=True)
class SimpleFunction:
    """Real values on the atoms of a grid measure space."""

    space: GridMeasureSpace
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.space):
            raise SpaceMismatchError(
                f"function has {len(self.values)} values for "
                f"{len(self.space)} atoms"
            )

    @classmethod
    def on(cls, space: GridMeasureSpace, values) -> "SimpleFunction":
        return cls(space, tuple(float(v) for v in values))

    @classmethod
    def constant(cls, space: GridMeasureSpace, c: float) -> "SimpleFunction":
        return cls(space, (float(c),) * len(space))

    def support(self) -> tuple[int, ...]:
        """Atom indices where the function is nonzero."""
        return tuple(i for i, v in enumerate(self.values) if v != 0.0)

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values)

    def sup_norm(self) -> float:
        return max(abs(v) for v in self.values)

    def masked(self, indices) -> "SimpleFunction":
        """Restriction u * chi_A: keep the listed atoms, zero elsewhere."""
        keep = set(indices)
        return SimpleFunction(
            self.space,
            tuple(v if i in keep else 0.0 for i, v in enumerate(self.values)),
        )

    def __mul__(self, c: float) -> "SimpleFunction":
        return SimpleFunction(self.space, tuple(c * v for v in self.values))

    __rmul__ = __mul__

    def __add__(self, other: "SimpleFunction") -> "SimpleFunction":
        _check_same_space(self, other)
        return SimpleFunction(
            self.space, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __neg__(self) -> "SimpleFunction":
        return self * -1.0


def _check_same_space(u: SimpleFunction, v: SimpleFunction) -> None:
    if u.space != v.space:
        raise SpaceMismatchError("functions live on different spaces")


def pairing(u: SimpleFunction, v: SimpleFunction) -> float:
    """The duality pairing  sum_i w_i u_i v_i  (the integral of u*v)."""
    _check_same_space(u, v)
    return sum(
        w * a * b for (_, w), a, b in zip(u.space.items(), u.values, v.values)
    )
