"""Nonnegative extended-real scalars.

Values of generators and modulars live in [0, inf].  The infinity is an
explicit tag, never an IEEE payload, so the measure-theoretic convention
0 * inf = 0 holds without NaN propagation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ExtReal", "EXT_ZERO", "EXT_INF", "fin"]


@dataclass(frozen=True, slots=True)
class ExtReal:
    """A finite float >= 0 or the infinity tag.

    Arithmetic conventions: finite + inf = inf, c * inf = inf for c > 0,
    and 0 * inf = 0.  Finite payloads that overflow the float range
    saturate to the infinity tag.
    """

    value: float
    is_finite: bool = True

    def __post_init__(self) -> None:
        if self.is_finite:
            v = self.value
            if math.isnan(v):
                raise ValueError("ExtReal payload must not be NaN")
            if math.isinf(v):
                raise ValueError("use the infinity tag, not an IEEE infinity")
            if v < 0:
                raise ValueError(f"ExtReal payload must be >= 0, got {v}")
        else:
            object.__setattr__(self, "value", math.inf)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ExtReal | float | int") -> "ExtReal":
        if isinstance(other, ExtReal):
            if not (self.is_finite and other.is_finite):
                return EXT_INF
            return fin(self.value + other.value)
        if not self.is_finite:
            return EXT_INF
        return fin(self.value + float(other))

    __radd__ = __add__

    def __mul__(self, c: float | int) -> "ExtReal":
        c = float(c)
        if c < 0:
            raise ValueError("ExtReal supports only nonnegative scalar factors")
        if c == 0.0:
            return EXT_ZERO
        if not self.is_finite:
            return EXT_INF
        return fin(c * self.value)

    __rmul__ = __mul__

    # -- comparisons --------------------------------------------------------

    def _cmp_key(self) -> float:
        return self.value if self.is_finite else math.inf

    def __lt__(self, other: "ExtReal | float | int") -> bool:
        return self._cmp_key() < _key(other)

    def __le__(self, other: "ExtReal | float | int") -> bool:
        return self._cmp_key() <= _key(other)

    def __gt__(self, other: "ExtReal | float | int") -> bool:
        return self._cmp_key() > _key(other)

    def __ge__(self, other: "ExtReal | float | int") -> bool:
        return self._cmp_key() >= _key(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExtReal):
            return self._cmp_key() == other._cmp_key()
        if isinstance(other, (int, float)):
            return self._cmp_key() == float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._cmp_key())

    # -- views --------------------------------------------------------------

    def as_float(self) -> float:
        """The payload, with the infinity tag rendered as math.inf."""
        return self.value if self.is_finite else math.inf

    def __repr__(self) -> str:
        return f"ExtReal({self.value!r})" if self.is_finite else "ExtReal(inf)"


def _key(x: "ExtReal | float | int") -> float:
    return x._cmp_key() if isinstance(x, ExtReal) else float(x)


def fin(x: float) -> ExtReal:
    """Wrap a finite nonnegative float, saturating overflow to the tag."""
    if math.isinf(x):
        return EXT_INF
    return ExtReal(x)


EXT_ZERO = ExtReal(0.0)
EXT_INF = ExtReal(math.inf, is_finite=False)
