"""Musielak-Orlicz generator families and the modular.

A generator is a parametrized convex function phi(t, u) on [0, inf] with
phi(t, 0) = 0, phi(t, inf) = inf, lower semi-continuous in u.  Families are
closed forms so derivatives, the bounds

    a(t) = sup{u >= 0 : phi(t,u) = 0},   b(t) = sup{u >= 0 : phi(t,u) < inf},

and (where known) the convex conjugate are exact.

Derivative conventions used throughout:

* the left derivative at 0 is 0;
* the right derivative at u >= b(t) is the infinity tag (the function
  jumps beyond its effective domain), which keeps the k-interval
  bisection predicates monotone.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import DomainError, SpaceMismatchError
from .extreal import EXT_INF, EXT_ZERO, ExtReal, fin
from .space import GridMeasureSpace, SimpleFunction

__all__ = [
    "OrliczGenerator",
    "PowerGenerator",
    "VariableExponentGenerator",
    "ExpMinusOneGenerator",
    "XLogXGenerator",
    "LinearGenerator",
    "IndicatorGenerator",
    "Piece",
    "PiecewiseGenerator",
    "TruncatedGenerator",
    "Delta2Profile",
    "eval_phi",
    "subdiff",
    "generator_bounds",
    "modular",
    "truncate",
    "validate_generator",
    "Violation",
]


def _pow(x: float, p: float, coef: float = 1.0) -> ExtReal:
    """coef * x**p with overflow saturating to the infinity tag."""
    if x == 0.0:
        return EXT_ZERO
    try:
        v = coef * x**p
    except OverflowError:
        return EXT_INF
    return fin(v)


@dataclass(frozen=True)
class Delta2Profile:
    """A doubling constant K and threshold f witnessing phi(t,2u) <= K phi(t,u)
    for u >= f; carried by families known to satisfy the doubling condition."""

    constant: float
    threshold: float = 0.0


class OrliczGenerator:
    """Base class: evaluation, one-sided derivatives, and capability flags."""

    family: str = "abstract"
    #: phi(t, u) < inf for every finite u
    finite_valued: bool = True
    #: phi(t, .) is C1 on [0, b) with right derivative 0 at the origin
    differentiable: bool = False

    # -- evaluation ----------------------------------------------------------

    def phi(self, t: float, u: float) -> ExtReal:
        if u < 0:
            raise DomainError(f"phi is defined for u >= 0, got {u}")
        if math.isinf(u):
            return EXT_INF
        return self._phi(t, u)

    def phi_ext(self, t: float, x: ExtReal) -> ExtReal:
        return self._phi(t, x.value) if x.is_finite else EXT_INF

    def left_deriv(self, t: float, u: float) -> ExtReal:
        """Left derivative, with the convention phi'_-(t, 0) = 0.

        Beyond the effective domain the value is the infinity tag.
        """
        if u <= 0:
            return EXT_ZERO
        b = self.finite_bound(t)
        if b.is_finite and u > b.value:
            return EXT_INF
        return self._left(t, u)

    def right_deriv(self, t: float, u: float) -> ExtReal:
        """Right derivative; infinity at and beyond b(t)."""
        if u < 0:
            raise DomainError(f"derivative requested at u = {u} < 0")
        b = self.finite_bound(t)
        if b.is_finite and u >= b.value:
            return EXT_INF
        return self._right(t, u)

    # -- structure -----------------------------------------------------------

    def zero_bound(self, t: float) -> float:
        return 0.0

    def finite_bound(self, t: float) -> ExtReal:
        return EXT_INF

    def analytic_conjugate(self) -> Optional["OrliczGenerator"]:
        return None

    def derivative_jumps(self, t: float) -> Optional[list[tuple[float, ExtReal, ExtReal]]]:
        """Jump discontinuities of the derivative as (location, lo, hi).

        Includes the convention gap (0, 0, phi'_+(t,0)) when the right
        derivative at the origin is positive.  None means "unknown" and
        callers fall back to scanning.
        """
        return None

    def delta2_profile(self) -> Optional[Delta2Profile]:
        """A (K, f) pair for the doubling condition, or None if the family
        does not satisfy it."""
        return None

    @property
    def delta2(self) -> bool:
        return self.delta2_profile() is not None

    def derivative_threshold(self, t: float, n: float) -> float:
        """sup{x >= 0 : phi'_-(t, x) <= n} (may be math.inf)."""
        if self.left_deriv(t, 1.0) > n:
            hi = 1.0
            lo = 0.0
        else:
            lo = 1.0
            hi = 2.0
            for _ in range(200):
                b = self.finite_bound(t)
                if b.is_finite and hi >= b.value:
                    hi = b.value
                    if self.left_deriv(t, hi) <= n:
                        return hi
                    break
                if self.left_deriv(t, hi) > n:
                    break
                lo = hi
                hi *= 2.0
            else:
                return math.inf
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self.left_deriv(t, mid) <= n:
                lo = mid
            else:
                hi = mid
        return lo

    # -- to be provided by families -------------------------------------------

    def _phi(self, t: float, u: float) -> ExtReal:
        raise NotImplementedError

    def _left(self, t: float, u: float) -> ExtReal:
        raise NotImplementedError

    def _right(self, t: float, u: float) -> ExtReal:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# closed-form families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerGenerator(OrliczGenerator):
    """phi(t, u) = u**p / p with constant p > 1; conjugate is v**q / q."""

    p: float
    family = "power"
    finite_valued = True
    differentiable = True

    def __post_init__(self) -> None:
        if not self.p > 1:
            raise ValueError(f"power family needs p > 1, got {self.p}")

    def _phi(self, t, u):
        return _pow(u, self.p, 1.0 / self.p)

    def _left(self, t, u):
        return _pow(u, self.p - 1.0)

    def _right(self, t, u):
        return _pow(u, self.p - 1.0) if u > 0 else EXT_ZERO

    def analytic_conjugate(self):
        q = self.p / (self.p - 1.0)
        return PowerGenerator(q)

    def derivative_jumps(self, t):
        return []

    def delta2_profile(self):
        return Delta2Profile(2.0**self.p)

    def derivative_threshold(self, t, n):
        return n ** (1.0 / (self.p - 1.0))


@dataclass(frozen=True)
class VariableExponentGenerator(OrliczGenerator):
    """phi(t, u) = c(t) * u**p(t) with p(t) > 1.

    Parameters are either callables of the coordinate or per-atom arrays
    bound to a fixed coordinate list.  With unbounded exponents the family
    leaves the doubling class, which is the interesting regime for the
    divergence gallery.
    """

    exponent: Callable[[float], float] | tuple[float, ...]
    coef: Callable[[float], float] | tuple[float, ...] | None = None
    coords: tuple[float, ...] | None = None
    exponent_bound: float | None = None
    family = "varexp"
    finite_valued = True
    differentiable = True

    def __post_init__(self) -> None:
        if isinstance(self.exponent, tuple):
            if self.coords is None or len(self.coords) != len(self.exponent):
                raise ValueError("per-atom exponents need matching coordinates")
            if self.exponent_bound is None:
                object.__setattr__(self, "exponent_bound", max(self.exponent))
        if isinstance(self.coef, tuple) and (
            self.coords is None or len(self.coords) != len(self.coef)
        ):
            raise ValueError("per-atom coefficients need matching coordinates")

    @classmethod
    def from_values(
        cls,
        space: GridMeasureSpace,
        p_values: Sequence[float],
        c_values: Sequence[float] | None = None,
    ) -> "VariableExponentGenerator":
        return cls(
            exponent=tuple(float(p) for p in p_values),
            coef=None if c_values is None else tuple(float(c) for c in c_values),
            coords=space.coords,
        )

    def _lookup(self, table: tuple[float, ...], t: float) -> float:
        i = bisect_left(self.coords, t)
        for j in (i - 1, i):
            if 0 <= j < len(self.coords) and abs(self.coords[j] - t) <= 1e-12:
                return table[j]
        raise DomainError(f"per-atom parameters are not defined at t = {t}")

    def _p(self, t: float) -> float:
        p = (
            self._lookup(self.exponent, t)
            if isinstance(self.exponent, tuple)
            else self.exponent(t)
        )
        if not p > 1:
            raise DomainError(f"variable exponent must be > 1, got {p} at t = {t}")
        return p

    def _c(self, t: float) -> float:
        if self.coef is None:
            return 1.0
        c = self._lookup(self.coef, t) if isinstance(self.coef, tuple) else self.coef(t)
        if not c > 0:
            raise DomainError(f"coefficient must be > 0, got {c} at t = {t}")
        return c

    def _phi(self, t, u):
        return _pow(u, self._p(t), self._c(t))

    def _left(self, t, u):
        p = self._p(t)
        return _pow(u, p - 1.0, self._c(t) * p)

    def _right(self, t, u):
        return self._left(t, u) if u > 0 else EXT_ZERO

    def analytic_conjugate(self):
        def conj_p(t: float) -> float:
            p = self._p(t)
            return p / (p - 1.0)

        def conj_c(t: float) -> float:
            p = self._p(t)
            c = self._c(t)
            return (c * p) ** (-1.0 / (p - 1.0)) * (p - 1.0) / p

        if isinstance(self.exponent, tuple):
            return VariableExponentGenerator(
                exponent=tuple(conj_p(t) for t in self.coords),
                coef=tuple(conj_c(t) for t in self.coords),
                coords=self.coords,
            )
        # q = p/(p-1) blows up as p -> 1+, so a sup bound on p says nothing
        # about q; leave the conjugate's bound unknown
        return VariableExponentGenerator(exponent=conj_p, coef=conj_c)

    def derivative_jumps(self, t):
        return []

    def delta2_profile(self):
        if self.exponent_bound is None:
            return None
        return Delta2Profile(2.0**self.exponent_bound)

    def derivative_threshold(self, t, n):
        p = self._p(t)
        return (n / (self._c(t) * p)) ** (1.0 / (p - 1.0))


@dataclass(frozen=True)
class ExpMinusOneGenerator(OrliczGenerator):
    """phi(t, u) = exp(u) - 1 - u; grows too fast for the doubling condition."""

    family = "expminusone"
    finite_valued = True
    differentiable = True

    def _phi(self, t, u):
        try:
            return fin(math.expm1(u) - u)
        except OverflowError:
            return EXT_INF

    def _deriv(self, u):
        try:
            return fin(math.expm1(u))
        except OverflowError:
            return EXT_INF

    def _left(self, t, u):
        return self._deriv(u)

    def _right(self, t, u):
        return self._deriv(u)

    def analytic_conjugate(self):
        return XLogXGenerator()

    def derivative_jumps(self, t):
        return []

    def derivative_threshold(self, t, n):
        return math.log1p(n)


@dataclass(frozen=True)
class XLogXGenerator(OrliczGenerator):
    """phi(t, v) = (1+v)*log(1+v) - v, the convex conjugate of exp(u)-1-u."""

    family = "xlogx"
    finite_valued = True
    differentiable = True

    def _phi(self, t, u):
        return fin((1.0 + u) * math.log1p(u) - u)

    def _left(self, t, u):
        return fin(math.log1p(u))

    def _right(self, t, u):
        return fin(math.log1p(u))

    def analytic_conjugate(self):
        return ExpMinusOneGenerator()

    def derivative_jumps(self, t):
        return []

    def delta2_profile(self):
        # phi(2v)/phi(v) decreases from 4 (v -> 0) to 2 (v -> inf)
        return Delta2Profile(4.0)

    def derivative_threshold(self, t, n):
        return math.expm1(n)


@dataclass(frozen=True)
class LinearGenerator(OrliczGenerator):
    """phi(t, u) = slope * u; conjugate is the indicator of [0, slope]."""

    slope: float = 1.0
    family = "linear"
    finite_valued = True
    differentiable = False

    def __post_init__(self) -> None:
        if not self.slope > 0:
            raise ValueError("linear family needs slope > 0")

    def _phi(self, t, u):
        return fin(self.slope * u)

    def _left(self, t, u):
        return fin(self.slope)

    def _right(self, t, u):
        return fin(self.slope)

    def analytic_conjugate(self):
        return IndicatorGenerator(self.slope)

    def derivative_jumps(self, t):
        return [(0.0, EXT_ZERO, fin(self.slope))]

    def delta2_profile(self):
        return Delta2Profile(2.0)

    def derivative_threshold(self, t, n):
        return math.inf if self.slope <= n else 0.0


@dataclass(frozen=True)
class IndicatorGenerator(OrliczGenerator):
    """phi(t, u) = 0 for u <= c, infinity beyond; conjugate is c * v."""

    c: float = 1.0
    family = "indicator"
    finite_valued = False
    differentiable = False

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError("indicator family needs threshold c > 0")

    def _phi(self, t, u):
        return EXT_ZERO if u <= self.c else EXT_INF

    def _left(self, t, u):
        return EXT_ZERO

    def _right(self, t, u):
        # the base wrapper returns infinity at and beyond u = c
        return EXT_ZERO

    def zero_bound(self, t):
        return self.c

    def finite_bound(self, t):
        return fin(self.c)

    def analytic_conjugate(self):
        return LinearGenerator(self.c)

    def derivative_jumps(self, t):
        return [(self.c, EXT_ZERO, EXT_INF)]

    def derivative_threshold(self, t, n):
        return self.c


# ---------------------------------------------------------------------------
# piecewise linear-quadratic family
# ---------------------------------------------------------------------------


class Piece(NamedTuple):
    """One derivative segment: phi'(x) = (level at start) + slope*(x - start).

    width   length of the segment (None only for the final unbounded one)
    jump    derivative jump at the segment start (piece 0: the slope at 0+)
    slope   growth rate of the derivative on the segment
    """

    width: float | None
    jump: float
    slope: float


@dataclass(frozen=True)
class PiecewiseGenerator(OrliczGenerator):
    """Convex piecewise linear/quadratic generator with derivative jumps.

    The class is closed under conjugation: derivative jumps become flat
    derivative segments of the conjugate and vice versa; a linear tail
    becomes a bounded effective domain.
    """

    pieces: tuple[Piece, ...]
    bounded: bool = False
    family = "plq"

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValueError("need at least one piece")
        pieces = tuple(
            Piece(None if p.width is None else float(p.width), float(p.jump), float(p.slope))
            for p in self.pieces
        )
        object.__setattr__(self, "pieces", pieces)
        for i, p in enumerate(pieces):
            if p.jump < 0 or p.slope < 0:
                raise ValueError(f"piece {i}: jumps and slopes must be >= 0")
            if p.width is not None and not p.width > 0:
                raise ValueError(f"piece {i}: width must be > 0")
            if p.width is None and i != len(pieces) - 1:
                raise ValueError("only the final piece may be unbounded")
        last = pieces[-1]
        if self.bounded:
            if last.width is None:
                raise ValueError("a bounded generator needs a final width")
        else:
            if last.width is not None:
                raise ValueError("an unbounded generator needs an unbounded final piece")
            if self._tail_level() == 0.0 and last.slope == 0.0:
                raise ValueError("phi must eventually grow (phi(inf) = inf)")

    def _tail_level(self) -> float:
        level = 0.0
        for p in self.pieces:
            level += p.jump
            if p.width is not None:
                level += p.slope * p.width
        return level

    @cached_property
    def _table(self):
        """(starts, start_derivs, start_values, end, end_value, end_deriv)."""
        starts: list[float] = []
        derivs: list[float] = []
        values: list[float] = []
        x, val, d = 0.0, 0.0, 0.0
        for p in self.pieces:
            d += p.jump
            starts.append(x)
            derivs.append(d)
            values.append(val)
            if p.width is not None:
                val += d * p.width + 0.5 * p.slope * p.width**2
                d += p.slope * p.width
                x += p.width
        end = x if self.bounded else math.inf
        return tuple(starts), tuple(derivs), tuple(values), end, val, d

    @property
    def finite_valued(self):  # type: ignore[override]
        return not self.bounded

    @property
    def differentiable(self):  # type: ignore[override]
        if self.bounded:
            return False
        if self.pieces[0].jump > 0:
            return False
        return all(p.jump == 0.0 for p in self.pieces[1:])

    def _locate_right(self, u: float) -> int:
        starts = self._table[0]
        return max(0, bisect_right(starts, u) - 1)

    def _phi(self, t, u):
        starts, derivs, values, end, end_value, _ = self._table
        if self.bounded and u > end:
            return EXT_INF
        if self.bounded and u == end:
            return fin(end_value)
        j = self._locate_right(u)
        du = u - starts[j]
        return fin(values[j] + derivs[j] * du + 0.5 * self.pieces[j].slope * du * du)

    def _left(self, t, u):
        starts, derivs, _, end, _, end_deriv = self._table
        if self.bounded and u >= end:
            return fin(end_deriv)
        i = bisect_left(starts, u)
        if i < len(starts) and starts[i] == u:
            j = i - 1
            p = self.pieces[j]
            return fin(derivs[j] + p.slope * (u - starts[j]))
        j = i - 1
        return fin(derivs[j] + self.pieces[j].slope * (u - starts[j]))

    def _right(self, t, u):
        starts, derivs, _, _, _, _ = self._table
        j = self._locate_right(u)
        return fin(derivs[j] + self.pieces[j].slope * (u - starts[j]))

    def zero_bound(self, t):
        starts, derivs, _, end, _, _ = self._table
        for j, p in enumerate(self.pieces):
            if derivs[j] > 0 or p.slope > 0:
                return starts[j]
        return end

    def finite_bound(self, t):
        end = self._table[3]
        return fin(end) if self.bounded else EXT_INF

    def derivative_jumps(self, t):
        starts, derivs, _, end, _, end_deriv = self._table
        out: list[tuple[float, ExtReal, ExtReal]] = []
        if self.pieces[0].jump > 0:
            out.append((0.0, EXT_ZERO, fin(derivs[0])))
        for j in range(1, len(self.pieces)):
            p = self.pieces[j]
            if p.jump > 0:
                out.append((starts[j], fin(derivs[j] - p.jump), fin(derivs[j])))
        if self.bounded:
            out.append((end, fin(end_deriv), EXT_INF))
        return out

    def analytic_conjugate(self):
        conj: list[Piece] = []
        pending = 0.0
        d0 = self.pieces[0].jump
        if d0 > 0:
            conj.append(Piece(d0, 0.0, 0.0))
        conj_bounded = False
        for j, p in enumerate(self.pieces):
            if j >= 1 and p.jump > 0:
                conj.append(Piece(p.jump, pending, 0.0))
                pending = 0.0
            if p.slope > 0:
                width = None if p.width is None else p.slope * p.width
                conj.append(Piece(width, pending, 1.0 / p.slope))
                pending = 0.0
            else:
                if p.width is None:
                    conj_bounded = True
                else:
                    pending += p.width
        if self.bounded:
            conj.append(Piece(None, pending, 0.0))
        return PiecewiseGenerator(tuple(conj), bounded=conj_bounded)

    def delta2_profile(self):
        if self.bounded:
            return None
        a = self.zero_bound(0.0)
        f = 1.25 * a if a > 0 else 0.0
        k = _estimate_doubling_constant(self, 0.0, f)
        return Delta2Profile(k, f)

    def derivative_threshold(self, t, n):
        starts, derivs, _, end, _, end_deriv = self._table
        for j, p in enumerate(self.pieces):
            if derivs[j] > n:
                return starts[j]
            if p.slope > 0:
                seg_end = derivs[j] + (
                    p.slope * p.width if p.width is not None else math.inf
                )
                if seg_end > n:
                    return starts[j] + (n - derivs[j]) / p.slope
        return end


def _estimate_doubling_constant(gen: OrliczGenerator, t: float, f: float) -> float:
    """Sampled sup of phi(t,2u)/phi(t,u) over u >= f, with a safety margin."""
    lo = max(f, 1e-6)
    hi = 1e5 * (1.0 + lo)
    worst = 2.0
    steps = 240
    ratio_step = (hi / lo) ** (1.0 / steps)
    u = lo
    for _ in range(steps + 1):
        den = gen.phi(t, u)
        num = gen.phi(t, 2.0 * u)
        if den.is_finite and den.value > 0 and num.is_finite:
            worst = max(worst, num.value / den.value)
        u *= ratio_step
    return worst * 1.02


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedGenerator(OrliczGenerator):
    """Derivative capped at n: phi_n(t,u) = integral of min(phi'_-(t,x), n).

    Finite-valued, below the base generator, and increasing to it as n grows.
    """

    base: OrliczGenerator
    n: float
    family = "truncated"
    finite_valued = True

    _thresholds: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.n > 0:
            raise ValueError("truncation level must be > 0")

    @property
    def differentiable(self):  # type: ignore[override]
        return self.base.differentiable

    def _threshold(self, t: float) -> float:
        u_n = self._thresholds.get(t)
        if u_n is None:
            u_n = self.base.derivative_threshold(t, self.n)
            b = self.base.finite_bound(t)
            if b.is_finite:
                u_n = min(u_n, b.value)
            self._thresholds[t] = u_n
        return u_n

    def _phi(self, t, u):
        u_n = self._threshold(t)
        if u <= u_n:
            return self.base.phi(t, u)
        head = self.base.phi(t, u_n)
        return head + self.n * (u - u_n)

    def _left(self, t, u):
        d = self.base.left_deriv(t, u)
        return d if d <= self.n else fin(self.n)

    def _right(self, t, u):
        d = self.base.right_deriv(t, u)
        return d if d <= self.n else fin(self.n)

    def zero_bound(self, t):
        return self.base.zero_bound(t)

    def derivative_jumps(self, t):
        base_jumps = self.base.derivative_jumps(t)
        if base_jumps is None:
            return None
        out = []
        cap = fin(self.n)
        for x, lo, hi in base_jumps:
            lo2 = lo if lo <= cap else cap
            hi2 = hi if hi <= cap else cap
            if lo2 < hi2:
                out.append((x, lo2, hi2))
        return out

    def delta2_profile(self):
        a = self.zero_bound(0.0)
        f = 1.25 * a if a > 0 else 0.0
        return Delta2Profile(_estimate_doubling_constant(self, 0.0, f), f)

    def derivative_threshold(self, t, n):
        if n >= self.n:
            return math.inf
        return self.base.derivative_threshold(t, n)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def eval_phi(gen: OrliczGenerator, t: float, u: float) -> ExtReal:
    """phi(t, u); the infinity tag exactly beyond the effective domain."""
    return gen.phi(t, u)


def subdiff(gen: OrliczGenerator, t: float, u: float) -> tuple[ExtReal, ExtReal]:
    """The subdifferential interval [phi'_-(t,u), phi'_+(t,u)].

    Raises DomainError beyond b(t).  At u = 0 the lower end is 0 by
    convention; at u = b(t) the upper end is the infinity tag.
    """
    if u < 0:
        raise DomainError(f"subdifferential requested at u = {u} < 0")
    b = gen.finite_bound(t)
    if b.is_finite and u > b.value:
        raise DomainError(f"u = {u} lies outside the effective domain (b = {b.value})")
    return gen.left_deriv(t, u), gen.right_deriv(t, u)


def generator_bounds(gen: OrliczGenerator, t: float) -> tuple[float, ExtReal]:
    """(a(t), b(t)): the largest zero and the boundary of the finite domain."""
    return gen.zero_bound(t), gen.finite_bound(t)


def modular(
    gen: OrliczGenerator, space: GridMeasureSpace, u: SimpleFunction
) -> ExtReal:
    """I(u) = sum_i w_i * phi(t_i, |u_i|); infinite if any atom is.

    The sum is correctly rounded (math.fsum), so it does not depend on the
    atom order and splitting over disjoint supports loses nothing.
    """
    if u.space != space:
        raise SpaceMismatchError("function does not live on the given space")
    parts = []
    for (t, w), ui in zip(space.items(), u.values):
        e = gen.phi(t, abs(ui))
        if not e.is_finite:
            return EXT_INF
        parts.append(w * e.value)
    return fin(math.fsum(parts))


def truncate(gen: OrliczGenerator, n: float) -> TruncatedGenerator:
    """The derivative-capped generator; finite-valued and <= gen pointwise."""
    return TruncatedGenerator(gen, float(n))


@dataclass(frozen=True)
class Violation:
    check: str
    t: float
    detail: str


def validate_generator(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    u_grid: Sequence[float] | None = None,
) -> list[Violation]:
    """Numerically assert the defining properties on a sample grid.

    Checks: phi(t,0) = 0 with the right limit 0, monotonicity, midpoint
    convexity, lower semi-continuity at a finite b(t), ordered and
    nondecreasing one-sided derivatives, phi(t,inf) = inf.
    Returns an empty list for every built-in family.
    """
    out: list[Violation] = []
    ts = space.coords[:50]
    for t in ts:
        b = gen.finite_bound(t)
        if u_grid is None:
            top = min(b.value * 0.999 if b.is_finite else 50.0, 50.0)
            grid = sorted(
                {0.0, top}
                | {top * j / 49.0 for j in range(1, 49)}
                | {top * 10.0**-k for k in range(1, 7)}
            )
        else:
            grid = sorted(set(float(x) for x in u_grid))

        if gen.phi(t, 0.0) != EXT_ZERO:
            out.append(Violation("zero_at_origin", t, f"phi(t,0) = {gen.phi(t, 0.0)}"))
        small = gen.phi(t, 1e-9)
        if small.is_finite and small.value > 1e-6:
            out.append(Violation("limit_at_origin", t, f"phi(t,1e-9) = {small.value}"))
        if gen.phi(t, math.inf) != EXT_INF:
            out.append(Violation("infinite_at_infinity", t, "phi(t,inf) finite"))

        prev = EXT_ZERO
        for u in grid:
            cur = gen.phi(t, u)
            if cur < prev:
                out.append(Violation("monotone", t, f"phi decreases at u = {u}"))
            prev = cur

        for i in range(len(grid) - 2):
            u1, u2 = grid[i], grid[i + 2]
            mid = 0.5 * (u1 + u2)
            f1, f2, fm = gen.phi(t, u1), gen.phi(t, u2), gen.phi(t, mid)
            if f1.is_finite and f2.is_finite and fm.is_finite:
                slack = 0.5 * (f1.value + f2.value) - fm.value
                if slack < -1e-12 * max(1.0, f1.value + f2.value):
                    out.append(
                        Violation(
                            "midpoint_convexity",
                            t,
                            f"witness ({u1}, {mid}, {u2}): slack {slack:.3e}",
                        )
                    )

        if b.is_finite:
            val_at_b = gen.phi(t, b.value)
            approach = gen.phi(t, b.value * (1.0 - 1e-9))
            if val_at_b.is_finite != approach.is_finite or (
                val_at_b.is_finite
                and abs(val_at_b.value - approach.value) > 1e-6 * (1.0 + val_at_b.value)
            ):
                out.append(
                    Violation("lower_semicontinuity", t, f"jump at b = {b.value}")
                )

        prev_lo, prev_hi = EXT_ZERO, EXT_ZERO
        for u in grid:
            if b.is_finite and u > b.value:
                continue
            lo, hi = gen.left_deriv(t, u), gen.right_deriv(t, u)
            if lo > hi:
                out.append(Violation("derivative_order", t, f"lo > hi at u = {u}"))
            if u > 0 and (lo < prev_lo or hi < prev_hi):
                out.append(Violation("derivative_monotone", t, f"decrease at u = {u}"))
            prev_lo, prev_hi = lo, hi
    return out
