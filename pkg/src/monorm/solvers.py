"""One-dimensional searches shared by the norm and conjugate machinery.

Everything here exploits monotonicity or unimodality, so the results are
exact up to the requested bracket width.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketError

__all__ = ["monotone_boundary", "golden_max", "monotone_cap"]

BISECT_REL_TOL = 1e-10
MAX_DOUBLINGS = 200

_INV_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


def monotone_boundary(
    pred: Callable[[float], bool],
    start: float = 1.0,
    rel_tol: float = BISECT_REL_TOL,
    max_doublings: int = MAX_DOUBLINGS,
) -> tuple[float, float]:
    """Locate the boundary of the up-set {x > 0 : pred(x)}.

    pred must be monotone (false below some threshold, true above).  Returns
    a bracket (lo, hi) with pred(lo) false, pred(hi) true and
    hi - lo <= rel_tol * hi.
    """
    if pred(start):
        hi = start
        lo = start / 2.0
        for _ in range(max_doublings):
            if not pred(lo):
                break
            hi = lo
            lo /= 2.0
        else:
            raise BracketError(f"predicate stayed true down to {lo}")
    else:
        lo = start
        hi = start * 2.0
        for _ in range(max_doublings):
            if pred(hi):
                break
            lo = hi
            hi *= 2.0
        else:
            raise BracketError(f"predicate stayed false up to {hi}")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-10,
) -> tuple[float, float]:
    """Maximize a unimodal (concave or quasiconcave) f on [lo, hi].

    f may return -inf on part of the interval.  Returns (argmax, max) over
    all evaluated points, endpoints included.
    """
    best_x, best_f = lo, f(lo)
    fe = f(hi)
    if fe > best_f:
        best_x, best_f = hi, fe

    a, b = lo, hi
    x1 = b - _INV_GOLD * (b - a)
    x2 = a + _INV_GOLD * (b - a)
    f1, f2 = f(x1), f(x2)
    span = max(1.0, abs(hi))
    while b - a > rel_tol * span:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLD * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLD * (b - a)
            f1 = f(x1)
        if f1 > best_f:
            best_x, best_f = x1, f1
        if f2 > best_f:
            best_x, best_f = x2, f2
    return best_x, best_f


def monotone_cap(
    g: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    iters: int = 100,
) -> float:
    """Largest x in [lo, hi] with g(x) <= target, for nondecreasing g.

    g may return math.inf.  Assumes g(lo) <= target; returns lo otherwise.
    """
    if g(lo) > target:
        return lo
    if g(hi) <= target:
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo
