"""Support functionals, smooth-point classification, and space smoothness.

On the non-degenerate branch a support functional at u is built from the
subdifferential of the generator along k* u: densities take values in
[phi'_-(t, k*|u(t)|), phi'_+(t, k*|u(t)|)], and the conjugate modular of the
selection must reach 1, any shortfall being singular mass.  On the
degenerate branch the density is pinned to b* on the support.

Finite grids carry no genuinely singular functionals, so constructions that
need singular mass are flagged as non-atomic-limit constructs; their
singular clause cannot be realized atom-by-atom.

All "= 1" and "= 0" clause checks use the equality band eps_eq = 1e-7,
absorbing the error of the nested 1e-10 bisections underneath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .conjugate import conjugate
from .errors import DomainError
from .extreal import EXT_INF, EXT_ZERO, ExtReal, fin
from .generators import OrliczGenerator, modular
from .norms import (
    K_WIDEN_REL,
    KSetDegenerate,
    KSetNonEmpty,
    delta2_check,
    k_interval,
)
from .duality import DualDensity, dual_functional_norm
from .solvers import monotone_cap
from .space import GridMeasureSpace, SimpleFunction, pairing, sgn

__all__ = [
    "SupportFunctional",
    "ClauseCheck",
    "VerifyReport",
    "SmoothnessReport",
    "SpaceSmoothnessReport",
    "GapProfile",
    "DensitySurvey",
    "construct_support_functional",
    "verify_support_functional",
    "classify_smooth_point",
    "check_space_smoothness",
    "smoothness_gap_function",
    "support_density_survey",
]

EPS_EQ = 1e-7


@dataclass(frozen=True)
class SupportFunctional:
    """A norm-one dual element attaining the Orlicz norm at its function."""

    density: SimpleFunction
    s_norm: float
    norm_value: float
    achieved: float
    limit_construct: bool = False


@dataclass(frozen=True)
class ClauseCheck:
    name: str
    value: float
    target: float
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class VerifyReport:
    branch: str
    clauses: tuple[ClauseCheck, ...]
    passed: bool


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    branch: str
    conditions: dict[str, ClauseCheck]
    witnesses: tuple[SimpleFunction, SimpleFunction] | None
    note: str = ""


@dataclass(frozen=True)
class SpaceSmoothnessReport:
    smooth: bool
    cond_a: ClauseCheck
    cond_b: ClauseCheck
    cond_c: ClauseCheck
    atom_evidence: dict[str, tuple] = field(default_factory=dict)

    def failing(self) -> set[str]:
        out = set()
        if not self.cond_a.passed:
            out.add("a")
        if not self.cond_b.passed:
            out.add("b")
        if not self.cond_c.passed:
            out.add("c")
        return out


@dataclass(frozen=True)
class GapProfile:
    """Per-atom first location where the derivative gap reaches delta."""

    locations: tuple[ExtReal, ...]
    finite_mask: tuple[bool, ...]


# ---------------------------------------------------------------------------
# subdifferential segments along the k-interval
# ---------------------------------------------------------------------------


def _segments(
    gen: OrliczGenerator,
    conj: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    k: float,
    widen: float = K_WIDEN_REL,
):
    """Per atom: (lo, hi, phi*(lo), phi*(hi)) of the subdifferential at
    k|u_i|, with the argument widened by the bisection tolerance so that
    derivative jumps sitting exactly at the boundary are seen whole."""
    segs = []
    for (t, w), ui in zip(space.items(), u.values):
        x = k * abs(ui)
        lo = gen.left_deriv(t, x * (1.0 - widen))
        hi = gen.right_deriv(t, x * (1.0 + widen)) if x > 0 else gen.right_deriv(t, 0.0)
        if ui == 0.0:
            lo, hi = EXT_ZERO, gen.right_deriv(t, 0.0)
        c_lo = conj.phi_ext(t, lo)
        c_hi = conj.phi_ext(t, hi)
        segs.append((t, w, lo, hi, c_lo, c_hi))
    return segs


def _select_density(
    conj: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    segs,
    order,
) -> tuple[list[float], float]:
    """Raise magnitudes from the lower derivative toward the upper one in
    the given atom order until the conjugate modular reaches 1.

    Off-support atoms stay at zero (the sign condition pins them).  Returns
    the signed values and the final modular."""
    mags = [seg[2].value for seg in segs]  # start at phi'_-
    for i, ui in enumerate(u.values):
        if ui == 0.0:
            mags[i] = 0.0
    total = 0.0
    for i, (t, w, lo, hi, c_lo, c_hi) in enumerate(segs):
        if u.values[i] == 0.0:
            continue
        total += w * c_lo.value
    for i in order:
        t, w, lo, hi, c_lo, c_hi = segs[i]
        if u.values[i] == 0.0:
            continue
        budget = 1.0 - total
        if budget <= 0.0:
            break
        if hi.is_finite and c_hi.is_finite and w * (c_hi.value - c_lo.value) <= budget:
            mags[i] = hi.value
            total += w * (c_hi.value - c_lo.value)
            continue
        # fractional atom: bisect inside the segment for the exact level
        top = hi.value if hi.is_finite else _segment_top(conj, t, lo.value, budget / w + c_lo.value)

        def cost(m: float, t=t, w=w, c_lo=c_lo) -> float:
            c = conj.phi(t, m)
            return w * (c.value - c_lo.value) if c.is_finite else math.inf

        m = monotone_cap(cost, budget, lo.value, top)
        gained = cost(m)
        if math.isfinite(gained) and gained > 0.0:
            mags[i] = m
            total += gained
    values = [sgn(ui) * m for ui, m in zip(u.values, mags)]
    return values, total


def _segment_top(conj: OrliczGenerator, t: float, lo: float, level: float) -> float:
    """An upper bracket for the magnitude whose conjugate value reaches level."""
    hi = max(1.0, 2.0 * lo)
    for _ in range(200):
        c = conj.phi(t, hi)
        if not c.is_finite or c.value >= level:
            return hi
        hi *= 2.0
    return hi


def construct_support_functional(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    eps_eq: float = EPS_EQ,
) -> SupportFunctional:
    """Build the support functional at u.

    Non-degenerate branch: signed selection inside the subdifferential at
    k* u, raised atomwise (lowest index first, final fractional atom) until
    the conjugate modular reaches 1; any remaining slack becomes singular
    mass and flags the result as a non-atomic-limit construct.  Degenerate
    branch: the density is sgn(u) b* on the support.
    """
    if u.is_zero():
        raise DomainError("support functionals are defined for u != 0")
    conj = conjugate(gen)
    ks = k_interval(gen, space, u, conj=conj)
    if isinstance(ks, KSetDegenerate):
        vals = []
        for (t, _), ui in zip(space.items(), u.values):
            if ui == 0.0:
                vals.append(0.0)
            else:
                vals.append(sgn(ui) * conj.finite_bound(t).value)
        v = SimpleFunction(space, tuple(vals))
        d = DualDensity(v, 0.0)
        return SupportFunctional(
            density=v,
            s_norm=0.0,
            norm_value=dual_functional_norm(gen, space, d, conj=conj),
            achieved=pairing(u, v),
            limit_construct=False,
        )

    segs = _segments(gen, conj, space, u, ks.k_star)
    values, total = _select_density(conj, space, u, segs, range(len(space)))
    s_norm = max(0.0, 1.0 - total)
    if s_norm < eps_eq:
        s_norm = 0.0
    v = SimpleFunction(space, tuple(values))
    d = DualDensity(v, s_norm)
    achieved = pairing(u, v) + s_norm / ks.k_star
    return SupportFunctional(
        density=v,
        s_norm=s_norm,
        norm_value=dual_functional_norm(gen, space, d, conj=conj),
        achieved=achieved,
        limit_construct=s_norm > 0.0,
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _k_probes(ks: KSetNonEmpty) -> list[float]:
    if ks.k_double_star - ks.k_star > 4.0 * K_WIDEN_REL * ks.k_star:
        mid = 0.5 * (ks.k_star + ks.k_double_star)
        return [ks.k_star, mid, ks.k_double_star]
    return [ks.k_star]


def verify_support_functional(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    f: DualDensity,
    eps_eq: float = EPS_EQ,
) -> VerifyReport:
    """Check the support-functional conditions clause by clause.

    Non-degenerate branch: (i) the conjugate modular of the density plus the
    singular mass equals 1; (ii) the singular clause, which has no grid
    realization and is vacuous only with zero singular mass; (iii) signs
    match u and magnitudes lie in the subdifferential at k|u|, for every
    probed k in [k*, k**].
    """
    if u.is_zero():
        raise DomainError("support functionals are defined for u != 0")
    conj = conjugate(gen)
    ks = k_interval(gen, space, u, conj=conj)
    m = modular(conj, space, f.v)
    clauses: list[ClauseCheck] = []

    if isinstance(ks, KSetNonEmpty):
        branch = "k_nonempty"
        total = m.as_float() + f.s_norm
        clauses.append(
            ClauseCheck(
                "modular_plus_singular",
                total,
                1.0,
                m.is_finite and abs(total - 1.0) <= eps_eq,
            )
        )
        if f.s_norm <= eps_eq:
            clauses.append(
                ClauseCheck(
                    "singular_attainment", f.s_norm, 0.0, True, "vacuous: no singular mass"
                )
            )
        else:
            clauses.append(
                ClauseCheck(
                    "singular_attainment",
                    f.s_norm,
                    0.0,
                    False,
                    "singular mass has no realization on a finite grid "
                    "(non-atomic-limit construct)",
                )
            )
        worst = 0.0
        ok = True
        for k in _k_probes(ks):
            segs = _segments(gen, conj, space, u, k)
            for (t, w, lo, hi, _, _), ui, vi in zip(segs, u.values, f.v.values):
                if ui == 0.0:
                    if abs(vi) > eps_eq:
                        ok = False
                        worst = max(worst, abs(vi))
                    continue
                mag = abs(vi)
                if mag <= eps_eq:
                    # a zero value is admissible exactly when 0 lies in the
                    # subdifferential (sgn 0 is compatible with either sign)
                    if lo.is_finite and lo.value > eps_eq:
                        ok = False
                        worst = max(worst, lo.value)
                    continue
                if sgn(vi) != sgn(ui):
                    ok = False
                    worst = max(worst, mag + 1.0)
                    continue
                below = lo.value - mag if lo.is_finite else -math.inf
                above = mag - hi.value if hi.is_finite else -math.inf
                excess = max(below, above)
                if excess > eps_eq:
                    ok = False
                    worst = max(worst, excess)
        clauses.append(ClauseCheck("sign_and_subdifferential", worst, 0.0, ok))
    else:
        branch = "k_empty"
        total = m.as_float() + f.s_norm
        clauses.append(
            ClauseCheck(
                "modular_plus_singular_leq",
                total,
                1.0,
                m.is_finite and total <= 1.0 + eps_eq,
            )
        )
        worst = 0.0
        ok = True
        for (t, _), ui, vi in zip(space.items(), u.values, f.v.values):
            if ui == 0.0:
                continue
            want = sgn(ui) * conj.finite_bound(t).value
            err = abs(vi - want)
            if err > eps_eq:
                ok = False
            worst = max(worst, err)
        clauses.append(ClauseCheck("density_pinned_to_bound", worst, 0.0, ok))

    return VerifyReport(branch, tuple(clauses), all(c.passed for c in clauses))


# ---------------------------------------------------------------------------
# smooth points
# ---------------------------------------------------------------------------


def _one_sided_modular(
    conj: OrliczGenerator, segs, u: SimpleFunction, side: str
) -> ExtReal:
    total = 0.0
    for (t, w, lo, hi, c_lo, c_hi), ui in zip(segs, u.values):
        val = c_lo if side == "lo" else c_hi
        if ui == 0.0:
            val = conj.phi_ext(t, EXT_ZERO if side == "lo" else hi)
        if not val.is_finite:
            return EXT_INF
        total += w * val.value
    return fin(total)


def classify_smooth_point(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    eps_eq: float = EPS_EQ,
) -> SmoothnessReport:
    """Decide whether u is a smooth point.

    Non-degenerate branch: smooth iff the conjugate modular of the left
    derivative at k*|u| equals 1, or that of the right derivative equals 1
    with the modular of lambda*u finite for some lambda > k*.  Degenerate
    branch: smooth iff the mass of b* on the support equals 1 with a* = 0
    off the support, or the full-space mass of b* is < 1 and u has full
    support.  Non-smooth verdicts come with two distinct support densities
    whenever the subdifferential slack admits them.
    """
    if u.is_zero():
        raise DomainError("smoothness is classified for u != 0")
    conj = conjugate(gen)
    ks = k_interval(gen, space, u, conj=conj)
    conditions: dict[str, ClauseCheck] = {}

    if isinstance(ks, KSetNonEmpty):
        branch = "k_nonempty"
        segs = _segments(gen, conj, space, u, ks.k_star)
        i_lo = _one_sided_modular(conj, segs, u, "lo")
        i_hi = _one_sided_modular(conj, segs, u, "hi")
        cond_i = i_lo.is_finite and abs(i_lo.value - 1.0) <= eps_eq
        conditions["left_modular_at_one"] = ClauseCheck(
            "left_modular_at_one", i_lo.as_float(), 1.0, cond_i
        )
        finite_beyond = gen.finite_valued
        if not finite_beyond:
            for j in range(1, 7):
                lam = ks.k_star * (1.0 + 10.0**-j)
                if modular(gen, space, u * lam).is_finite:
                    finite_beyond = True
                    break
        cond_ii_eq = i_hi.is_finite and abs(i_hi.value - 1.0) <= eps_eq
        cond_ii = cond_ii_eq and finite_beyond
        conditions["right_modular_at_one"] = ClauseCheck(
            "right_modular_at_one", i_hi.as_float(), 1.0, cond_ii_eq
        )
        conditions["finite_beyond_k_star"] = ClauseCheck(
            "finite_beyond_k_star", 1.0 if finite_beyond else 0.0, 1.0, finite_beyond
        )
        smooth = cond_i or cond_ii
        witnesses = None
        note = ""
        if not smooth:
            fwd, tf = _select_density(conj, space, u, segs, range(len(space)))
            bwd, tb = _select_density(
                conj, space, u, segs, range(len(space) - 1, -1, -1)
            )
            if (
                abs(tf - 1.0) <= math.sqrt(eps_eq)
                and abs(tb - 1.0) <= math.sqrt(eps_eq)
                and max(abs(a - b) for a, b in zip(fwd, bwd)) > 1e-6
            ):
                witnesses = (
                    SimpleFunction(space, tuple(fwd)),
                    SimpleFunction(space, tuple(bwd)),
                )
            else:
                note = (
                    "multiplicity arises only through singular mass in the "
                    "non-atomic limit; no distinct grid densities"
                )
        return SmoothnessReport(smooth, branch, conditions, witnesses, note)

    branch = "k_empty"
    supp = set(u.support())
    mass_supp = 0.0
    mass_all = 0.0
    off_a_max = 0.0
    for i, (t, w) in enumerate(space.items()):
        val = conj.phi_ext(t, conj.finite_bound(t))
        contrib = w * val.value if val.is_finite else math.inf
        mass_all += contrib
        if i in supp:
            mass_supp += contrib
        else:
            off_a_max = max(off_a_max, conj.zero_bound(t))
    off_mass = sum(w for i, (_, w) in enumerate(space.items()) if i not in supp)
    cond_i = abs(mass_supp - 1.0) <= eps_eq and off_a_max <= eps_eq
    cond_ii = mass_all < 1.0 - eps_eq and off_mass == 0.0
    conditions["support_mass_at_one"] = ClauseCheck(
        "support_mass_at_one", mass_supp, 1.0, abs(mass_supp - 1.0) <= eps_eq
    )
    conditions["conjugate_zero_bound_off_support"] = ClauseCheck(
        "conjugate_zero_bound_off_support", off_a_max, 0.0, off_a_max <= eps_eq
    )
    conditions["full_mass_below_one"] = ClauseCheck(
        "full_mass_below_one", mass_all, 1.0, mass_all < 1.0 - eps_eq
    )
    conditions["full_support"] = ClauseCheck(
        "full_support", off_mass, 0.0, off_mass == 0.0
    )
    smooth = cond_i or cond_ii
    witnesses = None
    if not smooth:
        witnesses = _degenerate_witnesses(conj, space, u, mass_supp, eps_eq)
    return SmoothnessReport(smooth, branch, conditions, witnesses, "")


def _degenerate_witnesses(conj, space, u, mass_supp, eps_eq):
    """Two distinct support densities in the degenerate branch: pin b* on
    the support, then either spend modular slack off the support or use the
    conjugate zero bound there."""
    base = []
    for (t, _), ui in zip(space.items(), u.values):
        base.append(sgn(ui) * conj.finite_bound(t).value if ui != 0.0 else 0.0)
    off = [i for i, ui in enumerate(u.values) if ui == 0.0]
    if not off:
        return None
    i = off[0]
    t, w = space.coords[i], space.weights[i]
    second = list(base)
    budget = 1.0 - mass_supp
    a_star = conj.zero_bound(t)
    if a_star > eps_eq:
        second[i] = a_star
    elif budget > eps_eq:

        def cost(m: float) -> float:
            c = conj.phi(t, m)
            return w * c.value if c.is_finite else math.inf

        top = _segment_top(conj, t, 0.0, budget / w)
        second[i] = monotone_cap(cost, budget * 0.5, 0.0, top)
    if second[i] <= eps_eq:
        return None
    return (
        SimpleFunction(space, tuple(base)),
        SimpleFunction(space, tuple(second)),
    )


# ---------------------------------------------------------------------------
# space smoothness
# ---------------------------------------------------------------------------


def check_space_smoothness(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    samples: int = 64,
    eps_eq: float = EPS_EQ,
) -> SpaceSmoothnessReport:
    """The three-part smoothness criterion for the whole space:

    (a) the conjugate blows up at its own finite bound (checked per atom,
        along a doubling ladder when b* is infinite);
    (b) the generator satisfies the doubling condition (analytic family
        flag, cross-checked by the sampled falsifier);
    (c) the generator is continuously differentiable with zero right
        derivative at the origin (per-atom derivative-gap scan at the
        delta ladder 1, 0.1, 0.01).
    """
    conj = conjugate(gen)
    evidence: dict[str, tuple] = {}

    a_ok = True
    a_detail = []
    for t, _ in space.items():
        b = conj.finite_bound(t)
        if b.is_finite:
            val = conj.phi_ext(t, b)
            atom_ok = not val.is_finite
        else:
            v, val = 1.0, conj.phi(t, 1.0)
            atom_ok = False
            for _ in range(200):
                if not val.is_finite or val.value > 1e12:
                    atom_ok = True
                    break
                v *= 2.0
                val = conj.phi(t, v)
        a_detail.append((t, b.as_float(), atom_ok))
        a_ok = a_ok and atom_ok
    evidence["a"] = tuple(a_detail)
    cond_a = ClauseCheck(
        "conjugate_infinite_at_bound", 1.0 if a_ok else 0.0, 1.0, a_ok
    )

    profile = gen.delta2_profile()
    if profile is not None:
        verdict = delta2_check(
            gen, space, profile.constant, profile.threshold, samples=samples
        )
        b_ok = True
        note = "family doubling flag holds" + (
            "" if verdict.holds else "; sampled cross-check disagrees"
        )
    else:
        verdict = delta2_check(gen, space, 256.0, samples=samples)
        b_ok = False
        note = "family leaves the doubling class" + (
            "" if not verdict.holds else "; sampled falsifier found no witness"
        )
    evidence["b"] = (verdict,)
    cond_b = ClauseCheck("doubling_condition", 1.0 if b_ok else 0.0, 1.0, b_ok, note)

    c_ok = True
    c_detail = []
    for t, _ in space.items():
        d0 = gen.right_deriv(t, 0.0)
        atom_ok = d0.is_finite and d0.value <= 1e-12
        gap_at = None
        if atom_ok:
            for delta in (1.0, 0.1, 0.01):
                prof = smoothness_gap_function(
                    gen, GridMeasureSpace((t,), (1.0,)), delta
                )
                if prof.finite_mask[0]:
                    atom_ok = False
                    gap_at = (delta, prof.locations[0].as_float())
                    break
        c_detail.append((t, d0.as_float(), gap_at))
        c_ok = c_ok and atom_ok
    evidence["c"] = tuple(c_detail)
    cond_c = ClauseCheck(
        "continuously_differentiable", 1.0 if c_ok else 0.0, 1.0, c_ok
    )

    return SpaceSmoothnessReport(
        smooth=a_ok and b_ok and c_ok,
        cond_a=cond_a,
        cond_b=cond_b,
        cond_c=cond_c,
        atom_evidence=evidence,
    )


# ---------------------------------------------------------------------------
# derivative-gap function
# ---------------------------------------------------------------------------


def smoothness_gap_function(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    delta: float,
    horizon: float = 1e6,
) -> GapProfile:
    """Per atom, the first u where phi'_+ - phi'_- reaches delta (the left
    derivative at 0 counting as 0); the infinity tag where no such gap
    exists.  Closed-form jump lists are used when the family provides them,
    a scan with bisection otherwise."""
    if not delta > 0:
        raise DomainError("delta must be > 0")
    locations: list[ExtReal] = []
    mask: list[bool] = []
    for t, _ in space.items():
        jumps = gen.derivative_jumps(t)
        if jumps is not None:
            loc = EXT_INF
            for x, lo, hi in jumps:
                gap_val = (hi.value - lo.value) if (hi.is_finite and lo.is_finite) else math.inf
                if gap_val >= delta:
                    loc = fin(x)
                    break
            locations.append(loc)
            mask.append(loc.is_finite)
        else:
            loc = _scan_gap(gen, t, delta, horizon)
            locations.append(loc)
            mask.append(loc.is_finite)
    _assert_gap_postcondition(gen, space, delta, locations)
    return GapProfile(tuple(locations), tuple(mask))


def _scan_gap(gen: OrliczGenerator, t: float, delta: float, horizon: float) -> ExtReal:
    d0 = gen.right_deriv(t, 0.0)
    if not d0.is_finite or d0.value >= delta:
        return EXT_ZERO
    b = gen.finite_bound(t)
    top = min(horizon, b.value if b.is_finite else horizon)
    grid = [top * j / 400.0 for j in range(1, 401)]
    prev = 0.0
    for x in grid:
        r_prev = gen.right_deriv(t, prev)
        l_cur = gen.left_deriv(t, x)
        seg_gap = (l_cur.value - r_prev.value) if (l_cur.is_finite and r_prev.is_finite) else math.inf
        point_gap_hi = gen.right_deriv(t, x)
        point_gap = (
            point_gap_hi.value - l_cur.value
            if point_gap_hi.is_finite and l_cur.is_finite
            else math.inf
        )
        if point_gap >= delta:
            return fin(x)
        if seg_gap >= delta:
            lo, hi = prev, x
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                l_mid = gen.left_deriv(t, mid)
                g = (l_mid.value - r_prev.value) if (l_mid.is_finite and r_prev.is_finite) else math.inf
                if g >= delta:
                    hi = mid
                else:
                    lo = mid
            # a smooth but steep rise also triggers the segment test; only
            # report the location if the pointwise gap is really there
            l_hi, r_hi = gen.left_deriv(t, hi), gen.right_deriv(t, hi)
            g = (r_hi.value - l_hi.value) if (l_hi.is_finite and r_hi.is_finite) else math.inf
            if g >= delta - 1e-9:
                return fin(hi)
        prev = x
    if b.is_finite and top >= b.value * (1.0 - 1e-12):
        return fin(b.value)  # the jump past the effective domain
    return EXT_INF


def _assert_gap_postcondition(gen, space, delta, locations) -> None:
    for (t, _), loc in zip(space.items(), locations):
        if not loc.is_finite:
            continue
        x = loc.value
        lo = gen.left_deriv(t, x) if x > 0 else EXT_ZERO
        hi = gen.right_deriv(t, x)
        gap = (hi.value - lo.value) if (hi.is_finite and lo.is_finite) else math.inf
        if gap < delta - 1e-9:
            raise AssertionError(
                f"gap postcondition failed at t={t}, u={x}: gap={gap} < {delta}"
            )


# ---------------------------------------------------------------------------
# brute-force density survey (the smooth-point oracle)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensitySurvey:
    """Feasible support densities found by grid enumeration.

    unique=True means the feasible set has negligible diameter (one density
    class); None means nothing was found (multiplicity lives in singular
    mass, outside the grid)."""

    found: int
    diameter: float
    unique: bool | None
    representatives: tuple[SimpleFunction, ...]


def support_density_survey(
    gen: OrliczGenerator,
    space: GridMeasureSpace,
    u: SimpleFunction,
    resolution: int = 400,
    eps_eq: float = EPS_EQ,
) -> DensitySurvey:
    """Enumerate candidate densities satisfying the sign/subdifferential
    clause with the conjugate modular at (or, degenerate branch, below) 1.

    Independent of the classifier: a point is smooth exactly when the
    enumeration finds a single density class (diameter ~ grid step)."""
    if u.is_zero():
        raise DomainError("survey is defined for u != 0")
    conj = conjugate(gen)
    ks = k_interval(gen, space, u, conj=conj)
    supp = [i for i, ui in enumerate(u.values) if ui != 0.0]

    if isinstance(ks, KSetNonEmpty):
        segs = _segments(gen, conj, space, u, ks.k_star)
        if ks.k_double_star - ks.k_star > 4.0 * K_WIDEN_REL * ks.k_star:
            # the clauses must hold for every k in K(u): intersect the
            # subdifferential boxes at both endpoints
            segs_hi = _segments(gen, conj, space, u, ks.k_double_star)
            merged = []
            for (t, w, lo, hi, _, _), (_, _, lo2, hi2, _, _) in zip(segs, segs_hi):
                lo_m = lo if lo >= lo2 else lo2
                hi_m = hi if hi <= hi2 else hi2
                if hi_m < lo_m:
                    hi_m = lo_m
                merged.append((t, w, lo_m, hi_m, conj.phi_ext(t, lo_m), conj.phi_ext(t, hi_m)))
            segs = merged
        axes: list[list[float]] = []
        costs: list[list[float]] = []
        step_cost = 0.0
        for i in supp:
            t, w, lo, hi, c_lo, c_hi = segs[i]
            if hi.is_finite and hi.value - lo.value <= 1e-8 * max(1.0, hi.value):
                pts = [lo.value]
            else:
                top = (
                    hi.value
                    if hi.is_finite
                    else _segment_top(conj, t, lo.value, (1.0 + eps_eq) / w + c_lo.value)
                )
                top = min(
                    top,
                    _modular_top(conj, t, lo.value, (1.0 + eps_eq) / w),
                )
                n = max(2, resolution)
                pts = [lo.value + (top - lo.value) * j / (n - 1) for j in range(n)]
            cvals = []
            for m in pts:
                c = conj.phi(t, m)
                cvals.append(w * c.value if c.is_finite else math.inf)
            finite_steps = [
                abs(b - a) for a, b in zip(cvals, cvals[1:]) if math.isfinite(a) and math.isfinite(b)
            ]
            if finite_steps:
                step_cost = max(step_cost, max(finite_steps))
            axes.append(pts)
            costs.append(cvals)
        band = 0.75 * step_cost + eps_eq
        passing = _enumerate_level(axes, costs, 1.0, band)
    else:
        # degenerate: support pinned to b*, off-support free below the budget
        pinned = []
        base_cost = 0.0
        for i in supp:
            t, w = space.coords[i], space.weights[i]
            b = conj.finite_bound(t)
            pinned.append(b.value)
            c = conj.phi_ext(t, b)
            base_cost += w * c.value if c.is_finite else math.inf
        off = [i for i in range(len(space)) if i not in supp]
        axes = []
        costs = []
        for i in off:
            t, w = space.coords[i], space.weights[i]
            top = _modular_top(conj, t, 0.0, max(0.0, 1.0 + eps_eq - base_cost) / w)
            b = conj.finite_bound(t)
            if b.is_finite:
                top = min(top, b.value)
            n = max(2, resolution)
            pts = [top * j / (n - 1) for j in range(n)]
            cvals = []
            for m in pts:
                c = conj.phi(t, m)
                cvals.append(w * c.value if c.is_finite else math.inf)
            axes.append(pts)
            costs.append(cvals)
        passing_off = _enumerate_below(axes, costs, 1.0 + eps_eq - base_cost)
        passing = [tuple(pinned) + combo for combo in passing_off]
        supp = supp + off

    if not passing:
        return DensitySurvey(0, 0.0, None, ())

    diameter = 0.0
    for j in range(len(passing[0])):
        col = [row[j] for row in passing]
        diameter = max(diameter, max(col) - min(col))
    steps = [
        (axis[1] - axis[0]) if len(axis) > 1 else 0.0 for axis in _survey_axes(passing)
    ]
    tol = 2.0 * max(steps) + 1e-6 if steps else 1e-6
    unique = diameter <= tol

    reps = []
    for row in (passing[0], passing[-1]):
        vals = [0.0] * len(space)
        for pos, i in enumerate(supp):
            vals[i] = sgn(u.values[i]) * row[pos] if u.values[i] != 0.0 else row[pos]
        reps.append(SimpleFunction(space, tuple(vals)))
    return DensitySurvey(len(passing), diameter, unique, tuple(reps))


def _survey_axes(passing):
    cols = len(passing[0])
    for j in range(cols):
        vals = sorted({row[j] for row in passing})
        yield vals


def _modular_top(conj: OrliczGenerator, t: float, lo: float, budget: float) -> float:
    """Largest magnitude with conjugate value within the budget."""
    if budget <= 0.0:
        return lo

    def g(m: float) -> float:
        c = conj.phi(t, m)
        return c.value if c.is_finite else math.inf

    hi = max(1.0, 2.0 * lo)
    for _ in range(200):
        if g(hi) > budget:
            break
        hi *= 2.0
    return monotone_cap(g, budget, lo, hi)


def _enumerate_level(axes, costs, level, band):
    """Grid combinations whose summed costs land within band of level."""
    out = []

    def rec(idx, acc, combo):
        if acc > level + band:
            return
        if idx == len(axes):
            if abs(acc - level) <= band:
                out.append(tuple(combo))
            return
        for m, c in zip(axes[idx], costs[idx]):
            if not math.isfinite(c) or acc + c > level + band:
                break
            combo.append(m)
            rec(idx + 1, acc + c, combo)
            combo.pop()

    rec(0, 0.0, [])
    return out


def _enumerate_below(axes, costs, budget):
    out = []

    def rec(idx, acc, combo):
        if acc > budget:
            return
        if idx == len(axes):
            out.append(tuple(combo))
            return
        for m, c in zip(axes[idx], costs[idx]):
            if not math.isfinite(c) or acc + c > budget:
                break
            combo.append(m)
            rec(idx + 1, acc + c, combo)
            combo.pop()

    rec(0, 0.0, [])
    return out
