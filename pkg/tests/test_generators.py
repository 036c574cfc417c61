import math

import pytest
from hypothesis import given, strategies as st

from monorm import (
    EXT_INF,
    EXT_ZERO,
    ExpMinusOneGenerator,
    GridMeasureSpace,
    IndicatorGenerator,
    LinearGenerator,
    OrliczGenerator,
    Piece,
    PiecewiseGenerator,
    PowerGenerator,
    SimpleFunction,
    eval_phi,
    fin,
    generator_bounds,
    modular,
    subdiff,
    truncate,
    validate_generator,
)
from monorm.errors import DomainError
from conftest import all_families


def test_eval_examples():
    assert eval_phi(PowerGenerator(2.0), 0.0, 3.0) == fin(4.5)
    assert eval_phi(IndicatorGenerator(1.0), 0.0, 1.0) == EXT_ZERO
    assert eval_phi(IndicatorGenerator(1.0), 0.0, 1.5) == EXT_INF
    # series oracle for exp(1) - 2
    series = sum(1.0 / math.factorial(k) for k in range(2, 25))
    got = eval_phi(ExpMinusOneGenerator(), 0.0, 1.0)
    assert got.value == pytest.approx(series, abs=1e-12)


def test_eval_rejects_negative():
    with pytest.raises(DomainError):
        eval_phi(PowerGenerator(2.0), 0.0, -1.0)


def test_phi_at_infinity_is_infinite(two_atoms):
    for gen in all_families(two_atoms):
        assert eval_phi(gen, two_atoms.coords[0], math.inf) == EXT_INF


def test_subdiff_examples(kink_linear):
    assert subdiff(PowerGenerator(2.0), 0.0, 3.0) == (fin(3.0), fin(3.0))
    assert subdiff(kink_linear, 0.0, 1.0) == (fin(1.0), fin(2.0))
    assert subdiff(IndicatorGenerator(1.0), 0.0, 1.0) == (EXT_ZERO, EXT_INF)


def test_subdiff_zero_convention(two_atoms):
    # left derivative at the origin is 0 even for linear growth
    lo, hi = subdiff(LinearGenerator(1.0), 0.0, 0.0)
    assert lo == EXT_ZERO and hi == fin(1.0)


def test_subdiff_outside_domain_errors():
    with pytest.raises(DomainError):
        subdiff(IndicatorGenerator(1.0), 0.0, 1.5)


def test_generator_bounds():
    assert generator_bounds(PowerGenerator(2.0), 0.0) == (0.0, EXT_INF)
    assert generator_bounds(IndicatorGenerator(1.0), 0.0) == (1.0, fin(1.0))
    # conjugate of linear growth: zero up to the slope, infinite beyond
    from monorm import conjugate

    conj = conjugate(LinearGenerator(1.0))
    assert generator_bounds(conj, 0.0) == (1.0, fin(1.0))


def test_modular_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    assert modular(PowerGenerator(2.0), two_atoms, u) == fin(0.5)
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    for gen in all_families(two_atoms):
        assert modular(gen, two_atoms, zero) == EXT_ZERO
    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    assert modular(IndicatorGenerator(1.0), two_atoms, u12) == EXT_INF


def test_modular_additive_over_disjoint_support_exact():
    # dyadic weights and values: every part is exactly representable
    space = GridMeasureSpace.uniform(4)
    u = SimpleFunction.on(space, (0.25, -1.5, 0.0, 2.0))
    for gen in (PowerGenerator(2.0), LinearGenerator(1.0), IndicatorGenerator(4.0)):
        total = modular(gen, space, u)
        left = modular(gen, space, u.masked([0, 1]))
        right = modular(gen, space, u.masked([2, 3]))
        assert left + right == total


def test_modular_additive_over_disjoint_support_general():
    space = GridMeasureSpace.uniform(5)
    u = SimpleFunction.on(space, (0.3, -1.2, 0.0, 2.0, 0.7))
    for gen in all_families(space):
        total = modular(gen, space, u)
        left = modular(gen, space, u.masked([0, 1]))
        right = modular(gen, space, u.masked([2, 3, 4]))
        got = left + right
        assert got.is_finite == total.is_finite
        if total.is_finite:
            assert abs(got.value - total.value) <= 4e-16 * max(1.0, total.value)


def test_truncate_examples():
    t5 = truncate(IndicatorGenerator(1.0), 5.0)
    assert t5.phi(0.0, 0.7) == EXT_ZERO
    assert t5.phi(0.0, 2.0) == fin(5.0)
    # piecewise integral: int_0^3 min(x, 1) dx = 0.5 + 2
    assert truncate(PowerGenerator(2.0), 1.0).phi(0.0, 3.0) == fin(2.5)
    # inactive truncation
    big = truncate(PowerGenerator(2.0), 100.0)
    for u in (0.0, 0.5, 2.0, 7.0):
        assert big.phi(0.0, u) == PowerGenerator(2.0).phi(0.0, u)


def test_truncate_monotone_in_level(two_atoms):
    grid = [0.0, 0.3, 0.9, 1.0, 1.7, 4.0]
    for gen in all_families(two_atoms):
        t = two_atoms.coords[0]
        for n1, n2 in [(0.5, 2.0), (2.0, 8.0)]:
            g1, g2 = truncate(gen, n1), truncate(gen, n2)
            for u in grid:
                a, b, c = g1.phi(t, u), g2.phi(t, u), gen.phi(t, u)
                assert a <= b <= c


def test_truncated_is_finite_valued(two_atoms):
    for gen in all_families(two_atoms):
        g = truncate(gen, 3.0)
        assert g.finite_valued
        assert g.phi(two_atoms.coords[0], 50.0).is_finite


@given(st.floats(min_value=0.01, max_value=8.0))
def test_difference_quotients_bracket_derivatives(u):
    # (phi(u) - phi(u-h))/h <= phi'_- + 0.01 and phi'_+ <= (phi(u+h)-phi(u))/h + 0.01
    space = GridMeasureSpace.uniform(2)
    t = space.coords[0]
    for gen in all_families(space):
        b = gen.finite_bound(t)
        if b.is_finite and u >= b.value:
            continue
        lo, hi = subdiff(gen, t, u)
        for h in (1e-3, 1e-4, 1e-5):
            if u - h <= 0:
                continue
            f_m = gen.phi(t, u - h)
            f_0 = gen.phi(t, u)
            f_p = gen.phi(t, u + h)
            if not (f_m.is_finite and f_0.is_finite and f_p.is_finite):
                continue
            if lo.is_finite:
                assert (f_0.value - f_m.value) / h <= lo.value + 0.01
            if hi.is_finite:
                assert hi.value <= (f_p.value - f_0.value) / h + 0.01


def test_validate_builtins_clean(two_atoms):
    for gen in all_families(two_atoms):
        assert validate_generator(gen, two_atoms) == []


class _SqrtGenerator(OrliczGenerator):
    """Deliberately concave: used to exercise the validator."""

    family = "sqrt-test"

    def _phi(self, t, u):
        return fin(math.sqrt(u))

    def _left(self, t, u):
        return fin(0.5 / math.sqrt(u))

    def _right(self, t, u):
        return fin(0.5 / math.sqrt(u)) if u > 0 else EXT_INF


def test_validator_catches_concavity(two_atoms):
    violations = validate_generator(_SqrtGenerator(), two_atoms)
    assert any(v.check == "midpoint_convexity" for v in violations)


def test_plq_validation():
    with pytest.raises(ValueError):
        PiecewiseGenerator(())
    with pytest.raises(ValueError):
        # never grows: phi(inf) would be 0
        PiecewiseGenerator((Piece(None, 0.0, 0.0),))
    with pytest.raises(ValueError):
        # bounded needs a final width
        PiecewiseGenerator((Piece(None, 1.0, 0.0),), bounded=True)


def test_plq_matches_named_families():
    ind = PiecewiseGenerator((Piece(1.0, 0.0, 0.0),), bounded=True)
    lin = PiecewiseGenerator((Piece(None, 1.0, 0.0),))
    named_ind = IndicatorGenerator(1.0)
    named_lin = LinearGenerator(1.0)
    for u in (0.0, 0.5, 1.0, 1.5, 3.0):
        assert ind.phi(0.0, u) == named_ind.phi(0.0, u)
        assert lin.phi(0.0, u) == named_lin.phi(0.0, u)


def test_plq_zero_bound():
    flat_then_quad = PiecewiseGenerator(
        (Piece(0.5, 0.0, 0.0), Piece(None, 0.0, 1.0))
    )
    assert flat_then_quad.zero_bound(0.0) == 0.5
    assert flat_then_quad.phi(0.0, 0.5) == EXT_ZERO
    assert flat_then_quad.phi(0.0, 0.6).value == pytest.approx(0.005, abs=1e-12)


def test_monotone_and_convex_on_grid(two_atoms):
    # 50 x 50 sample: monotone exactly, midpoint convexity with tiny slack
    us = [0.08 * j for j in range(50)]
    for gen in all_families(two_atoms):
        for t in two_atoms.coords:
            vals = [gen.phi(t, u) for u in us]
            for a, b in zip(vals, vals[1:]):
                assert a <= b
            for i in range(len(us) - 2):
                f1, f2 = vals[i], vals[i + 2]
                fm = gen.phi(t, 0.5 * (us[i] + us[i + 2]))
                if f1.is_finite and f2.is_finite and fm.is_finite:
                    assert 0.5 * (f1.value + f2.value) - fm.value >= -1e-12
