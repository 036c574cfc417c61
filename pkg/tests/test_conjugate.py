import math

import pytest
from hypothesis import given, strategies as st

from monorm import (
    EXT_ZERO,
    ExpMinusOneGenerator,
    IndicatorGenerator,
    LinearGenerator,
    PowerGenerator,
    VariableExponentGenerator,
    XLogXGenerator,
    biconjugate_residual,
    conjugate,
    numeric_conjugate,
    subdiff,
    young_gap,
)
from conftest import all_families

T = 0.25


def test_power_conjugate_closed_form():
    conj = conjugate(PowerGenerator(3.0))
    assert conj.phi(T, 1.0).value == pytest.approx(2.0 / 3.0, abs=1e-15)
    # 1/p + 1/q = 1
    assert isinstance(conj, PowerGenerator) and conj.p == pytest.approx(1.5)


def test_indicator_conjugate_is_linear():
    conj = conjugate(IndicatorGenerator(1.0))
    assert conj.phi(T, 2.0).value == pytest.approx(2.0, abs=1e-15)
    assert isinstance(conj, LinearGenerator)


def test_linear_conjugate_is_indicator():
    conj = conjugate(LinearGenerator(1.0))
    assert conj.phi(T, 0.5) == EXT_ZERO
    assert not conj.phi(T, 1.5).is_finite


def test_exp_conjugate_value():
    conj = conjugate(ExpMinusOneGenerator())
    # (1+v) log(1+v) - v at v = e - 1 equals 1
    assert conj.phi(T, math.e - 1.0).value == pytest.approx(1.0, abs=1e-12)
    assert isinstance(conj, XLogXGenerator)


def test_varexp_conjugate_closed_form(two_atoms):
    gen = VariableExponentGenerator.from_values(two_atoms, [2.0, 3.0])
    conj = conjugate(gen)
    # phi(u) = u^2 at the first atom: conjugate is v^2/4
    t = two_atoms.coords[0]
    assert conj.phi(t, 3.0).value == pytest.approx(2.25, abs=1e-12)


def test_conjugate_of_zero_is_zero(two_atoms):
    for gen in all_families(two_atoms):
        assert conjugate(gen).phi(T, 0.0) == EXT_ZERO
        assert numeric_conjugate(gen).phi(T, 0.0) == EXT_ZERO


def test_kink_conjugate_values(kink_linear):
    conj = conjugate(kink_linear)
    # v^2/2 below 1, v - 1/2 on the derivative jump [1, 2], infinite beyond
    assert conj.phi(T, 0.6).value == pytest.approx(0.18, abs=1e-14)
    assert conj.phi(T, 1.5).value == pytest.approx(1.0, abs=1e-14)
    assert conj.phi(T, 2.0).value == pytest.approx(1.5, abs=1e-14)
    assert not conj.phi(T, 2.0 + 1e-9).is_finite


def test_analytic_vs_numeric_agreement(two_atoms):
    for gen in all_families(two_atoms):
        ana = conjugate(gen)
        num = numeric_conjugate(gen)
        b_star = ana.finite_bound(T)
        top = min(b_star.value, 6.0) if b_star.is_finite else 6.0
        for j in range(13):
            v = top * j / 12.0
            a = ana.phi(T, v)
            n = num.phi(T, v)
            assert a.is_finite == n.is_finite, (gen, v)
            if a.is_finite:
                assert abs(a.value - n.value) <= 1e-8 * max(1.0, a.value), (gen, v)


def test_biconjugate_examples():
    assert biconjugate_residual(PowerGenerator(2.0), T, [0, 1, 2, 3]) <= 1e-9
    assert biconjugate_residual(LinearGenerator(1.0), T, [0, 0.5, 1]) <= 1e-9
    assert biconjugate_residual(IndicatorGenerator(1.0), T, [0.5, 1]) <= 1e-9


def test_young_examples():
    assert young_gap(PowerGenerator(2.0), T, 3.0, 3.0) == EXT_ZERO
    assert young_gap(PowerGenerator(2.0), T, 3.0, 2.0).value == pytest.approx(0.5)
    assert young_gap(IndicatorGenerator(1.0), T, 1.0, 7.0) == EXT_ZERO


@given(
    st.floats(min_value=0.0, max_value=6.0),
    st.floats(min_value=0.0, max_value=6.0),
    st.integers(min_value=0, max_value=8),
)
def test_young_nonnegative(u, v, pick):
    from monorm import GridMeasureSpace

    gen = all_families(GridMeasureSpace.uniform(2))[pick]
    gap = young_gap(gen, T, u, v)
    assert gap >= 0.0


@given(st.floats(min_value=0.0, max_value=6.0), st.integers(min_value=0, max_value=8))
def test_young_equality_on_subdifferential(u, pick):
    from monorm import GridMeasureSpace

    gen = all_families(GridMeasureSpace.uniform(2))[pick]
    b = gen.finite_bound(T)
    if b.is_finite and u > b.value:
        u = b.value
    lo, hi = subdiff(gen, T, u)
    v = lo.value if lo.is_finite else None
    if v is None:
        return
    gap = young_gap(gen, T, u, v)
    assert gap.is_finite and gap.value <= 1e-9
    if hi.is_finite:
        gap = young_gap(gen, T, u, hi.value)
        assert gap.is_finite and gap.value <= 1e-9


@given(st.floats(min_value=0.05, max_value=5.0), st.integers(min_value=0, max_value=8))
def test_derivative_inversion(u, pick):
    # if v in subdiff phi(u) then u in subdiff phi*(v), within 1e-8
    from monorm import GridMeasureSpace

    gen = all_families(GridMeasureSpace.uniform(2))[pick]
    b = gen.finite_bound(T)
    if b.is_finite and u > b.value:
        u = b.value
    lo, hi = subdiff(gen, T, u)
    conj = conjugate(gen)
    for v in {lo, hi}:
        if not v.is_finite:
            continue
        c_lo, c_hi = subdiff(conj, T, v.value)
        lower = c_lo.value - 1e-8 if c_lo.is_finite else -math.inf
        upper = c_hi.value + 1e-8 if c_hi.is_finite else math.inf
        assert lower <= u <= upper, (gen, u, v)
