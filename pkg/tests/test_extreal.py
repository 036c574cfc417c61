import math

import pytest
from hypothesis import given, strategies as st

from monorm import EXT_INF, EXT_ZERO, ExtReal, fin

finite_payloads = st.floats(min_value=0.0, max_value=1e12, allow_nan=False)


def test_rejects_nan_and_negative():
    with pytest.raises(ValueError):
        ExtReal(float("nan"))
    with pytest.raises(ValueError):
        ExtReal(-0.5)
    with pytest.raises(ValueError):
        ExtReal(math.inf)  # must use the tag


def test_infinity_tag():
    assert not EXT_INF.is_finite
    assert EXT_INF.as_float() == math.inf
    assert fin(math.inf) == EXT_INF


def test_addition_conventions():
    assert fin(1.0) + EXT_INF == EXT_INF
    assert EXT_INF + fin(1.0) == EXT_INF
    assert fin(1.0) + 2.0 == fin(3.0)


def test_zero_times_infinity_is_zero():
    assert 0.0 * EXT_INF == EXT_ZERO
    assert EXT_INF * 0.0 == EXT_ZERO
    assert 2.0 * EXT_INF == EXT_INF


def test_negative_scalar_rejected():
    with pytest.raises(ValueError):
        fin(1.0) * -1.0


def test_comparisons_against_floats():
    assert fin(0.5) <= 1.0
    assert EXT_INF > 1.0
    assert EXT_INF >= EXT_INF
    assert not (EXT_INF < EXT_INF)
    assert fin(2.0) > fin(1.0)


@given(finite_payloads, finite_payloads)
def test_addition_matches_floats(a, b):
    assert fin(a) + fin(b) == fin(a + b)


@given(finite_payloads, st.floats(min_value=0.0, max_value=1e6, allow_nan=False))
def test_scaling_matches_floats(a, c):
    assert fin(a) * c == fin(a * c)


@given(finite_payloads)
def test_infinity_dominates(a):
    assert fin(a) < EXT_INF or fin(a) == EXT_INF
    assert fin(a) + EXT_INF == EXT_INF


def test_overflow_saturates():
    assert fin(1e308) * 1e10 == EXT_INF
