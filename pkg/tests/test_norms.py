import math
import random

import pytest
from hypothesis import given, strategies as st

from monorm import (
    ExpMinusOneGenerator,
    GridMeasureSpace,
    IndicatorGenerator,
    KSetDegenerate,
    KSetNonEmpty,
    LinearGenerator,
    PowerGenerator,
    SimpleFunction,
    delta2_check,
    k_interval,
    luxemburg_norm,
    modular,
    orlicz_amemiya_norm,
    power_norm_closed_forms,
    theta,
)
from monorm.errors import DomainError, PreconditionError
from conftest import random_instance


def test_luxemburg_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    assert luxemburg_norm(PowerGenerator(2.0), two_atoms, u) == pytest.approx(
        1.0 / math.sqrt(2.0), abs=1e-9
    )
    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    assert luxemburg_norm(IndicatorGenerator(1.0), two_atoms, u12) == pytest.approx(
        2.0, abs=1e-10
    )
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert luxemburg_norm(PowerGenerator(2.0), two_atoms, zero) == 0.0


def test_k_interval_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    ks = k_interval(PowerGenerator(2.0), two_atoms, u)
    assert isinstance(ks, KSetNonEmpty)
    assert ks.k_star == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert ks.k_double_star == pytest.approx(math.sqrt(2.0), abs=1e-9)

    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    ks = k_interval(IndicatorGenerator(1.0), two_atoms, u12)
    assert isinstance(ks, KSetNonEmpty)
    assert ks.k_star == pytest.approx(0.5, abs=1e-9)
    assert ks.k_double_star == pytest.approx(0.5, abs=1e-9)

    ks = k_interval(LinearGenerator(1.0), two_atoms, u12)
    assert isinstance(ks, KSetDegenerate)
    assert ks.l1_value == pytest.approx(1.5, abs=1e-12)


def test_k_interval_rejects_zero(two_atoms):
    with pytest.raises(DomainError):
        k_interval(PowerGenerator(2.0), two_atoms, SimpleFunction.on(two_atoms, (0, 0)))


def test_orlicz_examples(two_atoms, kink_linear):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    val, _ = orlicz_amemiya_norm(PowerGenerator(2.0), two_atoms, u)
    assert val == pytest.approx(math.sqrt(2.0), abs=1e-9)

    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    val, _ = orlicz_amemiya_norm(PowerGenerator(2.0), two_atoms, u12)
    assert val == pytest.approx(math.sqrt(5.0), abs=1e-9)

    val, ks = orlicz_amemiya_norm(kink_linear, two_atoms, u)
    assert val == pytest.approx(1.5, abs=1e-9)
    assert isinstance(ks, KSetNonEmpty)
    assert ks.k_star == pytest.approx(1.0, abs=1e-9)
    assert ks.k_double_star == pytest.approx(1.0, abs=1e-9)


def test_orlicz_zero(two_atoms):
    val, ks = orlicz_amemiya_norm(PowerGenerator(2.0), two_atoms, SimpleFunction.on(two_atoms, (0, 0)))
    assert val == 0.0 and isinstance(ks, KSetDegenerate)


def test_plateau_interval(plateau):
    gen, space, u = plateau
    val, ks = orlicz_amemiya_norm(gen, space, u)
    assert isinstance(ks, KSetNonEmpty)
    assert ks.k_star == pytest.approx(1.0, abs=1e-8)
    assert ks.k_double_star == pytest.approx(2.0, abs=1e-8)
    assert val == pytest.approx(2.0, abs=1e-9)
    # the quotient is flat on the whole interval
    for k in (1.0, 1.3, 1.7, 2.0):
        m = modular(gen, space, u * k)
        assert (1.0 + m.value) / k == pytest.approx(val, abs=1e-9)


def test_power_closed_forms_match():
    rng = random.Random(7)
    for p in (1.5, 2.0, 3.0):
        gen = PowerGenerator(p)
        for _ in range(20):
            n = rng.randint(2, 6)
            space = GridMeasureSpace.uniform(n)
            u = SimpleFunction.on(space, [rng.uniform(-1.5, 1.5) for _ in range(n)])
            if u.is_zero():
                continue
            lux_ref, orl_ref = power_norm_closed_forms(p, space, u)
            assert luxemburg_norm(gen, space, u) == pytest.approx(lux_ref, abs=1e-9)
            val, _ = orlicz_amemiya_norm(gen, space, u)
            assert val == pytest.approx(orl_ref, abs=1e-9)


@given(st.integers())
def test_equivalence_chain(seed):
    gen, space, u = random_instance(random.Random(seed))
    lux = luxemburg_norm(gen, space, u)
    orl, _ = orlicz_amemiya_norm(gen, space, u)
    assert lux <= orl + 1e-9
    assert orl <= 2.0 * lux + 1e-9


@given(st.integers(), st.floats(min_value=0.1, max_value=4.0))
def test_homogeneity(seed, c):
    gen, space, u = random_instance(random.Random(seed))
    lux = luxemburg_norm(gen, space, u)
    orl, _ = orlicz_amemiya_norm(gen, space, u)
    lux_c = luxemburg_norm(gen, space, u * c)
    orl_c, _ = orlicz_amemiya_norm(gen, space, u * c)
    assert lux_c == pytest.approx(c * lux, abs=1e-9 * max(1.0, c))
    assert orl_c == pytest.approx(c * orl, abs=1e-9 * max(1.0, c))


@given(st.integers(), st.integers())
def test_triangle_inequality(seed1, seed2):
    rng = random.Random(seed1)
    gen, space, u = random_instance(rng)
    v = SimpleFunction.on(
        space, [random.Random(seed2 + i).uniform(-2, 2) for i in range(len(space))]
    )
    assert luxemburg_norm(gen, space, u + v) <= (
        luxemburg_norm(gen, space, u) + luxemburg_norm(gen, space, v) + 1e-9
    )
    s, _ = orlicz_amemiya_norm(gen, space, u + v)
    a, _ = orlicz_amemiya_norm(gen, space, u)
    b, _ = orlicz_amemiya_norm(gen, space, v)
    assert s <= a + b + 1e-9


@given(st.integers())
def test_luxemburg_attainment(seed):
    gen, space, u = random_instance(random.Random(seed))
    lux = luxemburg_norm(gen, space, u)
    if lux == 0.0:
        return
    m = modular(gen, space, u * (1.0 / lux))
    if m.is_finite:
        assert m.value <= 1.0 + 1e-12


@given(st.integers())
def test_theta_below_luxemburg(seed):
    gen, space, u = random_instance(random.Random(seed))
    assert theta(gen, space, u) <= luxemburg_norm(gen, space, u) + 1e-12


def test_theta_examples(two_atoms):
    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    assert theta(IndicatorGenerator(1.0), two_atoms, u12) == 2.0
    assert theta(PowerGenerator(2.0), two_atoms, u12) == 0.0
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert theta(IndicatorGenerator(1.0), two_atoms, zero) == 0.0


def test_delta2_examples(two_atoms):
    assert delta2_check(PowerGenerator(2.0), two_atoms, 4.0, 0.0).holds
    v = delta2_check(ExpMinusOneGenerator(), two_atoms, 100.0, 0.0)
    assert not v.holds and v.witness.ratio > 100.0
    # the spec's hand witness: ratio at u = 6 is about 410.5
    ratio6 = (math.expm1(12.0) - 12.0) / (math.expm1(6.0) - 6.0)
    assert ratio6 == pytest.approx(410.52, abs=0.01)
    v = delta2_check(IndicatorGenerator(1.0), two_atoms, 1000.0, 1.0)
    assert not v.holds and v.witness.u == 1.0


def test_delta2_preconditions(two_atoms):
    with pytest.raises(PreconditionError):
        delta2_check(PowerGenerator(2.0), two_atoms, 1.0, 0.0)
    with pytest.raises(PreconditionError):
        # threshold beyond the effective domain has infinite modular
        delta2_check(IndicatorGenerator(1.0), two_atoms, 4.0, 2.0)
