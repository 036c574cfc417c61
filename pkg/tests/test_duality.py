import math
import random

import pytest

from monorm import (
    DualDensity,
    ExpMinusOneGenerator,
    GridMeasureSpace,
    IndicatorGenerator,
    LinearGenerator,
    PowerGenerator,
    SimpleFunction,
    conjugate,
    dual_functional_norm,
    holder_gap,
    luxemburg_norm,
    luxemburg_norm_bruteforce,
    orlicz_amemiya_norm,
    orlicz_norm_bruteforce,
    truncated_norm_sequence,
)
from monorm.duality import holder_equality_pair
from monorm.errors import OracleScaleError, PreconditionError
from conftest import random_instance


def test_orlicz_bruteforce_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    bf = orlicz_norm_bruteforce(PowerGenerator(2.0), two_atoms, u, 200)
    assert bf == pytest.approx(math.sqrt(2.0), abs=1e-4)
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert orlicz_norm_bruteforce(PowerGenerator(2.0), two_atoms, zero, 50) == 0.0
    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    bf = orlicz_norm_bruteforce(LinearGenerator(1.0), two_atoms, u12, 200)
    assert bf == pytest.approx(1.5, abs=1e-6)


def test_oracle_is_lower_bound(two_atoms):
    rng = random.Random(11)
    for _ in range(10):
        gen, space, u = random_instance(rng, max_atoms=3)
        bf = orlicz_norm_bruteforce(gen, space, u, 60)
        an, _ = orlicz_amemiya_norm(gen, space, u)
        assert bf <= an + 1e-9


def test_oracle_scale_guard():
    space = GridMeasureSpace.uniform(5)
    u = SimpleFunction.on(space, (1.0,) * 5)
    with pytest.raises(OracleScaleError):
        orlicz_norm_bruteforce(PowerGenerator(2.0), space, u, 10)


def test_luxemburg_bruteforce_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    bf = luxemburg_norm_bruteforce(PowerGenerator(2.0), two_atoms, u, 200)
    assert bf == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-4)
    u12 = SimpleFunction.on(two_atoms, (1.0, 2.0))
    bf = luxemburg_norm_bruteforce(IndicatorGenerator(1.0), two_atoms, u12, 200)
    assert bf == pytest.approx(2.0, abs=1e-3)
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert luxemburg_norm_bruteforce(PowerGenerator(2.0), two_atoms, zero, 50) == 0.0


def test_holder_examples(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    v = SimpleFunction.on(two_atoms, (math.sqrt(2.0), math.sqrt(2.0)))
    assert holder_gap(PowerGenerator(2.0), two_atoms, u, v) == pytest.approx(0.0, abs=1e-8)
    v_cancel = SimpleFunction.on(two_atoms, (1.0, -1.0))
    assert holder_gap(PowerGenerator(2.0), two_atoms, u, v_cancel) == pytest.approx(
        1.0, abs=1e-9
    )
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert holder_gap(PowerGenerator(2.0), two_atoms, zero, v) == pytest.approx(0.0, abs=1e-12)


def test_holder_nonnegative_random():
    rng = random.Random(23)
    for _ in range(200):
        gen, space, u = random_instance(rng, max_atoms=5)
        v = SimpleFunction.on(space, [rng.uniform(-2, 2) for _ in range(len(space))])
        assert holder_gap(gen, space, u, v) >= -1e-9


def test_holder_equality_pair(two_atoms, kink_linear):
    for gen, vals in [
        (PowerGenerator(3.0), (1.0, 2.0)),
        (kink_linear, (1.0, 1.0)),
        (ExpMinusOneGenerator(), (0.5, 2.0)),
    ]:
        u = SimpleFunction.on(two_atoms, vals)
        v = holder_equality_pair(gen, two_atoms, u)
        assert v is not None
        norm_v, _ = orlicz_amemiya_norm(conjugate(gen), two_atoms, v)
        gap = holder_gap(gen, two_atoms, u, v * (1.0 / norm_v))
        assert abs(gap) <= 1e-6


def test_dual_functional_norm_examples(two_atoms):
    r2 = math.sqrt(2.0)
    v = SimpleFunction.on(two_atoms, (r2, r2))
    p2 = PowerGenerator(2.0)
    assert dual_functional_norm(p2, two_atoms, DualDensity(v, 0.0)) == pytest.approx(
        1.0, abs=1e-9
    )
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert dual_functional_norm(p2, two_atoms, DualDensity(zero, 0.5)) == pytest.approx(
        0.5, abs=1e-10
    )
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    assert dual_functional_norm(p2, two_atoms, DualDensity(v, 1.0)) == pytest.approx(
        golden, abs=1e-9
    )
    assert dual_functional_norm(p2, two_atoms, DualDensity(zero, 0.0)) == 0.0


def test_dual_norm_matches_luxemburg_of_conjugate():
    rng = random.Random(31)
    for _ in range(25):
        gen, space, u = random_instance(rng, max_atoms=5)
        got = dual_functional_norm(gen, space, DualDensity(u, 0.0))
        want = luxemburg_norm(conjugate(gen), space, u)
        assert got == pytest.approx(want, abs=1e-9 * max(1.0, want))


def test_density_must_be_finite(two_atoms):
    with pytest.raises(ValueError):
        DualDensity(SimpleFunction.on(two_atoms, (1.0, math.inf)), 0.0)
    with pytest.raises(ValueError):
        DualDensity(SimpleFunction.on(two_atoms, (1.0, 1.0)), -0.1)


def test_truncated_sequence_oracle(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 2.0))
    seq = truncated_norm_sequence(IndicatorGenerator(1.0), two_atoms, u, [1, 10, 100, 1000])
    # hand-solved per level: n(2/l - 1)/2 + n*max(0, 1/l - 1)/2 = 1
    expected = {1: 0.75, 10: 2.0 / 1.2, 100: 2.0 / 1.02, 1000: 2.0 / 1.002}
    for n, val in seq:
        assert val == pytest.approx(expected[n], abs=1e-9)
    values = [v for _, v in seq]
    assert all(b >= a for a, b in zip(values, values[1:]))
    lux = luxemburg_norm(IndicatorGenerator(1.0), two_atoms, u)
    assert values[-1] <= lux + 1e-9


def test_truncated_sequence_inactive(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    p2 = PowerGenerator(2.0)
    lux = luxemburg_norm(p2, two_atoms, u)
    seq = truncated_norm_sequence(p2, two_atoms, u, [50, 100])
    for _, val in seq:
        assert val == pytest.approx(lux, abs=1e-10)
    zero = SimpleFunction.on(two_atoms, (0.0, 0.0))
    assert all(v == 0.0 for _, v in truncated_norm_sequence(p2, two_atoms, zero, [1, 2]))


def test_truncated_sequence_requires_increasing(two_atoms):
    u = SimpleFunction.on(two_atoms, (1.0, 1.0))
    with pytest.raises(PreconditionError):
        truncated_norm_sequence(PowerGenerator(2.0), two_atoms, u, [2, 1])


def test_nondecreasing_toward_untruncated():
    rng = random.Random(41)
    for _ in range(8):
        gen, space, u = random_instance(rng, max_atoms=4)
        seq = truncated_norm_sequence(gen, space, u, [0.5, 2.0, 8.0, 32.0])
        values = [v for _, v in seq]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[-1] <= luxemburg_norm(gen, space, u) + 1e-9
