import random

import pytest
from hypothesis import HealthCheck, settings

from monorm import (
    ExpMinusOneGenerator,
    GridMeasureSpace,
    IndicatorGenerator,
    LinearGenerator,
    Piece,
    PiecewiseGenerator,
    PowerGenerator,
    SimpleFunction,
    VariableExponentGenerator,
    XLogXGenerator,
)

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def two_atoms() -> GridMeasureSpace:
    return GridMeasureSpace.uniform(2)


@pytest.fixture
def kink_linear() -> PiecewiseGenerator:
    """u^2/2 on [0,1], then slope 2: the canonical non-smooth instance."""
    return PiecewiseGenerator((Piece(1.0, 0.0, 1.0), Piece(None, 1.0, 0.0)))


@pytest.fixture
def kink_quadratic() -> PiecewiseGenerator:
    return PiecewiseGenerator((Piece(1.0, 0.0, 1.0), Piece(None, 1.0, 1.0)))


@pytest.fixture
def plateau():
    """Derivative x on [0,1], flat at 1 on [1,2], then rising: on a mass-2
    space the Amemiya minimizer set is the whole interval [1, 2]."""
    gen = PiecewiseGenerator(
        (Piece(1.0, 0.0, 1.0), Piece(1.0, 0.0, 0.0), Piece(None, 0.0, 1.0))
    )
    space = GridMeasureSpace((0.25, 0.75), (1.0, 1.0))
    return gen, space, SimpleFunction.on(space, (1.0, 1.0))


def all_families(space: GridMeasureSpace):
    """One representative per built-in family, bound to the space."""
    return [
        PowerGenerator(2.0),
        PowerGenerator(1.5),
        VariableExponentGenerator.from_values(
            space, [1.5 + 0.5 * i for i in range(len(space))]
        ),
        ExpMinusOneGenerator(),
        XLogXGenerator(),
        LinearGenerator(1.0),
        IndicatorGenerator(1.0),
        PiecewiseGenerator((Piece(1.0, 0.0, 1.0), Piece(None, 1.0, 0.0))),
        PiecewiseGenerator((Piece(1.0, 0.0, 1.0), Piece(None, 1.0, 1.0))),
    ]


def random_instance(rng: random.Random, max_atoms: int = 6):
    n = rng.randint(2, max_atoms)
    coords = sorted(rng.uniform(0.0, 1.0) for _ in range(n))
    for i in range(1, n):
        if coords[i] - coords[i - 1] < 1e-6:
            coords[i] = coords[i - 1] + 1e-4
    space = GridMeasureSpace(
        tuple(coords), tuple(rng.uniform(0.2, 1.2) for _ in range(n))
    )
    gen = rng.choice(all_families(space))
    values = [rng.uniform(-2.0, 2.0) for _ in range(n)]
    if all(abs(v) < 1e-3 for v in values):
        values[0] = 1.0
    return gen, space, SimpleFunction.on(space, values)
