import random

import pytest

from phutball import Position, Role, make_position
from phutball import corpus


@pytest.fixture(scope="session")
def fig1():
    return corpus.load_position("fig1")


@pytest.fixture(scope="session")
def fig2():
    return corpus.load_position("fig2")


@pytest.fixture(scope="session")
def fig3():
    return corpus.load_position("fig3")


@pytest.fixture(scope="session")
def fig5():
    return corpus.load_position("fig5")


def random_position(rng: random.Random, max_rows=6, max_cols=6, max_chaps=10) -> Position:
    """A random small, non-terminal position."""
    rows = rng.randint(3, max_rows)
    cols = rng.randint(2, max_cols)
    ball = (rng.randint(1, cols), rng.randint(2, rows - 1))
    points = [
        (c, r)
        for c in range(1, cols + 1)
        for r in range(1, rows + 1)
        if (c, r) != ball
    ]
    count = rng.randint(0, min(max_chaps, len(points)))
    chaps = rng.sample(points, count)
    to_move = rng.choice([Role.ALFRED, Role.BETTY])
    return make_position(rows, cols, ball, chaps, to_move)
