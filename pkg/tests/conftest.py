import random
from itertools import combinations
from pathlib import Path

import pytest

from randcrn.model import ZERO, Complex, Reaction, ReactionNetwork
from randcrn.netio import parse_network

FIXTURES = Path(__file__).parent / "fixtures"


def load(name):
    return parse_network((FIXTURES / f"{name}.crn").read_text())


@pytest.fixture
def enzyme():
    return load("enzyme")


@pytest.fixture
def futile():
    return load("futile_cycle")


@pytest.fixture
def two_species():
    return load("two_species")


def all_complexes(n, max_order=2):
    """Every complex of order <= max_order on species 1..n."""
    out = [ZERO]
    for order in range(1, max_order + 1):
        for combo in combinations(range(1, n + order), order):
            # stars and bars: combination of n+order-1 slots -> multiset
            out.append(Complex.of(*(c - i for i, c in enumerate(combo))))
    return out


def random_complex(rng, n, max_order=2):
    order = rng.randint(0, max_order)
    return Complex.of(*(rng.randint(1, n) for _ in range(order)))


def random_network(rng, n_max=10, r_max=15, max_order=2, reversible_bias=0.5):
    """A random network with at most ``r_max`` directed reactions."""
    n = rng.randint(1, n_max)
    target = rng.randint(0, r_max)
    reactions = set()
    attempts = 0
    while len(reactions) < target and attempts < 20 * r_max:
        attempts += 1
        a, b = random_complex(rng, n, max_order), random_complex(rng, n, max_order)
        if a == b:
            continue
        reactions.add(Reaction(a, b))
        if rng.random() < reversible_bias and len(reactions) < target:
            reactions.add(Reaction(b, a))
    return ReactionNetwork(n, frozenset(reactions))


@pytest.fixture
def rng():
    return random.Random(20240607)
