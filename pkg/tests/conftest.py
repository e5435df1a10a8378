import itertools
import random
from fractions import Fraction

import pytest

from netgames import graph_from_costs
from netgames.games import GameInstance, PlayerSpec


@pytest.fixture
def triangle():
    """The rooted triangle used throughout: (r,a)=2, (r,b)=2, (a,b)=1."""
    return graph_from_costs(
        {("r", "a"): Fraction(2), ("r", "b"): Fraction(2), ("a", "b"): Fraction(1)},
        root="r",
    )


def point_mass(t):
    return PlayerSpec(distribution=((t, Fraction(1)),))


def uniform(types):
    p = Fraction(1, len(types))
    return PlayerSpec(distribution=tuple((t, p) for t in types))


def multicast(graph, *specs):
    return GameInstance(kind="multicast", players=tuple(specs), graph=graph)


def random_connected_graph(rng: random.Random, max_nodes=6, max_edges=10, root=None):
    """Small random connected graph with rational costs for oracle tests."""
    n = rng.randint(2, max_nodes)
    nodes = [f"n{j}" for j in range(n)]
    edges = {}
    shuffled = nodes[:]
    rng.shuffle(shuffled)
    for a, b in zip(shuffled, shuffled[1:]):
        edges[tuple(sorted((a, b)))] = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    extra = [
        (a, b)
        for a, b in itertools.combinations(nodes, 2)
        if (a, b) not in edges
    ]
    rng.shuffle(extra)
    for a, b in extra:
        if len(edges) >= max_edges:
            break
        if rng.random() < 0.5:
            edges[(a, b)] = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    return graph_from_costs(edges, nodes=nodes, root=root or nodes[0])
