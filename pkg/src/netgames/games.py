"""Bayesian network design game instances: feasible actions per type,
fair-share player costs, the harmonic congestion potential, and exact
expectations over finite independent type distributions.

Game kinds
----------
multicast        players connect a private source to the graph's root
source-sink      players connect a private (source, sink) node pair
vertex-cover     players hit a private node pair by buying one endpoint
hypergraph-cover players hit a private size-d hyperedge by buying one node
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import NoFeasibleActionError, SupportTooLargeError, ValidationError
from . import graphs
from .graphs import Graph, edge_key

GRAPH_KINDS = ("multicast", "source-sink")
COVER_KINDS = ("vertex-cover", "hypergraph-cover")

DEFAULT_SUPPORT_CAP = 10 ** 6

EMPTY_ELEMENTS = frozenset()


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n (H_0 = 0)."""
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


@dataclass(frozen=True)
class Action:
    """A minimal feasible element set (edges, or a single cover node)."""

    elements: frozenset
    cost: Fraction

    def sort_key(self) -> tuple:
        return tuple(sorted(self.elements))


EMPTY_ACTION = Action(elements=EMPTY_ELEMENTS, cost=Fraction(0))


@dataclass(frozen=True)
class PlayerSpec:
    distribution: tuple  # ((type, Fraction prob), ...)

    def support(self) -> list:
        return [t for t, _ in self.distribution]

    def prob(self, t) -> Fraction:
        for u, p in self.distribution:
            if u == t:
                return p
        return Fraction(0)


@dataclass(frozen=True)
class GameInstance:
    kind: str
    players: tuple[PlayerSpec, ...]
    graph: Optional[Graph] = None
    node_costs: Optional[tuple] = None  # ((node, Fraction), ...) for cover kinds
    support_cap: int = DEFAULT_SUPPORT_CAP
    strategy_cap: int = 10 ** 7

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS + COVER_KINDS:
            raise ValidationError("kind", f"unknown kind {self.kind!r}")
        if not self.players:
            raise ValidationError("players", "need at least one player")
        if self.kind in GRAPH_KINDS:
            if self.graph is None:
                raise ValidationError("graph", f"{self.kind} needs a graph")
            if self.kind == "multicast" and self.graph.root is None:
                raise ValidationError("graph.root", "multicast needs a root")
        else:
            if self.node_costs is None:
                raise ValidationError("node_costs", f"{self.kind} needs node costs")
            object.__setattr__(
                self,
                "node_costs",
                tuple(sorted((n, Fraction(c)) for n, c in self.node_costs)),
            )
        self._validate_players()

    def _validate_players(self):
        hyper_size = None
        for i, spec in enumerate(self.players):
            total = sum((p for _, p in spec.distribution), Fraction(0))
            if total != 1:
                raise ValidationError(
                    f"players[{i}]", f"probabilities sum to {total}, not 1"
                )
            types = [t for t, _ in spec.distribution]
            if len(set(types)) != len(types):
                raise ValidationError(f"players[{i}]", "duplicate support types")
            for t, p in spec.distribution:
                if p <= 0 or p > 1:
                    raise ValidationError(f"players[{i}]", f"probability {p} out of range")
                self._validate_type(i, t)
                if self.kind == "hypergraph-cover":
                    if hyper_size is None:
                        hyper_size = len(t)
                    elif len(t) != hyper_size:
                        raise ValidationError(
                            f"players[{i}]", "hyperedge sizes must be uniform"
                        )

    def _validate_type(self, i, t):
        if self.kind == "multicast":
            if t not in self.graph.nodes:
                raise ValidationError(f"players[{i}]", f"unknown source {t!r}")
        elif self.kind == "source-sink":
            s, r = t
            if s not in self.graph.nodes or r not in self.graph.nodes:
                raise ValidationError(f"players[{i}]", f"unknown node in pair {t!r}")
        elif self.kind == "vertex-cover":
            if len(t) != 2:
                raise ValidationError(f"players[{i}]", f"pair type {t!r} must have 2 nodes")
            self._validate_cover_nodes(i, t)
        else:
            if len(t) < 1:
                raise ValidationError(f"players[{i}]", "empty hyperedge type")
            self._validate_cover_nodes(i, t)

    def _validate_cover_nodes(self, i, t):
        known = {n for n, _ in self.node_costs}
        for n in t:
            if n not in known:
                raise ValidationError(f"players[{i}]", f"unknown cover node {n!r}")

    @property
    def n(self) -> int:
        return len(self.players)

    def element_cost(self, e) -> Fraction:
        if self.kind in GRAPH_KINDS:
            return self.graph.cost(e)
        return dict(self.node_costs)[e]

    def cover_cost_map(self) -> dict:
        return dict(self.node_costs)

    def support_size(self) -> int:
        size = 1
        for spec in self.players:
            size *= len(spec.distribution)
        return size


def _all_simple_paths(g: Graph, s: str, target: str) -> list[tuple[str, ...]]:
    """All simple s->target node sequences, in lexicographic order."""
    if s == target:
        return [(s,)]
    out = []

    def dfs(seq, seen):
        node = seq[-1]
        for nxt, _ in g.neighbors(node):
            if nxt in seen:
                continue
            if nxt == target:
                out.append(seq + (nxt,))
            else:
                dfs(seq + (nxt,), seen | {nxt})

    dfs((s,), {s})
    out.sort()
    return out


def _path_action(g: Graph, seq: tuple[str, ...]) -> Action:
    edges = frozenset(edge_key(a, b) for a, b in zip(seq, seq[1:]))
    return Action(elements=edges, cost=g.edge_set_cost(edges))


def feasible_actions(inst: GameInstance, i: int, t) -> list[Action]:
    """All minimal feasible actions of player i at type t, lexicographic order."""
    if inst.kind == "multicast":
        if t == inst.graph.root:
            return [EMPTY_ACTION]
        seqs = _all_simple_paths(inst.graph, t, inst.graph.root)
        if not seqs:
            raise NoFeasibleActionError(f"no path from {t!r} to root")
        acts = [_path_action(inst.graph, seq) for seq in seqs]
    elif inst.kind == "source-sink":
        s, r = t
        if s == r:
            return [EMPTY_ACTION]
        seqs = _all_simple_paths(inst.graph, s, r)
        if not seqs:
            raise NoFeasibleActionError(f"no path from {s!r} to {r!r}")
        acts = [_path_action(inst.graph, seq) for seq in seqs]
    else:
        costs = inst.cover_cost_map()
        acts = [
            Action(elements=frozenset([n]), cost=costs[n]) for n in sorted(set(t))
        ]
    acts = sorted(set(acts), key=Action.sort_key)
    return acts


def congestion(profile: Iterable[Action]) -> dict:
    counts: dict = {}
    for a in profile:
        for e in a.elements:
            counts[e] = counts.get(e, 0) + 1
    return counts


def player_cost(inst: GameInstance, profile, i: int) -> Fraction:
    counts = congestion(profile)
    return sum(
        (inst.element_cost(e) / counts[e] for e in profile[i].elements), Fraction(0)
    )


def social_cost(inst: GameInstance, profile) -> Fraction:
    used = set()
    for a in profile:
        used |= a.elements
    return sum((inst.element_cost(e) for e in used), Fraction(0))


def rosenthal_potential(inst: GameInstance, profile) -> Fraction:
    counts = congestion(profile)
    return sum(
        (inst.element_cost(e) * harmonic(k) for e, k in counts.items()),
        Fraction(0),
    )


def potential_difference_check(
    inst: GameInstance, profile, i: int, alt: Action
) -> tuple[Fraction, Fraction]:
    """Both sides of the exact-potential identity for a unilateral deviation
    of player i to `alt`: (cost difference, potential difference)."""
    deviated = tuple(alt if j == i else a for j, a in enumerate(profile))
    lhs = player_cost(inst, profile, i) - player_cost(inst, deviated, i)
    rhs = rosenthal_potential(inst, profile) - rosenthal_potential(inst, deviated)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Bayesian strategies and exact expectations


def strategy_action(strategy: dict, t) -> Action:
    return strategy[t]


def profile_actions(s: tuple, type_profile: tuple) -> tuple:
    return tuple(s[i][t] for i, t in enumerate(type_profile))


def type_profiles(inst: GameInstance, cap: Optional[int] = None):
    """Yield (type_profile, weight) over the full product support, in
    canonical order.  Weights are exact and sum to 1."""
    cap = inst.support_cap if cap is None else cap
    if inst.support_size() > cap:
        raise SupportTooLargeError(
            f"product support {inst.support_size()} exceeds cap {cap}"
        )
    supports = [spec.distribution for spec in inst.players]
    for combo in itertools.product(*supports):
        tp = tuple(t for t, _ in combo)
        w = Fraction(1)
        for _, p in combo:
            w *= p
        yield tp, w


def expected_social_cost(inst: GameInstance, s: tuple) -> Fraction:
    return sum(
        (w * social_cost(inst, profile_actions(s, tp)) for tp, w in type_profiles(inst)),
        Fraction(0),
    )


def expected_potential(inst: GameInstance, s: tuple) -> Fraction:
    return sum(
        (
            w * rosenthal_potential(inst, profile_actions(s, tp))
            for tp, w in type_profiles(inst)
        ),
        Fraction(0),
    )


def expected_player_cost(inst: GameInstance, s: tuple, i: int) -> Fraction:
    return sum(
        (
            w * player_cost(inst, profile_actions(s, tp), i)
            for tp, w in type_profiles(inst)
        ),
        Fraction(0),
    )


def ex_post_opt(inst: GameInstance, type_profile: tuple) -> tuple[frozenset, Fraction]:
    """Optimal joint element set for one realized type profile, via the exact
    combinatorial solver matching the game kind."""
    if inst.kind == "multicast":
        sources = {t for t in type_profile if t != inst.graph.root}
        if not sources:
            return EMPTY_ELEMENTS, Fraction(0)
        tree = graphs.steiner_tree_exact(inst.graph, sources | {inst.graph.root})
        return tree.edges, tree.cost
    if inst.kind == "source-sink":
        pairs = {edge_key(s, r) for s, r in type_profile if s != r}
        if not pairs:
            return EMPTY_ELEMENTS, Fraction(0)
        forest = graphs.steiner_forest_exact(inst.graph, pairs)
        return forest.edges, forest.cost
    chosen, cost = graphs.cover_exact(
        inst.cover_cost_map(), [tuple(t) for t in type_profile]
    )
    return chosen, cost


def expected_opt(inst: GameInstance) -> Fraction:
    return sum(
        (w * ex_post_opt(inst, tp)[1] for tp, w in type_profiles(inst)), Fraction(0)
    )
