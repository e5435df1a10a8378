"""Weighted undirected graphs with exact rational costs, plus the exact
combinatorial solvers (shortest paths, metric closure, MST, Steiner tree and
forest, hitting sets) that the game layer uses as its optimum.

All costs are `fractions.Fraction`; every argmin is broken lexicographically
under the canonical (sorted) node/edge ordering so results are reproducible.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import (
    DisconnectedError,
    InfeasibleError,
    TooLargeError,
    UnreachableError,
)

Edge = tuple[str, str]

DEFAULT_EDGE_CAP = 20
DEFAULT_NODE_CAP = 24


def edge_key(u: str, v: str) -> Edge:
    """Canonical (sorted) key for the undirected edge {u, v}."""
    return (u, v) if u <= v else (v, u)


def edge_set_sort_key(edges: Iterable[Edge]) -> tuple:
    return tuple(sorted(edges))


@dataclass(frozen=True)
class Graph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[Edge, Fraction], ...]
    root: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        seen = set()
        canon = []
        for (u, v), c in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            k = edge_key(u, v)
            if k in seen:
                raise ValueError(f"duplicate edge {k}")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge {k} references unknown node")
            c = Fraction(c)
            if c < 0:
                raise ValueError(f"negative cost on edge {k}")
            seen.add(k)
            canon.append((k, c))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        if self.root is not None and self.root not in self.nodes:
            raise ValueError(f"root {self.root!r} not a node")
        object.__setattr__(self, "_cost", dict(self.edges))
        adj = {n: [] for n in self.nodes}
        for (u, v), c in self.edges:
            adj[u].append((v, c))
            adj[v].append((u, c))
        for n in adj:
            adj[n].sort()
        object.__setattr__(self, "_adj", adj)

    def cost(self, e: Edge) -> Fraction:
        return self._cost[e]

    def neighbors(self, u: str) -> list[tuple[str, Fraction]]:
        return self._adj[u]

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self._cost

    def edge_keys(self) -> list[Edge]:
        return [k for k, _ in self.edges]

    def edge_set_cost(self, edges: Iterable[Edge]) -> Fraction:
        return sum((self._cost[e] for e in edges), Fraction(0))

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        comp = _components(self.nodes, self.edge_keys())
        return len(set(comp.values())) == 1


def graph_from_costs(costs: dict[Edge, Fraction] | dict, nodes=None, root=None) -> Graph:
    """Convenience constructor from an edge->cost mapping."""
    edge_items = tuple((edge_key(u, v), Fraction(c)) for (u, v), c in costs.items())
    if nodes is None:
        nodes = sorted({n for (u, v), _ in edge_items for n in (u, v)})
    return Graph(nodes=tuple(nodes), edges=edge_items, root=root)


@dataclass(frozen=True)
class Path:
    nodes: tuple[str, ...]
    edges: frozenset
    cost: Fraction


@dataclass(frozen=True)
class EdgeSet:
    edges: frozenset
    cost: Fraction

    def sort_key(self) -> tuple:
        return tuple(sorted(self.edges))


class Metric:
    """All-pairs shortest-path distance table over a connected graph."""

    def __init__(self, nodes: tuple[str, ...], table: dict[Edge, Fraction]):
        self.nodes = tuple(sorted(nodes))
        self._d = table

    def d(self, u: str, v: str) -> Fraction:
        if u == v:
            return Fraction(0)
        return self._d[edge_key(u, v)]

    def d_to_set(self, targets: Iterable[str], x: str) -> Fraction:
        """Distance from x to the nearest node of a nonempty target set."""
        return min(self.d(x, t) for t in targets)


def _components(nodes, edges):
    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return {n: find(n) for n in nodes}


def shortest_path(g: Graph, u: str, v: str) -> Path:
    """Cheapest simple u-v path; ties go to the lexicographically smallest
    node sequence."""
    if u not in g.nodes or v not in g.nodes:
        raise UnreachableError(u, v)
    if u == v:
        return Path(nodes=(u,), edges=frozenset(), cost=Fraction(0))
    # Dijkstra with (cost, node-sequence) priorities; sequences compare
    # lexicographically, which implements the tie-break directly.
    heap = [(Fraction(0), (u,))]
    best: dict[str, tuple[Fraction, tuple[str, ...]]] = {}
    while heap:
        cost, seq = heapq.heappop(heap)
        node = seq[-1]
        if node in best:
            continue
        best[node] = (cost, seq)
        if node == v:
            edges = frozenset(edge_key(a, b) for a, b in zip(seq, seq[1:]))
            return Path(nodes=seq, edges=edges, cost=cost)
        for nxt, c in g.neighbors(node):
            if nxt not in best:
                heapq.heappush(heap, (cost + c, seq + (nxt,)))
    raise UnreachableError(u, v)


def metric_closure(g: Graph) -> Metric:
    if not g.is_connected():
        raise DisconnectedError("graph is not connected")
    table: dict[Edge, Fraction] = {}
    for u in g.nodes:
        dist = _dijkstra_costs(g, u)
        for v in g.nodes:
            if u < v:
                table[(u, v)] = dist[v]
    return Metric(g.nodes, table)


def _dijkstra_costs(g: Graph, source: str) -> dict[str, Fraction]:
    dist = {source: Fraction(0)}
    heap = [(Fraction(0), source)]
    done = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for nxt, c in g.neighbors(node):
            nd = d + c
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def mst_over_terminals(m: Metric, terminals: Iterable[str]) -> tuple[EdgeSet, Fraction]:
    """Kruskal on the metric-closure clique restricted to `terminals`."""
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("terminal set must be nonempty")
    pairs = sorted(
        ((m.d(a, b), (a, b)) for a, b in itertools.combinations(terms, 2))
    )
    parent = {t: t for t in terms}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    total = Fraction(0)
    for d, (a, b) in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append((a, b))
            total += d
    es = EdgeSet(edges=frozenset(chosen), cost=total)
    return es, total


def _candidate_key(cost: Fraction, edges: frozenset) -> tuple:
    return (cost, tuple(sorted(edges)))


def steiner_tree_exact(g: Graph, terminals: Iterable[str]) -> EdgeSet:
    """Minimum-cost edge set connecting all terminals (Dreyfus-Wagner dynamic
    program over terminal subsets), with lexicographic tie-breaking."""
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("terminal set must be nonempty")
    for t in terms:
        if t not in g.nodes:
            raise DisconnectedError(f"terminal {t!r} not in graph")
    comp = _components(g.nodes, g.edge_keys())
    if len({comp[t] for t in terms}) > 1:
        raise DisconnectedError("terminals not mutually reachable")
    if len(terms) == 1:
        return EdgeSet(edges=frozenset(), cost=Fraction(0))

    # dp[(v, X)] = cheapest edge set connecting {v} | X, X a frozenset of
    # terminals.  States carry real edge sets; combined costs are the actual
    # cost of the union, so overlapping sub-solutions only help.
    dp: dict[tuple[str, frozenset], tuple[Fraction, frozenset]] = {}
    for t in terms:
        for v in g.nodes:
            if comp[v] != comp[t]:
                continue
            p = shortest_path(g, v, t)
            dp[(v, frozenset([t]))] = (p.cost, p.edges)

    base = terms[0]
    rest = terms[1:]
    for size in range(2, len(rest) + 1):
        for subset in itertools.combinations(rest, size):
            X = frozenset(subset)
            anchor = min(X)
            labels: dict[str, tuple[Fraction, frozenset]] = {}
            for v in g.nodes:
                best = None
                for r in range(1, size):
                    for part in itertools.combinations(sorted(X - {anchor}), r - 1):
                        X1 = frozenset(part) | {anchor}
                        X2 = X - X1
                        s1 = dp.get((v, X1))
                        s2 = dp.get((v, X2))
                        if s1 is None or s2 is None:
                            continue
                        edges = s1[1] | s2[1]
                        cost = g.edge_set_cost(edges)
                        if best is None or _candidate_key(cost, edges) < _candidate_key(*best):
                            best = (cost, edges)
                if best is not None:
                    labels[v] = best
            # Relax labels along graph edges (Dijkstra-style sweep).
            heap = [(_candidate_key(c, e), v) for v, (c, e) in labels.items()]
            heapq.heapify(heap)
            settled = set()
            while heap:
                key, v = heapq.heappop(heap)
                if v in settled or _candidate_key(*labels[v]) != key:
                    continue
                settled.add(v)
                cost_v, edges_v = labels[v]
                for nxt, c in g.neighbors(v):
                    edges = edges_v | {edge_key(v, nxt)}
                    cost = g.edge_set_cost(edges)
                    cand = (cost, edges)
                    if nxt not in labels or _candidate_key(*cand) < _candidate_key(*labels[nxt]):
                        labels[nxt] = cand
                        heapq.heappush(heap, (_candidate_key(*cand), nxt))
            for v, sol in labels.items():
                dp[(v, X)] = sol

    cost, edges = dp[(base, frozenset(rest))]
    return EdgeSet(edges=frozenset(edges), cost=cost)


def steiner_forest_exact(
    g: Graph, pairs: Iterable[Edge], cap: int = DEFAULT_EDGE_CAP
) -> EdgeSet:
    """Minimum-cost edge set connecting every given node pair, by exhaustive
    edge-subset enumeration."""
    pair_list = sorted({edge_key(u, v) for u, v in pairs if u != v})
    if not pair_list:
        return EdgeSet(edges=frozenset(), cost=Fraction(0))
    comp = _components(g.nodes, g.edge_keys())
    for u, v in pair_list:
        if comp.get(u) != comp.get(v):
            raise DisconnectedError(f"pair ({u!r}, {v!r}) not connected in graph")

    def feasible(edges: frozenset) -> bool:
        c = _components(g.nodes, edges)
        return all(c[u] == c[v] for u, v in pair_list)

    return min_feasible_subset_bruteforce(g, feasible, cap=cap)


def min_feasible_subset_bruteforce(
    g: Graph, feasible: Callable[[frozenset], bool], cap: int = DEFAULT_EDGE_CAP
) -> EdgeSet:
    """Cheapest edge subset satisfying a monotone feasibility predicate.
    Serves as the independent oracle for the Steiner solvers."""
    keys = g.edge_keys()
    if len(keys) > cap:
        raise TooLargeError(f"{len(keys)} edges exceeds enumeration cap {cap}")
    # Integer-scaled costs keep the inner enumeration loop cheap; the scale
    # factor is exact so comparisons stay exact.
    denom_lcm = 1
    for k in keys:
        denom_lcm = denom_lcm * g.cost(k).denominator // math.gcd(
            denom_lcm, g.cost(k).denominator
        )
    scaled = [int(g.cost(k) * denom_lcm) for k in keys]
    best = None  # (scaled cost, sorted edge tuple, frozenset)
    for mask in range(1 << len(keys)):
        cost = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                cost += scaled[i]
            m >>= 1
            i += 1
        if best is not None:
            if cost > best[0]:
                continue
            if cost == best[0]:
                edges = frozenset(k for i, k in enumerate(keys) if mask >> i & 1)
                if tuple(sorted(edges)) >= best[1]:
                    continue
                if feasible(edges):
                    best = (cost, tuple(sorted(edges)), edges)
                continue
        edges = frozenset(k for i, k in enumerate(keys) if mask >> i & 1)
        if feasible(edges):
            best = (cost, tuple(sorted(edges)), edges)
    if best is None:
        raise InfeasibleError("no edge subset satisfies the predicate")
    return EdgeSet(edges=best[2], cost=Fraction(best[0], denom_lcm))


def cover_exact(
    node_costs: dict[str, Fraction],
    hyperedges: Iterable[Iterable[str]],
    cap: int = DEFAULT_NODE_CAP,
) -> tuple[frozenset, Fraction]:
    """Minimum-cost node set hitting every hyperedge (exact branch and
    bound over uncovered hyperedges)."""
    costs = {n: Fraction(c) for n, c in node_costs.items()}
    if len(costs) > cap:
        raise TooLargeError(f"{len(costs)} nodes exceeds enumeration cap {cap}")
    hedges = [tuple(sorted(set(h))) for h in hyperedges]
    for h in hedges:
        if not h:
            raise ValueError("empty hyperedge")
        for n in h:
            if n not in costs:
                raise ValueError(f"hyperedge node {n!r} has no cost")

    best: list = [None]  # (cost, sorted-node-tuple, frozenset)

    def search(chosen: frozenset, cost: Fraction):
        if best[0] is not None and cost > best[0][0]:
            return
        open_edge = next((h for h in hedges if not chosen.intersection(h)), None)
        if open_edge is None:
            key = (cost, tuple(sorted(chosen)))
            if best[0] is None or key < best[0][:2]:
                best[0] = (cost, key[1], chosen)
            return
        for n in open_edge:
            search(chosen | {n}, cost + costs[n])

    search(frozenset(), Fraction(0))
    assert best[0] is not None
    return best[0][2], best[0][0]
