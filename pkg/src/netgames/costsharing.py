"""Strict cost-sharing schemes for sub-additive client/element problems.

A scheme bundles an approximation algorithm A (clients -> element set), an
augmentation algorithm B (solution, new client -> extra elements), a share
function xi, and declared constants (alpha, beta).  The rooted Steiner-tree
scheme ships here: A is the exact Steiner tree, B routes a newcomer along a
shortest path to the current tree, and a client's share is half its distance
to the other clients and the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import graphs
from .errors import DisconnectedError
from .graphs import EdgeSet, Graph, Metric


@dataclass(frozen=True)
class SchemeCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class CostSharingScheme:
    name: str
    alpha: Fraction
    beta: Fraction
    approx: Callable[[frozenset], EdgeSet]  # A
    augment: Callable[[EdgeSet, object], EdgeSet]  # B
    share: Callable[[frozenset, object], Fraction]  # xi
    optimum: Callable[[frozenset], EdgeSet]  # exact OPT handle
    is_solution: Callable[[frozenset, frozenset], bool]  # Sol(U) membership
    cross_monotone: bool = False


def steiner_scheme(g: Graph) -> CostSharingScheme:
    """Rooted Steiner-tree scheme with alpha = 1 and beta = 2.  Clients are
    graph nodes; a solution for U connects U and the root."""
    if g.root is None:
        raise ValueError("steiner scheme needs a rooted graph")
    if not g.is_connected():
        raise DisconnectedError("graph is not connected")
    root = g.root
    metric = graphs.metric_closure(g)

    def approx(clients: frozenset) -> EdgeSet:
        terminals = set(clients) | {root}
        return graphs.steiner_tree_exact(g, terminals)

    def augment(solution: EdgeSet, x) -> EdgeSet:
        touched = {root} | {n for e in solution.edges for n in e}
        if x in touched:
            return EdgeSet(edges=frozenset(), cost=Fraction(0))
        # Shortest path from x to the nearest node already on the tree.
        best = None
        for target in sorted(touched):
            p = graphs.shortest_path(g, x, target)
            key = (p.cost, p.nodes)
            if best is None or key < best[0]:
                best = (key, p)
        return EdgeSet(edges=best[1].edges, cost=best[1].cost)

    def share(clients: frozenset, x) -> Fraction:
        if x not in clients:
            return Fraction(0)
        others = (set(clients) | {root}) - {x}
        if not others:
            return Fraction(0)
        return metric.d_to_set(others, x) / 2

    def optimum(clients: frozenset) -> EdgeSet:
        return approx(clients)

    def is_solution(elements: frozenset, clients: frozenset) -> bool:
        comp = _components_with(g, elements)
        return all(comp[c] == comp[root] for c in clients)

    return CostSharingScheme(
        name="steiner-tree",
        alpha=Fraction(1),
        beta=Fraction(2),
        approx=approx,
        augment=augment,
        share=share,
        optimum=optimum,
        is_solution=is_solution,
        cross_monotone=True,
    )


def _components_with(g: Graph, elements: frozenset) -> dict:
    parent = {n: n for n in g.nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in elements:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return {n: find(n) for n in g.nodes}


def check_competitiveness(scheme: CostSharingScheme, clients: Iterable) -> SchemeCheck:
    """Sum of shares over the client set versus the exact optimum cost."""
    U = frozenset(clients)
    lhs = sum((scheme.share(U, x) for x in U), Fraction(0))
    rhs = scheme.optimum(U).cost
    return SchemeCheck(lhs=lhs, rhs=rhs)


def check_strictness(scheme: CostSharingScheme, clients: Iterable, x) -> SchemeCheck:
    """Augmentation cost for a newcomer versus beta times its share in the
    grown client set."""
    U = frozenset(clients)
    lhs = scheme.augment(scheme.approx(U), x).cost
    rhs = scheme.beta * scheme.share(U | {x}, x)
    return SchemeCheck(lhs=lhs, rhs=rhs)


def check_cross_monotonicity(
    scheme: CostSharingScheme, clients: Iterable, clients_sup: Iterable, x
) -> SchemeCheck:
    """A client's share must not increase when the client set grows."""
    U = frozenset(clients)
    U_sup = frozenset(clients_sup)
    if not U <= U_sup:
        raise ValueError("first client set must be contained in the second")
    if x not in U:
        raise ValueError("client must belong to the smaller set")
    return SchemeCheck(lhs=scheme.share(U_sup, x), rhs=scheme.share(U, x))
