"""Instance file parsing, canonical serialization, and the seeded random
instance generator.

Instances are JSON documents with exact rationals written as "p/q" (or plain
integer) strings:

    {
      "version": 1,
      "kind": "multicast",
      "graph": {"nodes": ["a", "b", "r"], "root": "r",
                "edges": [{"u": "a", "v": "r", "cost": "2"}, ...]},
      "players": [{"distribution": [{"type": "a", "prob": "1/2"}, ...]}],
      "caps": {"support": 1000000, "strategies": 10000000}
    }

Cover kinds replace "graph" with "cover": {"node_costs": {"u": "1", ...}}.
Types are strings (multicast), two-element lists (source-sink and
vertex-cover), or node lists (hypergraph-cover).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .errors import ParseError, ValidationError
from .games import (
    DEFAULT_SUPPORT_CAP,
    GameInstance,
    PlayerSpec,
)
from .equilibria import DEFAULT_STRATEGY_CAP
from .graphs import Graph

FORMAT_VERSION = 1


def _rational(value, field: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ValidationError(field, f"not a rational: {value!r}")


def _decode_type(kind: str, raw):
    if kind == "multicast":
        if not isinstance(raw, str):
            raise ValidationError("players", f"multicast type must be a node id: {raw!r}")
        return raw
    if kind == "source-sink":
        if not (isinstance(raw, list) and len(raw) == 2):
            raise ValidationError("players", f"source-sink type must be a pair: {raw!r}")
        return (raw[0], raw[1])
    if not isinstance(raw, list) or not raw:
        raise ValidationError("players", f"cover type must be a node list: {raw!r}")
    return tuple(sorted(raw))


def _encode_type(kind: str, t):
    if kind == "multicast":
        return t
    return list(t)


def parse_instance(text: str) -> GameInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise ValidationError("version", f"expected {FORMAT_VERSION}")
    kind = doc.get("kind")
    caps = doc.get("caps") or {}
    support_cap = int(caps.get("support", DEFAULT_SUPPORT_CAP))
    strategy_cap = int(caps.get("strategies", DEFAULT_STRATEGY_CAP))

    graph = None
    node_costs = None
    if "graph" in doc:
        gdoc = doc["graph"]
        edges = []
        for e in gdoc.get("edges", []):
            cost = _rational(e.get("cost"), "graph.edges.cost")
            if cost < 0:
                raise ValidationError("graph.edges.cost", f"negative cost {cost}")
            edges.append(((e["u"], e["v"]), cost))
        try:
            graph = Graph(
                nodes=tuple(gdoc.get("nodes", [])),
                edges=tuple(edges),
                root=gdoc.get("root"),
            )
        except ValueError as exc:
            raise ValidationError("graph", str(exc))
    if "cover" in doc:
        cdoc = doc["cover"]
        node_costs = tuple(
            (n, _rational(c, f"cover.node_costs.{n}"))
            for n, c in cdoc.get("node_costs", {}).items()
        )
        for n, c in node_costs:
            if c < 0:
                raise ValidationError(f"cover.node_costs.{n}", f"negative cost {c}")

    players = []
    for i, pdoc in enumerate(doc.get("players", [])):
        dist = []
        for entry in pdoc.get("distribution", []):
            t = _decode_type(kind, entry.get("type"))
            p = _rational(entry.get("prob"), f"players[{i}].prob")
            dist.append((t, p))
        players.append(PlayerSpec(distribution=tuple(dist)))

    return GameInstance(
        kind=kind,
        players=tuple(players),
        graph=graph,
        node_costs=node_costs,
        support_cap=support_cap,
        strategy_cap=strategy_cap,
    )


def serialize_instance(inst: GameInstance) -> str:
    doc: dict = {"version": FORMAT_VERSION, "kind": inst.kind}
    if inst.graph is not None:
        doc["graph"] = {
            "nodes": list(inst.graph.nodes),
            "root": inst.graph.root,
            "edges": [
                {"u": u, "v": v, "cost": str(c)} for (u, v), c in inst.graph.edges
            ],
        }
    if inst.node_costs is not None:
        doc["cover"] = {"node_costs": {n: str(c) for n, c in inst.node_costs}}
    doc["players"] = [
        {
            "distribution": [
                {"type": _encode_type(inst.kind, t), "prob": str(p)}
                for t, p in spec.distribution
            ]
        }
        for spec in inst.players
    ]
    doc["caps"] = {"support": inst.support_cap, "strategies": inst.strategy_cap}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _random_probs(rng: random.Random, k: int) -> list[Fraction]:
    weights = [rng.randint(1, 6) for _ in range(k)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def _random_graph(rng: random.Random, n_nodes: int, rooted: bool) -> Graph:
    nodes = [f"v{j}" for j in range(n_nodes)]
    edges = {}
    shuffled = nodes[:]
    rng.shuffle(shuffled)
    for a, b in zip(shuffled, shuffled[1:]):  # random spanning tree
        key = (a, b) if a <= b else (b, a)
        edges[key] = Fraction(rng.randint(1, 10), rng.randint(1, 4))
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            key = (nodes[i], nodes[j])
            if key not in edges and rng.random() < 0.4:
                edges[key] = Fraction(rng.randint(1, 10), rng.randint(1, 4))
    root = rng.choice(nodes) if rooted else None
    return Graph(nodes=tuple(nodes), edges=tuple(edges.items()), root=root)


def gen_instance(
    kind: str,
    n_nodes: int = 4,
    n_players: int = 2,
    n_types: int = 2,
    seed: int = 0,
    iid: bool = False,
    root_mass: bool = False,
) -> GameInstance:
    """Seeded random instance.  `iid` forces one shared distribution;
    `root_mass` generates two-point distributions with residual mass on the
    root (the independent-decisions model)."""
    rng = random.Random(seed)
    if kind in ("multicast", "source-sink"):
        graph = _random_graph(rng, n_nodes, rooted=(kind == "multicast"))
        nodes = list(graph.nodes)

        def random_dist():
            if kind == "multicast":
                if root_mass:
                    node = rng.choice([n for n in nodes if n != graph.root])
                    p = Fraction(rng.randint(1, 5), 6)
                    return ((node, p), (graph.root, 1 - p))
                k = min(n_types, len(nodes))
                support = rng.sample(nodes, k)
                probs = _random_probs(rng, k)
                return tuple(zip(support, probs))
            pairs = [
                (a, b) for a in nodes for b in nodes if a < b
            ]
            k = min(n_types, len(pairs))
            support = rng.sample(pairs, k)
            probs = _random_probs(rng, k)
            return tuple(zip(support, probs))

        if iid:
            shared = random_dist()
            players = tuple(PlayerSpec(distribution=shared) for _ in range(n_players))
        else:
            players = tuple(
                PlayerSpec(distribution=random_dist()) for _ in range(n_players)
            )
        return GameInstance(kind=kind, players=players, graph=graph)

    if kind != "vertex-cover":
        raise ValueError(f"generator does not support kind {kind!r}")
    nodes = [f"v{j}" for j in range(n_nodes)]
    node_costs = tuple(
        (n, Fraction(rng.randint(1, 10), rng.randint(1, 4))) for n in nodes
    )
    pairs = [(a, b) for a in nodes for b in nodes if a < b]

    def random_pair_dist():
        k = min(n_types, len(pairs))
        support = rng.sample(pairs, k)
        probs = _random_probs(rng, k)
        return tuple(zip(support, probs))

    if iid:
        shared = random_pair_dist()
        players = tuple(PlayerSpec(distribution=shared) for _ in range(n_players))
    else:
        players = tuple(
            PlayerSpec(distribution=random_pair_dist()) for _ in range(n_players)
        )
    return GameInstance(kind="vertex-cover", players=players, node_costs=node_costs)
