"""Command-line front end: instance loading, analysis subcommands, and
machine-readable JSON/CSV reports.

Subcommands: eval, bne, bpos, ig, certify, scheme-check, sample, gen.
Exit codes: 0 on success/pass, 2 when a certificate or property check
fails, 1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import costsharing, equilibria, games, instances, sampling
from .errors import NetgamesError
from .games import GameInstance, feasible_actions


def _frac_str(x) -> str:
    return str(Fraction(x))


def _encode_element(inst: GameInstance, e):
    if inst.kind in games.GRAPH_KINDS:
        return [e[0], e[1]]
    return e


def _decode_element(inst: GameInstance, raw):
    if inst.kind in games.GRAPH_KINDS:
        return tuple(sorted(raw))
    return raw


def encode_profile(inst: GameInstance, s: tuple) -> list:
    out = []
    for i, strat in enumerate(s):
        entries = []
        for t, _ in inst.players[i].distribution:
            a = strat[t]
            entries.append(
                {
                    "type": instances._encode_type(inst.kind, t),
                    "action": sorted(_encode_element(inst, e) for e in a.elements),
                    "cost": _frac_str(a.cost),
                }
            )
        out.append({"strategies": entries})
    return out


def parse_strategy(inst: GameInstance, text: str) -> tuple:
    doc = json.loads(text)
    profile = []
    for i, pdoc in enumerate(doc["players"]):
        strat = {}
        for entry in pdoc["strategies"]:
            t = instances._decode_type(inst.kind, entry["type"])
            elements = frozenset(_decode_element(inst, e) for e in entry["action"])
            menu = {a.elements: a for a in feasible_actions(inst, i, t)}
            if elements not in menu:
                raise NetgamesError(
                    f"player {i}: action {sorted(elements)} infeasible for type {t!r}"
                )
            strat[t] = menu[elements]
        for t, _ in inst.players[i].distribution:
            if t not in strat:
                raise NetgamesError(f"player {i}: no action for support type {t!r}")
        profile.append(strat)
    return tuple(profile)


def _emit(report, fmt: str, out_path):
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        rows = report if isinstance(report, list) else _flatten(report)
        writer = csv.DictWriter(
            buf, fieldnames=list(rows[0].keys()), lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _flatten(report: dict) -> list:
    return [{"key": k, "value": v} for k, v in sorted(report.items())]


def _load_instance(args) -> GameInstance:
    with open(args.instance, encoding="utf-8") as f:
        inst = instances.parse_instance(f.read())
    if args.cap_support is not None:
        inst = GameInstance(
            kind=inst.kind,
            players=inst.players,
            graph=inst.graph,
            node_costs=inst.node_costs,
            support_cap=args.cap_support,
            strategy_cap=inst.strategy_cap,
        )
    if args.cap_strategies is not None:
        inst = GameInstance(
            kind=inst.kind,
            players=inst.players,
            graph=inst.graph,
            node_costs=inst.node_costs,
            support_cap=inst.support_cap,
            strategy_cap=args.cap_strategies,
        )
    return inst


def cmd_eval(args) -> int:
    inst = _load_instance(args)
    with open(args.strategy, encoding="utf-8") as f:
        s = parse_strategy(inst, f.read())
    report = {
        "expected_social_cost": _frac_str(games.expected_social_cost(inst, s)),
        "expected_potential": _frac_str(games.expected_potential(inst, s)),
        "expected_player_costs": [
            _frac_str(games.expected_player_cost(inst, s, i)) for i in range(inst.n)
        ],
    }
    _emit(report, args.format, args.out)
    return 0


def cmd_bne(args) -> int:
    inst = _load_instance(args)
    s = equilibria.min_potential_profile(inst, inst.strategy_cap)
    rep = equilibria.verify_bne(inst, s)
    report = {
        "is_bne": rep.is_bne,
        "expected_social_cost": _frac_str(games.expected_social_cost(inst, s)),
        "expected_potential": _frac_str(games.expected_potential(inst, s)),
        "players": encode_profile(inst, s),
    }
    _emit(report, args.format, args.out)
    return 0 if rep.is_bne else 2


def cmd_bpos(args) -> int:
    inst = _load_instance(args)
    report = {"bpos": _frac_str(equilibria.bpos_exact(inst, inst.strategy_cap))}
    _emit(report, args.format, args.out)
    return 0


def cmd_ig(args) -> int:
    inst = _load_instance(args)
    report = {
        "information_gap": _frac_str(
            equilibria.information_gap_exact(inst, inst.strategy_cap)
        )
    }
    _emit(report, args.format, args.out)
    return 0


def cmd_certify(args) -> int:
    inst = _load_instance(args)
    cert = equilibria.potential_method_certificate(inst, inst.strategy_cap)
    report = {
        "links": [
            {
                "claim": f"potential-method.{link.name}",
                "lhs": _frac_str(link.lhs),
                "rhs": _frac_str(link.rhs),
                "pass": link.holds,
            }
            for link in cert.links
        ],
        "values": {k: _frac_str(v) for k, v in cert.values.items()},
        "all_pass": cert.all_hold,
    }
    _emit(report, args.format, args.out)
    return 0 if cert.all_hold else 2


def cmd_scheme_check(args) -> int:
    inst = _load_instance(args)
    if inst.kind != "multicast":
        raise NetgamesError("scheme-check needs a multicast (rooted) instance")
    scheme = costsharing.steiner_scheme(inst.graph)
    rng = random.Random(args.seed)
    nodes = [n for n in inst.graph.nodes if n != inst.graph.root]
    rows = []
    all_pass = True
    cases = args.samples if args.samples else 50
    for _ in range(cases):
        U = frozenset(rng.sample(nodes, rng.randint(0, len(nodes))))
        x = rng.choice(nodes)
        checks = [
            ("competitiveness", costsharing.check_competitiveness(scheme, U), ""),
            ("strictness", costsharing.check_strictness(scheme, U, x), x),
        ]
        if U:
            member = rng.choice(sorted(U))
            sup = U | frozenset(rng.sample(nodes, rng.randint(0, len(nodes))))
            checks.append(
                (
                    "cross-monotonicity",
                    costsharing.check_cross_monotonicity(scheme, U, sup, member),
                    member,
                )
            )
        for prop, chk, x_used in checks:
            all_pass = all_pass and chk.holds
            rows.append(
                {
                    "scheme": scheme.name,
                    "property": prop,
                    "U": " ".join(sorted(U)),
                    "x": x_used,
                    "lhs": _frac_str(chk.lhs),
                    "rhs": _frac_str(chk.rhs),
                    "pass": chk.holds,
                }
            )
    _emit(rows, args.format, args.out)
    return 0 if all_pass else 2


def cmd_sample(args) -> int:
    inst = _load_instance(args)
    scheme = costsharing.steiner_scheme(inst.graph)
    if args.samples:
        rep = sampling.evaluate_construction_mc(
            inst, scheme, args.variant, args.samples, args.seed
        )
    else:
        rep = sampling.evaluate_construction_exact(inst, scheme, args.variant)
    report = {
        "variant": rep.variant,
        "samples": rep.samples,
        "seed": rep.seed,
        "first_stage": _frac_str(rep.first_stage),
        "augmentation": _frac_str(rep.augmentation),
        "total": _frac_str(rep.total),
        "bound": _frac_str(rep.bound),
        "pass": rep.passed,
        "ig_upper_bound": (
            _frac_str(rep.ig_upper_bound) if rep.ig_upper_bound is not None else None
        ),
        "stderr": rep.stderr,
    }
    _emit(report, args.format, args.out)
    return 0 if rep.passed else 2


def cmd_gen(args) -> int:
    inst = instances.gen_instance(
        kind=args.kind,
        n_nodes=args.nodes,
        n_players=args.players,
        n_types=args.types,
        seed=args.seed,
        iid=args.iid,
        root_mass=args.root_mass,
    )
    text = instances.serialize_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netgames",
        description="Exact analysis of Bayesian network design games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_instance=True):
        if needs_instance:
            p.add_argument("--instance", required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--cap-strategies", type=int, default=None)
        p.add_argument("--cap-support", type=int, default=None)

    p = sub.add_parser("eval", help="costs and potential of a strategy file")
    common(p)
    p.add_argument("--strategy", required=True)
    p.set_defaults(func=cmd_eval)

    for name, func, helptext in (
        ("bne", cmd_bne, "potential-minimizing equilibrium + verification"),
        ("bpos", cmd_bpos, "exact Bayesian price of stability"),
        ("ig", cmd_ig, "exact information gap"),
        ("certify", cmd_certify, "potential-method certificate chain"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("scheme-check", help="cost-sharing property suites")
    common(p)
    p.set_defaults(func=cmd_scheme_check)

    p = sub.add_parser("sample", help="sampling-and-augmentation construction")
    common(p)
    p.add_argument("--variant", choices=("iid", "noniid"), default="noniid")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("gen", help="seeded random instance generator")
    common(p, needs_instance=False)
    p.add_argument("--kind", choices=("multicast", "source-sink", "vertex-cover"),
                   default="multicast")
    p.add_argument("--nodes", type=int, default=4)
    p.add_argument("--players", type=int, default=2)
    p.add_argument("--types", type=int, default=2)
    p.add_argument("--iid", action="store_true")
    p.add_argument("--root-mass", action="store_true")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetgamesError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
