from fractions import Fraction

import pytest

from netgames import (
    SampleProfile,
    construct_strategy_iid,
    construct_strategy_noniid,
    derandomize,
    evaluate_construction_exact,
    evaluate_construction_mc,
    expected_opt,
    expected_social_cost,
    feasible_actions,
    regrouping_sides,
    shortest_path,
    steiner_scheme,
)
from netgames.games import GameInstance, PlayerSpec
from netgames.instances import gen_instance

from conftest import multicast, point_mass, uniform


def scheme_for(inst):
    return steiner_scheme(inst.graph)


def iid_triangle(triangle):
    return multicast(triangle, uniform(["a", "b"]), uniform(["a", "b"]))


def enumerated(types):
    return SampleProfile(types=tuple(types), provenance="enumerated")


class TestConstructIid:
    def test_all_root_draw_is_pure_augmentation(self, triangle):
        inst = iid_triangle(triangle)
        s = construct_strategy_iid(inst, scheme_for(inst), enumerated(["r"]))
        for t in ("a", "b"):
            expect = shortest_path(triangle, t, "r").edges
            assert s[0][t].elements == expect

    def test_sampled_type_rides_the_tree(self, triangle):
        inst = iid_triangle(triangle)
        scheme = scheme_for(inst)
        s = construct_strategy_iid(inst, scheme, enumerated(["a"]))
        base = scheme.approx(frozenset({"a"}))
        assert scheme.augment(base, "a").cost == 0
        assert s[0]["a"].elements <= base.edges

    def test_feasibility_random(self):
        for seed in range(10):
            inst = gen_instance("multicast", n_nodes=4, n_players=3,
                                n_types=2, seed=seed, iid=True)
            scheme = scheme_for(inst)
            rho = inst.players[0].support()
            for d1 in rho:
                for d2 in rho:
                    s = construct_strategy_iid(inst, scheme, enumerated([d1, d2]))
                    for i in range(inst.n):
                        for t in rho:
                            menu = {a.elements for a in feasible_actions(inst, i, t)}
                            assert s[i][t].elements in menu

    def test_symmetry(self, triangle):
        inst = iid_triangle(triangle)
        s = construct_strategy_iid(inst, scheme_for(inst), enumerated(["b"]))
        assert s[0] == s[1]

    def test_draw_size_checked(self, triangle):
        inst = iid_triangle(triangle)
        with pytest.raises(ValueError):
            construct_strategy_iid(inst, scheme_for(inst), enumerated(["a", "b"]))


class TestConstructNoniid:
    def test_independent_decisions_model(self):
        for seed in range(10):
            inst = gen_instance("multicast", n_nodes=4, n_players=2,
                                n_types=2, seed=seed, root_mass=True)
            scheme = scheme_for(inst)
            supports = [spec.support() for spec in inst.players]
            draw = enumerated([sup[0] for sup in supports])
            s = construct_strategy_noniid(inst, scheme, draw)
            for i, sup in enumerate(supports):
                assert not s[i][inst.graph.root].elements
                for t in sup:
                    menu = {a.elements for a in feasible_actions(inst, i, t)}
                    assert s[i][t].elements in menu

    def test_point_mass_bound_every_draw(self, triangle):
        inst = multicast(triangle, point_mass("a"), point_mass("b"))
        scheme = scheme_for(inst)
        rep = evaluate_construction_exact(inst, scheme, "noniid")
        assert rep.passed
        assert rep.total <= 3 * expected_opt(inst)

    def test_draw_size_checked(self, triangle):
        inst = multicast(triangle, point_mass("a"), point_mass("b"))
        with pytest.raises(ValueError):
            construct_strategy_noniid(inst, scheme_for(inst), enumerated(["a"]))


class TestEvaluateExact:
    def test_triangle_iid_bound(self, triangle):
        inst = iid_triangle(triangle)
        rep = evaluate_construction_exact(inst, scheme_for(inst), "iid")
        assert rep.passed
        assert rep.bound == 3 * expected_opt(inst)
        assert rep.total <= rep.first_stage + rep.augmentation

    def test_single_player(self, triangle):
        inst = multicast(triangle, uniform(["a", "b"]))
        rep = evaluate_construction_exact(inst, scheme_for(inst), "iid")
        assert rep.passed

    def test_random_instances(self):
        for seed in range(15):
            inst = gen_instance("multicast", n_nodes=4, n_players=3,
                                n_types=2, seed=seed, iid=True)
            rep = evaluate_construction_exact(inst, scheme_for(inst), "iid")
            assert rep.passed

    def test_first_stage_alpha_bound(self):
        for seed in range(10):
            inst = gen_instance("multicast", n_nodes=4, n_players=2,
                                n_types=2, seed=seed, iid=True)
            scheme = scheme_for(inst)
            rep = evaluate_construction_exact(inst, scheme, "iid")
            assert rep.first_stage <= scheme.alpha * expected_opt(inst)

    def test_regrouping_identity(self):
        for seed in range(10):
            inst = gen_instance("multicast", n_nodes=4, n_players=3,
                                n_types=2, seed=seed, iid=True)
            lhs, rhs = regrouping_sides(inst, scheme_for(inst))
            assert lhs == rhs


class TestEvaluateMc:
    def test_deterministic_given_seed(self, triangle):
        inst = iid_triangle(triangle)
        scheme = scheme_for(inst)
        a = evaluate_construction_mc(inst, scheme, "iid", samples=64, seed=9)
        b = evaluate_construction_mc(inst, scheme, "iid", samples=64, seed=9)
        assert a == b

    def test_within_three_stderr_of_exact(self, triangle):
        inst = iid_triangle(triangle)
        scheme = scheme_for(inst)
        exact = evaluate_construction_exact(inst, scheme, "iid")
        mc = evaluate_construction_mc(inst, scheme, "iid", samples=400, seed=1)
        assert abs(float(mc.total - exact.total)) <= 3 * mc.stderr

    def test_point_mass_is_exact(self, triangle):
        inst = multicast(triangle, point_mass("a"), point_mass("b"))
        scheme = scheme_for(inst)
        exact = evaluate_construction_exact(inst, scheme, "noniid")
        mc = evaluate_construction_mc(inst, scheme, "noniid", samples=4, seed=0)
        assert mc.total == exact.total

    def test_needs_samples(self, triangle):
        inst = iid_triangle(triangle)
        with pytest.raises(ValueError):
            evaluate_construction_mc(inst, scheme_for(inst), "iid", samples=0)


class TestDerandomize:
    def test_point_mass_recovers_true_types(self, triangle):
        inst = multicast(triangle, point_mass("a"), point_mass("b"))
        D, _ = derandomize(inst, scheme_for(inst), "noniid")
        assert D.types == ("a", "b")

    def test_best_draw_beats_average(self, triangle):
        inst = iid_triangle(triangle)
        scheme = scheme_for(inst)
        _, s = derandomize(inst, scheme, "iid")
        rep = evaluate_construction_exact(inst, scheme, "iid")
        assert expected_social_cost(inst, s) <= rep.total

    def test_ratio_within_guarantee(self):
        for seed in range(10):
            inst = gen_instance("multicast", n_nodes=4, n_players=2,
                                n_types=2, seed=seed, iid=True)
            scheme = scheme_for(inst)
            _, s = derandomize(inst, scheme, "iid")
            opt = expected_opt(inst)
            if opt == 0:
                continue
            assert expected_social_cost(inst, s) / opt <= 3


class TestGuards:
    def test_multicast_only(self):
        inst = gen_instance("source-sink", n_nodes=4, n_players=2,
                            n_types=2, seed=0)
        with pytest.raises(ValueError):
            evaluate_construction_exact(inst, None, "iid")

    def test_iid_requires_identical_distributions(self, triangle):
        inst = multicast(triangle, point_mass("a"), point_mass("b"))
        with pytest.raises(ValueError):
            construct_strategy_iid(inst, scheme_for(inst), enumerated(["a"]))
