"""Bayes-Nash verification, potential-minimizing equilibria, best-response
dynamics, and exact price-of-stability / information-gap ratios with a
link-by-link certificate of the potential-method inequality chain."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NoConvergenceError,
    StrategySpaceTooLargeError,
    ZeroOptimumError,
)
from .games import (
    GameInstance,
    Action,
    expected_opt,
    expected_potential,
    expected_social_cost,
    feasible_actions,
    harmonic,
    player_cost,
)

DEFAULT_STRATEGY_CAP = 10 ** 7


@dataclass(frozen=True)
class EquilibriumReport:
    profile: tuple
    is_bne: bool
    worst_violation: Optional[tuple]  # (player, type, deviation Action, gap)


@dataclass(frozen=True)
class CertificateLink:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class CertificateReport:
    links: tuple[CertificateLink, ...]
    values: dict

    @property
    def all_hold(self) -> bool:
        return all(link.holds for link in self.links)


def _action_menu(inst: GameInstance) -> list[list[tuple]]:
    """Per player: list of (type, [feasible actions]) in support order."""
    menu = []
    for i, spec in enumerate(inst.players):
        menu.append([(t, feasible_actions(inst, i, t)) for t, _ in spec.distribution])
    return menu


def strategy_space_size(inst: GameInstance) -> int:
    size = 1
    for entries in _action_menu(inst):
        for _, acts in entries:
            size *= len(acts)
    return size


def player_strategies(inst: GameInstance, i: int):
    """All pure Bayesian strategies of player i, canonical order."""
    entries = _action_menu(inst)[i]
    types = [t for t, _ in entries]
    for combo in itertools.product(*[acts for _, acts in entries]):
        yield dict(zip(types, combo))


def all_strategy_profiles(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP):
    size = strategy_space_size(inst)
    if size > cap:
        raise StrategySpaceTooLargeError(f"strategy space {size} exceeds cap {cap}")
    spaces = [list(player_strategies(inst, i)) for i in range(inst.n)]
    for combo in itertools.product(*spaces):
        yield tuple(combo)


def _opponent_profiles(inst: GameInstance, i: int):
    supports = [spec.distribution for j, spec in enumerate(inst.players) if j != i]
    for combo in itertools.product(*supports):
        types = [t for t, _ in combo]
        w = Fraction(1)
        for _, p in combo:
            w *= p
        yield types, w


def interim_cost(inst: GameInstance, s: tuple, i: int, t, action: Action) -> Fraction:
    """Player i's expected cost at type t playing `action`, with opponents
    following s on their realized types."""
    total = Fraction(0)
    for others, w in _opponent_profiles(inst, i):
        profile = []
        k = 0
        for j in range(inst.n):
            if j == i:
                profile.append(action)
            else:
                profile.append(s[j][others[k]])
                k += 1
        total += w * player_cost(inst, tuple(profile), i)
    return total


def verify_bne(inst: GameInstance, s: tuple) -> EquilibriumReport:
    """Check the interim best-response inequality for every player, support
    type, and feasible deviation.  Weak inequality with exact rationals."""
    worst = None
    for i, spec in enumerate(inst.players):
        for t, _ in spec.distribution:
            current = interim_cost(inst, s, i, t, s[i][t])
            for alt in feasible_actions(inst, i, t):
                gap = current - interim_cost(inst, s, i, t, alt)
                if gap > 0 and (worst is None or gap > worst[3]):
                    worst = (i, t, alt, gap)
    return EquilibriumReport(profile=s, is_bne=worst is None, worst_violation=worst)


def min_potential_profile(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP) -> tuple:
    """Exact minimizer of the expected potential over all pure Bayesian
    strategy profiles; first minimizer in canonical order on ties."""
    best = None
    best_val = None
    for s in all_strategy_profiles(inst, cap):
        val = expected_potential(inst, s)
        if best_val is None or val < best_val:
            best, best_val = s, val
    return best


def min_cost_profile(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP) -> tuple:
    """Exact minimizer of the expected social cost (no equilibrium
    constraint); realizes the numerator of the information gap."""
    best = None
    best_val = None
    for s in all_strategy_profiles(inst, cap):
        val = expected_social_cost(inst, s)
        if best_val is None or val < best_val:
            best, best_val = s, val
    return best


def best_response_dynamics(
    inst: GameInstance,
    s0: tuple,
    max_rounds: int = 1000,
    return_trace: bool = False,
):
    """Round-robin exact interim best responses.  Each improving move
    strictly decreases the expected potential, so this terminates at a BNE
    on exact-rational instances.  Ties keep the incumbent action."""
    s = tuple(dict(p) for p in s0)
    trace = [expected_potential(inst, s)]
    for _ in range(max_rounds):
        changed = False
        for i, spec in enumerate(inst.players):
            for t, _ in spec.distribution:
                incumbent = s[i][t]
                best_act = incumbent
                best_val = interim_cost(inst, s, i, t, incumbent)
                for alt in feasible_actions(inst, i, t):
                    val = interim_cost(inst, s, i, t, alt)
                    if val < best_val:
                        best_act, best_val = alt, val
                if best_act != incumbent:
                    s[i][t] = best_act
                    changed = True
                    trace.append(expected_potential(inst, s))
        if not changed:
            return (s, trace) if return_trace else tuple(s)
    raise NoConvergenceError(max_rounds)


def enumerate_pure_bne(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP) -> list:
    return [
        s for s in all_strategy_profiles(inst, cap) if verify_bne(inst, s).is_bne
    ]


def bpos_exact(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP) -> Fraction:
    """Bayesian price of stability: best pure BNE expected cost over the
    expected full-information optimum."""
    opt = expected_opt(inst)
    if opt == 0:
        raise ZeroOptimumError("expected optimum is zero; ratio undefined")
    best = min(
        expected_social_cost(inst, s) for s in enumerate_pure_bne(inst, cap)
    )
    return best / opt


def information_gap_exact(inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP) -> Fraction:
    """Best expected cost achievable with private-information strategies,
    over the expected full-information optimum."""
    opt = expected_opt(inst)
    if opt == 0:
        raise ZeroOptimumError("expected optimum is zero; ratio undefined")
    best = min(
        expected_social_cost(inst, s) for s in all_strategy_profiles(inst, cap)
    )
    return best / opt


def potential_method_certificate(
    inst: GameInstance, cap: int = DEFAULT_STRATEGY_CAP
) -> CertificateReport:
    """Verify the potential-method inequality chain link by link, with
    closeness constants lam = 1 and mu = H_n."""
    lam = Fraction(1)
    mu = harmonic(inst.n)
    s_star = min_potential_profile(inst, cap)
    s_tilde = min_cost_profile(inst, cap)
    k_star = expected_social_cost(inst, s_star)
    psi_star = expected_potential(inst, s_star)
    psi_tilde = expected_potential(inst, s_tilde)
    k_tilde = expected_social_cost(inst, s_tilde)
    opt = expected_opt(inst)
    if opt == 0:
        raise ZeroOptimumError("expected optimum is zero; ratio undefined")
    ig = k_tilde / opt
    bpos = bpos_exact(inst, cap)
    links = (
        CertificateLink("cost_below_potential", k_star, psi_star / lam),
        CertificateLink("potential_minimizer", psi_star / lam, psi_tilde / lam),
        CertificateLink("closeness_upper", psi_tilde / lam, mu / lam * k_tilde),
        CertificateLink("gap_times_opt", mu / lam * k_tilde, mu / lam * ig * opt),
        CertificateLink("bpos_bound", bpos, mu / lam * ig),
    )
    values = {
        "lambda": lam,
        "mu": mu,
        "K_min_potential": k_star,
        "Psi_min_potential": psi_star,
        "Psi_min_cost": psi_tilde,
        "K_min_cost": k_tilde,
        "expected_opt": opt,
        "information_gap": ig,
        "bpos": bpos,
    }
    return CertificateReport(links=links, values=values)
