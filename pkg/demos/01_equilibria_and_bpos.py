"""Walkthrough: equilibria and the price of stability under incomplete
information.

Two players sit at node `a` or `b` of a rooted triangle with equal
probability and must connect to the root, splitting edge costs with anyone
sharing an edge.  We compute the potential-minimizing Bayes-Nash
equilibrium, the exact Bayesian price of stability, the information gap,
and the certificate chain tying them together.
"""

from fractions import Fraction

from netgames import (
    bpos_exact,
    expected_opt,
    expected_potential,
    expected_social_cost,
    graph_from_costs,
    information_gap_exact,
    min_potential_profile,
    potential_method_certificate,
    verify_bne,
)
from netgames.games import GameInstance, PlayerSpec

g = graph_from_costs(
    {("r", "a"): Fraction(2), ("r", "b"): Fraction(2), ("a", "b"): Fraction(1)},
    root="r",
)
uniform = PlayerSpec(distribution=(("a", Fraction(1, 2)), ("b", Fraction(1, 2))))
inst = GameInstance(kind="multicast", players=(uniform, uniform), graph=g)

print("Instance: rooted triangle, 2 players, sources uniform on {a, b}\n")

s_star = min_potential_profile(inst)
print("Potential-minimizing strategy profile:")
for i, strat in enumerate(s_star):
    for t, a in sorted(strat.items()):
        print(f"  player {i}, type {t}: edges {sorted(a.elements)} (cost {a.cost})")

rep = verify_bne(inst, s_star)
print(f"\nIs it a Bayes-Nash equilibrium?  {rep.is_bne}")
print(f"Expected social cost K(s*) = {expected_social_cost(inst, s_star)}")
print(f"Expected potential  Psi(s*) = {expected_potential(inst, s_star)}")
print(f"Expected optimum   E[OPT]  = {expected_opt(inst)}")

print(f"\nBayesian price of stability = {bpos_exact(inst)}")
print(f"Information gap             = {information_gap_exact(inst)}")

print("\nPotential-method certificate chain:")
cert = potential_method_certificate(inst)
for link in cert.links:
    print(f"  {link.name}: {link.lhs} <= {link.rhs}  [{'ok' if link.holds else 'VIOLATED'}]")
print(f"All links hold: {cert.all_hold}")
