"""Walkthrough: the rooted Steiner-tree strict cost-sharing scheme.

The scheme's base algorithm builds an exact Steiner tree on the clients
plus the root; newcomers attach along a shortest path, and each client's
share is half its distance to the other clients and the root.  We show the
three defining properties (competitiveness, 2-strictness,
cross-monotonicity) on the triangle, then stress them on random graphs.
"""

import random
from fractions import Fraction

from netgames import (
    check_competitiveness,
    check_cross_monotonicity,
    check_strictness,
    graph_from_costs,
    steiner_scheme,
)

triangle = graph_from_costs(
    {("r", "a"): Fraction(2), ("r", "b"): Fraction(2), ("a", "b"): Fraction(1)},
    root="r",
)
scheme = steiner_scheme(triangle)
print(f"Scheme: {scheme.name}, alpha={scheme.alpha}, beta={scheme.beta}, "
      f"cross-monotone={scheme.cross_monotone}\n")

chk = check_competitiveness(scheme, {"a", "b"})
print(f"Competitiveness on {{a,b}}: shares {chk.lhs} <= OPT {chk.rhs}  "
      f"[{'ok' if chk.holds else 'VIOLATED'}]")

chk = check_strictness(scheme, {"a"}, "b")
print(f"2-strictness adding b to {{a}}: augmentation {chk.lhs} <= "
      f"beta*share {chk.rhs}  [tight]" if chk.lhs == chk.rhs else "")

chk = check_cross_monotonicity(scheme, {"b"}, {"a", "b"}, "b")
print(f"Cross-monotonicity of b's share: {chk.lhs} (in larger set) <= "
      f"{chk.rhs} (alone)\n")

print("Stress test on 100 random connected graphs:")
rng = random.Random(0)
failures = 0
for _ in range(100):
    n = rng.randint(3, 6)
    nodes = [f"n{j}" for j in range(n)]
    edges = {}
    shuffled = nodes[:]
    rng.shuffle(shuffled)
    for u, v in zip(shuffled, shuffled[1:]):
        edges[tuple(sorted((u, v)))] = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    for u in nodes:
        for v in nodes:
            if u < v and (u, v) not in edges and rng.random() < 0.4:
                edges[(u, v)] = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    g = graph_from_costs(edges, nodes=nodes, root=nodes[0])
    sch = steiner_scheme(g)
    clients = nodes[1:]
    U = frozenset(rng.sample(clients, rng.randint(0, len(clients))))
    x = rng.choice(clients)
    checks = [check_competitiveness(sch, U), check_strictness(sch, U, x)]
    if U:
        sup = U | frozenset(rng.sample(clients, rng.randint(0, len(clients))))
        checks.append(check_cross_monotonicity(sch, U, sup, rng.choice(sorted(U))))
    failures += sum(not c.holds for c in checks)
print(f"  property violations: {failures} / ~250 checks")
