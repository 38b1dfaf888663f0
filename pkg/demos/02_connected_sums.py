"""
Gluing two projective spaces
============================

A star-connected sum cuts out a vertex star on each side and glues the
antistars along an isomorphism of the links.  Here K14 and K11 are glued at
vertices with octahedral links, giving a 17-vertex RP3 # RP3.
"""

# %%
from eqtri.algebra import betti_gf2
from eqtri.catalog import load_fixture
from eqtri.core import f_vector, g_vector, is_isomorphic
from eqtri.group import fixed_vertices, is_equivariant
from eqtri.reference import sum17_finding
from eqtri.surgery import (
    SumPlan,
    check_induced_link_condition,
    connected_sum,
    equivariant_connected_sum_result,
    g2_connected_sum_predicted,
    relabeled_copy,
    retriangulate_star,
)

K, L = load_fixture("K14").complex, load_fixture("K11").complex
print("induced link at 3 in K14:", check_induced_link_condition(K, "3"))
print("induced link at 4 in K11:", check_induced_link_condition(L, "4"))

# %% The plain sum tries every link isomorphism and keeps the first valid one.
res = connected_sum(SumPlan(K, L, "3", "4"))
S = res.complex
print("link isomorphisms tried:", res.survivors)
print("f =", tuple(f_vector(S)), " g =", tuple(g_vector(S)), " betti =", tuple(betti_gf2(S)))
print("predicted g2:", g2_connected_sum_predicted(K, L, "3"))
print(sum17_finding(S).status, "-", sum17_finding(S).details)

# %% The equivariant route: double K14 along the identity on the link, then shrink.
fx = load_fixture("K14")
L2, b = relabeled_copy(fx.complex, "'", fx.action)
plan = SumPlan(fx.complex, L2, "3", "3'", psi={x: x + "'" for x in "abcdgh"}, suffix="")
eq = equivariant_connected_sum_result(plan, fx.action, b)
X, act = eq.complex, eq.action
print("doubled:", len(X.vertices), "vertices, fixed", fixed_vertices(X, act))
for w, p, q in (("1", "a", "c"), ("2", "b", "d"), ("4", "g", "h")):
    X = retriangulate_star(X, w, p, q)
print("after three retriangulations:", len(X.vertices), "vertices, equivariant:",
      bool(is_equivariant(X, act.restrict(X.vertices))), " same as the direct sum:", is_isomorphic(X, S))
