"""
Which small spheres admit the sign action?
==========================================

Place 2n vertices in R^n so the coordinate sign flips act on them, then search
all simplicial spheres on those labels that the flips preserve.  Only
cross-polytopes survive.
"""

# %%
from eqtri.core import f_vector, is_isomorphic
from eqtri.spheres import (
    classify_8vertex_s3,
    cross_polytope,
    lemma33_inequality,
    missing_edge_lower_bound,
    sphere_search,
    vertex_set_choices,
)

for n in (2, 3, 4):
    survivors, stats = sphere_search(n)
    print(f"n={n}: {vertex_set_choices(n)} support patterns, {len(survivors)} survivors, "
          f"all cross-polytopes: {all(is_isomorphic(L.complex, cross_polytope(n)) for L in survivors)}")
    for L in survivors:
        print("   supports", L.support_sizes(), " f =", tuple(f_vector(L.complex)))

# %% The three 8-vertex survivors differ in how their labels sit in R^4.
survivors, _ = sphere_search(4)
print("types:", sorted(classify_8vertex_s3(L) for L in survivors))

# %% Counting bounds used to rule out larger candidates.
print("missing edges needed at n=3:", missing_edge_lower_bound(3))
print("inequality holds for n = 2..20:", all(lemma33_inequality(n) for n in range(2, 21)))
