"""
Shrinking a 16-vertex RP3 to 11 vertices
========================================

Star retriangulation removes a vertex whose link is a bipyramid with a missing
apex edge.  Applied five times, it takes the 16-vertex RP3 in the catalog down
to 11 vertices while keeping a Z2^3 symmetry intact.
"""

# %%
from eqtri.algebra import betti_gf2
from eqtri.catalog import load_fixture, z2_3_action
from eqtri.core import f_vector, g_vector, verify_closed_3manifold
from eqtri.group import automorphism_group, fixed_vertices, is_equivariant
from eqtri.surgery import detect_bipyramid_link, retriangulate_star

K = load_fixture("K16").complex
print("K16  f =", tuple(f_vector(K)), " betti =", tuple(betti_gf2(K)))

# %% The link of e is a bipyramid over a hexagon; its apexes 6 and 8 are not joined.
shape = detect_bipyramid_link(K, "e")
print("lk(e): apexes", shape.apexes, "base", shape.base_cycle)

# %% Replay the two steps to K14, then three more to K11.
steps = [("e", "6", "8"), ("f", "5", "7"), ("1", "a", "c"), ("2", "b", "d"), ("3", "g", "h")]
X = K
for w, p, q in steps:
    X = retriangulate_star(X, w, p, q)
    print(f"retriangulate {w} ({p},{q}) -> f = {tuple(f_vector(X))}, g = {tuple(g_vector(X))}")
    if len(X.vertices) == 14:
        assert X == load_fixture("K14").complex

assert X == load_fixture("K11").complex
print("closed 3-manifold:", verify_closed_3manifold(X), " betti:", tuple(betti_gf2(X)))

# %% Every stage carries the same commuting involutions.
act = z2_3_action()
for fid in ("K16", "K14", "K11"):
    Y = load_fixture(fid).complex
    a = act.restrict(Y.vertices)
    print(fid, "equivariant:", bool(is_equivariant(Y, a)), " fixed:", fixed_vertices(Y, a),
          " |Aut| =", automorphism_group(Y).order)
