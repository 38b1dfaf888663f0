"""
Folding onto the orthant
========================

For a complex embedded in R^n and invariant under the sign flips, each facet
can be reflected into the nonnegative orthant.  Facets that straddle a
coordinate hyperplane are split first.  The folded pieces triangulate the
orbit space, with exact rational arithmetic throughout.
"""

# %%
import random

from eqtri.catalog import load_fixture, z2_3_action
from eqtri.quotient import (
    EmbeddedComplex,
    facet_orbit_count,
    quotient_triangulation,
    random_refinement,
    stellar_refine,
)

for n in (2, 3, 4):
    fx = load_fixture(f"XP_{n}")
    Q = quotient_triangulation(EmbeddedComplex(fx.complex, fx.positions))
    print(f"XP_{n}: {len(fx.complex.facets)} facets fold to {len(Q.complex.facets)}, "
          f"orthant volume {Q.orthant_volume}, cone volumes {Q.cone_volume_folded} = {Q.cone_volume_expected}")

# %% Subdividing one facet equivariantly subdivides all of its images.
fx = load_fixture("XP_3")
E = stellar_refine(EmbeddedComplex(fx.complex, fx.positions), ("+1", "+2", "+3"))
Q = quotient_triangulation(E)
print("refined octahedron:", len(E.complex.facets), "facets ->", len(Q.complex.facets), "in the orthant")
for t, p in sorted(Q.positions.items()):
    print("  ", t, tuple(str(c) for c in p))

rng = random.Random(0)
R = random_refinement(EmbeddedComplex(fx.complex, fx.positions), rng, 3)
print("random refinement:", len(R.complex.facets), "facets ->",
      len(quotient_triangulation(R).complex.facets), "quotient facets")

# %% K11 has no embedding; its combinatorial orbit count is the available measure.
K11 = load_fixture("K11").complex
print("facet orbits of K11 under Z2^3:", facet_orbit_count(K11, z2_3_action().restrict(K11.vertices)))
