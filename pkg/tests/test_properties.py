"""Property tests over the fixture corpus plus randomized small complexes."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import corpus_complex, random_sphere, random_stellar
from eqtri.algebra import betti_gf2, boundary_matrix
from eqtri.catalog import FIXTURE_IDS, load_fixture
from eqtri.core import (
    Complex,
    boundary_of_simplex,
    euler_characteristic,
    f_vector,
    find_isomorphism,
    g_vector,
    is_closed_pseudomanifold,
    join,
    link,
    missing_edges,
    star,
    suspension,
)
from eqtri.group import (
    act_on_complex,
    automorphism_group,
    fixed_vertices,
    is_equivariant,
    nonfixed_parity_check,
    vertex_orbits,
)
from eqtri.quotient import (
    EmbeddedComplex,
    flip,
    fold_facet_to_orthant,
    random_refinement,
    simplex_volume,
    split_simplex_by_hyperplane,
)
from eqtri.spheres import LabeledComplex, lemma31_check
from eqtri.surgery import (
    SumPlan,
    check_induced_link_condition,
    g2_connected_sum_predicted,
    predicted_sum_f01,
    relabeled_copy,
    star_connected_sum,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
CORPUS = [load_fixture(fid).complex for fid in FIXTURE_IDS]


# --- kernel -----------------------------------------------------------------------


def check_closure(X: Complex) -> None:
    faces = set(X.all_faces())
    assert faces == {tuple(sorted(s)) for s in oracles.all_faces(X.facets)}
    for s in faces:
        for k in range(len(s)):
            for t in combinations(s, k):
                assert t in X


def check_star_join(X: Complex) -> None:
    for s in X.all_faces():
        if s:
            assert star(X, s) == join(Complex([s]), link(X, s))


def check_betti_euler(X: Complex) -> None:
    b = betti_gf2(X)
    assert b.euler_characteristic == euler_characteristic(X)
    assert tuple(b) == oracles.betti(X.facets)


def check_boundary_squared(X: Complex) -> None:
    for k in range(1, X.dim):
        assert (boundary_matrix(X, k) @ boundary_matrix(X, k + 1)).is_zero()


def check_suspension_law(X: Complex) -> None:
    f = f_vector(X)
    s = f_vector(suspension(X))
    assert s.f(0) == f.f(0) + 2
    for k in range(1, X.dim + 2):
        assert s.f(k) == f.f(k) + 2 * f.f(k - 1)


def check_closed_3mfld(X: Complex) -> None:
    if X.is_pure() and X.dim == 3 and is_closed_pseudomanifold(X):
        f = f_vector(X)
        assert f.f(2) == 2 * f.f(3)
        b = betti_gf2(X)
        assert b[0] == b[3] and b[1] == b[2]


def check_missing_edges(X: Complex) -> None:
    assert missing_edges(X)[0] + f_vector(X).f(1) == comb(len(X.vertices), 2)


KERNEL_CHECKS = [check_closure, check_star_join, check_betti_euler, check_boundary_squared,
                 check_suspension_law, check_closed_3mfld, check_missing_edges]


@pytest.mark.parametrize("check", KERNEL_CHECKS, ids=lambda c: c.__name__)
def test_kernel_properties_on_fixtures(check):
    for X in CORPUS:
        if check is check_star_join and len(X.facets) > 20:
            # large fixtures: vertex and edge stars only, to keep the run short
            for s in list(X.faces(0)) + list(X.faces(1)):
                assert star(X, s) == join(Complex([s]), link(X, s))
            continue
        check(X)


@given(seeds)
def test_kernel_properties_random(seed):
    X = corpus_complex(random.Random(seed))
    for check in KERNEL_CHECKS:
        check(X)


@given(seeds)
def test_fvector_matches_oracle(seed):
    X = corpus_complex(random.Random(seed))
    assert tuple(f_vector(X)) == oracles.fvec(X.facets)
    if X.is_pure() and X.dim >= 1:
        assert g_vector(X).g2 == oracles.g2(X.facets)


def test_simplex_boundary_g2_vanishes():
    for d in range(1, 7):
        assert g_vector(boundary_of_simplex(d + 1)).g2 == 0


@given(seeds)
def test_isomorphism_under_relabeling(seed):
    rng = random.Random(seed)
    X = corpus_complex(rng)
    vs = list(X.vertices)
    img = [f"x{i}" for i in range(len(vs))]
    rng.shuffle(img)
    Y = X.relabel(dict(zip(vs, img)))
    m = find_isomorphism(X, Y)
    assert m is not None and X.relabel(m) == Y
    assert find_isomorphism(Y, X) is not None
    assert tuple(betti_gf2(Y)) == tuple(betti_gf2(X))
    assert find_isomorphism(X, X) is not None


@given(seeds, seeds)
def test_isomorphism_symmetric_and_matches_bruteforce(s1, s2):
    X = corpus_complex(random.Random(s1))
    Y = corpus_complex(random.Random(s2))
    xy = find_isomorphism(X, Y) is not None
    assert xy == (find_isomorphism(Y, X) is not None)
    if len(X.vertices) <= 7 and len(Y.vertices) <= 7:
        assert xy == oracles.isomorphic_bruteforce(X.facets, Y.facets)


# --- connected sums -----------------------------------------------------------------


def random_plan(rng: random.Random) -> SumPlan | None:
    base = rng.choice([boundary_of_simplex(4), load_fixture("XP_4").complex, boundary_of_simplex(3)])
    K = random_stellar(base, rng, rng.randint(0, 4))
    cands = [u for u in K.vertices if check_induced_link_condition(K, u)]
    if not cands:
        return None
    u = rng.choice(cands)
    L = relabeled_copy(K, "'")
    v = u + "'"
    # facet subdivisions away from v keep lk(v) and its induced condition
    facets = {frozenset(F) for F in L.facets}
    for k in range(rng.randint(0, 3)):
        F = rng.choice(sorted((G for G in facets if v not in G), key=sorted))
        facets.remove(F)
        facets |= {(F - {x}) | {f"n{k}"} for x in F}
    L = Complex(tuple(sorted(F)) for F in facets)
    return SumPlan(K, L, u, v)


@given(seeds)
def test_sum_identities(seed):
    plan = random_plan(random.Random(seed))
    if plan is None:
        return
    S = star_connected_sum(plan)
    f0, f1 = predicted_sum_f01(plan.K, plan.L, plan.u)
    fs = f_vector(S)
    assert (fs.f(0), fs.f(1)) == (f0, f1)
    assert g_vector(S).g2 == g2_connected_sum_predicted(plan.K, plan.L, plan.u)
    assert is_closed_pseudomanifold(S)


def test_sum_identities_on_fixture_instance():
    K, L = load_fixture("K14").complex, load_fixture("K11").complex
    S = star_connected_sum(SumPlan(K, L, "3", "4"))
    assert (f_vector(S).f(0), f_vector(S).f(1)) == predicted_sum_f01(K, L, "3")
    assert g_vector(S).g2 == g2_connected_sum_predicted(K, L, "3")


# --- group actions -------------------------------------------------------------------


def random_equivariant(rng: random.Random) -> EmbeddedComplex:
    fx = load_fixture(f"XP_{rng.choice([2, 3])}")
    return random_refinement(EmbeddedComplex(fx.complex, fx.positions), rng, rng.randint(0, 2))


def check_group_properties(X: Complex, a) -> None:
    assert is_equivariant(X, a)
    for g in a.elements:
        assert f_vector(act_on_complex(a, g, X)) == f_vector(X)
    orb = vertex_orbits(X, a)
    assert sum(len(c) for c in orb.classes) == len(X.vertices)
    for c in orb.classes:
        assert a.order % len(c) == 0
    if a.order >= 2:
        assert nonfixed_parity_check(X, a)


def test_group_properties_on_fixtures():
    for fid in FIXTURE_IDS:
        fx = load_fixture(fid)
        if fx.action is not None:
            check_group_properties(fx.complex, fx.action)
            assert automorphism_group(fx.complex).order % fx.action.order == 0


@given(seeds)
def test_group_properties_random(seed):
    E = random_equivariant(random.Random(seed))
    check_group_properties(E.complex, E.action)
    L = LabeledComplex(E.complex, E.positions, E.ambient_dim)
    assert not fixed_vertices(E.complex, E.action)
    assert lemma31_check(L)


# --- quotient --------------------------------------------------------------------------


@given(seeds)
def test_split_halves_reassemble(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    i = rng.randrange(n)

    def rnd():
        return Fraction(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice([1, -1])

    on = []
    for _ in range(n - 1):
        on.append(tuple(Fraction(0) if j == i else rnd() for j in range(n)))
    p = tuple(abs(rnd()) if j == i else rnd() for j in range(n))
    s = on + [p, flip(p, i)]
    if simplex_volume(s) == 0:
        return
    pos, neg = split_simplex_by_hyperplane(s, i)
    assert simplex_volume(pos) + simplex_volume(neg) == simplex_volume(s)
    assert {flip(q, i) for q in pos} == set(neg)
    assert all(q[i] >= 0 for q in pos)


@given(seeds)
def test_fold_orbit_constant(seed):
    E = random_equivariant(random.Random(seed))
    for F in E.complex.facets:
        out = fold_facet_to_orthant(E, F)
        assert len(out) == len(F)
        assert all(c >= 0 for p in out for c in p)
        for g in E.action.elements:
            assert fold_facet_to_orthant(E, g.image(F)) == out


@given(seeds)
def test_random_sphere_is_sphere(seed):
    from eqtri.core import is_sphere

    X = random_sphere(random.Random(seed))
    assert is_sphere(X) is True
