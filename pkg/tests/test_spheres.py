from __future__ import annotations

from fractions import Fraction

import pytest

import oracles
from eqtri.core import Complex, cycle, f_vector, is_isomorphic, join, verify_3sphere
from eqtri.errors import PreconditionError
from eqtri.group import is_equivariant
from eqtri.spheres import (
    LabeledComplex,
    classify_8vertex_s3,
    cross_polytope,
    cross_polytope_sphere,
    enumerate_equivariant_spheres,
    is_octahedral,
    lemma31_check,
    lemma33_inequality,
    missing_edge_lower_bound,
    sign_token,
    sphere_search,
    support_bound_check,
    support_patterns_bruteforce,
    suspension_action,
    verify_missing_edge_bound,
    vertex_set_choices,
)


def labelled(facets, labels, n) -> LabeledComplex:
    return LabeledComplex(Complex(facets), {t: tuple(Fraction(x) for x in v) for t, v in labels.items()}, n)


def square_labels(i, j, n):
    """The four points (+-1, +-1) in coordinates i, j, as a 4-cycle."""
    pts = []
    for s, t in ((1, 1), (1, -1), (-1, -1), (-1, 1)):
        v = [0] * n
        v[i], v[j] = s, t
        pts.append(tuple(v))
    toks = [sign_token(tuple(Fraction(x) for x in p)) for p in pts]
    return toks, dict(zip(toks, pts))


def type_one() -> LabeledComplex:
    a, la = square_labels(0, 1, 4)
    b, lb = square_labels(2, 3, 4)
    X = join(cycle(*a), cycle(*b))
    return labelled(X.facets, {**la, **lb}, 4)


def test_cross_polytope_sphere():
    L2 = cross_polytope_sphere(2)
    assert is_isomorphic(L2.complex, cycle("a", "b", "c", "d"))
    L3 = cross_polytope_sphere(3)
    assert len(L3.complex.facets) == 8 and L3.is_equivariant()
    L4 = cross_polytope_sphere(4)
    assert len(L4.complex.facets) == 16 and verify_3sphere(L4.complex)
    with pytest.raises(ValueError):
        cross_polytope(0)


def test_suspension_action():
    up = suspension_action(cross_polytope_sphere(2))
    assert up.complex == cross_polytope(3) and up.is_equivariant()
    up = suspension_action(up)
    assert up.complex == cross_polytope(4)
    assert is_equivariant(up.complex, up.action) and up.action.order == 16


def test_support_bound_check():
    assert support_bound_check(cross_polytope_sphere(3))
    toks, lab = square_labels(0, 1, 3)
    lab.update({"+3": (0, 0, 1), "-3": (0, 0, -1)})
    L = labelled(join(cycle(*toks), Complex([("+3",), ("-3",)])).facets, lab, 3)
    assert L.support_sizes() == [1, 1, 2, 2, 2, 2]
    assert support_bound_check(L)
    cube = {}
    for s in range(8):
        v = tuple(1 if s >> i & 1 else -1 for i in range(3))
        cube[sign_token(tuple(Fraction(x) for x in v))] = v
    C = labelled([tuple(sorted(cube))], cube, 3)
    with pytest.raises(PreconditionError):
        support_bound_check(C)


def test_vertex_set_choices():
    assert vertex_set_choices(3) == 2
    assert vertex_set_choices(4) == 3
    assert vertex_set_choices(2) == 2
    for n in range(2, 7):
        assert len(support_patterns_bruteforce(n)) == vertex_set_choices(n)
        # without the support cap no larger support fits into 2n labels
        assert support_patterns_bruteforce(n) == support_patterns_bruteforce(n, max_support=2)


def test_missing_edge_bound():
    assert missing_edge_lower_bound(3) == 16
    assert missing_edge_lower_bound(4) == 88
    assert verify_missing_edge_bound(cross_polytope_sphere(4))


def test_missing_edge_verifier_on_cube_orbit():
    # the 8 points (+-1,+-1,+-1) with edges of the 3-cube only: 28 - 12 = 16 missing
    cube = {}
    for s in range(8):
        v = tuple(1 if s >> i & 1 else -1 for i in range(3))
        cube[sign_token(tuple(Fraction(x) for x in v))] = v
    toks = sorted(cube)
    edges = [(a, b) for i, a in enumerate(toks) for b in toks[i + 1:]
             if sum(x != y for x, y in zip(cube[a], cube[b])) == 1]
    assert verify_missing_edge_bound(labelled(edges, cube, 3))
    # adding a diagonal breaks the structural condition
    assert not verify_missing_edge_bound(labelled(edges + [(toks[0], toks[-1])], cube, 3))


def test_facet_count_inequality():
    assert lemma33_inequality(2) and lemma33_inequality(4)
    assert all(lemma33_inequality(n) for n in range(2, 21))
    with pytest.raises(PreconditionError):
        lemma33_inequality(1)


def test_classify():
    assert classify_8vertex_s3(cross_polytope_sphere(4)) == "III"
    assert classify_8vertex_s3(type_one()) == "I"
    with pytest.raises(PreconditionError):
        classify_8vertex_s3(cross_polytope_sphere(5))


@pytest.mark.parametrize("n,count", [(2, 2), (3, 2), (4, 3)])
def test_enumeration(n, count):
    survivors, stats = sphere_search(n)
    assert len(survivors) == count
    assert stats.indeterminate == 0
    assert stats.patterns == vertex_set_choices(n)
    for L in survivors:
        assert is_octahedral(L)
        assert oracles.isomorphic_bruteforce(L.complex.facets, cross_polytope(n).facets)
        assert L.is_equivariant()
        assert lemma31_check(L) and support_bound_check(L)


def test_enumeration_n2_is_one_class():
    survivors = enumerate_equivariant_spheres(2)
    assert sorted(L.support_sizes() for L in survivors) == [[1, 1, 1, 1], [2, 2, 2, 2]]
    assert all(is_isomorphic(L.complex, survivors[0].complex) for L in survivors)


def test_n4_types():
    survivors = enumerate_equivariant_spheres(4)
    assert sorted(classify_8vertex_s3(L) for L in survivors) == ["I", "II", "III"]


@pytest.mark.parametrize("n", [2, 3])
def test_support_filter_is_redundant(n):
    with_filter, _ = sphere_search(n)
    without, _ = sphere_search(n, support_filter=False)
    assert len(without) == len(with_filter)


def test_parallel_search_matches_serial():
    a, _ = sphere_search(4)
    b, _ = sphere_search(4, jobs=2)
    assert [L.labels for L in a] == [L.labels for L in b]
    assert [L.complex for L in a] == [L.complex for L in b]


def test_search_range():
    with pytest.raises(PreconditionError):
        sphere_search(5)


def test_fvector_of_survivors():
    for L in enumerate_equivariant_spheres(3):
        assert tuple(f_vector(L.complex)) == (1, 6, 12, 8)
