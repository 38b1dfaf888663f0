"""End-to-end acceptance criteria, one test per criterion.

Each test records a ``criterion N: PASS|FAIL`` line (also printed in the
terminal summary) and asserts its sub-checks along with the runtime budget.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest

import oracles
from conftest import corpus_complex
from eqtri.algebra import betti_gf2
from eqtri.catalog import load_fixture, z2_3_action
from eqtri.core import Complex, degree, f_vector, g_vector, is_isomorphic, verify_closed_3manifold
from eqtri.group import (
    automorphism_group,
    fixed_vertices,
    is_equivariant,
)
from eqtri.quotient import (
    EmbeddedComplex,
    facet_orbit_count,
    fold_facet_to_orthant,
    quotient_triangulation,
    random_refinement,
)
from eqtri.reference import admissible_pair_findings, k14_fixed_finding, sum17_finding
from eqtri.spheres import (
    classify_8vertex_s3,
    cross_polytope,
    enumerate_equivariant_spheres,
    lemma33_inequality,
    missing_edge_lower_bound,
    vertex_set_choices,
)
from eqtri.surgery import (
    SumPlan,
    admissible_pair_bound,
    equivariant_connected_sum_result,
    g2_connected_sum_predicted,
    relabeled_copy,
    retriangulate_star,
    star_connected_sum,
)

RESULTS: dict[int, str] = {}


class Criterion:
    def __init__(self, n: int, budget: float):
        self.n, self.budget = n, budget
        self.failed: list[str] = []
        self.notes: list[str] = []

    def expect(self, ok: bool, what: str) -> None:
        (self.notes if ok else self.failed).append(what)


@contextmanager
def criterion(n: int, budget: float):
    c = Criterion(n, budget)
    t0 = time.perf_counter()
    try:
        yield c
    except Exception as exc:  # an exception is a failed criterion, reported like any other
        c.failed.append(f"{type(exc).__name__}: {exc}")
    dt = time.perf_counter() - t0
    c.expect(dt < budget, f"runtime {dt:.2f} s < {budget:g} s")
    verdict = "FAIL" if c.failed else "PASS"
    line = f"criterion {n}: {verdict} ({dt:.2f} s)"
    if c.failed:
        line += " failed: " + "; ".join(c.failed)
    RESULTS[n] = line
    print(line)
    assert not c.failed, line


@pytest.fixture(scope="module")
def fx():
    return {k: load_fixture(k).complex for k in ("K16", "K14", "K11")}


def test_criterion_1_fixture_integrity():
    with criterion(1, 5) as c:
        expected = {"K16": (1, 16, 80, 128, 64), "K14": (1, 14, 66, 104, 52), "K11": (1, 11, 51, 80, 40)}
        for fid, f in expected.items():
            X = load_fixture(fid).complex
            c.expect(tuple(f_vector(X)) == f, f"{fid} f-vector")
            c.expect(tuple(f_vector(X)) == oracles.fvec(X.facets), f"{fid} f-vector oracle")
            c.expect(verify_closed_3manifold(X), f"{fid} closed 3-manifold")
            c.expect(tuple(betti_gf2(X)) == (1, 1, 1, 1), f"{fid} Betti")


def test_criterion_2_pipeline_replay(fx):
    with criterion(2, 1) as c:
        X = fx["K16"]
        for w, p, q in (("e", "6", "8"), ("f", "5", "7")):
            X = retriangulate_star(X, w, p, q)
        c.expect(X == fx["K14"], "K16 -> K14")
        for w, p, q in (("1", "a", "c"), ("2", "b", "d"), ("3", "g", "h")):
            X = retriangulate_star(X, w, p, q)
        c.expect(X == fx["K11"], "K14 -> K11")


def test_criterion_3_equivariance(fx):
    with criterion(3, 1) as c:
        act = z2_3_action()
        c.expect(act.order == 8, "completed action has order 8")
        want = {"K16": ("1", "2", "3", "4"), "K14": ("1", "2", "3", "4"), "K11": ("4",)}
        fixed = {}
        for fid, X in fx.items():
            a = act.restrict(X.vertices)
            c.expect(is_equivariant(X, a), f"{fid} equivariant")
            fixed[fid] = tuple(sorted(fixed_vertices(X, a)))
            c.expect(fixed[fid] == want[fid], f"{fid} fixed set")
        c.expect(degree(fx["K11"], "4") == 6, "K11 fixed vertex degree 6")
        c.expect(k14_fixed_finding(fixed["K14"]).status == "flagged", "K14 fixed-set discrepancy flagged")


def test_criterion_4_automorphisms(fx):
    with criterion(4, 30) as c:
        for fid, order in (("K16", 32), ("K14", 48), ("K11", 48)):
            c.expect(automorphism_group(fx[fid]).order == order, f"|Aut({fid})| = {order}")


def test_criterion_5_connected_sum(fx):
    with criterion(5, 2) as c:
        K, L = fx["K14"], fx["K11"]
        S = star_connected_sum(SumPlan(K, L, "3", "4"))
        f = f_vector(S)
        c.expect((f.f(0), f.f(1)) == (17, 93), "f0, f1")
        c.expect(tuple(g_vector(S)) == (12, 35), "g-vector")
        c.expect(tuple(betti_gf2(S)) == (1, 2, 2, 1), "Betti")
        c.expect((f.f(2), f.f(3)) == (152, 76), "f2, f3")
        c.expect(sum17_finding(S).status == "flagged", "stated f-vector flagged")
        X4 = cross_polytope(4)
        K2 = relabeled_copy(K, "'")
        instances = [
            (SumPlan(K, L, "3", "4"), S),
            (SumPlan(X4, relabeled_copy(X4, "'"), "+1", "+1'"), None),
            (SumPlan(K, K2, "3", "3'", psi={x: x + "'" for x in "abcdgh"}, suffix=""), None),
            (SumPlan(fx["K16"], K2, "3", "3'"), None),
        ]
        for i, (plan, T) in enumerate(instances):
            T = T or star_connected_sum(plan)
            c.expect(g_vector(T).g2 == g2_connected_sum_predicted(plan.K, plan.L, plan.u), f"g2 formula #{i}")


def test_criterion_6_equivariant_route(fx):
    with criterion(6, 5) as c:
        fx14 = load_fixture("K14")
        K, a = fx14.complex, fx14.action
        L, b = relabeled_copy(K, "'", a)
        res = equivariant_connected_sum_result(
            SumPlan(K, L, "3", "3'", psi={x: x + "'" for x in "abcdgh"}, suffix=""), a, b)
        X, act = res.complex, res.action
        c.expect(len(X.vertices) == 20, "20 vertices")
        c.expect(is_equivariant(X, act), "equivariant")
        c.expect({"1", "2", "4"} <= set(fixed_vertices(X, act)), "fixed vertices include 1, 2, 4")
        for w, p, q in (("1", "a", "c"), ("2", "b", "d"), ("4", "g", "h")):
            X = retriangulate_star(X, w, p, q)
        c.expect(len(X.vertices) == 17, "17 vertices")
        c.expect(is_equivariant(X, act.restrict(X.vertices)), "still equivariant")
        S = star_connected_sum(SumPlan(fx["K14"], fx["K11"], "3", "4"))
        c.expect(is_isomorphic(X, S), "isomorphic to the direct sum")


def test_criterion_7_octahedral_characterization():
    with criterion(7, 60) as c:
        for n in (2, 3, 4):
            survivors = enumerate_equivariant_spheres(n)
            c.expect(bool(survivors), f"n={n} nonempty")
            c.expect(all(is_isomorphic(L.complex, cross_polytope(n)) for L in survivors),
                     f"n={n} all cross-polytopes")
            c.expect(vertex_set_choices(n) == n // 2 + 1, f"n={n} vertex-set choices")
            if n == 4:
                types = sorted(classify_8vertex_s3(L) for L in survivors)
                c.expect(types == ["I", "II", "III"], "three 8-vertex types")


def test_criterion_8_numeric_bounds():
    with criterion(8, 1) as c:
        c.expect(missing_edge_lower_bound(3) == 16, "missing edges at n=3")
        c.expect(all(lemma33_inequality(n) for n in range(2, 21)), "inequality for 2..20")
        c.expect(admissible_pair_bound(13, 8) == 22, "bound at (13,8)")
        c.expect(admissible_pair_bound(15, 12) == 17, "bound at (15,12)")
        flags = {f.name: f.status for f in admissible_pair_findings()}
        c.expect(flags["admissible_pair(12,6)"] == "flagged", "(12,6) flagged")


def _c9_geometric(c: Criterion) -> None:
    for fid in ("XP_3", "XP_4"):
        fxd = load_fixture(fid)
        Q = quotient_triangulation(EmbeddedComplex(fxd.complex, fxd.positions))
        c.expect(len(Q.complex.facets) == 1, f"{fid} folds to one simplex")
        c.expect(Q.orthant_volume == 1, f"{fid} orthant volume")
        c.expect(Q.cone_volume_folded == Q.cone_volume_expected, f"{fid} volume agreement")
    rng = random.Random(2024)
    bad = 0
    for _ in range(100):
        fxd = load_fixture(f"XP_{rng.choice([2, 3])}")
        E = random_refinement(EmbeddedComplex(fxd.complex, fxd.positions), rng, rng.randint(1, 3))
        for F in E.complex.facets:
            out = fold_facet_to_orthant(E, F)
            bad += any(fold_facet_to_orthant(E, g.image(F)) != out for g in E.action.elements)
    c.expect(bad == 0, "fold orbit-constant on 100 refinements")


def test_criterion_9_quotient(fx):
    with criterion(9, 10) as c:
        _c9_geometric(c)
    # the K11 sub-claim is unattainable (see the strict xfail below); the line must say so
    n = facet_orbit_count(fx["K11"], z2_3_action().restrict(fx["K11"].vertices))
    if n != 5:
        RESULTS[9] = f"criterion 9: FAIL facet_orbit_count(K11) = {n}, expected 5; folding sub-checks pass"
        print(RESULTS[9])


@pytest.mark.xfail(strict=True, reason="Z2^3 facet orbits of K11 number 11, not 5; see notes/decisions.md")
def test_criterion_9_k11_orbit_count(fx):
    assert facet_orbit_count(fx["K11"], z2_3_action().restrict(fx["K11"].vertices)) == 5


def test_criterion_10_property_suites():
    import test_properties as tp

    with criterion(10, 30) as c:
        corpus = [load_fixture(fid).complex for fid in ("K16", "K14", "K11", "RP2_6", "XP_2", "XP_3", "XP_4")]
        rng = random.Random(10)
        randoms = [corpus_complex(rng) for _ in range(200)]
        for check in tp.KERNEL_CHECKS:
            for X in corpus + randoms:
                if check is tp.check_star_join and len(X.facets) > 20:
                    for s in list(X.faces(0)) + list(X.faces(1)):
                        assert tp.star(X, s) == tp.join(Complex([s]), tp.link(X, s))
                    continue
                check(X)
        c.notes.append("kernel checks")
        plans = 0
        for seed in range(200):
            plan = tp.random_plan(random.Random(seed))
            if plan is None:
                continue
            plans += 1
            S = star_connected_sum(plan)
            fs = f_vector(S)
            c.expect((fs.f(0), fs.f(1)) == tp.predicted_sum_f01(plan.K, plan.L, plan.u), f"sum identity {seed}")
        c.expect(plans >= 100, f"{plans} random sums exercised")
