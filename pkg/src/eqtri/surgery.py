"""Retriangulation at a bipyramid star, and (equivariant) star-connected sums.

Both constructions act on closed combinatorial 3-manifolds and always
return complexes rebuilt through :func:`complex_from_facets`, so their facet
lists are canonical and directly comparable with shipped fixtures.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .core.complex import (
    Complex,
    complex_from_facets,
    f_vector,
    g_vector,
    induced,
    link,
)
from .core.iso import iter_isomorphisms
from .core.manifold import is_cycle, verify_2sphere
from .errors import (
    ApexEdgePresentError,
    EquivarianceError,
    FixedVertexError,
    InducedLinkError,
    IsomorphismError,
    NotABipyramidError,
    OverlapError,
    PreconditionError,
    ShapeError,
)
from .group import GroupAction, Permutation, fixed_vertices

logger = logging.getLogger(__name__)


# --- bipyramids -------------------------------------------------------------


class BipyramidShape(NamedTuple):
    base_cycle: tuple[str, ...]
    apexes: tuple[str, str]


def cycle_order(C: Complex) -> tuple[str, ...]:
    """Vertices of a cycle in traversal order.

    Starts at the smallest token and steps first to its smaller neighbour, so
    the result is canonical for a given cycle.
    """
    if not is_cycle(C):
        raise ShapeError("not a cycle")
    nb = C.neighbors
    start = C.vertices[0]
    order = [start, min(nb[start])]
    while len(order) < len(C.vertices):
        prev, cur = order[-2], order[-1]
        (nxt,) = nb[cur] - {prev}
        order.append(nxt)
    return tuple(order)


def _sphere_link(X: Complex, w: str) -> Complex:
    X.require_vertices([w])
    L = link(X, w)
    if L.dim != 2 or not L.is_pure() or not verify_2sphere(L):
        raise ShapeError(f"link of {w} is not a 2-sphere")
    return L


def _apex_pair(L: Complex, p: str, q: str) -> tuple[str, ...] | None:
    """Base cycle if ``L`` is the suspension of a cycle with apexes ``p``, ``q``."""
    if frozenset((p, q)) in L.edge_set:
        return None
    lp, lq = link(L, p), link(L, q)
    if lp != lq or not is_cycle(lp):
        return None
    if set(L.vertices) != set(lp.vertices) | {p, q}:
        return None
    return cycle_order(lp)


def bipyramid_apex_pairs(X: Complex, w: str) -> list[BipyramidShape]:
    """Every way of reading ``lk(w)`` as a bipyramid, ignoring the ambient apex edge."""
    L = _sphere_link(X, w)
    out = []
    for p, q in combinations(L.vertices, 2):
        base = _apex_pair(L, p, q)
        if base is not None:
            out.append(BipyramidShape(base, (p, q)))
    return out


def detect_bipyramid_link(X: Complex, w: str) -> BipyramidShape | None:
    """The first bipyramid reading of ``lk(w)`` whose apex pair is a missing edge of ``X``."""
    for shape in bipyramid_apex_pairs(X, w):
        if frozenset(shape.apexes) not in X.edge_set:
            return shape
    return None


def retriangulate_star(X: Complex, w: str, p: str, q: str) -> Complex:
    """Replace ``st(w)`` by ``pq * C(base)``, removing the vertex ``w``."""
    L = _sphere_link(X, w)
    p, q = sorted((p, q))
    if p not in L.vertices or q not in L.vertices:
        raise NotABipyramidError(f"{p} and {q} are not both in the link of {w}")
    base = _apex_pair(L, p, q)
    if base is None:
        raise NotABipyramidError(f"link of {w} is not a bipyramid with apexes {p}, {q}")
    if frozenset((p, q)) in X.edge_set:
        raise ApexEdgePresentError(f"apex edge {p}{q} is already an edge of the complex")
    m = len(base)
    kept = [f for f in X.facets if w not in f]
    new = [(p, q, base[i], base[(i + 1) % m]) for i in range(m)]
    return complex_from_facets(kept + new)


def insert_bipyramid_vertex(X: Complex, w: str, p: str, q: str, base: Sequence[str]) -> Complex:
    """Inverse of :func:`retriangulate_star`: cone the bipyramid ``B_base(p;q)`` from a new vertex ``w``."""
    if w in X.vertices:
        raise OverlapError(f"vertex {w} already present")
    m = len(base)
    removed = {tuple(sorted((p, q, base[i], base[(i + 1) % m]))) for i in range(m)}
    missing = removed - set(X.facets)
    if missing:
        raise ShapeError("the complex does not contain pq * C(base)")
    new = []
    for i in range(m):
        a, b = base[i], base[(i + 1) % m]
        new += [(w, p, a, b), (w, q, a, b)]
    return complex_from_facets([f for f in X.facets if f not in removed] + new)


# --- star-connected sums ----------------------------------------------------


def check_induced_link_condition(X: Complex, u: str) -> bool:
    """Whether the subcomplex induced on the link's vertices is the link itself."""
    X.require_vertices([u])
    lk = link(X, u)
    return induced(X, lk.vertices) == lk


@dataclass(frozen=True)
class SumPlan:
    """Inputs of ``K #_psi L``.

    ``psi`` maps link vertices of ``u`` in ``K`` to link vertices of ``v`` in
    ``L``; when omitted it is searched.  Vertices of ``L`` that are not
    identified with a ``K`` vertex get ``suffix`` appended.  ``pairing``
    matches generator names of the two actions for equivariant sums
    (default: by position).
    """

    K: Complex
    L: Complex
    u: str
    v: str
    psi: Mapping[str, str] | None = None
    suffix: str = "'"
    pairing: Sequence[tuple[str, str]] | None = None


class SumResult(NamedTuple):
    complex: Complex
    psi: dict[str, str]
    survivors: int
    relabel: dict[str, str]
    action: GroupAction | None = None


def _validate(plan: SumPlan, both_sides: bool = False) -> tuple[Complex, Complex]:
    """Check vertices and the induced-link condition (on ``K``, or on both sides)."""
    plan.K.require_vertices([plan.u])
    plan.L.require_vertices([plan.v])
    if not check_induced_link_condition(plan.K, plan.u):
        raise InducedLinkError(f"induced subcomplex on lk({plan.u}) in K differs from the link")
    if both_sides and not check_induced_link_condition(plan.L, plan.v):
        raise InducedLinkError(f"induced subcomplex on lk({plan.v}) in L differs from the link")
    return link(plan.K, plan.u), link(plan.L, plan.v)


def _check_iso(psi: Mapping[str, str], A: Complex, B: Complex) -> None:
    if set(psi) != set(A.vertices) or sorted(psi.values()) != list(B.vertices):
        raise IsomorphismError("psi is not a bijection between the link vertex sets")
    img = Complex(tuple(sorted(psi[x] for x in f)) for f in A.facets)
    if img != B:
        raise IsomorphismError("psi does not map the link of u onto the link of v")


def _pairs(plan: SumPlan, aK: GroupAction, aL: GroupAction) -> list[tuple[str, Permutation, Permutation]]:
    if plan.pairing is not None:
        names = list(plan.pairing)
    else:
        if len(aK.generators) != len(aL.generators):
            raise EquivarianceError("actions have different numbers of generators")
        names = [(a, b) for (a, _), (b, _) in zip(aK.generators, aL.generators)]
    return [(a, aK.element(a), aL.element(b)) for a, b in names]


def _is_equivariant_iso(psi: Mapping[str, str], pairs) -> bool:
    return all(psi[gk(x)] == gl(psi[x]) for _, gk, gl in pairs for x in psi)


def link_isomorphisms(
    plan: SumPlan, aK: GroupAction | None = None, aL: GroupAction | None = None
) -> list[dict[str, str]]:
    """All link isomorphisms, filtered by equivariance when both actions are given."""
    A, B = link(plan.K, plan.u), link(plan.L, plan.v)
    isos = list(iter_isomorphisms(A, B))
    if aK is not None and aL is not None:
        pairs = _pairs(plan, aK, aL)
        isos = [m for m in isos if _is_equivariant_iso(m, pairs)]
    return isos


def _glue(plan: SumPlan, psi: Mapping[str, str]) -> tuple[Complex, dict[str, str]]:
    K, L, u, v = plan.K, plan.L, plan.u, plan.v
    inv = {y: x for x, y in psi.items()}
    relabel = {}
    for y in L.vertices:
        if y == v:
            continue
        relabel[y] = inv[y] if y in inv else y + plan.suffix
    k_side = set(K.vertices) - {u}
    fresh = [t for y, t in relabel.items() if y not in inv]
    clash = sorted(k_side.intersection(fresh))
    if clash or len(set(fresh)) != len(fresh):
        raise OverlapError(f"relabeled L vertices collide with K vertices: {clash}; choose another suffix")
    facets = [f for f in K.facets if u not in f]
    facets += [tuple(relabel[y] for y in f) for f in L.facets if v not in f]
    return complex_from_facets(facets), relabel


def connected_sum(plan: SumPlan) -> SumResult:
    A, B = _validate(plan)
    if plan.psi is not None:
        psi = dict(plan.psi)
        _check_iso(psi, A, B)
        survivors = 1
    else:
        isos = list(iter_isomorphisms(A, B))
        if not isos:
            raise IsomorphismError(f"lk({plan.u}) in K and lk({plan.v}) in L are not isomorphic")
        psi, survivors = isos[0], len(isos)
    X, relabel = _glue(plan, psi)
    return SumResult(X, psi, survivors, relabel)


def star_connected_sum(plan: SumPlan) -> Complex:
    """``ast(u,K)`` and ``ast(v,L)`` glued along ``psi``."""
    return connected_sum(plan).complex


def equivariant_connected_sum(
    plan: SumPlan, aK: GroupAction, aL: GroupAction
) -> tuple[Complex, GroupAction]:
    res = equivariant_connected_sum_result(plan, aK, aL)
    return res.complex, res.action


def equivariant_connected_sum_result(plan: SumPlan, aK: GroupAction, aL: GroupAction) -> SumResult:
    if plan.u not in fixed_vertices(plan.K, aK):
        raise FixedVertexError(f"{plan.u} is not a fixed vertex of the action on K")
    if plan.v not in fixed_vertices(plan.L, aL):
        raise FixedVertexError(f"{plan.v} is not a fixed vertex of the action on L")
    A, B = _validate(plan)
    pairs = _pairs(plan, aK, aL)
    if plan.psi is not None:
        psi = dict(plan.psi)
        _check_iso(psi, A, B)
        for name, gk, gl in pairs:
            bad = [x for x in sorted(psi) if psi[gk(x)] != gl(psi[x])]
            if bad:
                raise EquivarianceError(f"psi does not commute with {name} at {bad[0]}")
        survivors = 1
    else:
        isos = link_isomorphisms(plan, aK, aL)
        if not isos:
            detail = "; ".join(
                f"{name} fixes {sum(gk(x) == x for x in A.vertices)} link vertices in K"
                f" and {sum(gl(y) == y for y in B.vertices)} in L"
                for name, gk, gl in pairs
            )
            raise EquivarianceError(f"no equivariant link isomorphism ({detail})")
        psi, survivors = isos[0], len(isos)
    _validate(plan, both_sides=True)
    X, relabel = _glue(plan, psi)
    gens = []
    for name, gk, gl in pairs:
        m = {x: gk(x) for x in plan.K.vertices if x != plan.u}
        for y, t in relabel.items():
            img = relabel[gl(y)]
            if t in m and m[t] != img:
                raise EquivarianceError(f"glued action {name} is inconsistent at {t}")
            m[t] = img
        gens.append((name, Permutation(m)))
    action = GroupAction(gens)
    from .group import is_equivariant

    chk = is_equivariant(X, action)
    if not chk:
        raise EquivarianceError(f"glued action {chk.generator} does not preserve facet {chk.facet}")
    return SumResult(X, psi, survivors, relabel, action)


def relabeled_copy(X: Complex, suffix: str = "'", action: GroupAction | None = None):
    """A vertex-disjoint copy of ``X`` (and its action) with ``suffix`` on every token."""
    m = {v: v + suffix for v in X.vertices}
    Y = X.relabel(m)
    return (Y, action.relabel(m)) if action is not None else Y


# --- f/g-vector arithmetic --------------------------------------------------


def g2_connected_sum_predicted(K: Complex, L: Complex, u: str) -> int:
    n = K.dim
    lk = f_vector(link(K, u))
    g = g_vector(K).g2 + g_vector(L).g2 - lk.f(1) + (n - 1) * lk.f(0)
    return g - (n + 1) * (n - 2) // 2


def g2_connected_sum_3mfld(K: Complex, L: Complex, u: str) -> int:
    return g_vector(K).g2 + g_vector(L).g2 - f_vector(link(K, u)).f(0) + 4


def predicted_sum_f01(K: Complex, L: Complex, u: str) -> tuple[int, int]:
    fk, fl, lk = f_vector(K), f_vector(L), f_vector(link(K, u))
    f0 = fk.f(0) + fl.f(0) - lk.f(0) - 2
    f1 = fk.f(1) + fl.f(1) - 2 * lk.f(0) - lk.f(1)
    return f0, f1


def admissible_pair_bound(f0: int, d: int) -> int:
    """Upper bound on g2 of a 3-manifold triangulation with ``f0`` vertices
    having a vertex whose ``d``-vertex link is an induced subcomplex."""
    if d < 3 or f0 <= d:
        raise PreconditionError("need d >= 3 and f0 > d")
    return f0 * (f0 - 11) // 2 - d * (d - 9) // 2 + 5


# Lower bounds on g2 for triangulations of RP^3 by vertex count.
RP3_G2_LOWER_BOUNDS = {11: 17, 12: 22, 13: 21, 14: 23, 15: 22, 16: 19, 17: 17}

EXCLUDED_RP3_PAIRS = (
    (11, 6), (11, 8), (11, 10), (12, 6), (12, 8), (12, 10), (13, 8), (13, 10),
    (13, 12), (14, 10), (14, 12), (15, 12), (15, 14), (16, 14), (17, 16),
)
