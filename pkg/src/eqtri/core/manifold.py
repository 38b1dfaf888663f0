"""Pseudomanifold, surface, 3-manifold and sphere recognition."""

from __future__ import annotations

import logging
from collections import Counter
from itertools import combinations

from ..errors import PurityError
from .complex import Complex, euler_characteristic, link

logger = logging.getLogger(__name__)

DEFAULT_MOVE_BUDGET = 100_000


def _require_pure(X: Complex, dims: tuple[int, ...] | None = None) -> int:
    if not X.is_pure():
        raise PurityError("complex is not pure")
    d = X.dim
    if dims is not None and d not in dims:
        raise PurityError(f"expected a pure complex of dimension {dims}, got {d}")
    return d


def _connected(vertices, adjacency) -> bool:
    vertices = list(vertices)
    if not vertices:
        return False
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def is_connected(X: Complex) -> bool:
    return _connected(X.vertices, X.neighbors)


def ridge_counts(X: Complex) -> Counter:
    counts: Counter = Counter()
    for f in X.facets:
        for i in range(len(f)):
            counts[f[:i] + f[i + 1:]] += 1
    return counts


def is_closed_pseudomanifold(X: Complex) -> bool:
    """Pure, every ridge in exactly two facets, and strongly connected."""
    d = _require_pure(X)
    if d < 1:
        return False
    counts = ridge_counts(X)
    if any(c != 2 for c in counts.values()):
        return False
    by_ridge: dict[tuple, list[int]] = {}
    for i, f in enumerate(X.facets):
        for j in range(len(f)):
            by_ridge.setdefault(f[:j] + f[j + 1:], []).append(i)
    adj: dict[int, set[int]] = {i: set() for i in range(len(X.facets))}
    for a, b in by_ridge.values():
        adj[a].add(b)
        adj[b].add(a)
    return _connected(range(len(X.facets)), adj)


def is_cycle(X: Complex) -> bool:
    """A connected 1-dimensional complex in which every vertex has degree 2."""
    if X.dim != 1 or not X.is_pure():
        return False
    nb = X.neighbors
    return all(len(nb[v]) == 2 for v in X.vertices) and is_connected(X)


def verify_closed_surface(X: Complex) -> bool:
    _require_pure(X, (2,))
    if not is_closed_pseudomanifold(X):
        return False
    return all(is_cycle(link(X, v)) for v in X.vertices)


def verify_2sphere(X: Complex) -> bool:
    """Connected closed surface with Euler characteristic 2.

    Vertex links are required to be cycles as well, which excludes pinched
    spheres that would otherwise pass the edge and Euler tests.
    """
    _require_pure(X, (2,))
    if not is_connected(X):
        return False
    if any(c != 2 for c in ridge_counts(X).values()):
        return False
    if not all(is_cycle(link(X, v)) for v in X.vertices):
        return False
    return euler_characteristic(X) == 2


def verify_closed_3manifold(X: Complex) -> bool:
    _require_pure(X, (3,))
    if not is_closed_pseudomanifold(X):
        return False
    return all(verify_2sphere(link(X, v)) for v in X.vertices)


# --- bistellar reduction ----------------------------------------------------

Facet = frozenset


def _moves(facets: frozenset[frozenset[str]]):
    """Bistellar moves on a closed 3-manifold, most reducing first.

    Yields ``(removed, added)`` facet sets.  Order: vertex removals (4-1),
    then edge removals (3-2), then triangle-to-edge moves (2-3); each group in
    lexicographic order of the face the move is centred on.
    """
    by_vertex: dict[str, list[frozenset[str]]] = {}
    by_edge: dict[frozenset[str], list[frozenset[str]]] = {}
    by_tri: dict[frozenset[str], list[frozenset[str]]] = {}
    for f in facets:
        for v in f:
            by_vertex.setdefault(v, []).append(f)
        for e in combinations(sorted(f), 2):
            by_edge.setdefault(frozenset(e), []).append(f)
        for t in combinations(sorted(f), 3):
            by_tri.setdefault(frozenset(t), []).append(f)

    def key(s):
        return tuple(sorted(s))

    for v in sorted(by_vertex):
        star = by_vertex[v]
        if len(star) == 4:
            base = frozenset().union(*star) - {v}
            if len(base) == 4 and base not in facets:
                yield frozenset(star), frozenset([base])
    for e in sorted(by_edge, key=key):
        star = by_edge[e]
        if len(star) == 3:
            tri = frozenset().union(*star) - e
            if len(tri) == 3 and tri not in by_tri:
                a, b = sorted(e)
                yield frozenset(star), frozenset([tri | {a}, tri | {b}])
    for t in sorted(by_tri, key=key):
        pair = by_tri[t]
        if len(pair) == 2:
            (x,) = pair[0] - t
            (y,) = pair[1] - t
            if frozenset((x, y)) not in by_edge:
                a, b, c = sorted(t)
                yield frozenset(pair), frozenset(
                    [frozenset((a, b, x, y)), frozenset((b, c, x, y)), frozenset((a, c, x, y))]
                )


def bistellar_reduce(X: Complex, budget: int = DEFAULT_MOVE_BUDGET) -> tuple[bool | None, Complex, int]:
    """Search for a bistellar-move sequence from ``X`` down to the boundary of the 4-simplex.

    Deterministic depth-first search: moves are tried most-reducing first,
    states already visited are skipped, and dead ends backtrack.  Returns
    ``(True, final, moves)`` on success, ``(False, X, moves)`` if the reachable
    state space is exhausted, ``(None, last, moves)`` if the budget runs out.
    """
    _require_pure(X, (3,))
    start = frozenset(frozenset(f) for f in X.facets)
    seen = {start}
    stack = [(start, _moves(start))]
    moves = 0
    while stack:
        state, it = stack[-1]
        if len(state) == 5 and len(frozenset().union(*state)) == 5:
            return True, Complex(tuple(sorted(f)) for f in state), moves
        for removed, added in it:
            nxt = (state - removed) | added
            if nxt in seen:
                continue
            seen.add(nxt)
            moves += 1
            stack.append((nxt, _moves(nxt)))
            break
        else:
            stack.pop()
            continue
        if moves >= budget:
            last = stack[-1][0]
            if len(last) == 5 and len(frozenset().union(*last)) == 5:
                return True, Complex(tuple(sorted(f)) for f in last), moves
            logger.info("bistellar budget of %d moves exhausted", budget)
            return None, Complex(tuple(sorted(f)) for f in last), moves
    return False, X, moves


def verify_3sphere(X: Complex, budget: int = DEFAULT_MOVE_BUDGET) -> bool | None:
    """Certify a 3-sphere: closed 3-manifold, sphere homology, bistellar reducible.

    Returns ``None`` (indeterminate) when the homology matches but no
    reduction is found within ``budget`` moves.
    """
    from ..algebra import betti_gf2

    _require_pure(X, (3,))
    if not verify_closed_3manifold(X):
        return False
    if euler_characteristic(X) != 0 or tuple(betti_gf2(X)) != (1, 0, 0, 1):
        return False
    ok, _, _ = bistellar_reduce(X, budget)
    if ok is False:
        return False
    return ok


def is_sphere(X: Complex, budget: int = DEFAULT_MOVE_BUDGET) -> bool | None:
    """Sphere recognition in dimensions 0 to 3."""
    d = X.dim
    if not X.is_pure():
        return False
    if d == 0:
        return len(X.vertices) == 2
    if d == 1:
        return is_cycle(X)
    if d == 2:
        return verify_2sphere(X)
    if d == 3:
        return verify_3sphere(X, budget)
    raise PurityError(f"sphere recognition not supported in dimension {d}")
