"""Simplicial isomorphism search by invariant partitioning plus backtracking."""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterator

from .complex import Complex, Simplex, f_vector

IsoMap = dict[str, str]


def vertex_invariants(X: Complex) -> dict[str, tuple]:
    """Per-vertex invariant: degree, then the sorted degrees of its neighbours,
    then the number of facets containing it."""
    nb = X.neighbors
    deg = {v: len(nb[v]) for v in X.vertices}
    nfac = Counter(v for f in X.facets for v in f)
    return {
        v: (deg[v], tuple(sorted(deg[w] for w in nb[v])), nfac[v])
        for v in X.vertices
    }


def _faces_through(X: Complex) -> dict[str, list[Simplex]]:
    out: dict[str, list[Simplex]] = {v: [] for v in X.vertices}
    for s in X.all_faces():
        for v in s:
            out[v].append(s)
    return out


def _search_order(X: Complex, inv: dict[str, tuple]) -> list[str]:
    """Vertices in an order that keeps each new vertex adjacent to earlier ones,
    starting from the rarest invariant class."""
    class_size = Counter(inv.values())
    remaining = set(X.vertices)
    order: list[str] = []
    nb = X.neighbors
    while remaining:
        start = min(remaining, key=lambda v: (class_size[inv[v]], inv[v], v))
        queue = deque([start])
        seen = {start}
        while queue:
            v = queue.popleft()
            order.append(v)
            remaining.discard(v)
            nxt = sorted(
                (w for w in nb[v] if w not in seen and w in remaining),
                key=lambda w: (class_size[inv[w]], inv[w], w),
            )
            for w in nxt:
                seen.add(w)
                queue.append(w)
    return order


def iter_isomorphisms(X: Complex, Y: Complex) -> Iterator[IsoMap]:
    """Yield every simplicial isomorphism ``X -> Y`` as a vertex map.

    The order is deterministic: vertices of ``X`` are assigned in a fixed
    search order, and candidate images are tried by invariant class and then
    token order.
    """
    if f_vector(X) != f_vector(Y):
        return
    inv_x, inv_y = vertex_invariants(X), vertex_invariants(Y)
    if sorted(inv_x.values()) != sorted(inv_y.values()):
        return
    if not X.vertices:
        yield {}
        return
    by_class: dict[tuple, list[str]] = {}
    for w in Y.vertices:
        by_class.setdefault(inv_y[w], []).append(w)
    order = _search_order(X, inv_x)
    thru_x, thru_y = _faces_through(X), _faces_through(Y)
    faces_x, faces_y = X._face_set, Y._face_set
    nb_x, nb_y = X.neighbors, Y.neighbors
    fwd: dict[str, str] = {}
    back: dict[str, str] = {}

    def consistent(x: str, y: str) -> bool:
        for x2, y2 in fwd.items():
            if (x2 in nb_x[x]) != (y2 in nb_y[y]):
                return False
        for s in thru_x[x]:
            if all(v in fwd for v in s):
                if tuple(sorted(fwd[v] for v in s)) not in faces_y:
                    return False
        for t in thru_y[y]:
            if all(w in back for w in t):
                if tuple(sorted(back[w] for w in t)) not in faces_x:
                    return False
        return True

    def extend(i: int) -> Iterator[IsoMap]:
        if i == len(order):
            yield dict(sorted(fwd.items()))
            return
        x = order[i]
        for y in by_class[inv_x[x]]:
            if y in back:
                continue
            fwd[x], back[y] = y, x
            if consistent(x, y):
                yield from extend(i + 1)
            del fwd[x], back[y]

    yield from extend(0)


def find_isomorphism(X: Complex, Y: Complex) -> IsoMap | None:
    return next(iter_isomorphisms(X, Y), None)


def is_isomorphic(X: Complex, Y: Complex) -> bool:
    return find_isomorphism(X, Y) is not None


def is_join_over_pair(X: Complex, u: str, v: str) -> bool:
    """Whether ``X`` is the join of ``lk(u)`` with the two points ``u`` and ``v``."""
    from .complex import join, link

    X.require_vertices([u, v])
    if u == v:
        raise ValueError("u and v must differ")
    if frozenset((u, v)) in X.edge_set:
        return False
    lu = link(X, u)
    if lu != link(X, v):
        return False
    return X == join(lu, Complex([(u,), (v,)]))
