"""Finite abstract simplicial complexes over string vertex tokens.

A complex is stored by its facets (maximal faces).  The full face table is
materialized on first use and memoized on the instance; complexes are
immutable, so a concurrent first access can only compute the same table
twice, never a different one.
"""

from __future__ import annotations

import re
import warnings
from collections.abc import Iterable, Mapping
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import NamedTuple

from ..errors import (
    AbsentFaceError,
    MalformedFacetError,
    OverlapError,
    UnknownVertexError,
)

Simplex = tuple[str, ...]

_TOKEN_RE = re.compile(r"[\x21-\x22\x24-\x7e]+")  # printable ASCII minus space and '#'


def check_token(token: str) -> str:
    if not isinstance(token, str) or not _TOKEN_RE.fullmatch(token):
        raise MalformedFacetError(f"invalid vertex token {token!r}")
    return token


def as_simplex(vertices: Iterable[str] | str) -> Simplex:
    """Return the canonical (sorted, duplicate-free) form of a simplex.

    A bare string is read as a single vertex token, never split into
    characters.
    """
    if isinstance(vertices, str):
        return (check_token(vertices),)
    verts = tuple(vertices)
    for v in verts:
        check_token(v)
    s = tuple(sorted(verts))
    if len(set(s)) != len(s):
        raise MalformedFacetError(f"duplicate vertex in simplex {list(verts)}")
    return s


def _maximal(candidates: Iterable[Simplex]) -> list[Simplex]:
    """Drop every candidate contained in another one; return sorted maximal sets."""
    uniq = set(candidates)
    if not uniq:
        return []
    sizes = {len(s) for s in uniq}
    if len(sizes) == 1:
        return sorted(uniq)
    kept: list[frozenset[str]] = []
    out: list[Simplex] = []
    for s in sorted(uniq, key=lambda t: (-len(t), t)):
        fs = frozenset(s)
        if any(fs <= k for k in kept):
            continue
        kept.append(fs)
        out.append(s)
    return sorted(out)


class Complex:
    """An immutable simplicial complex given by its facets.

    ``Complex(facets)`` trusts its input to be canonical simplices and removes
    non-maximal ones silently; use :func:`complex_from_facets` for raw,
    user-supplied facet lists.
    """

    __slots__ = ("_facets", "__dict__")

    def __init__(self, facets: Iterable[Simplex]):
        fs = _maximal(facets)
        self._facets: tuple[Simplex, ...] = tuple(fs) if fs else ((),)

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self._facets

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self._facets) - 1

    @cached_property
    def _face_table(self) -> dict[int, tuple[Simplex, ...]]:
        by_dim: dict[int, set[Simplex]] = {}
        for f in self._facets:
            for k in range(len(f) + 1):
                by_dim.setdefault(k - 1, set()).update(combinations(f, k))
        return {k: tuple(sorted(v)) for k, v in sorted(by_dim.items())}

    @cached_property
    def _face_set(self) -> frozenset[Simplex]:
        return frozenset(s for faces in self._face_table.values() for s in faces)

    def faces(self, k: int) -> tuple[Simplex, ...]:
        """All ``k``-dimensional faces in canonical order (empty if out of range)."""
        return self._face_table.get(k, ())

    def all_faces(self) -> tuple[Simplex, ...]:
        return tuple(s for k in sorted(self._face_table) for s in self._face_table[k])

    def __contains__(self, s: object) -> bool:
        if isinstance(s, str):
            s = (s,)
        try:
            return tuple(sorted(s)) in self._face_set  # type: ignore[arg-type]
        except TypeError:
            return False

    @cached_property
    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.faces(1))

    @cached_property
    def neighbors(self) -> dict[str, frozenset[str]]:
        nb: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.faces(1):
            nb[a].add(b)
            nb[b].add(a)
        return {v: frozenset(s) for v, s in nb.items()}

    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) == 1

    def require_face(self, s: Simplex) -> None:
        if s not in self._face_set:
            raise AbsentFaceError(f"{' '.join(s) or '<empty>'} is not a face of the complex")

    def require_vertices(self, vs: Iterable[str]) -> None:
        vset = set(self.vertices)
        missing = sorted(set(vs) - vset)
        if missing:
            raise UnknownVertexError(f"unknown vertex {', '.join(missing)}")

    def relabel(self, mapping: Mapping[str, str]) -> Complex:
        """Image under an injective vertex map (unmapped vertices keep their token)."""
        img = [mapping.get(v, v) for v in self.vertices]
        if len(set(img)) != len(img):
            raise OverlapError("relabeling is not injective on the vertex set")
        return Complex(tuple(sorted(mapping.get(v, v) for v in f)) for f in self._facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __len__(self) -> int:
        return len(self._facets)

    def __repr__(self) -> str:
        shown = ", ".join(" ".join(f) for f in self._facets[:4])
        more = ", ..." if len(self._facets) > 4 else ""
        return f"Complex(dim={self.dim}, f0={len(self.vertices)}, facets=[{shown}{more}])"


def complex_from_facets(facets: Iterable[Iterable[str]]) -> Complex:
    """Build a complex from a raw facet list.

    Facets contained in other facets are dropped with a warning, since
    hand-transcribed lists often repeat a face.
    """
    canon: list[Simplex] = []
    for raw in facets:
        verts = [raw] if isinstance(raw, str) else list(raw)
        if not verts:
            raise MalformedFacetError("empty facet")
        canon.append(as_simplex(verts))
    X = Complex(canon)
    dropped = sorted(set(canon) - set(X.facets))
    if dropped:
        warnings.warn(
            "dropped non-maximal facets: " + ", ".join(" ".join(s) for s in dropped),
            stacklevel=2,
        )
    return X


# --- counting ---------------------------------------------------------------


class FVector(tuple):
    """Face counts ``(f_-1, f_0, ..., f_d)``; ``fv.f(k)`` reads ``f_k``."""

    def f(self, k: int) -> int:
        i = k + 1
        return self[i] if 0 <= i < len(self) else 0


class GVector(NamedTuple):
    g1: int
    g2: int


def faces(X: Complex, k: int) -> tuple[Simplex, ...]:
    return X.faces(k)


def f_vector(X: Complex) -> FVector:
    return FVector(len(X.faces(k)) for k in range(-1, X.dim + 1))


def g_vector(X: Complex) -> GVector:
    f = f_vector(X)
    d = X.dim
    f0, f1 = f.f(0), f.f(1)
    return GVector(f0 - (d + 2), f1 - (d + 1) * f0 + comb(d + 2, 2))


def euler_characteristic(X: Complex) -> int:
    f = f_vector(X)
    return sum((-1) ** k * f.f(k) for k in range(0, X.dim + 1))


# --- local structure --------------------------------------------------------


def link(X: Complex, s: Iterable[str] | str) -> Complex:
    s = as_simplex(s)
    X.require_face(s)
    ss = set(s)
    return Complex(tuple(v for v in f if v not in ss) for f in X.facets if ss.issubset(f))


def star(X: Complex, s: Iterable[str] | str) -> Complex:
    s = as_simplex(s)
    X.require_face(s)
    ss = set(s)
    return Complex(f for f in X.facets if ss.issubset(f))


def antistar(X: Complex, v: str) -> Complex:
    """All faces of ``X`` that avoid the vertex ``v``."""
    X.require_vertices([v])
    return Complex(tuple(w for w in f if w != v) for f in X.facets)


def degree(X: Complex, s: Iterable[str] | str) -> int:
    return len(link(X, s).vertices)


def induced(X: Complex, S: Iterable[str]) -> Complex:
    S = set(S)
    X.require_vertices(S)
    return Complex(tuple(v for v in f if v in S) for f in X.facets)


def join(X: Complex, Y: Complex) -> Complex:
    common = set(X.vertices) & set(Y.vertices)
    if common:
        raise OverlapError(f"join of complexes sharing vertices {sorted(common)}")
    return Complex(tuple(sorted(a + b)) for a, b in product(X.facets, Y.facets))


def point(v: str) -> Complex:
    return Complex([as_simplex(v)])


def cone(v: str, X: Complex) -> Complex:
    return join(point(v), X)


def fresh_tokens(X: Complex, names: tuple[str, ...] = ("N", "S")) -> tuple[str, ...]:
    used = set(X.vertices)
    i = 0
    while True:
        cand = tuple(n if i == 0 else f"{n}{i}" for n in names)
        if not used.intersection(cand):
            return cand
        i += 1


def suspension(X: Complex, apexes: tuple[str, str] | None = None) -> Complex:
    north, south = apexes if apexes is not None else fresh_tokens(X)
    return join(X, Complex([(north,), (south,)]))


def missing_edges(X: Complex) -> tuple[int, list[tuple[str, str]]]:
    edges = X.edge_set
    pairs = [p for p in combinations(X.vertices, 2) if frozenset(p) not in edges]
    return len(pairs), pairs


def boundary_of_simplex(d: int, tokens: Iterable[str] | None = None) -> Complex:
    """The boundary of the ``d``-simplex (a ``(d-1)``-sphere on ``d+1`` vertices)."""
    verts = list(tokens) if tokens is not None else [str(i) for i in range(1, d + 2)]
    if len(verts) != d + 1:
        raise ValueError("need exactly d+1 tokens")
    return Complex(as_simplex(c) for c in combinations(verts, d))


def cycle(*tokens: str) -> Complex:
    """The cycle graph through the given vertices in order."""
    n = len(tokens)
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return Complex(as_simplex((tokens[i], tokens[(i + 1) % n])) for i in range(n))
