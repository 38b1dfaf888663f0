"""Orbit-space triangulations of coordinate-embedded spheres under the sign action.

Every computation here is exact (``fractions.Fraction``).  Coordinate
indices are 0-based throughout.  Folding sends a facet into the closed
nonnegative orthant by reflecting it wholesale when it lies on the negative
side of a coordinate hyperplane, and by splitting it along the hyperplane
and keeping the nonnegative half when it straddles one.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .core.complex import Complex, as_simplex
from .errors import (
    GeometryError,
    NonComplexError,
    NotReflectionInvariantError,
    PreconditionError,
)
from .group import GroupAction, Permutation, facet_orbits, is_equivariant

Point = tuple[Fraction, ...]
GeometricSimplex = tuple[Point, ...]


def point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def flip(p: Point, i: int) -> Point:
    return p[:i] + (-p[i],) + p[i + 1:]


def _canon(points: Iterable[Point]) -> GeometricSimplex:
    return tuple(sorted(points))


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                k = a[r][c] / a[c][c]
                for j in range(c, n):
                    a[r][j] -= k * a[c][j]
    return sign * out


def simplex_volume(s: Sequence[Point]) -> Fraction:
    """``|det|`` of edge vectors from the first vertex, for a full-dimensional simplex
    (proportional to volume; the ``1/d!`` factor is dropped)."""
    p0 = s[0]
    return abs(det([[a - b for a, b in zip(p, p0)] for p in s[1:]]))


def cone_volume(s: Sequence[Point]) -> Fraction:
    """``|det|`` of the vertex vectors: the cone over ``s`` from the origin."""
    return abs(det([list(p) for p in s]))


# --- splitting ----------------------------------------------------------------


def split_simplex_by_hyperplane(s: Sequence[Point], i: int) -> tuple[GeometricSimplex, GeometricSimplex]:
    """Split a flip-invariant simplex along ``x_i = 0``.

    Exactly two vertices may lie off the hyperplane (a mirror pair); the
    crossing edge between them meets the hyperplane at its midpoint, which
    becomes the shared new vertex.  Returns ``(positive_half, negative_half)``.
    """
    pts = [point(p) for p in s]
    if not 0 <= i < len(pts[0]):
        raise GeometryError(f"coordinate index {i} out of range")
    if {flip(p, i) for p in pts} != set(pts):
        raise NotReflectionInvariantError(f"simplex is not invariant under flipping coordinate {i}")
    off = [p for p in pts if p[i] != 0]
    if len(off) != 2:
        raise GeometryError(
            f"{len(off)} vertices off the hyperplane x_{i} = 0; expected exactly two"
        )
    on = [p for p in pts if p[i] == 0]
    plus, minus = sorted(off, key=lambda p: -p[i])
    mid = plus[:i] + (Fraction(0),) + plus[i + 1:]
    return _canon(on + [mid, plus]), _canon(on + [mid, minus])


# --- embedded complexes -------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedComplex:
    """A complex with exact vertex positions, acted on by coordinate reflections."""

    complex: Complex
    positions: Mapping[str, Point]
    reflections: tuple[int, ...] | None = None
    action: GroupAction = field(init=False, compare=False)

    def __post_init__(self):
        pos = {t: point(p) for t, p in self.positions.items()}
        missing = set(self.complex.vertices) - set(pos)
        if missing:
            raise PreconditionError(f"no position for {sorted(missing)}")
        pos = {t: pos[t] for t in self.complex.vertices}
        dims = {len(p) for p in pos.values()}
        if len(dims) != 1:
            raise PreconditionError("positions have different lengths")
        (m,) = dims
        if len(set(pos.values())) != len(pos):
            raise PreconditionError("two vertices share a position")
        if any(all(c == 0 for c in p) for p in pos.values()):
            raise GeometryError("a vertex sits at the origin")
        refl = tuple(range(m)) if self.reflections is None else tuple(sorted(set(self.reflections)))
        if any(not 0 <= i < m for i in refl):
            raise PreconditionError("reflection index out of range")
        by_pos = {p: t for t, p in pos.items()}
        gens = []
        for i in refl:
            mp = {}
            for t, p in pos.items():
                q = flip(p, i)
                if q not in by_pos:
                    raise PreconditionError(f"vertex set is not invariant under flipping coordinate {i}")
                mp[t] = by_pos[q]
            gens.append((f"r{i}", Permutation(mp)))
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "reflections", refl)
        object.__setattr__(self, "action", GroupAction(gens))

    @property
    def ambient_dim(self) -> int:
        return len(next(iter(self.positions.values())))

    def is_equivariant(self) -> bool:
        return bool(is_equivariant(self.complex, self.action))

    def simplex(self, facet: Iterable[str]) -> GeometricSimplex:
        return _canon(self.positions[t] for t in facet)


def fold_facet_to_orthant(E: EmbeddedComplex, facet: Iterable[str]) -> GeometricSimplex:
    """Orthant representative of the orbit image of ``facet``."""
    facet = as_simplex(facet)
    if facet not in E.complex.facets:
        raise PreconditionError(f"{' '.join(facet)} is not a facet")
    if not E.is_equivariant():
        raise PreconditionError("embedded complex is not equivariant under its reflections")
    return _fold(E.simplex(facet), E.reflections)


def _fold(s: GeometricSimplex, reflections: Sequence[int], trace: list | None = None) -> GeometricSimplex:
    cur = list(s)
    changed = True
    while changed:
        changed = False
        for i in reflections:
            neg = any(p[i] < 0 for p in cur)
            if not neg:
                continue
            if not any(p[i] > 0 for p in cur):
                cur = [flip(p, i) for p in cur]
            else:
                plus, _ = split_simplex_by_hyperplane(cur, i)
                pair = tuple(sorted(p for p in cur if p[i] != 0))
                mid = pair[0][:i] + (Fraction(0),) + pair[0][i + 1:]
                if all(c == 0 for c in mid):
                    raise GeometryError("simplex passes through the origin")
                if trace is not None:
                    trace.append((mid, pair, i))
                cur = list(plus)
            changed = True
    return _canon(cur)


class Quotient(NamedTuple):
    complex: Complex
    positions: dict[str, Point]
    simplices: tuple[GeometricSimplex, ...]
    orthant_volume: Fraction
    cone_volume_folded: Fraction
    cone_volume_expected: Fraction


def _project(p: Point) -> Point:
    """Radial projection onto ``sum(x) = 1``, dropping the last coordinate."""
    s = sum(p)
    return tuple(c / s for c in p[:-1])


def _side(ridge: Sequence[Point], apex: Point) -> int:
    """Orientation sign of ``apex`` against the hyperplane through ``ridge`` (projected)."""
    p0 = ridge[0]
    rows = [[a - b for a, b in zip(q, p0)] for q in list(ridge[1:]) + [apex]]
    d = det(rows)
    return (d > 0) - (d < 0)


def quotient_triangulation(E: EmbeddedComplex) -> Quotient:
    """Fold every facet into the orthant and check the result triangulates it.

    Checks, all exact: radially projected onto the standard simplex the
    folded simplices have total normalized volume 1; every interior ridge
    lies in exactly two of them, on opposite sides; every ridge on the
    orthant boundary lies in exactly one; and the folded cone volumes sum to
    the total cone volume divided by the group order.
    """
    m = E.ambient_dim
    if tuple(E.reflections) != tuple(range(m)):
        raise PreconditionError("quotients need the full sign action on every coordinate")
    if not E.is_equivariant():
        raise PreconditionError("embedded complex is not equivariant under its reflections")
    if E.complex.dim != m - 1 or not E.complex.is_pure():
        raise PreconditionError(f"expected a pure ({m - 1})-dimensional complex")
    names: dict[Point, str] = {p: t for t, p in E.positions.items()}
    derived: dict[Point, str] = {}
    folded: dict[frozenset, GeometricSimplex] = {}
    total_cone = Fraction(0)
    for f in E.complex.facets:
        s = E.simplex(f)
        total_cone += cone_volume(s)
        trace: list = []
        out = _fold(s, E.reflections, trace)
        for mid, pair, i in trace:
            if mid in names:
                continue
            a, b = sorted(_name(q, names, derived) for q in pair)
            label = f"{a}|{b}@{i}"
            if mid not in derived or label < derived[mid]:
                derived[mid] = label
        folded.setdefault(frozenset(out), out)
    simplices = tuple(sorted(folded.values()))
    tokens = {**derived, **names}
    used = sorted({p for s in simplices for p in s})
    positions = {tokens[p]: p for p in used}
    facets = [as_simplex(tokens[p] for p in s) for s in simplices]
    X = Complex(facets)
    if len(X.facets) != len(simplices):
        raise NonComplexError("two folded simplices share a vertex set")
    vol = _check_triangulates_orthant(simplices, m)
    cone_sum = sum((cone_volume(s) for s in simplices), Fraction(0))
    expected = total_cone / 2**m
    if cone_sum != expected:
        raise NonComplexError(f"folded cone volume {cone_sum} differs from expected {expected}")
    return Quotient(X, positions, simplices, vol, cone_sum, expected)


def _name(p: Point, names: Mapping[Point, str], derived: Mapping[Point, str]) -> str:
    if p in names:
        return names[p]
    return derived.get(p, "(" + ",".join(str(c) for c in p) + ")")


def _check_triangulates_orthant(simplices: Sequence[GeometricSimplex], m: int) -> Fraction:
    proj = [tuple(_project(p) for p in s) for s in simplices]
    total = Fraction(0)
    for ps in proj:
        v = simplex_volume(ps) if m > 1 else Fraction(1)
        if v == 0:
            raise NonComplexError("a folded simplex is degenerate after projection")
        total += v
    if total != 1:
        raise NonComplexError(f"folded simplices cover normalized volume {total}, not 1")
    if m == 1:
        return total
    ridges: dict[frozenset, list[tuple[tuple, Point]]] = {}
    for s, ps in zip(simplices, proj):
        for k in range(len(s)):
            r = frozenset(s[:k] + s[k + 1:])
            ridges.setdefault(r, []).append((tuple(ps[:k] + ps[k + 1:]), ps[k]))
    for r, entries in ridges.items():
        on_boundary = any(all(p[i] == 0 for p in r) for i in range(m))
        if on_boundary:
            if len(entries) != 1:
                raise NonComplexError("a boundary ridge lies in more than one folded simplex")
            continue
        if len(entries) != 2:
            raise NonComplexError(f"an interior ridge lies in {len(entries)} folded simplices")
        (rp, a), (_, b) = entries
        if _side(rp, a) * _side(rp, b) != -1:
            raise NonComplexError("two folded simplices overlap across a ridge")
    return total


def facet_orbit_count(X: Complex, a: GroupAction) -> int:
    return len(facet_orbits(X, a))


# --- constructions used for checks and demos ---------------------------------


def stellar_refine(E: EmbeddedComplex, facet: Iterable[str], weights: Sequence[int] | None = None,
                   token: str = "z") -> EmbeddedComplex:
    """Equivariant stellar subdivision of the orbit of ``facet``.

    The new point is a positive combination of the facet's vertices,
    averaged over the facet's stabilizer so that the refinement stays
    equivariant; each orbit image gets its own new vertex.
    """
    facet = as_simplex(facet)
    pts = [E.positions[t] for t in facet]
    w = [Fraction(x) for x in (weights or [1] * len(pts))]
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    base = tuple(sum(x * p[j] for x, p in zip(w, pts)) / sum(w) for j in range(E.ambient_dim))
    stab = [g for g in E.action.elements if g.image(facet) == facet]

    def apply(sig: Point, p: Point) -> Point:
        return tuple(x * c for x, c in zip(sig, p))

    sigs = [_element_signs(E, g) for g in stab]
    centre = tuple(sum(apply(s, base)[j] for s in sigs) / len(sigs) for j in range(E.ambient_dim))
    facets = set(E.complex.facets)
    pos = dict(E.positions)
    new_facets = []
    images: dict[tuple, str] = {}
    for g in E.action.elements:
        img = g.image(facet)
        if img in images:
            continue
        name = f"{token}{len(images)}"
        while name in pos:
            name += "'"
        images[img] = name
        pos[name] = apply(_element_signs(E, g), centre)
        facets.discard(img)
        for k in range(len(img)):
            new_facets.append(as_simplex(img[:k] + img[k + 1:] + (name,)))
    return EmbeddedComplex(Complex(list(facets) + new_facets), pos, E.reflections)


def _element_signs(E: EmbeddedComplex, g: Permutation) -> Point:
    """The coordinate sign vector realizing a group element on positions."""
    sig = [Fraction(1)] * E.ambient_dim
    mask = E.action.mask_of(g)
    for bit, (name, _) in enumerate(E.action.basis):
        if mask >> bit & 1:
            sig[int(name[1:])] = -sig[int(name[1:])]
    return tuple(sig)


def random_refinement(E: EmbeddedComplex, rng: random.Random, steps: int = 2) -> EmbeddedComplex:
    """A few equivariant stellar subdivisions at random facets with random weights."""
    for k in range(steps):
        f = rng.choice(E.complex.facets)
        w = [rng.randint(1, 5) for _ in f]
        E = stellar_refine(E, f, w, token=f"z{k}_")
    return E
