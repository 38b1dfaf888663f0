"""Elementary-abelian 2-group actions on vertex tokens, and automorphism groups."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from typing import NamedTuple, Union

from .core.complex import Complex, Simplex
from .core.iso import iter_isomorphisms
from .errors import CommutativityError, EquivarianceError, InvolutionError


class Permutation:
    """A finitely supported bijection of vertex tokens; unlisted tokens are fixed."""

    __slots__ = ("_map", "_key")

    def __init__(self, mapping: Mapping[str, str] | None = None):
        m = {a: b for a, b in (mapping or {}).items() if a != b}
        if set(m) != set(m.values()):
            raise ValueError("mapping is not a bijection on its support")
        self._map = dict(sorted(m.items()))
        self._key = tuple(self._map.items())

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[str]]) -> Permutation:
        m: dict[str, str] = {}
        for c in cycles:
            c = list(c)
            if len(set(c)) != len(c):
                raise ValueError(f"cycle {c} repeats a point")
            for i, a in enumerate(c):
                if a in m:
                    raise ValueError(f"point {a} appears in two cycles")
                m[a] = c[(i + 1) % len(c)]
        return cls(m)

    @classmethod
    def identity(cls) -> Permutation:
        return cls()

    def __call__(self, v: str) -> str:
        return self._map.get(v, v)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self._map)

    def mapping(self) -> dict[str, str]:
        return dict(self._map)

    def is_identity(self) -> bool:
        return not self._map

    def __mul__(self, other: Permutation) -> Permutation:
        """``(p * q)(x) = p(q(x))``."""
        pts = set(self._map) | set(other._map)
        return Permutation({x: self(other(x)) for x in pts})

    def inverse(self) -> Permutation:
        return Permutation({b: a for a, b in self._map.items()})

    def is_involution(self) -> bool:
        return all(self(b) == a for a, b in self._map.items())

    def cycles(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for a in self._map:
            if a in seen:
                continue
            c = [a]
            seen.add(a)
            b = self._map[a]
            while b != a:
                c.append(b)
                seen.add(b)
                b = self._map[b]
            out.append(tuple(c))
        return out

    def image(self, s: Iterable[str]) -> Simplex:
        return tuple(sorted(self(v) for v in s))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other: Permutation) -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return "Permutation(" + (self.cycle_notation() or "()") + ")"

    def cycle_notation(self) -> str:
        return "".join("(" + " ".join(c) + ")" for c in self.cycles())


class GroupAction:
    """A group generated by commuting involutions, acting on vertex tokens.

    Elements are addressed by bitmasks over the independent generators
    (those not already in the span of earlier ones); bit ``i`` set means the
    ``i``-th independent generator is a factor.
    """

    def __init__(self, generators: Sequence[tuple[str, Permutation]]):
        names = [n for n, _ in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name, g in generators:
            if not g.is_involution():
                raise InvolutionError(f"generator {name} = {g.cycle_notation()} is not an involution")
        for i, (n1, g1) in enumerate(generators):
            for n2, g2 in generators[i + 1:]:
                if g1 * g2 != g2 * g1:
                    raise CommutativityError(f"generators {n1} and {n2} do not commute")
        self.generators: tuple[tuple[str, Permutation], ...] = tuple(generators)
        basis: list[tuple[str, Permutation]] = []
        span = {Permutation()}
        for name, g in generators:
            if g in span:
                continue
            basis.append((name, g))
            span |= {g * h for h in span}
        self.basis = tuple(basis)
        self._elements = []
        for mask in range(1 << len(basis)):
            p = Permutation()
            for i, (_, g) in enumerate(basis):
                if mask >> i & 1:
                    p = g * p
            self._elements.append(p)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << self.rank

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(self._elements)

    def element(self, key: Union[int, str, Permutation]) -> Permutation:
        if isinstance(key, Permutation):
            if key not in self._elements:
                raise ValueError("permutation is not an element of the group")
            return key
        if isinstance(key, str):
            for name, g in self.generators:
                if name == key:
                    return g
            raise KeyError(f"no generator named {key}")
        return self._elements[key]

    def mask_of(self, p: Permutation) -> int:
        return self._elements.index(p)

    @property
    def moved_points(self) -> tuple[str, ...]:
        return tuple(sorted({v for _, g in self.generators for v in g.support}))

    def restrict(self, vertices: Iterable[str]) -> GroupAction:
        """The action on a subset of tokens that is a union of orbits.

        Generator cycles lying wholly outside ``vertices`` are dropped; a
        cycle that straddles the subset makes it non-invariant.
        """
        vs = set(vertices)
        gens = []
        for name, g in self.generators:
            keep = []
            for c in g.cycles():
                inside = [v in vs for v in c]
                if all(inside):
                    keep.append(c)
                elif any(inside):
                    raise EquivarianceError(f"vertex set is not invariant under {name}")
            gens.append((name, Permutation.from_cycles(keep)))
        return GroupAction(gens)

    def relabel(self, mapping: Mapping[str, str]) -> GroupAction:
        return GroupAction(
            [
                (n, Permutation({mapping.get(a, a): mapping.get(b, b) for a, b in g.mapping().items()}))
                for n, g in self.generators
            ]
        )

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}={g.cycle_notation() or '()'}" for n, g in self.generators)
        return f"GroupAction(order={self.order}, {gens})"


def action_from_generators(gens: Sequence[Permutation | tuple[str, Permutation]]) -> GroupAction:
    named = []
    for i, g in enumerate(gens, 1):
        named.append(g if isinstance(g, tuple) else (f"m{i}", g))
    return GroupAction(named)


def act_on_simplex(a: GroupAction, element, s: Iterable[str]) -> Simplex:
    return a.element(element).image(s)


def act_on_complex(a: GroupAction, element, X: Complex) -> Complex:
    p = a.element(element)
    return Complex(p.image(f) for f in X.facets)


class EquivarianceCheck(NamedTuple):
    ok: bool
    generator: str | None = None
    facet: Simplex | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_equivariant(X: Complex, a: GroupAction) -> EquivarianceCheck:
    """Every generator maps every facet to a facet; reports the first failure."""
    facets = set(X.facets)
    for name, g in a.generators:
        for f in X.facets:
            if g.image(f) not in facets:
                return EquivarianceCheck(False, name, f)
    return EquivarianceCheck(True)


def _require_equivariant(X: Complex, a: GroupAction) -> None:
    chk = is_equivariant(X, a)
    if not chk:
        raise EquivarianceError(
            f"generator {chk.generator} maps facet {' '.join(chk.facet)} outside the complex"
        )


class OrbitPartition(NamedTuple):
    classes: tuple[tuple[str, ...], ...]
    stabilizer_ranks: tuple[int, ...]


def _orbits(items: Iterable, a: GroupAction, act) -> list[tuple]:
    seen: set = set()
    out = []
    for x in items:
        if x in seen:
            continue
        orb = sorted({act(g, x) for g in a.elements})
        seen.update(orb)
        out.append(tuple(orb))
    return out


def vertex_orbits(X: Complex, a: GroupAction) -> OrbitPartition:
    _require_equivariant(X, a)
    classes = _orbits(X.vertices, a, lambda g, v: g(v))
    ranks = tuple(a.rank - (len(c).bit_length() - 1) for c in classes)
    return OrbitPartition(tuple(classes), ranks)


def fixed_vertices(X: Complex, a: GroupAction) -> tuple[str, ...]:
    return tuple(c[0] for c in vertex_orbits(X, a).classes if len(c) == 1)


def facet_orbits(X: Complex, a: GroupAction) -> tuple[tuple[Simplex, ...], ...]:
    _require_equivariant(X, a)
    return tuple(_orbits(X.facets, a, lambda g, f: g.image(f)))


def nonfixed_parity_check(X: Complex, a: GroupAction) -> bool:
    return (len(X.vertices) - len(fixed_vertices(X, a))) % 2 == 0


def is_automorphism(X: Complex, p: Permutation) -> bool:
    facets = set(X.facets)
    if any(p(v) not in X.vertices for v in X.vertices):
        return False
    return all(p.image(f) in facets for f in X.facets)


def is_subaction(X: Complex, a: GroupAction) -> bool:
    """Whether every element of the group is a simplicial automorphism of ``X``."""
    verts = set(X.vertices)
    if any(v not in verts for v in a.moved_points):
        return False
    return all(is_automorphism(X, g) for g in a.elements)


class AutomorphismGroup(NamedTuple):
    order: int
    generators: tuple[Permutation, ...]


def _generated(gens: Sequence[Permutation]) -> set[Permutation]:
    group = {Permutation()}
    frontier = [Permutation()]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g * h
                if k not in group:
                    group.add(k)
                    nxt.append(k)
        frontier = nxt
    return group


def automorphisms(X: Complex) -> list[Permutation]:
    return sorted(Permutation(m) for m in iter_isomorphisms(X, X))


def automorphism_group(X: Complex) -> AutomorphismGroup:
    """Full simplicial automorphism group, with a greedy generating set.

    Generators are picked from the sorted list of automorphisms, each kept
    only if it is not already generated by the earlier picks.
    """
    auts = automorphisms(X)
    gens: list[Permutation] = []
    span = {Permutation()}
    for p in auts:
        if p in span:
            continue
        gens.append(p)
        span = _generated(gens)
    return AutomorphismGroup(len(auts), tuple(gens))
