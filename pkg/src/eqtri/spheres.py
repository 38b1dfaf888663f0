"""Sign-labelled spheres under the coordinate sign action of Z2^n.

A label is a vector in Q^n (usually entries in {-1, 0, +1}); generator ``s<i>``
negates coordinate ``i``.  The enumeration here works purely with support
patterns and signs: the magnitude of each nonzero slot never affects which
facets are admissible, so one representative orbit per support suffices.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

from .core.complex import Complex, as_simplex, join, suspension
from .core.iso import is_isomorphic
from .core.manifold import is_closed_pseudomanifold, is_sphere
from .errors import PreconditionError
from .group import GroupAction, Permutation, is_equivariant

logger = logging.getLogger(__name__)

SignVector = tuple[Fraction, ...]

MAX_ENUMERATION_N = 4


def _vec(v: Iterable) -> SignVector:
    return tuple(Fraction(x) for x in v)


def support(v: SignVector) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(v) if x != 0)


def sign_token(v: SignVector) -> str:
    """``(1, 0, -1)`` -> ``"+1-3"`` (1-based coordinate indices)."""
    return "".join(("+" if v[i] > 0 else "-") + str(i + 1) for i in support(v))


def _flip(v: SignVector, i: int) -> SignVector:
    return v[:i] + (-v[i],) + v[i + 1:]


def sign_action_on_labels(labels: Mapping[str, SignVector], n: int) -> GroupAction:
    """Generators ``s1..sn``; ``s<i>`` permutes tokens by negating coordinate ``i``."""
    by_label = {v: t for t, v in labels.items()}
    gens = []
    for i in range(n):
        m = {}
        for t, v in labels.items():
            w = _flip(v, i)
            if w not in by_label:
                raise PreconditionError(f"label set is not closed under flipping coordinate {i + 1} at {t}")
            m[t] = by_label[w]
        gens.append((f"s{i + 1}", Permutation(m)))
    return GroupAction(gens)


@dataclass(frozen=True)
class LabeledComplex:
    complex: Complex
    labels: Mapping[str, SignVector]
    n: int
    action: GroupAction = field(init=False, compare=False)

    def __post_init__(self):
        labels = {t: _vec(v) for t, v in self.labels.items()}
        if set(labels) != set(self.complex.vertices):
            raise PreconditionError("labels must cover exactly the vertex set")
        if any(len(v) != self.n for v in labels.values()):
            raise PreconditionError(f"every label needs {self.n} coordinates")
        if len(set(labels.values())) != len(labels):
            raise PreconditionError("labels are not injective")
        if any(not support(v) for v in labels.values()):
            raise PreconditionError("a label sits at the origin")
        object.__setattr__(self, "labels", dict(sorted(labels.items())))
        object.__setattr__(self, "action", sign_action_on_labels(labels, self.n))

    def is_equivariant(self) -> bool:
        return bool(is_equivariant(self.complex, self.action))

    def support_sizes(self) -> list[int]:
        return sorted(len(support(v)) for v in self.labels.values())


# --- cross-polytopes ----------------------------------------------------------


def _axis_labels(n: int) -> dict[str, SignVector]:
    out = {}
    for i in range(n):
        for s in (1, -1):
            v = tuple(Fraction(s if j == i else 0) for j in range(n))
            out[sign_token(v)] = v
    return out


def cross_polytope(n: int) -> Complex:
    if n < 1:
        raise ValueError("cross-polytope needs n >= 1")
    X = Complex([("+1",), ("-1",)])
    for i in range(2, n + 1):
        X = join(X, Complex([(f"+{i}",), (f"-{i}",)]))
    return X


def cross_polytope_sphere(n: int) -> LabeledComplex:
    """Boundary of the ``n``-dimensional cross-polytope with the sign action."""
    return LabeledComplex(cross_polytope(n), _axis_labels(n), n)


def cross_polytope_positions(n: int) -> dict[str, SignVector]:
    return _axis_labels(n)


def sign_action(n: int) -> GroupAction:
    return sign_action_on_labels(_axis_labels(n), n)


def suspension_action(L: LabeledComplex) -> LabeledComplex:
    """Suspend with apexes at ``+-e_{n+1}``; the new coordinate flip extends the action."""
    n = L.n + 1
    up = tuple(Fraction(0) for _ in range(L.n)) + (Fraction(1),)
    down = up[:-1] + (Fraction(-1),)
    labels = {t: v + (Fraction(0),) for t, v in L.labels.items()}
    labels[sign_token(up)] = up
    labels[sign_token(down)] = down
    X = suspension(L.complex, (sign_token(up), sign_token(down)))
    out = LabeledComplex(X, labels, n)
    if not out.is_equivariant():
        raise PreconditionError("suspension is not equivariant; input action was not")
    return out


# --- numeric bounds ----------------------------------------------------------


def vertex_set_choices(n: int) -> int:
    """Number of support patterns for ``2n`` sign-labelled sphere vertices."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    return n // 2 + 1


def support_patterns_bruteforce(n: int, max_support: int | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """All sets of supports (one sign orbit each) covering every coordinate
    with exactly ``2n`` labels in total, up to coordinate permutation.

    Independent of the closed form in :func:`vertex_set_choices`; no bound on
    support size unless ``max_support`` is given.
    """
    subsets = [
        s for k in range(1, n + 1) for s in combinations(range(n), k)
        if max_support is None or k <= max_support
    ]
    found: set[tuple[tuple[int, ...], ...]] = set()

    def canon(sel):
        best = None
        for p in permutations(range(n)):
            img = tuple(sorted(tuple(sorted(p[i] for i in s)) for s in sel))
            if best is None or img < best:
                best = img
        return best

    def rec(start: int, sel: list, total: int):
        if total == 2 * n:
            if set().union(*map(set, sel)) == set(range(n)):
                found.add(canon(sel))
            return
        for j in range(start, len(subsets)):
            s = subsets[j]
            if total + 2 ** len(s) <= 2 * n:
                rec(j + 1, sel + [s], total + 2 ** len(s))

    rec(0, [], 0)
    return sorted(found)


def missing_edge_lower_bound(k: int) -> int:
    if k < 3:
        raise PreconditionError("bound is stated for k >= 3")
    return 2 ** (k - 1) * (2**k - k - 1)


def lemma33_inequality(n: int) -> bool:
    """True iff ``2^n (2n+1) > C(n+2, 2)``, i.e. the necessary inequality fails."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    return 2**n * (2 * n + 1) > comb(n + 2, 2)


def lemma31_check(L: LabeledComplex) -> bool:
    f0 = len(L.complex.vertices)
    return f0 % 2 == 0 and f0 >= 2 * L.n


def support_bound_check(L: LabeledComplex) -> bool:
    if len(L.labels) != 2 * L.n:
        raise PreconditionError(f"expected {2 * L.n} vertices, got {len(L.labels)}")
    return all(len(support(v)) <= 2 for v in L.labels.values())


def _orbits_by_support(L: LabeledComplex) -> dict[tuple[int, ...], list[str]]:
    out: dict[tuple[int, ...], list[str]] = {}
    for t, v in L.labels.items():
        out.setdefault(support(v), []).append(t)
    return out


def verify_missing_edge_bound(L: LabeledComplex) -> bool:
    """Within every support-k orbit (k >= 3), edges join only labels differing
    in one sign, and the missing-edge count meets the lower bound."""
    edges = L.complex.edge_set
    for supp, toks in _orbits_by_support(L).items():
        k = len(supp)
        if k < 3:
            continue
        missing = 0
        for a, b in combinations(toks, 2):
            differ = sum(1 for i in supp if (L.labels[a][i] > 0) != (L.labels[b][i] > 0))
            if frozenset((a, b)) in edges:
                if differ != 1:
                    return False
            else:
                missing += 1
        if len(toks) == 2**k and missing < missing_edge_lower_bound(k):
            return False
    return True


def classify_8vertex_s3(L: LabeledComplex) -> str:
    if len(L.labels) != 8 or L.n != 4:
        raise PreconditionError("classification needs 8 vertices labelled in 4 coordinates")
    if not L.is_equivariant():
        raise PreconditionError("complex is not equivariant under the sign action")
    if is_sphere(L.complex) is not True:
        raise PreconditionError("complex is not a certified 3-sphere")
    sizes = L.support_sizes()
    supports = set(_orbits_by_support(L))
    if sizes == [2] * 8 and len(supports) == 2:
        return "I"
    if sizes == [1] * 4 + [2] * 4 and len(supports) == 3:
        return "II"
    if sizes == [1] * 8:
        return "III"
    return "none"


# --- enumeration --------------------------------------------------------------


@dataclass
class SearchStats:
    n: int
    patterns: int = 0
    candidate_facets: int = 0
    facet_orbits: int = 0
    unions_tested: int = 0
    pseudomanifolds: int = 0
    spheres: int = 0
    indeterminate: int = 0
    survivors: int = 0


def _pattern_labels(blocks: tuple[tuple[int, ...], ...], n: int) -> dict[str, SignVector]:
    labels = {}
    for b in blocks:
        for signs in product((1, -1), repeat=len(b)):
            v = [Fraction(0)] * n
            for i, s in zip(b, signs):
                v[i] = Fraction(s)
            v = tuple(v)
            labels[sign_token(v)] = v
    return labels


def _origin_free(vs: list[SignVector]) -> bool:
    """No nonempty sub-face has its label barycentre at the origin."""
    n = len(vs[0])
    for k in range(2, len(vs) + 1):
        for sub in combinations(vs, k):
            if all(sum(v[i] for v in sub) == 0 for i in range(n)):
                return False
    return True


def _canonical(X: Complex, labels: Mapping[str, SignVector], n: int) -> tuple:
    """Smallest facet list over coordinate permutations (sign changes act trivially
    on a union of sign orbits)."""
    best = None
    for p in permutations(range(n)):
        m = {}
        for t, v in labels.items():
            w = [Fraction(0)] * n
            for i in range(n):
                w[p[i]] = v[i]
            m[t] = sign_token(tuple(w))
        img = tuple(sorted(tuple(sorted(m[x] for x in f)) for f in X.facets))
        if best is None or img < best:
            best = img
    return best


def _search_pattern(args) -> tuple[list[tuple], SearchStats]:
    blocks, n, budget = args
    stats = SearchStats(n, patterns=1)
    labels = _pattern_labels(blocks, n)
    toks = sorted(labels)
    cands = [
        as_simplex(c) for c in combinations(toks, n) if _origin_free([labels[t] for t in c])
    ]
    stats.candidate_facets = len(cands)
    act = sign_action_on_labels(labels, n)
    seen: set = set()
    orbits: list[list[tuple]] = []
    for c in cands:
        if c in seen:
            continue
        orb = sorted({g.image(c) for g in act.elements})
        seen.update(orb)
        orbits.append(orb)
    stats.facet_orbits = len(orbits)
    found = []

    def rec(i: int, chosen: list, counts: dict):
        if i == len(orbits):
            if not chosen:
                return
            stats.unions_tested += 1
            if any(c != 2 for c in counts.values()):
                return
            X = Complex(chosen)
            if set(X.vertices) != set(toks) or not is_closed_pseudomanifold(X):
                return
            stats.pseudomanifolds += 1
            verdict = is_sphere(X, budget) if X.dim <= 3 else None
            if verdict is None:
                stats.indeterminate += 1
                logger.warning("sphere certification indeterminate; candidate rejected")
                return
            if not verdict:
                return
            stats.spheres += 1
            found.append((_canonical(X, labels, n), X, labels))
            return
        rec(i + 1, chosen, counts)
        new = dict(counts)
        for f in orbits[i]:
            for j in range(len(f)):
                r = f[:j] + f[j + 1:]
                new[r] = new.get(r, 0) + 1
                if new[r] > 2:
                    return
        rec(i + 1, chosen + orbits[i], new)

    rec(0, [], {})
    return found, stats


def sphere_search(
    n: int, support_filter: bool = True, jobs: int = 1, budget: int = 100_000
) -> tuple[list[LabeledComplex], SearchStats]:
    """Exhaustive search for sign-equivariant ``(n-1)``-spheres on ``2n`` labelled vertices.

    Vertex sets range over support patterns (supports of size at most two
    unless ``support_filter`` is off); facets are unions of sign orbits of
    origin-free ``n``-subsets.  Survivors are deduplicated up to coordinate
    permutation and returned in canonical order.
    """
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise PreconditionError(f"enumeration supports 2 <= n <= {MAX_ENUMERATION_N}")
    patterns = support_patterns_bruteforce(n, 2 if support_filter else None)
    tasks = [(p, n, budget) for p in patterns]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_search_pattern, tasks))
    else:
        results = [_search_pattern(t) for t in tasks]
    total = SearchStats(n)
    uniq: dict[tuple, LabeledComplex] = {}
    for found, st in results:
        for name in ("patterns", "candidate_facets", "facet_orbits", "unions_tested",
                     "pseudomanifolds", "spheres", "indeterminate"):
            setattr(total, name, getattr(total, name) + getattr(st, name))
        for key, X, labels in found:
            if key not in uniq:
                uniq[key] = LabeledComplex(X, labels, n)
    survivors = [uniq[k] for k in sorted(uniq)]
    total.survivors = len(survivors)
    return survivors, total


def enumerate_equivariant_spheres(n: int, support_filter: bool = True, jobs: int = 1) -> list[LabeledComplex]:
    return sphere_search(n, support_filter, jobs)[0]


def is_octahedral(L: LabeledComplex | Complex) -> bool:
    X = L.complex if isinstance(L, LabeledComplex) else L
    n = X.dim + 1
    return len(X.vertices) == 2 * n and is_isomorphic(X, cross_polytope(n))


def serialize_labels(L: LabeledComplex) -> str:
    return "".join(f"{t} " + " ".join(str(c) for c in v) + "\n" for t, v in L.labels.items())

