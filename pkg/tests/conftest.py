from __future__ import annotations

import random
import sys
import warnings
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from eqtri.catalog import FIXTURE_IDS, load_fixture
from eqtri.core import Complex, boundary_of_simplex, complex_from_facets, cycle, suspension

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "eqtri", max_examples=200, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("eqtri")

Z2_3 = {
    "m1": [("5", "6"), ("7", "8"), ("a", "c"), ("e", "f")],
    "m2": [("5", "8"), ("6", "7"), ("b", "d"), ("e", "f")],
    "m3": [("a", "c"), ("b", "d"), ("g", "h")],
}


@pytest.fixture(scope="session")
def fixtures():
    return {fid: load_fixture(fid) for fid in FIXTURE_IDS}


@pytest.fixture(scope="session")
def K16(fixtures):
    return fixtures["K16"].complex


@pytest.fixture(scope="session")
def K14(fixtures):
    return fixtures["K14"].complex


@pytest.fixture(scope="session")
def K11(fixtures):
    return fixtures["K11"].complex


def octahedron() -> Complex:
    return suspension(cycle("1", "2", "3", "4"), ("N", "S"))


def tetra_boundary() -> Complex:
    return boundary_of_simplex(3)


# --- random complexes ------------------------------------------------------------


def random_stellar(X: Complex, rng: random.Random, steps: int) -> Complex:
    """Random facet and edge stellar subdivisions; preserves the PL type."""
    facets = {frozenset(F) for F in X.facets}
    n = 0
    for _ in range(steps):
        name = f"v{n}"
        n += 1
        if rng.random() < 0.5:
            F = rng.choice(sorted(facets, key=sorted))
            facets.remove(F)
            facets |= {(F - {x}) | {name} for x in F}
        else:
            F = rng.choice(sorted(facets, key=sorted))
            a, b = rng.sample(sorted(F), 2)
            around = [G for G in facets if a in G and b in G]
            for G in around:
                facets.remove(G)
                facets.add((G - {a}) | {name})
                facets.add((G - {b}) | {name})
    return complex_from_facets([sorted(F) for F in facets])


def random_sphere(rng: random.Random, dim: int | None = None) -> Complex:
    dim = dim or rng.choice([1, 2, 3])
    return random_stellar(boundary_of_simplex(dim + 1), rng, rng.randint(0, 6))


def random_complex(rng: random.Random) -> Complex:
    """A random (possibly impure, possibly disconnected) complex on at most 7 vertices."""
    verts = [str(i) for i in range(rng.randint(2, 7))]
    facets = []
    for _ in range(rng.randint(1, 6)):
        k = rng.randint(1, min(4, len(verts)))
        facets.append(rng.sample(verts, k))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # absorbed subset facets are expected here
        return complex_from_facets(facets)


def corpus_complex(rng: random.Random) -> Complex:
    r = rng.random()
    if r < 0.4:
        return random_sphere(rng)
    if r < 0.5:
        return random_stellar(load_fixture("RP2_6").complex, rng, rng.randint(0, 3))
    return random_complex(rng)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
