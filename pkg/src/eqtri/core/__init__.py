"""Simplicial-complex kernel."""

from .complex import (
    Complex,
    FVector,
    GVector,
    Simplex,
    antistar,
    as_simplex,
    boundary_of_simplex,
    complex_from_facets,
    cone,
    cycle,
    degree,
    euler_characteristic,
    f_vector,
    faces,
    fresh_tokens,
    g_vector,
    induced,
    join,
    link,
    missing_edges,
    point,
    star,
    suspension,
)
from .iso import IsoMap, find_isomorphism, is_isomorphic, is_join_over_pair, iter_isomorphisms
from .manifold import (
    bistellar_reduce,
    is_closed_pseudomanifold,
    is_connected,
    is_cycle,
    is_sphere,
    verify_2sphere,
    verify_3sphere,
    verify_closed_3manifold,
    verify_closed_surface,
)

__all__ = [
    "Complex", "FVector", "GVector", "IsoMap", "Simplex",
    "antistar", "as_simplex", "bistellar_reduce", "boundary_of_simplex",
    "complex_from_facets", "cone", "cycle", "degree", "euler_characteristic",
    "f_vector", "faces", "find_isomorphism", "fresh_tokens", "g_vector",
    "induced", "is_closed_pseudomanifold", "is_connected", "is_cycle",
    "is_isomorphic", "is_join_over_pair", "is_sphere", "iter_isomorphisms",
    "join", "link", "missing_edges", "point", "star", "suspension",
    "verify_2sphere", "verify_3sphere", "verify_closed_3manifold",
    "verify_closed_surface",
]
