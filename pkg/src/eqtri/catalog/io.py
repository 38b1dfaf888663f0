"""Text formats: ``.facets`` complexes, ``.action`` cycle notation, ``.pos`` positions.

All three are UTF-8 with LF endings; ``#`` starts a comment.  Writers emit a
canonical form, so two facet-equal complexes serialize to identical bytes.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from pathlib import Path

from ..core.complex import Complex, as_simplex
from ..errors import MalformedFacetError, ParseError
from ..group import GroupAction, Permutation

PathLike = str | os.PathLike

_GEN_RE = re.compile(r"gen\s+(\S+)\s*:\s*(.*)")
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _content_lines(text: str):
    for n, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


# --- complexes --------------------------------------------------------------


def parse_complex(text: str, path: str | None = None) -> Complex:
    facets = []
    for n, line in _content_lines(text):
        try:
            facets.append(as_simplex(line.split()))
        except MalformedFacetError as exc:
            raise ParseError(f"malformed facet: {exc}", line=n, path=path) from exc
    if not facets:
        raise ParseError("no facets found (empty complex file)", path=path)
    return Complex(facets)


def serialize_complex(X: Complex, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [" ".join(f) for f in X.facets]
    return "\n".join(lines) + "\n"


def read_complex(path: PathLike) -> Complex:
    p = Path(path)
    return parse_complex(p.read_text(encoding="utf-8"), path=str(p))


def write_complex(X: Complex, path: PathLike, header: str | None = None) -> None:
    Path(path).write_text(serialize_complex(X, header), encoding="utf-8", newline="\n")


# --- actions ----------------------------------------------------------------


def parse_cycles(spec: str) -> Permutation:
    """``"(5 6)(7 8)"`` to a permutation; ``"()"`` or ``""`` is the identity."""
    rest = _CYCLE_RE.sub("", spec).strip()
    if rest:
        raise ValueError(f"unexpected text {rest!r} outside cycles")
    cycles = [c.split() for c in _CYCLE_RE.findall(spec)]
    return Permutation.from_cycles([c for c in cycles if c])


def parse_action(text: str, path: str | None = None) -> GroupAction:
    from ..group import action_from_generators

    gens = []
    for n, line in _content_lines(text):
        m = _GEN_RE.fullmatch(line)
        if not m:
            raise ParseError(f"expected 'gen <name>: (x y)...', got {line!r}", line=n, path=path)
        try:
            gens.append((m.group(1), parse_cycles(m.group(2))))
        except ValueError as exc:
            raise ParseError(str(exc), line=n, path=path) from exc
    return action_from_generators(gens)


def serialize_action(a: GroupAction, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for name, g in a.generators:
        lines.append(f"gen {name}: {g.cycle_notation() or '()'}")
    return "\n".join(lines) + "\n"


def read_action(path: PathLike) -> GroupAction:
    p = Path(path)
    return parse_action(p.read_text(encoding="utf-8"), path=str(p))


def write_action(a: GroupAction, path: PathLike, header: str | None = None) -> None:
    Path(path).write_text(serialize_action(a, header), encoding="utf-8", newline="\n")


# --- positions --------------------------------------------------------------

Positions = dict[str, tuple[Fraction, ...]]


def parse_positions(text: str, path: str | None = None) -> Positions:
    """``<token> c1 c2 ...`` per line, coordinates as integers or ``p/q``."""
    out: Positions = {}
    dim = None
    for n, line in _content_lines(text):
        tok, *coords = line.split()
        try:
            pt = tuple(Fraction(c) for c in coords)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coordinate: {exc}", line=n, path=path) from exc
        if dim is None:
            dim = len(pt)
        if len(pt) != dim or not pt:
            raise ParseError(f"expected {dim} coordinates for {tok}", line=n, path=path)
        if tok in out:
            raise ParseError(f"duplicate position for {tok}", line=n, path=path)
        out[tok] = pt
    return out


def serialize_positions(pos: Positions) -> str:
    return "".join(f"{t} " + " ".join(str(c) for c in pos[t]) + "\n" for t in sorted(pos))


def read_positions(path: PathLike) -> Positions:
    p = Path(path)
    return parse_positions(p.read_text(encoding="utf-8"), path=str(p))


def write_positions(pos: Positions, path: PathLike) -> None:
    Path(path).write_text(serialize_positions(pos), encoding="utf-8", newline="\n")
