"""Shipped complexes and actions, and the text formats used to exchange them."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

from ..core.complex import Complex
from ..errors import EqtriError
from ..group import GroupAction
from .io import (
    Positions,
    parse_action,
    parse_complex,
    parse_cycles,
    parse_positions,
    read_action,
    read_complex,
    read_positions,
    serialize_action,
    serialize_complex,
    serialize_positions,
    write_action,
    write_complex,
    write_positions,
)

__all__ = [
    "FIXTURE_IDS", "Fixture", "Positions", "checksum", "load_fixture", "z2_3_action",
    "parse_action", "parse_complex", "parse_cycles", "parse_positions",
    "read_action", "read_complex", "read_positions", "serialize_action",
    "serialize_complex", "serialize_positions", "write_action",
    "write_complex", "write_positions",
]

# sha256 of serialize_complex(X) with no header
_CHECKSUMS = {
    "K16": "843712b6a1e023879f4cb2912399088790105b0eeb346af364f95e3cc490ca3c",
    "K14": "ea4ad358e32ff388b5b57703c55547f7dbee5e401df17028648f9861fc15c5ee",
    "K11": "8af9ec022fd160ae4b69f175e4184827eb361ad51cec1c6d342276167eee9ee3",
    "RP2_6": "200ab91e33633c672cbcf879a444335f348db5f0a65ed52cf2a63cfa1469ca7c",
}

FIXTURE_IDS = ("K16", "K14", "K11", "RP2_6", "XP_1", "XP_2", "XP_3", "XP_4")


class FixtureIntegrityError(EqtriError):
    pass


@dataclass(frozen=True)
class Fixture:
    id: str
    complex: Complex
    action: GroupAction | None = None
    positions: Positions | None = None
    notes: str = ""
    facet_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "facet_count", len(self.complex.facets))


def checksum(X: Complex) -> str:
    return hashlib.sha256(serialize_complex(X).encode("utf-8")).hexdigest()


def _data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def _notes(text: str) -> str:
    return "\n".join(l[1:].strip() for l in text.splitlines() if l.startswith("#"))


def z2_3_action() -> GroupAction:
    return parse_action(_data_text("z2_3.action"), path="z2_3.action")


def load_fixture(fid: str) -> Fixture:
    """Load a shipped complex by id, verifying it against its stored checksum."""
    if fid.startswith("XP_"):
        from ..spheres import cross_polytope, cross_polytope_positions, sign_action

        try:
            n = int(fid[3:])
        except ValueError:
            n = 0
        if not 1 <= n <= 4:
            raise KeyError(f"unknown fixture {fid!r}; known: {', '.join(FIXTURE_IDS)}")
        return Fixture(
            fid,
            cross_polytope(n),
            sign_action(n),
            cross_polytope_positions(n),
            f"boundary of the {n}-dimensional cross-polytope with the coordinate sign action",
        )
    if fid not in _CHECKSUMS:
        raise KeyError(f"unknown fixture {fid!r}; known: {', '.join(FIXTURE_IDS)}")
    text = _data_text(f"{fid}.facets")
    X = parse_complex(text, path=f"{fid}.facets")
    digest = checksum(X)
    if digest != _CHECKSUMS[fid]:
        raise FixtureIntegrityError(f"fixture {fid} checksum mismatch: {digest}")
    action = None
    if fid in ("K16", "K14", "K11"):
        action = z2_3_action().restrict(X.vertices)
    return Fixture(fid, X, action, None, _notes(text))
