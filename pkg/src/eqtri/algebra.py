"""Simplicial homology with coefficients in the two-element field.

Matrices are bit-packed: each row is a Python ``int`` whose bit ``j`` is the
entry in column ``j``.  Elimination is plain XOR on those integers.
"""

from __future__ import annotations

from collections.abc import Sequence

from .core.complex import Complex, euler_characteristic
from .errors import PreconditionError

__all__ = [
    "Gf2Matrix",
    "BettiProfile",
    "boundary_matrix",
    "betti_gf2",
    "euler_characteristic",
]


class Gf2Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        if any(r & ~mask for r in self.rows):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> Gf2Matrix:
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = []
        for row in dense:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, x in enumerate(row) if x % 2))
        return cls(nrows, ncols, rows)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> Gf2Matrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return Gf2Matrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        pivots: dict[int, int] = {}  # leading bit -> reduced row
        for r in self.rows:
            while r:
                top = r.bit_length() - 1
                p = pivots.get(top)
                if p is None:
                    pivots[top] = r
                    break
                r ^= p
        return len(pivots)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.nrows}x{self.ncols}, rank={self.rank()})"


class BettiProfile(tuple):
    """GF(2) Betti numbers ``(b_0, ..., b_d)``."""

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self))


def boundary_matrix(X: Complex, k: int) -> Gf2Matrix:
    """Incidence of ``(k-1)``-faces (rows) in ``k``-faces (columns), canonical order."""
    if not 1 <= k <= X.dim:
        raise PreconditionError(f"boundary degree {k} outside 1..{X.dim}")
    row_index = {s: i for i, s in enumerate(X.faces(k - 1))}
    rows = [0] * len(row_index)
    for j, s in enumerate(X.faces(k)):
        bit = 1 << j
        for i in range(len(s)):
            rows[row_index[s[:i] + s[i + 1:]]] |= bit
    return Gf2Matrix(len(rows), len(X.faces(k)), rows)


def betti_gf2(X: Complex) -> BettiProfile:
    d = X.dim
    if d < 0:
        return BettiProfile()
    ranks = [0] * (d + 2)  # ranks[k] = rank of boundary map from k-chains
    for k in range(1, d + 1):
        ranks[k] = boundary_matrix(X, k).rank()
    return BettiProfile(len(X.faces(k)) - ranks[k] - ranks[k + 1] for k in range(d + 1))
