"""Matrix encoder built from basis-vector outer products.

Instead of a tree, the encoder is a sum of outer products |input><code|,
one per symbol, split across two registers: a 2^upper x 2^lower matrix for
the short codewords and a 2^upper x 2^upper matrix for the long ones.
Encoding a symbol multiplies the transposed register by the symbol's basis
ket, which lands on the basis ket of its codeword value.

Every entry is an exact 0 or 1; there are no amplitudes anywhere.  Each
register has at most one entry per row and per column (a partial
permutation), so applying the transpose to a basis ket is a single
coordinate lookup.  The registers are stored sparsely; dense grids exist
only for display.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import Bits
from .directmap import CodeParams, binary_fixed, code_params
from .errors import AlphabetError, StateError, SymbolRangeError, TooLargeError
from .instrument import OpCounters

DENSIFY_CELL_LIMIT = 1 << 24


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True, slots=True)
class BasisKet:
    """Standard basis column vector: a single 1 at position ``index``."""

    dim: int
    index: int

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.dim):
            raise ValueError(f"dimension must be a power of two, got {self.dim}")
        if not 0 <= self.index < self.dim:
            raise SymbolRangeError(f"index {self.index} outside [0, {self.dim})")

    def dense(self) -> tuple[int, ...]:
        return tuple(1 if i == self.index else 0 for i in range(self.dim))


def basis_ket(index: int, dim: int) -> BasisKet:
    return BasisKet(dim, index)


class SparseZeroOneMatrix:
    """0/1 matrix stored as a set of coordinates, one entry per row and column."""

    __slots__ = ("rows", "cols", "ones", "_col_by_row")

    def __init__(self, rows: int, cols: int, ones: set[tuple[int, int]] | frozenset[tuple[int, int]]):
        if rows < 1 or cols < 1:
            raise ValueError(f"invalid shape {rows}x{cols}")
        col_by_row: dict[int, int] = {}
        seen_cols: set[int] = set()
        for r, c in ones:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if r in col_by_row:
                raise StateError(f"two entries in row {r}")
            if c in seen_cols:
                raise StateError(f"two entries in column {c}")
            col_by_row[r] = c
            seen_cols.add(c)
        self.rows = rows
        self.cols = cols
        self.ones = frozenset(ones)
        self._col_by_row = col_by_row

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseZeroOneMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.ones) == (other.rows, other.cols, other.ones)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.ones))

    def __repr__(self) -> str:
        return f"SparseZeroOneMatrix({self.rows}x{self.cols}, ones={sorted(self.ones)})"

    def __add__(self, other: SparseZeroOneMatrix) -> SparseZeroOneMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        if self.ones & other.ones:
            raise ValueError("overlapping entries")
        return SparseZeroOneMatrix(self.rows, self.cols, self.ones | other.ones)

    def transpose(self) -> SparseZeroOneMatrix:
        return SparseZeroOneMatrix(self.cols, self.rows, {(c, r) for r, c in self.ones})

    def transpose_apply(self, index: int) -> int | None:
        """Index of the basis ket produced by (this matrix)^T applied to
        basis ket ``index``, or None when the product is the zero vector."""
        if not 0 <= index < self.rows:
            raise SymbolRangeError(f"index {index} outside [0, {self.rows})")
        return self._col_by_row.get(index)


def outer_product(k: BasisKet, b: BasisKet) -> SparseZeroOneMatrix:
    """|k><b|: the k.dim x b.dim matrix with a single 1 at (k.index, b.index)."""
    return SparseZeroOneMatrix(k.dim, b.dim, {(k.index, b.index)})


def zero_matrix(rows: int, cols: int) -> SparseZeroOneMatrix:
    return SparseZeroOneMatrix(rows, cols, set())


@dataclass(frozen=True)
class EncoderState:
    """The two accumulated registers for alphabet size params.n.

    state1 (2^upper x 2^lower) holds the identity block for the short-coded
    symbols; state2 (2^upper x 2^upper) sends each long-coded symbol i to
    column 2^upper + i - n.  Ones across both registers total n.
    """

    params: CodeParams
    state1: SparseZeroOneMatrix
    state2: SparseZeroOneMatrix

    def __post_init__(self) -> None:
        p = self.params
        if self.state1.rows != 1 << p.upper or self.state1.cols != 1 << p.lower:
            raise StateError(f"register 1 must be {1 << p.upper}x{1 << p.lower}")
        if self.state2.rows != 1 << p.upper or self.state2.cols != 1 << p.upper:
            raise StateError(f"register 2 must be {1 << p.upper}x{1 << p.upper}")
        short = {(i, i) for i in range(p.n - p.diff)}
        long = {(i, (1 << p.upper) + i - p.n) for i in range(p.n - p.diff, p.n)}
        if self.state1.ones != short:
            raise StateError("register 1 entries are not the identity block")
        if self.state2.ones != long:
            raise StateError("register 2 entries do not match the long-codeword block")


def build_state(n: int, counters: OpCounters | None = None) -> EncoderState:
    """Accumulate the encoder registers for n symbols.

    For a power of two every symbol goes to register 1 as |i><i|; otherwise
    the first n - diff symbols go there and the rest to register 2 as
    |i><2^upper + i - n|.
    """
    if n < 2:
        raise AlphabetError(f"need at least 2 symbols, got n={n}")
    p = code_params(n)
    ones1: set[tuple[int, int]] = set()
    ones2: set[tuple[int, int]] = set()
    written = 0
    if p.lower == p.upper:
        for counter in range(n):
            ones1.add((counter, counter))
            written += 1
    else:
        for counter in range(n - p.diff):
            ones1.add((counter, counter))
            written += 1
        for counter in range(n - p.diff, n):
            ones2.add((counter, (1 << p.upper) + counter - n))
            written += 1
    if counters is not None:
        counters.state_ones_written += written
    return EncoderState(
        p,
        SparseZeroOneMatrix(1 << p.upper, 1 << p.lower, ones1),
        SparseZeroOneMatrix(1 << p.upper, 1 << p.upper, ones2),
    )


def qstate_encode(s: EncoderState, numb: int, counters: OpCounters | None = None) -> Bits:
    """Codeword of symbol numb via the matrix route.

    Forms the basis ket |numb> of dimension 2^upper and applies the
    transposed register chosen by the short/long split; the resulting basis
    index, at width lower or upper, is the codeword.  The ket application
    is a coordinate lookup, never a dense product.
    """
    p = s.params
    if not 0 <= numb < p.n:
        raise SymbolRangeError(f"symbol {numb} outside [0, {p.n})")
    if p.lower == p.upper or numb <= p.n - 1 - p.diff:
        register, width = s.state1, p.lower
    else:
        register, width = s.state2, p.upper
    code = register.transpose_apply(numb)
    if code is None:
        raise StateError(f"register row {numb} is empty; state does not cover its alphabet")
    if counters is not None:
        counters.coord_lookups += 1
        counters.bits_emitted += width
    return binary_fixed(code, width)


def densify(m: SparseZeroOneMatrix) -> list[list[int]]:
    """Full 0/1 grid of a sparse register; refuses more than 2^24 cells."""
    if m.rows * m.cols > DENSIFY_CELL_LIMIT:
        raise TooLargeError(f"{m.rows}x{m.cols} grid exceeds the display bound")
    grid = [[0] * m.cols for _ in range(m.rows)]
    for r, c in m.ones:
        grid[r][c] = 1
    return grid


def sparse_from_dense(grid: list[list[int]]) -> SparseZeroOneMatrix:
    """Inverse of densify, for round-trip checks and hand-written grids."""
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    ones = {(r, c) for r, row in enumerate(grid) for c, cell in enumerate(row) if cell}
    return SparseZeroOneMatrix(rows, cols, ones)
