"""Closed-form Huffman codes for equal-frequency alphabets.

For n symbols of equal frequency the optimal code uses only the two lengths
floor(lg n) and ceil(lg n); which symbols get the long codes, and their
values, follow from n alone.  Encoding is therefore a constant number of
integer operations per symbol, with no tree anywhere.

All parameters come from integer bit lengths, never floating-point logs, so
large n cannot misround.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .bits import Bits
from .errors import AlphabetError, CorruptError, SymbolRangeError
from .huffman import Codebook
from .instrument import OpCounters

# Parameter/encode/decode ops accept n up to 2^32; whole-table
# materialization is capped to bound memory.
MAX_N = 1 << 32
MAX_TABLE_N = 1 << 20


class BitSource(Protocol):
    def take(self, count: int) -> int: ...


@dataclass(frozen=True)
class CodeParams:
    """The derived quantities that drive the mapping for alphabet size n.

    lower/upper are floor/ceil of lg n; diff = 2 (n - 2^lower) counts the
    codewords of length upper.  upper == lower exactly when n is a power of
    two, in which case diff is 0 and the code is plain enumeration.
    """

    n: int
    lower: int
    upper: int
    diff: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise AlphabetError(f"need at least 2 symbols, got n={self.n}")
        if self.lower != self.n.bit_length() - 1:
            raise ValueError(f"lower={self.lower} inconsistent with n={self.n}")
        if self.upper != (self.n - 1).bit_length():
            raise ValueError(f"upper={self.upper} inconsistent with n={self.n}")
        if self.diff != 2 * (self.n - (1 << self.lower)):
            raise ValueError(f"diff={self.diff} inconsistent with n={self.n}")


def code_params(n: int) -> CodeParams:
    """Compute (lower, upper, diff) for an alphabet of n equal-frequency symbols."""
    if n < 2:
        raise AlphabetError(f"need at least 2 symbols, got n={n}")
    if n > MAX_N:
        raise AlphabetError(f"n={n} exceeds supported maximum 2^32")
    lower = n.bit_length() - 1
    upper = (n - 1).bit_length()
    return CodeParams(n, lower, upper, 2 * (n - (1 << lower)))


def binary_fixed(numb: int, length: int) -> Bits:
    """The length-bit big-endian representation of numb, zero-padded on the left."""
    if numb < 0 or numb >= (1 << length):
        raise SymbolRangeError(f"{numb} does not fit in {length} bits")
    return Bits(numb, length)


def direct_encode(p: CodeParams, numb: int, counters: OpCounters | None = None) -> Bits:
    """Codeword for symbol numb under the uniform-alphabet mapping.

    Short symbols are emitted verbatim at width lower; the rest are shifted
    into the top of the upper-width range: 2^upper + numb - n.
    """
    if not 0 <= numb < p.n:
        raise SymbolRangeError(f"symbol {numb} outside [0, {p.n})")
    # Both branch guards kept verbatim even though the first disjunct makes
    # the comparison redundant when diff == 0.
    if p.lower == p.upper or numb <= p.n - 1 - p.diff:
        out = binary_fixed(numb, p.lower)
    else:
        out = binary_fixed((1 << p.upper) + numb - p.n, p.upper)
    if counters is not None:
        counters.bits_emitted += out.length
    return out


def direct_decode(p: CodeParams, reader: BitSource) -> int:
    """Read exactly one codeword from the bit source and return its symbol.

    Reads lower bits; if the value falls in the short range the symbol is
    the value itself, otherwise one more bit completes an upper-width
    codeword and the shift is undone.
    """
    v = reader.take(p.lower)
    if p.lower == p.upper or v <= p.n - 1 - p.diff:
        symbol = v
    else:
        w = (v << 1) | reader.take(1)
        symbol = w - (1 << p.upper) + p.n
    if not 0 <= symbol < p.n:
        raise CorruptError(f"decoded symbol {symbol} outside [0, {p.n})")
    return symbol


def direct_codebook(n: int, counters: OpCounters | None = None) -> Codebook:
    """The complete codebook for alphabet size n; one encode per symbol."""
    if n > MAX_TABLE_N:
        raise AlphabetError(f"codebook materialization capped at n <= {MAX_TABLE_N}, got {n}")
    p = code_params(n)
    return Codebook(n, {i: direct_encode(p, i, counters) for i in range(n)})
