"""Classical Huffman coding over exact frequencies.

Frequencies are kept exact end to end, as ints or rationals; entropy and
expected length are the only floating-point surfaces.  Tree construction is
fully deterministic: merge candidates are ordered by (frequency, creation
order), leaves are created in symbol-index order, and parent nodes are
appended after all existing nodes, so identical inputs always give
bit-identical codebooks.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .bits import Bits
from .errors import (
    DistributionError,
    IncompleteCodebookError,
    InfeasibleLengthsError,
    TreeError,
)
from .instrument import OpCounters

FreqLike = int | float | str | Fraction
ExactFreq = int | Fraction


def _as_exact(freq: FreqLike) -> ExactFreq:
    # ints stay ints: exact, and far cheaper to add and compare in bulk
    if isinstance(freq, (int, Fraction)):
        return freq
    return Fraction(freq)


@dataclass(frozen=True)
class SymbolDistribution:
    """Symbols with exact nonnegative frequencies.

    ``entries`` maps distinct nonnegative symbol indices to frequencies; at
    least one frequency must be positive.  Frequencies need not be
    normalized: probabilities are frequency over total.
    """

    entries: tuple[tuple[int, ExactFreq], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        positive = False
        for symbol, freq in self.entries:
            if symbol < 0:
                raise DistributionError(f"negative symbol index {symbol}")
            if symbol in seen:
                raise DistributionError(f"duplicate symbol {symbol}")
            seen.add(symbol)
            if freq < 0:
                raise DistributionError(f"negative frequency for symbol {symbol}")
            positive = positive or freq > 0
        if not positive:
            raise DistributionError("all frequencies are zero")

    @classmethod
    def from_counts(cls, counts: Mapping[int, FreqLike] | Iterable[tuple[int, FreqLike]]) -> SymbolDistribution:
        items = counts.items() if isinstance(counts, Mapping) else counts
        return cls(tuple((int(s), _as_exact(f)) for s, f in items))

    @classmethod
    def from_probs(cls, probs: Iterable[FreqLike]) -> SymbolDistribution:
        """Symbols 0..k-1 with the given weights."""
        return cls(tuple((i, _as_exact(p)) for i, p in enumerate(probs)))

    @classmethod
    def uniform(cls, n: int) -> SymbolDistribution:
        return cls(tuple((i, 1) for i in range(n)))

    @property
    def total(self) -> ExactFreq:
        return sum(f for _, f in self.entries)

    def nonzero(self) -> list[tuple[int, ExactFreq]]:
        """Entries with positive frequency, in symbol order."""
        return sorted((s, f) for s, f in self.entries if f > 0)

    def probabilities(self) -> dict[int, Fraction]:
        """Normalized view over nonzero symbols; sums to exactly 1."""
        total = self.total
        return {s: Fraction(f) / total for s, f in self.nonzero()}


@dataclass(frozen=True)
class Codebook:
    """Mapping from symbol index to codeword.

    ``n`` is the alphabet size; codes cover a subset of ``[0, n)`` (symbols
    dropped for zero frequency carry no code).  All codewords are nonempty.
    """

    n: int
    codes: dict[int, Bits]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"alphabet size must be positive, got {self.n}")
        if not self.codes:
            raise ValueError("empty codebook")
        for symbol, code in self.codes.items():
            if not 0 <= symbol < self.n:
                raise ValueError(f"symbol {symbol} outside [0, {self.n})")
            if code.length == 0:
                raise ValueError(f"empty codeword for symbol {symbol}")

    def __getitem__(self, symbol: int) -> Bits:
        return self.codes[symbol]

    def __contains__(self, symbol: int) -> bool:
        return symbol in self.codes

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.codes))

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def is_complete(self) -> bool:
        """True when every symbol in [0, n) has a code."""
        return len(self.codes) == self.n

    def lengths(self) -> dict[int, int]:
        return {s: c.length for s, c in self.codes.items()}

    def as_strings(self) -> dict[int, str]:
        return {s: str(c) for s, c in self.codes.items()}


@dataclass(frozen=True)
class HuffmanTree:
    """Code tree in columnar form: node id -> (freq, parent, left, right, symbol).

    Leaves carry a symbol; internal nodes have exactly two children and a
    frequency equal to the sum of their children's.  Node ids are creation
    order: leaves first (symbol order), merged parents appended after.
    """

    freqs: list[ExactFreq]
    parents: list[int | None]
    lefts: list[int | None]
    rights: list[int | None]
    symbols: list[int | None]
    root: int

    def __len__(self) -> int:
        return len(self.freqs)

    def is_leaf(self, node: int) -> bool:
        return self.lefts[node] is None

    def leaves(self) -> list[int]:
        return [i for i in range(len(self.freqs)) if self.is_leaf(i)]


def entropy(dist: SymbolDistribution) -> float:
    """Bits per symbol of the normalized distribution, base 2.

    Zero-probability terms contribute nothing (0 lg 0 = 0).
    """
    h = 0.0
    for p in dist.probabilities().values():
        pf = float(p)
        h -= pf * math.log2(pf)
    return h


def expected_length(dist: SymbolDistribution, book: Codebook) -> float:
    """Probability-weighted mean codeword length.

    Computed exactly over rationals, converted to float at the end.  Every
    nonzero-frequency symbol must have a code.
    """
    acc = Fraction(0)
    for symbol, p in dist.probabilities().items():
        if symbol not in book:
            raise IncompleteCodebookError(f"no code for symbol {symbol}")
        acc += p * book[symbol].length
    return float(acc)


def build_tree(dist: SymbolDistribution, counters: OpCounters | None = None) -> HuffmanTree:
    """Merge the two lowest-frequency parentless nodes until one root remains.

    Zero-frequency symbols are dropped first.  Ties break on creation order
    (earlier node preferred); the first node popped becomes the left child.
    """
    entries = dist.nonzero()
    if not entries:
        raise DistributionError("no symbol with positive frequency")

    freqs: list[ExactFreq] = []
    parents: list[int | None] = []
    lefts: list[int | None] = []
    rights: list[int | None] = []
    symbols: list[int | None] = []
    heap: list[tuple[ExactFreq, int]] = []
    for symbol, freq in entries:
        node = len(freqs)
        freqs.append(freq)
        parents.append(None)
        lefts.append(None)
        rights.append(None)
        symbols.append(symbol)
        heap.append((freq, node))
    heapq.heapify(heap)

    merges = 0
    while len(heap) > 1:
        fa, a = heapq.heappop(heap)
        fb, b = heapq.heappop(heap)
        node = len(freqs)
        freqs.append(fa + fb)
        parents.append(None)
        lefts.append(a)
        rights.append(b)
        symbols.append(None)
        parents[a] = node
        parents[b] = node
        heapq.heappush(heap, (fa + fb, node))
        merges += 1
    if counters is not None:
        counters.tree_merges += merges
    return HuffmanTree(freqs, parents, lefts, rights, symbols, heap[0][1])


def leaf_depths(tree: HuffmanTree) -> dict[int, int]:
    """Depth of every leaf's symbol, by a single walk down from the root."""
    depths: dict[int, int] = {}
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        left = tree.lefts[node]
        if left is None:
            symbol = tree.symbols[node]
            assert symbol is not None
            depths[symbol] = depth
        else:
            right = tree.rights[node]
            assert right is not None
            stack.append((left, depth + 1))
            stack.append((right, depth + 1))
    return depths


def codes_from_tree(tree: HuffmanTree, counters: OpCounters | None = None) -> Codebook:
    """Read codewords off the tree: walk leaf to root, 0 for a left step and
    1 for a right step, then reverse the collected bits."""
    leaves = tree.leaves()
    if len(leaves) < 2:
        raise TreeError("tree has fewer than two leaves; single-symbol books are assigned directly")
    limit = len(tree)
    codes: dict[int, Bits] = {}
    walk_steps = 0
    for leaf in leaves:
        value = 0
        length = 0
        node = leaf
        while True:
            parent = tree.parents[node]
            if parent is None:
                break
            if tree.lefts[parent] == node:
                bit = 0
            elif tree.rights[parent] == node:
                bit = 1
            else:
                raise TreeError(f"node {node} is not a child of its parent {parent}")
            # building the reversed string directly: bit for depth d lands at weight 2^d
            value |= bit << length
            length += 1
            node = parent
            if length > limit:
                raise TreeError("cycle in parent chain")
        if node != tree.root:
            raise TreeError(f"leaf {leaf} does not reach the root")
        walk_steps += length
        symbol = tree.symbols[leaf]
        assert symbol is not None
        codes[symbol] = Bits(value, length)
    if counters is not None:
        counters.tree_walk_steps += walk_steps
    return Codebook(max(codes) + 1, codes)


def canonical_from_lengths(lengths: Mapping[int, int]) -> Codebook:
    """Canonical code assignment for the given codeword lengths.

    Symbols sorted by (length, symbol) receive consecutive code values,
    left-justified; the result is prefix-free whenever the lengths satisfy
    the Kraft inequality.
    """
    if not lengths:
        raise InfeasibleLengthsError("no lengths given")
    for symbol, length in lengths.items():
        if length < 1:
            raise InfeasibleLengthsError(f"nonpositive length {length} for symbol {symbol}")
    lmax = max(lengths.values())
    kraft_scaled = sum(1 << (lmax - l) for l in lengths.values())
    if kraft_scaled > (1 << lmax):
        raise InfeasibleLengthsError("Kraft sum exceeds 1")

    codes: dict[int, Bits] = {}
    code = 0
    prev_len = 0
    for symbol, length in sorted(lengths.items(), key=lambda kv: (kv[1], kv[0])):
        code <<= length - prev_len
        codes[symbol] = Bits(code, length)
        code += 1
        prev_len = length
    return Codebook(max(codes) + 1, codes)


def huffman_book(dist: SymbolDistribution, counters: OpCounters | None = None) -> Codebook:
    """Canonical Huffman codebook for a distribution.

    Tree-derived lengths are re-assigned canonically; a single-symbol
    alphabet gets the one-bit code ``0`` so payloads stay decodable.
    """
    entries = dist.nonzero()
    if len(entries) == 1:
        symbol = entries[0][0]
        return Codebook(symbol + 1, {symbol: Bits(0, 1)})
    tree = build_tree(dist, counters)
    return canonical_from_lengths({s: d for s, d in leaf_depths(tree).items()})


def is_prefix_free(book: Codebook) -> bool:
    """True iff no codeword is a prefix of a different symbol's codeword."""
    strings = sorted(str(c) for c in book.codes.values())
    return not any(b.startswith(a) for a, b in zip(strings, strings[1:]))


def is_non_singular(book: Codebook) -> bool:
    """True iff all codewords are pairwise distinct."""
    return len({(c.value, c.length) for c in book.codes.values()}) == len(book.codes)


def kraft_sum(book: Codebook) -> Fraction:
    """Sum of 2^(-length) over all codewords, exact."""
    lmax = max(c.length for c in book.codes.values())
    scaled = sum(1 << (lmax - c.length) for c in book.codes.values())
    return Fraction(scaled, 1 << lmax)


@dataclass(frozen=True)
class OptimalityReport:
    monotone_ok: bool
    longest_pair_ok: bool
    sibling_pair_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.monotone_ok and self.longest_pair_ok and self.sibling_pair_ok


def optimality_report(dist: SymbolDistribution, book: Codebook) -> OptimalityReport:
    """Check the three structural marks of an optimal instantaneous code:
    more frequent symbols never get longer codes, at least two codewords
    attain the maximum length, and some maximum-length pair differs only in
    its last bit.
    """
    probs = dist.probabilities()
    pairs = []
    for symbol, p in probs.items():
        if symbol not in book:
            raise IncompleteCodebookError(f"no code for symbol {symbol}")
        pairs.append((p, book[symbol].length))
    if len(pairs) < 2:
        raise DistributionError("optimality checks need at least two symbols")

    monotone = all(
        lj <= lk
        for pj, lj in pairs
        for pk, lk in pairs
        if pj > pk
    )

    lmax = max(c.length for c in book.codes.values())
    longest = [c.value for c in book.codes.values() if c.length == lmax]
    longest_pair = len(longest) >= 2
    values = set(longest)
    sibling_pair = any(v ^ 1 in values for v in values)
    return OptimalityReport(monotone, longest_pair, sibling_pair)
