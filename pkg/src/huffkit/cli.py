"""Command-line surface.

Commands: table, params, encode, decode, state, verify, bench, entropy.
Output tables are TAB-separated; --json/--csv switch to machine formats.
Failures exit nonzero with a one-line "error: <category>: ..." reason.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import struct
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import codec, kernels
from .directmap import MAX_TABLE_N, code_params, direct_codebook, direct_encode
from .errors import DistributionError, HuffkitError, TooLargeError
from .huffman import (
    SymbolDistribution,
    build_tree,
    codes_from_tree,
    entropy,
    expected_length,
    huffman_book,
    is_prefix_free,
    kraft_sum,
    leaf_depths,
)
from .instrument import OpCounters
from .qstate import build_state, densify, qstate_encode

_WIDTH_FMT = {1: "B", 2: "H", 4: "I"}


class UsageError(Exception):
    pass


class BoundError(HuffkitError):
    """An instrumented operation count exceeded its declared bound."""

    category = "bound"


@dataclass
class VerifyReport:
    """Outcome of the oracle-equivalence sweep; empty failures means success."""

    n_range: tuple[int, int]
    failures: list[tuple[int, str]] = field(default_factory=list)
    checked_properties: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verify(max_n: int, qstate_max: int = 1024) -> VerifyReport:
    """Check every n in [2, max_n] against the independent oracles.

    Per n: the code-length multiset of the closed-form book must equal the
    leaf-depth multiset of a Huffman tree built over uniform counts; the
    book must be prefix-free with Kraft sum exactly 1; growing from n-1 to
    n must replace the largest short codeword with its two extensions; and
    for n up to qstate_max the matrix encoder must agree with the closed
    form on every symbol.
    """
    report = VerifyReport(
        (2, max_n),
        checked_properties=[
            "direct_vs_tree_lengths",
            "kraft_complete",
            "prefix_free",
            "last_small_code_chain",
            "qstate_matches_direct",
        ],
    )
    fail = report.failures.append
    timings = {name: 0.0 for name in ("books", "tree_oracle", "structure", "chain", "qstate")}
    prev_codes: set[str] | None = None
    prev_lower = 0

    for n in range(2, max_n + 1):
        t0 = time.perf_counter()
        p = code_params(n)
        book = direct_codebook(n)
        strings = [str(book[i]) for i in range(n)]
        t1 = time.perf_counter()
        timings["books"] += t1 - t0

        depths = Counter(leaf_depths(build_tree(SymbolDistribution.uniform(n))).values())
        if Counter(map(len, strings)) != depths:
            fail((n, "code-length multiset differs from uniform-tree leaf depths"))
        t2 = time.perf_counter()
        timings["tree_oracle"] += t2 - t1

        if kraft_sum(book) != 1:
            fail((n, f"Kraft sum {kraft_sum(book)} != 1"))
        if not is_prefix_free(book):
            fail((n, "codebook is not prefix-free"))
        t3 = time.perf_counter()
        timings["structure"] += t3 - t2

        if prev_codes is not None:
            c_sl = max(s for s in prev_codes if len(s) == prev_lower)
            expected = (prev_codes - {c_sl}) | {c_sl + "0", c_sl + "1"}
            if set(strings) != expected:
                fail((n, f"book is not the n-1 book with {c_sl} replaced by its extensions"))
        prev_codes = set(strings)
        prev_lower = p.lower
        t4 = time.perf_counter()
        timings["chain"] += t4 - t3

        if n <= qstate_max:
            state = build_state(n)
            for i in range(n):
                if qstate_encode(state, i) != book.codes[i]:
                    fail((n, f"matrix encoder disagrees with direct mapping at symbol {i}"))
                    break
            timings["qstate"] += time.perf_counter() - t4
    report.timings = timings
    return report


def _parse_freq_file(path: Path) -> SymbolDistribution:
    entries = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DistributionError(f"{path}:{lineno}: expected 'symbol count', got {line!r}")
        try:
            symbol = int(parts[0])
            freq = Fraction(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise DistributionError(f"{path}:{lineno}: {exc}") from None
        entries.append((symbol, freq))
    if not entries:
        raise DistributionError(f"{path}: no frequency lines")
    return SymbolDistribution.from_counts(entries)


def _read_symbols(data: bytes, width: int) -> list[int]:
    if len(data) % width:
        raise UsageError(f"input size {len(data)} is not a multiple of symbol width {width}")
    count = len(data) // width
    return list(struct.unpack(f"<{count}{_WIDTH_FMT[width]}", data))


def _write_symbols(symbols: list[int], width: int) -> bytes:
    return struct.pack(f"<{len(symbols)}{_WIDTH_FMT[width]}", *symbols)


def _uniform_payload_bits(symbols, n: int) -> int:
    p = code_params(n)
    if p.lower == p.upper:
        return p.lower * len(symbols)
    short_max = p.n - 1 - p.diff
    long_count = sum(1 for v in symbols if v > short_max)
    return p.lower * (len(symbols) - long_count) + p.upper * long_count


def _byte_payload_bits(data: bytes, lengths) -> int:
    counts = Counter(data)
    return sum(lengths[b] * c for b, c in counts.items())


def cmd_table(args) -> int:
    n = args.n
    if not 2 <= n <= MAX_TABLE_N:
        raise UsageError(f"--n must be in [2, {MAX_TABLE_N}], got {n}")
    p = code_params(n)
    book = direct_codebook(n)
    if args.json:
        obj = {"n": p.n, "lower": p.lower, "upper": p.upper, "diff": p.diff,
               "codes": [str(book[i]) for i in range(n)]}
        print(json.dumps(obj))
    else:
        for i in range(n):
            print(f"{i}\t{book[i]}")
    return 0


def cmd_params(args) -> int:
    if args.n < 2:
        raise UsageError(f"--n must be at least 2, got {args.n}")
    p = code_params(args.n)
    print(json.dumps({"n": p.n, "lower": p.lower, "upper": p.upper, "diff": p.diff}))
    return 0


def cmd_encode(args) -> int:
    data = Path(args.infile).read_bytes()
    if args.mode == "tree":
        container = codec.compress_bytes(data)
        lengths = codec.parse_header(container).code_lengths
        payload_bits = _byte_payload_bits(data, lengths)
        count = len(data)
    else:
        if args.n is None:
            raise UsageError(f"--mode {args.mode} requires --n")
        symbols = _read_symbols(data, args.sym_width)
        encoder = "qstate" if args.mode == "qstate" else "direct"
        container = codec.compress_uniform(symbols, args.n, args.sym_width, encoder=encoder)
        payload_bits = _uniform_payload_bits(symbols, args.n)
        count = len(symbols)
    Path(args.outfile).write_bytes(container)
    bps = payload_bits / count if count else 0.0
    print(f"{len(data)}\t{len(container)}\t{bps:.6f}")
    return 0


def cmd_decode(args) -> int:
    container = Path(args.infile).read_bytes()
    header = codec.parse_header(container)
    if args.mode is not None:
        want = codec.MODE_GENERAL if args.mode == "tree" else codec.MODE_UNIFORM
        if header.mode != want:
            raise UsageError(f"container mode {header.mode} does not match --mode {args.mode}")
    if args.n is not None and header.n != args.n:
        raise UsageError(f"container n={header.n} does not match --n {args.n}")
    decoded = codec.decompress(container)
    if header.mode == codec.MODE_UNIFORM:
        assert header.symbol_width is not None and header.n is not None
        out = _write_symbols(decoded, header.symbol_width)
        payload_bits = _uniform_payload_bits(decoded, header.n)
        count = len(decoded)
    else:
        out = decoded
        payload_bits = _byte_payload_bits(decoded, header.code_lengths)
        count = len(decoded)
    Path(args.outfile).write_bytes(out)
    bps = payload_bits / count if count else 0.0
    print(f"{len(container)}\t{len(out)}\t{bps:.6f}")
    return 0


def cmd_state(args) -> int:
    if args.n < 2:
        raise UsageError(f"--n must be at least 2, got {args.n}")
    state = build_state(args.n)
    for name, register in (("register1", state.state1), ("register2", state.state2)):
        cells = " ".join(f"({r},{c})" for r, c in sorted(register.ones))
        print(f"{name}:" + (f" {cells}" if cells else ""))
    if args.dense:
        if 1 << state.params.upper > 4096:
            raise TooLargeError(f"--dense limited to 2^upper <= 4096, n={args.n} needs {1 << state.params.upper}")
        for name, register in (("register1", state.state1), ("register2", state.state2)):
            print(f"{name} dense:")
            for row in densify(register):
                print(" ".join(str(cell) for cell in row))
    return 0


def cmd_verify(args) -> int:
    if args.max_n < 2:
        raise UsageError(f"--max-n must be at least 2, got {args.max_n}")
    report = run_verify(args.max_n)
    print(f"range\t2..{args.max_n}")
    print("checked\t" + " ".join(report.checked_properties))
    print(f"failures\t{len(report.failures)}")
    for n, description in report.failures:
        print(f"fail\tn={n}\t{description}")
    return 0 if report.ok else 1


def _bench_tree(n: int) -> tuple[OpCounters, int]:
    counters = OpCounters()
    t0 = time.perf_counter_ns()
    tree = build_tree(SymbolDistribution.uniform(n), counters)
    codes_from_tree(tree, counters)
    nanos = time.perf_counter_ns() - t0
    if counters.tree_merges != n - 1:
        raise BoundError(f"tree_merges at n={n}: expected {n - 1}, got {counters.tree_merges}")
    if counters.tree_merges > n * n:
        raise BoundError(f"tree_merges at n={n} exceeds n^2")
    return counters, nanos


def _bench_direct(n: int) -> tuple[OpCounters, int]:
    counters = OpCounters()
    p = code_params(n)
    t0 = time.perf_counter_ns()
    emitted = 0
    for i in range(n):
        direct_encode(p, i, counters)
        step = counters.bits_emitted - emitted
        emitted = counters.bits_emitted
        if step not in (p.lower, p.upper):
            raise BoundError(f"direct encode at n={n} emitted {step} bits for symbol {i}")
    nanos = time.perf_counter_ns() - t0
    return counters, nanos


def _bench_qstate(n: int) -> tuple[OpCounters, int]:
    counters = OpCounters()
    t0 = time.perf_counter_ns()
    state = build_state(n, counters)
    for i in range(n):
        qstate_encode(state, i, counters)
    nanos = time.perf_counter_ns() - t0
    if counters.state_ones_written != n:
        raise BoundError(f"state_ones_written at n={n}: expected {n}, got {counters.state_ones_written}")
    lg = max(1.0, math.log2(n))
    if counters.state_ones_written > n * lg * lg:
        raise BoundError(f"state_ones_written at n={n} exceeds n (lg n)^2")
    return counters, nanos


def _bench_kernels(n: int) -> list[tuple[str, str, int, int]]:
    """Pack/unpack a fixed workload on every available backend.

    Returns (mode, counter, value, nanos) rows; values are identical across
    backends, only the nanos differ.
    """
    repeat = max(1, 1 << 16 >> max(1, n.bit_length()))
    symbols = list(range(n)) * repeat
    rows = []
    for name, backend in sorted(kernels.available_backends().items()):
        t0 = time.perf_counter_ns()
        payload, bits = backend.pack_uniform(symbols, n)
        decoded = backend.unpack_uniform(payload, n, len(symbols))
        nanos = time.perf_counter_ns() - t0
        if decoded != symbols:
            raise BoundError(f"backend {name} failed to round-trip at n={n}")
        rows.append((f"pack[{name}]", "bits_emitted", bits, nanos))
    return rows


def cmd_bench(args) -> int:
    try:
        n_list = [int(part) for part in args.n_list.split(",") if part]
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {args.n_list!r}") from None
    if not n_list or any(n < 2 for n in n_list):
        raise UsageError("--n-list entries must all be >= 2")
    modes = ("tree", "direct", "qstate", "kernels") if args.mode == "all" else (args.mode,)

    rows: list[tuple[int, str, str, int, int]] = []
    for n in n_list:
        if "tree" in modes:
            counters, nanos = _bench_tree(n)
            for name in ("tree_merges", "tree_walk_steps"):
                rows.append((n, "tree", name, getattr(counters, name), nanos))
        if "direct" in modes:
            counters, nanos = _bench_direct(n)
            rows.append((n, "direct", "bits_emitted", counters.bits_emitted, nanos))
        if "qstate" in modes:
            counters, nanos = _bench_qstate(n)
            for name in ("state_ones_written", "coord_lookups", "bits_emitted"):
                rows.append((n, "qstate", name, getattr(counters, name), nanos))
        if "kernels" in modes:
            for mode, counter, value, nanos in _bench_kernels(n):
                rows.append((n, mode, counter, value, nanos))

    # nanos is the one column exempt from byte-identical-stdout determinism
    print("n\tmode\tcounter\tvalue\tnanos")
    for n, mode, counter, value, nanos in rows:
        print(f"{n}\t{mode}\t{counter}\t{value}\t{nanos}")
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["n", "mode", "counter", "value", "nanos"])
            writer.writerows(rows)
    return 0


def cmd_entropy(args) -> int:
    dist = _parse_freq_file(Path(args.freq))
    book = huffman_book(dist)
    h = entropy(dist)
    length = expected_length(dist, book)
    print(f"H\t{h:.6f}")
    print(f"L\t{length:.6f}")
    print(f"redundancy\t{length - h:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="huffkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the symbol-to-code table for a uniform alphabet")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("params", help="print (lower, upper, diff) for a uniform alphabet")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", help="compress a file into a container")
    p.add_argument("--mode", choices=("direct", "tree", "qstate"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--sym-width", dest="sym_width", type=int, choices=(1, 2, 4), default=1)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="restore the original file from a container")
    p.add_argument("--mode", choices=("direct", "tree", "qstate"))
    p.add_argument("--n", type=int)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("state", help="print the encoder registers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dense", action="store_true")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("verify", help="run the oracle-equivalence sweep")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="op-count benchmark with optional CSV timings")
    p.add_argument("--n-list", dest="n_list", required=True)
    p.add_argument("--mode", choices=("all", "tree", "direct", "qstate", "kernels"), default="all")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("entropy", help="entropy and Huffman expected length of a frequency file")
    p.add_argument("--freq", required=True)
    p.set_defaults(func=cmd_entropy)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except HuffkitError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
