"""On-disk container format and whole-stream compression.

Layout (all integers little-endian):

    magic   4 bytes  "QIHC"
    version 1 byte   0x01
    mode    1 byte   0x00 uniform alphabet, 0x01 general byte stream
    mode 0: n as u32, symbol width byte (1, 2 or 4)
    mode 1: 256-byte canonical code-length table (0 = byte absent)
    count   symbol count as u64
    payload codewords packed MSB-first, final byte zero-padded

Mode 0 encodes integer symbols below n with the closed-form uniform code;
mode 1 builds a canonical Huffman code over the input's byte frequencies
and stores only its lengths, which the decoder reconstructs exactly.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import _kernels_py, kernels
from .bitio import BitWriter
from .directmap import code_params
from .errors import AlphabetError, CorruptError, FormatError, HeaderError, TruncatedError
from .huffman import SymbolDistribution, huffman_book
from .qstate import build_state, qstate_encode

MAGIC = b"QIHC"
VERSION = 1
MODE_UNIFORM = 0
MODE_GENERAL = 1

_MODE0_LAYOUT = struct.Struct("<4sBBIBQ")
_MODE1_PREFIX = struct.Struct("<4sBB")
_COUNT = struct.Struct("<Q")

MAX_CONTAINER_N = (1 << 32) - 1


@dataclass(frozen=True)
class ContainerHeader:
    mode: int
    symbol_count: int
    n: int | None = None
    symbol_width: int | None = None
    code_lengths: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.symbol_count < 0:
            raise HeaderError("negative symbol count")
        if self.mode == MODE_UNIFORM:
            if self.n is None or self.symbol_width is None:
                raise HeaderError("uniform mode requires n and symbol width")
            if not 2 <= self.n <= MAX_CONTAINER_N:
                raise HeaderError(f"n={self.n} outside [2, 2^32-1]")
            if self.symbol_width not in (1, 2, 4):
                raise HeaderError(f"symbol width must be 1, 2 or 4, got {self.symbol_width}")
            if self.n > 1 << (8 * self.symbol_width):
                raise HeaderError(f"width {self.symbol_width} too narrow for n={self.n}")
        elif self.mode == MODE_GENERAL:
            if self.code_lengths is None or len(self.code_lengths) != 256:
                raise HeaderError("general mode requires a 256-entry length table")
            if any(l < 0 or l > 255 for l in self.code_lengths):
                raise HeaderError("length table entry outside [0, 255]")
            present = [l for l in self.code_lengths if l]
            if present:
                lmax = max(present)
                scaled = sum(1 << (lmax - l) for l in present)
                if scaled > 1 << lmax:
                    raise HeaderError("length table violates the Kraft inequality")
                if len(present) >= 2 and scaled != 1 << lmax:
                    raise HeaderError("incomplete code: Kraft sum below 1 with several symbols")
        else:
            raise FormatError(f"unknown mode byte {self.mode}")

    @property
    def byte_size(self) -> int:
        return _MODE0_LAYOUT.size if self.mode == MODE_UNIFORM else _MODE1_PREFIX.size + 256 + _COUNT.size


def emit_header(h: ContainerHeader) -> bytes:
    if h.mode == MODE_UNIFORM:
        return _MODE0_LAYOUT.pack(MAGIC, VERSION, h.mode, h.n, h.symbol_width, h.symbol_count)
    assert h.code_lengths is not None
    return _MODE1_PREFIX.pack(MAGIC, VERSION, h.mode) + bytes(h.code_lengths) + _COUNT.pack(h.symbol_count)


def parse_header(data: bytes) -> ContainerHeader:
    if len(data) < _MODE1_PREFIX.size:
        raise TruncatedError("container shorter than the fixed header prefix")
    magic, version, mode = _MODE1_PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if mode == MODE_UNIFORM:
        if len(data) < _MODE0_LAYOUT.size:
            raise TruncatedError("container shorter than its header")
        _, _, _, n, width, count = _MODE0_LAYOUT.unpack_from(data)
        return ContainerHeader(mode, count, n=n, symbol_width=width)
    if mode == MODE_GENERAL:
        size = _MODE1_PREFIX.size + 256 + _COUNT.size
        if len(data) < size:
            raise TruncatedError("container shorter than its header")
        lengths = tuple(data[_MODE1_PREFIX.size:_MODE1_PREFIX.size + 256])
        (count,) = _COUNT.unpack_from(data, size - _COUNT.size)
        return ContainerHeader(mode, count, code_lengths=lengths)
    raise FormatError(f"unknown mode byte {mode}")


def compress_uniform(symbols: Sequence[int], n: int, symbol_width: int = 1, encoder: str = "direct") -> bytes:
    """Mode-0 container for integer symbols below n.

    encoder "direct" packs through the closed-form mapping; "qstate" routes
    every symbol through the matrix encoder instead.  The two produce
    byte-identical containers.
    """
    if not 2 <= n <= MAX_CONTAINER_N:
        raise AlphabetError(f"container n must be in [2, 2^32-1], got {n}")
    header = ContainerHeader(MODE_UNIFORM, len(symbols), n=n, symbol_width=symbol_width)
    if encoder == "direct":
        payload, _ = kernels.pack_uniform(symbols, n)
    elif encoder == "qstate":
        state = build_state(n)
        writer = BitWriter()
        for v in symbols:
            writer.append(qstate_encode(state, v))
        payload = writer.finish()
    else:
        raise ValueError(f"unknown encoder {encoder!r}")
    return emit_header(header) + payload


def compress_bytes(data: bytes) -> bytes:
    """Mode-1 container: canonical Huffman code over the byte frequencies."""
    lengths = [0] * 256
    if data:
        book = huffman_book(SymbolDistribution.from_counts(Counter(data)))
        values = [0] * 256
        for symbol in book:
            code = book[symbol]
            lengths[symbol] = code.length
            values[symbol] = code.value
        payload, _ = _pick_table_kernel(lengths).pack_table(data, values, lengths)
    else:
        payload = b""
    header = ContainerHeader(MODE_GENERAL, len(data), code_lengths=tuple(lengths))
    return emit_header(header) + payload


def compress(mode: int, symbols, *, n: int | None = None, symbol_width: int = 1) -> bytes:
    """Mode dispatcher: mode 0 takes integer symbols and n, mode 1 bytes."""
    if mode == MODE_UNIFORM:
        if n is None:
            raise AlphabetError("uniform mode requires n")
        return compress_uniform(symbols, n, symbol_width)
    if mode == MODE_GENERAL:
        return compress_bytes(bytes(symbols))
    raise FormatError(f"unknown mode {mode}")


def decompress(container: bytes) -> list[int] | bytes:
    """Exact inverse of compress: symbol list for mode 0, bytes for mode 1."""
    header = parse_header(container)
    payload = container[header.byte_size:]
    # Reject implausible counts before the kernels allocate count-sized
    # output: every codeword takes at least min_bits bits of payload.
    if header.mode == MODE_UNIFORM:
        assert header.n is not None
        p = code_params(header.n)
        if header.symbol_count * p.lower > 8 * len(payload):
            raise TruncatedError(
                f"{header.symbol_count} codewords of >= {p.lower} bits cannot fit in {len(payload)} payload bytes"
            )
        return kernels.unpack_uniform(payload, header.n, header.symbol_count)
    assert header.code_lengths is not None
    if header.symbol_count == 0:
        return b""
    lengths = list(header.code_lengths)
    present = [l for l in lengths if l]
    if not present:
        raise CorruptError("no codewords in table but symbols expected")
    min_bits = min(present)
    if header.symbol_count * min_bits > 8 * len(payload):
        raise TruncatedError(
            f"{header.symbol_count} codewords of >= {min_bits} bits cannot fit in {len(payload)} payload bytes"
        )
    return _pick_table_kernel(lengths).unpack_table(payload, lengths, header.symbol_count)


def _pick_table_kernel(lengths: Sequence[int]):
    # The compiled kernel runs on 64-bit accumulators; deep tables (possible
    # only in hand-built containers) go through the pure path.
    cap = getattr(kernels.active, "MAX_CODE_LEN", None)
    if cap is not None and max(lengths) > cap:
        return _kernels_py
    return kernels.active
