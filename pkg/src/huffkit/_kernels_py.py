"""Pure-Python packing kernels.

Same contracts as the compiled module huffkit._kernels; this is the
fallback selected by huffkit.kernels when the extension is unavailable.
Unlike the compiled twin these loops run on arbitrary-precision integers,
so there is no codeword-length cap.
"""

from __future__ import annotations

from .errors import CorruptError, SymbolRangeError, TruncatedError

BACKEND = "python"


def _params(n: int) -> tuple[int, int, int]:
    lower = n.bit_length() - 1
    upper = (n - 1).bit_length()
    return lower, upper, 2 * (n - (1 << lower))


def pack_uniform(symbols, n: int) -> tuple[bytes, int]:
    """Concatenate the uniform-alphabet codewords of symbols, MSB-first.

    Returns (payload, payload bit count); the final byte is zero-padded.
    """
    lower, upper, diff = _params(n)
    short_max = n - 1 - diff
    top = (1 << upper) - n
    out = bytearray()
    acc = 0
    pending = 0
    total_bits = 0
    for v in symbols:
        if not 0 <= v < n:
            raise SymbolRangeError(f"symbol {v} outside [0, {n})")
        if lower == upper or v <= short_max:
            acc = (acc << lower) | v
            pending += lower
            total_bits += lower
        else:
            acc = (acc << upper) | (top + v)
            pending += upper
            total_bits += upper
        while pending >= 8:
            pending -= 8
            out.append((acc >> pending) & 0xFF)
            acc &= (1 << pending) - 1
    if pending:
        out.append((acc << (8 - pending)) & 0xFF)
    return bytes(out), total_bits


def unpack_uniform(payload: bytes, n: int, count: int) -> list[int]:
    """Decode count codewords produced by pack_uniform with the same n."""
    lower, upper, diff = _params(n)
    short_max = n - 1 - diff
    top = (1 << upper) - n
    limit = 8 * len(payload)
    acc = 0
    have = 0
    pos = 0
    out = []
    append = out.append
    for _ in range(count):
        while have < lower:
            if pos >= limit:
                raise TruncatedError("payload ends mid-codeword")
            acc = (acc << 8) | payload[pos >> 3]
            pos += 8
            have += 8
        v = (acc >> (have - lower)) & ((1 << lower) - 1)
        if lower == upper or v <= short_max:
            have -= lower
            symbol = v
        else:
            if have == lower:
                if pos >= limit:
                    raise TruncatedError("payload ends mid-codeword")
                acc = (acc << 8) | payload[pos >> 3]
                pos += 8
                have += 8
            w = (acc >> (have - upper)) & ((1 << upper) - 1)
            have -= upper
            symbol = w - top
        acc &= (1 << have) - 1
        if not 0 <= symbol < n:
            raise CorruptError(f"decoded symbol {symbol} outside [0, {n})")
        append(symbol)
    return out


def pack_table(data: bytes, values, lengths) -> tuple[bytes, int]:
    """Pack data bytes through a 256-entry (codeword value, length) table.

    A byte whose table length is 0 has no codeword and is rejected.
    """
    out = bytearray()
    acc = 0
    pending = 0
    total_bits = 0
    for b in data:
        length = lengths[b]
        if length == 0:
            raise SymbolRangeError(f"byte {b} has no codeword")
        acc = (acc << length) | values[b]
        pending += length
        total_bits += length
        while pending >= 8:
            pending -= 8
            out.append((acc >> pending) & 0xFF)
            acc &= (1 << pending) - 1
    if pending:
        out.append((acc << (8 - pending)) & 0xFF)
    return bytes(out), total_bits


def _canonical_tables(lengths) -> tuple[int, list[int], list[int], list[int], list[int]]:
    """Decode tables for a canonical code given per-byte lengths.

    Returns (max_len, first_code, count, base_index, symbol_order) where
    codewords of length l are first_code[l] .. first_code[l]+count[l]-1 and
    symbol_order lists byte values sorted by (length, value).
    """
    max_len = max((l for l in lengths if l), default=0)
    count = [0] * (max_len + 1)
    for l in lengths:
        if l:
            count[l] += 1
    first_code = [0] * (max_len + 1)
    base_index = [0] * (max_len + 1)
    code = 0
    index = 0
    for l in range(1, max_len + 1):
        first_code[l] = code
        base_index[l] = index
        code = (code + count[l]) << 1
        index += count[l]
    symbol_order = sorted((b for b in range(len(lengths)) if lengths[b]), key=lambda b: (lengths[b], b))
    return max_len, first_code, count, base_index, symbol_order


def unpack_table(payload: bytes, lengths, count: int) -> bytes:
    """Decode count symbols of a canonical code described by per-byte lengths."""
    max_len, first_code, len_count, base_index, symbol_order = _canonical_tables(lengths)
    if count and max_len == 0:
        raise CorruptError("no codewords in table but symbols expected")
    limit = 8 * len(payload)
    out = bytearray()
    pos = 0
    for _ in range(count):
        code = 0
        length = 0
        while True:
            if pos >= limit:
                raise TruncatedError("payload ends mid-codeword")
            bit = (payload[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            code = (code << 1) | bit
            length += 1
            if length > max_len:
                raise CorruptError("bit pattern matches no codeword")
            offset = code - first_code[length]
            if 0 <= offset < len_count[length]:
                out.append(symbol_order[base_index[length] + offset])
                break
    return bytes(out)
