# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled packing kernels.

Same contracts as huffkit._kernels_py; selected by huffkit.kernels when the
build produced this module.  Accumulators are 64-bit, so per-codeword
widths are capped at MAX_CODE_LEN; huffkit.codec routes longer tables to
the pure backend.
"""

from cpython.bytearray cimport PyByteArray_AS_STRING

from .errors import CorruptError, SymbolRangeError, TruncatedError

BACKEND = "cython"
MAX_CODE_LEN = 56


def pack_uniform(symbols, n):
    """Concatenate the uniform-alphabet codewords of symbols, MSB-first.

    Returns (payload, payload bit count); the final byte is zero-padded.
    """
    cdef unsigned long long nn = n
    cdef int lower = <int>(n.bit_length() - 1)
    cdef int upper = <int>((n - 1).bit_length())
    cdef unsigned long long diff = 2 * (nn - ((<unsigned long long>1) << lower))
    cdef long long short_max = <long long>nn - 1 - <long long>diff
    cdef unsigned long long top = ((<unsigned long long>1) << upper) - nn

    syms = symbols if type(symbols) is list else list(symbols)
    cdef Py_ssize_t count = len(syms)
    cdef bytearray out = bytearray((count * upper) // 8 + 8)
    cdef unsigned char *buf = <unsigned char *>PyByteArray_AS_STRING(out)
    cdef Py_ssize_t pos = 0
    cdef unsigned long long acc = 0
    cdef int pending = 0
    cdef unsigned long long total_bits = 0
    cdef unsigned long long v
    cdef Py_ssize_t i
    cdef object item

    for i in range(count):
        item = syms[i]
        if item < 0 or item >= n:
            raise SymbolRangeError(f"symbol {item} outside [0, {n})")
        v = item
        if lower == upper or <long long>v <= short_max:
            acc = (acc << lower) | v
            pending += lower
            total_bits += lower
        else:
            acc = (acc << upper) | (top + v)
            pending += upper
            total_bits += upper
        while pending >= 8:
            pending -= 8
            buf[pos] = <unsigned char>((acc >> pending) & 0xFF)
            pos += 1
        acc &= (((<unsigned long long>1) << pending) - 1)
    if pending:
        buf[pos] = <unsigned char>((acc << (8 - pending)) & 0xFF)
        pos += 1
    del out[pos:]
    return bytes(out), total_bits


def unpack_uniform(payload, n, count):
    """Decode count codewords produced by pack_uniform with the same n."""
    cdef unsigned long long nn = n
    cdef int lower = <int>(n.bit_length() - 1)
    cdef int upper = <int>((n - 1).bit_length())
    cdef unsigned long long diff = 2 * (nn - ((<unsigned long long>1) << lower))
    cdef long long short_max = <long long>nn - 1 - <long long>diff
    cdef unsigned long long top = ((<unsigned long long>1) << upper) - nn

    cdef const unsigned char[:] data = payload
    cdef Py_ssize_t nbytes = len(payload)
    cdef Py_ssize_t byte_pos = 0
    cdef unsigned long long acc = 0
    cdef int have = 0
    cdef unsigned long long v, w
    cdef long long symbol
    cdef Py_ssize_t i
    cdef list out = [0] * count

    for i in range(count):
        while have < lower:
            if byte_pos >= nbytes:
                raise TruncatedError("payload ends mid-codeword")
            acc = (acc << 8) | data[byte_pos]
            byte_pos += 1
            have += 8
        v = (acc >> (have - lower)) & (((<unsigned long long>1) << lower) - 1)
        if lower == upper or <long long>v <= short_max:
            have -= lower
            symbol = <long long>v
        else:
            if have == lower:
                if byte_pos >= nbytes:
                    raise TruncatedError("payload ends mid-codeword")
                acc = (acc << 8) | data[byte_pos]
                byte_pos += 1
                have += 8
            w = (acc >> (have - upper)) & (((<unsigned long long>1) << upper) - 1)
            have -= upper
            symbol = <long long>w - <long long>top
        acc &= (((<unsigned long long>1) << have) - 1)
        if symbol < 0 or symbol >= <long long>nn:
            raise CorruptError(f"decoded symbol {symbol} outside [0, {n})")
        out[i] = symbol
    return out


def pack_table(data, values, lengths):
    """Pack data bytes through a 256-entry (codeword value, length) table."""
    cdef unsigned long long c_values[256]
    cdef int c_lengths[256]
    cdef int b
    for b in range(256):
        c_lengths[b] = lengths[b]
        if c_lengths[b] > MAX_CODE_LEN:
            raise ValueError(f"code length {c_lengths[b]} exceeds compiled kernel cap {MAX_CODE_LEN}")
        c_values[b] = values[b]

    cdef const unsigned char[:] src = data
    cdef Py_ssize_t count = len(data)
    cdef Py_ssize_t max_bytes = (count * MAX_CODE_LEN) // 8 + 8
    cdef bytearray out = bytearray(max_bytes)
    cdef unsigned char *buf = <unsigned char *>PyByteArray_AS_STRING(out)
    cdef Py_ssize_t pos = 0
    cdef unsigned long long acc = 0
    cdef int pending = 0
    cdef unsigned long long total_bits = 0
    cdef Py_ssize_t i
    cdef int sym, length

    for i in range(count):
        sym = src[i]
        length = c_lengths[sym]
        if length == 0:
            raise SymbolRangeError(f"byte {sym} has no codeword")
        acc = (acc << length) | c_values[sym]
        pending += length
        total_bits += length
        while pending >= 8:
            pending -= 8
            buf[pos] = <unsigned char>((acc >> pending) & 0xFF)
            pos += 1
        acc &= (((<unsigned long long>1) << pending) - 1)
    if pending:
        buf[pos] = <unsigned char>((acc << (8 - pending)) & 0xFF)
        pos += 1
    del out[pos:]
    return bytes(out), total_bits


def unpack_table(payload, lengths, count):
    """Decode count symbols of a canonical code described by per-byte lengths."""
    cdef int c_lengths[256]
    cdef int max_len = 0
    cdef int b
    for b in range(256):
        c_lengths[b] = lengths[b]
        if c_lengths[b] > MAX_CODE_LEN:
            raise ValueError(f"code length {c_lengths[b]} exceeds compiled kernel cap {MAX_CODE_LEN}")
        if c_lengths[b] > max_len:
            max_len = c_lengths[b]
    if count and max_len == 0:
        raise CorruptError("no codewords in table but symbols expected")

    # canonical decode tables: codes of length l start at first_code[l]
    cdef unsigned long long first_code[57]
    cdef int len_count[57]
    cdef int base_index[57]
    cdef unsigned char symbol_order[256]
    cdef int l
    for l in range(max_len + 1):
        len_count[l] = 0
    for b in range(256):
        if c_lengths[b]:
            len_count[c_lengths[b]] += 1
    cdef unsigned long long code = 0
    cdef int index = 0
    for l in range(1, max_len + 1):
        first_code[l] = code
        base_index[l] = index
        code = (code + len_count[l]) << 1
        index += len_count[l]
    cdef int fill[57]
    for l in range(max_len + 1):
        fill[l] = 0
    for b in range(256):
        l = c_lengths[b]
        if l:
            symbol_order[base_index[l] + fill[l]] = <unsigned char>b
            fill[l] += 1

    cdef const unsigned char[:] data = payload
    cdef Py_ssize_t limit = 8 * len(payload)
    cdef Py_ssize_t pos = 0
    cdef bytearray out = bytearray(count)
    cdef unsigned char *dst = <unsigned char *>PyByteArray_AS_STRING(out)
    cdef Py_ssize_t i
    cdef unsigned long long acc
    cdef int length, bit
    cdef long long offset

    for i in range(count):
        acc = 0
        length = 0
        while True:
            if pos >= limit:
                raise TruncatedError("payload ends mid-codeword")
            bit = (data[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            acc = (acc << 1) | <unsigned long long>bit
            length += 1
            if length > max_len:
                raise CorruptError("bit pattern matches no codeword")
            offset = <long long>acc - <long long>first_code[length]
            if 0 <= offset < len_count[length]:
                dst[i] = symbol_order[base_index[length] + offset]
                break
    return bytes(out)
