"""Bit-granular writer and reader over byte buffers.

Bits are packed most-significant-first within each byte; the writer
zero-pads the final partial byte on finish.  Both objects are single-owner
sequential: distinct streams can run in parallel, one stream cannot.
"""

from __future__ import annotations

from .bits import Bits
from .errors import TruncatedError


class BitWriter:
    def __init__(self) -> None:
        self._buf = bytearray()
        self._acc = 0
        self._pending = 0  # bits in _acc, always < 8 between calls
        self.bits_written = 0

    def append(self, bits: Bits) -> None:
        acc = (self._acc << bits.length) | bits.value
        pending = self._pending + bits.length
        buf = self._buf
        while pending >= 8:
            pending -= 8
            buf.append((acc >> pending) & 0xFF)
        self._acc = acc & ((1 << pending) - 1)
        self._pending = pending
        self.bits_written += bits.length

    def append_value(self, value: int, length: int) -> None:
        self.append(Bits(value, length))

    def finish(self) -> bytes:
        """Zero-pad the last partial byte and return the packed bytes."""
        if self._pending:
            self._buf.append((self._acc << (8 - self._pending)) & 0xFF)
            self._acc = 0
            self._pending = 0
        return bytes(self._buf)


class BitReader:
    def __init__(self, data: bytes, bit_length: int | None = None):
        total = 8 * len(data)
        if bit_length is None:
            bit_length = total
        elif bit_length > total:
            raise TruncatedError(f"declared {bit_length} bits but only {total} available")
        self._data = data
        self._limit = bit_length
        self.position = 0

    @property
    def remaining(self) -> int:
        return self._limit - self.position

    def take(self, count: int) -> int:
        """Next count bits as a big-endian unsigned integer."""
        if count < 0:
            raise ValueError(f"negative bit count {count}")
        if count > self.remaining:
            raise TruncatedError(f"needed {count} bits, {self.remaining} left")
        pos = self.position
        end = pos + count
        value = 0
        data = self._data
        while pos < end:
            byte = data[pos >> 3]
            offset = pos & 7
            chunk = min(8 - offset, end - pos)
            value = (value << chunk) | ((byte >> (8 - offset - chunk)) & ((1 << chunk) - 1))
            pos += chunk
        self.position = end
        return value

    def take_bits(self, count: int) -> Bits:
        return Bits(self.take(count), count)
