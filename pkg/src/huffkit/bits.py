"""Fixed-width bit strings.

A ``Bits`` value is an immutable big-endian bit string: ``value`` holds the
bits as an unsigned integer, ``length`` the number of bits (leading zeros
included).  ``Bits(6, 3)`` is the string ``110``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, slots=True)
class Bits:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError(f"negative bit length {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_string(cls, text: str) -> Bits:
        if text and set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __iter__(self) -> Iterator[int]:
        for shift in range(self.length - 1, -1, -1):
            yield (self.value >> shift) & 1

    def __add__(self, other: Bits) -> Bits:
        return Bits((self.value << other.length) | other.value, self.length + other.length)

    def is_prefix_of(self, other: Bits) -> bool:
        if self.length > other.length:
            return False
        return other.value >> (other.length - self.length) == self.value


EMPTY = Bits(0, 0)
