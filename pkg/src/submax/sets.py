"""Bitmask helpers for subsets of the ground set {1..n}.

Element id i (1-based) maps to bit i-1. Masks are plain Python ints, so
they are hashable, cheap to copy and usable as cache keys.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bit(i: int) -> int:
    return 1 << (i - 1)


def mask_from_ids(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << (int(i) - 1)
    return m


def ids_from_mask(mask: int) -> list[int]:
    """Element ids of a mask in increasing order."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length())
        mask ^= b
    return out


def iter_ids(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length()
        mask ^= b


def size(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1
