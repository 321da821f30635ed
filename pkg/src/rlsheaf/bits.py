"""Subsets of a finite carrier encoded as Python ints used as bit masks."""

from __future__ import annotations

from typing import Iterable, Iterator

Subset = int


def mask_of(elements: Iterable[int]) -> Subset:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def members(mask: Subset) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def iter_members(mask: Subset) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: Subset) -> int:
    return mask.bit_count()


def full(n: int) -> Subset:
    return (1 << n) - 1


def canonical_key(mask: Subset) -> tuple[int, int]:
    """Sort key used for every returned list of subsets: size first, then value."""
    return (mask.bit_count(), mask)


def is_subset(a: Subset, b: Subset) -> bool:
    return a & ~b == 0
