"""
Bitset helpers for vertex sets.

Vertex sets are plain Python integers: bit ``v`` is set iff vertex ``v`` is
in the set. Every adjacency row of a Graph is such a mask.
"""

from typing import FrozenSet, Iterable, Iterator, List


def bit(v: int) -> int:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> int:
    """Build a mask from an iterable of vertex indices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits(mask: int) -> Iterator[int]:
    """Yield the vertex indices of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> List[int]:
    return list(bits(mask))


def to_set(mask: int) -> FrozenSet[int]:
    return frozenset(bits(mask))


def lowest(mask: int) -> int:
    """Index of the lowest set bit; -1 for the empty mask."""
    return (mask & -mask).bit_length() - 1


def full_mask(n: int) -> int:
    return (1 << n) - 1
