"""
Enumeration of maximal independent sets with polynomial delay.

Vertices are added one at a time in index order. A maximal independent set
of the graph induced by the first i+1 vertices has a unique parent among
the maximal independent sets of the first i vertices, so a depth-first walk
over that parent tree emits every set exactly once.
"""

import logging
from typing import FrozenSet, Iterator, List, NamedTuple, Optional, Union

from domain.bitset import bits, to_set
from domain.entities import Graph

logger = logging.getLogger(__name__)


class EnumerationStream:
    """
    Single-consumer iterator over the maximal independent sets of G[within].

    ``emitted`` counts the sets produced so far and ``row_reads`` the adjacency
    rows inspected, so callers can watch the delay between outputs.
    """

    def __init__(self, graph: Graph, within: Optional[int] = None, masks: bool = False,
                 complement: bool = False):
        self.graph = graph
        self.within = graph.all_mask if within is None else within
        self.masks = masks
        self.complement = complement
        self.emitted = 0
        self.row_reads = 0
        self._walk = self._enumerate()

    def __iter__(self) -> 'EnumerationStream':
        return self

    def __next__(self) -> Union[int, FrozenSet[int]]:
        found = next(self._walk)
        self.emitted += 1
        if self.complement:
            found = self.within & ~found
        return found if self.masks else to_set(found)

    def _row(self, v: int) -> int:
        self.row_reads += 1
        return self.graph.adjacency[v] & self.within

    def _greedy_extension(self, seed: int, order: List[int], limit: int) -> int:
        """Lexicographically first maximal extension of ``seed`` among order[:limit]."""
        current = seed
        for v in order[:limit]:
            if not current >> v & 1 and not self._row(v) & current:
                current |= 1 << v
        return current

    def _is_maximal(self, candidate: int, order: List[int], limit: int) -> bool:
        for v in order[:limit]:
            if not candidate >> v & 1 and not self._row(v) & candidate:
                return False
        return True

    def _enumerate(self) -> Iterator[int]:
        order = list(bits(self.within))
        n = len(order)
        stack = [(0, 0)]
        while stack:
            level, current = stack.pop()
            if level == n:
                assert self._is_maximal(current, order, n), "Emitted set is not maximal"
                yield current
                continue

            v = order[level]
            row = self._row(v)
            if not row & current:
                stack.append((level + 1, current | (1 << v)))
                continue

            kept = current & ~row
            swapped = kept | (1 << v)
            if (self._is_maximal(swapped, order, level + 1)
                    and self._greedy_extension(kept, order, level) == current):
                stack.append((level + 1, swapped))
            stack.append((level + 1, current))


def enum_maximal_independent_sets(graph: Graph, within: Optional[int] = None,
                                  masks: bool = False) -> EnumerationStream:
    """
    Stream every maximal independent set of G (or of G[within]) exactly once.

    Args:
        graph: The graph
        within: Optional vertex mask; sets are maximal within G[within]
        masks: Yield bitmasks instead of frozensets

    Returns:
        EnumerationStream; for zero vertices it yields the empty set once
    """
    return EnumerationStream(graph, within=within, masks=masks)


def enum_minimal_vertex_covers(graph: Graph, within: Optional[int] = None,
                               masks: bool = False) -> EnumerationStream:
    """Stream the minimal vertex covers of G[within]: complements of maximal independent sets."""
    return EnumerationStream(graph, within=within, masks=masks, complement=True)


class BoundCheck(NamedTuple):
    count: int
    bound: int
    within: bool


def count_check_sp2_bound(graph: Graph, s: int) -> BoundCheck:
    """
    Count maximal independent sets and compare with n^(2s) + 1.

    The caller is responsible for G being sP2-free; the comparison is reported,
    never enforced.
    """
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    stream = enum_maximal_independent_sets(graph, masks=True)
    count = sum(1 for _ in stream)
    bound = graph.vertex_count ** (2 * s) + 1
    logger.debug(f"{count} maximal independent sets, bound {bound}, {stream.row_reads} adjacency row reads")
    if count > bound:
        logger.warning(f"{count} maximal independent sets exceed the bound {bound} for s={s}")
    return BoundCheck(count=count, bound=bound, within=count <= bound)
