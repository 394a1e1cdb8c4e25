"""
Maximum matching and minimum (weight) vertex cover on bipartite views.

The unweighted path is Hopcroft-Karp on bitmask rows followed by the
alternating-reachability cover extraction; the weighted path is a minimum
s-t cut computed with networkx.
"""

import logging
import math
from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from domain.bitset import bits
from domain.value_objects import BipartiteView, Matching

logger = logging.getLogger(__name__)

_INF = float('inf')
_SOURCE = 'source'
_SINK = 'sink'


def _hopcroft_karp(view: BipartiteView) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Return (pair_left, pair_right) of a maximum matching of the view."""
    adjacency = view.graph.adjacency
    left = list(bits(view.left))
    rows = {u: list(bits(adjacency[u] & view.right)) for u in left}
    pair_left: Dict[int, Optional[int]] = {u: None for u in left}
    pair_right: Dict[int, Optional[int]] = {v: None for v in bits(view.right)}
    dist: Dict[int, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if pair_left[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = _INF
        while queue:
            u = queue.popleft()
            if dist[u] < found:
                for v in rows[u]:
                    w = pair_right[v]
                    if w is None:
                        found = dist[u] + 1
                    elif dist[w] == _INF:
                        dist[w] = dist[u] + 1
                        queue.append(w)
        return found != _INF

    def dfs(root: int) -> bool:
        # Iterative layered DFS; recursion depth could reach |left|.
        stack = [(root, iter(rows[root]))]
        path: List[Tuple[int, int]] = []
        while stack:
            u, candidates = stack[-1]
            advanced = False
            for v in candidates:
                w = pair_right[v]
                if w is None:
                    path.append((u, v))
                    for pu, pv in path:
                        pair_left[pu] = pv
                        pair_right[pv] = pu
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(rows[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in left:
            if pair_left[u] is None:
                dfs(u)

    matched_left = {u: v for u, v in pair_left.items() if v is not None}
    matched_right = {v: u for u, v in matched_left.items()}
    return matched_left, matched_right


def max_matching(view: BipartiteView) -> Matching:
    """
    Maximum matching of a bipartite view.

    Args:
        view: Validated bipartite view

    Returns:
        Matching with edges stored as (left, right), sorted by left vertex
    """
    matched_left, _ = _hopcroft_karp(view)
    return Matching(tuple(sorted(matched_left.items())))


def _covers_view(view: BipartiteView, cover: int) -> bool:
    adjacency = view.graph.adjacency
    return all(not adjacency[u] & view.right & ~cover for u in bits(view.left & ~cover))


def min_vertex_cover_konig(view: BipartiteView) -> int:
    """
    Minimum vertex cover of a bipartite view by König's theorem.

    Left vertices unreachable and right vertices reachable by alternating
    paths from unmatched left vertices form the cover.

    Returns:
        Cover as a bitmask, of size equal to the maximum matching
    """
    matched_left, matched_right = _hopcroft_karp(view)
    adjacency = view.graph.adjacency

    reached_left = 0
    for u in bits(view.left):
        if u not in matched_left:
            reached_left |= 1 << u
    reached_right = 0
    queue = deque(bits(reached_left))
    while queue:
        u = queue.popleft()
        fresh = adjacency[u] & view.right & ~reached_right
        if u in matched_left:
            fresh &= ~(1 << matched_left[u])
        for v in bits(fresh):
            reached_right |= 1 << v
            w = matched_right.get(v)
            if w is not None and not reached_left >> w & 1:
                reached_left |= 1 << w
                queue.append(w)

    cover = (view.left & ~reached_left) | reached_right
    assert cover.bit_count() == len(matched_left), "König equality violated"
    assert _covers_view(view, cover), "König cover misses an edge"
    return cover


def min_weight_vertex_cover_bipartite(view: BipartiteView, weights: Sequence) -> int:
    """
    Minimum weight vertex cover of a bipartite view via a minimum s-t cut.

    The network is source -> left (capacity w) -> right (unbounded) -> sink
    (capacity w). Rational weights are scaled to integers first.

    Args:
        view: Validated bipartite view
        weights: Positive weight per graph vertex (int or Fraction)

    Returns:
        Cover as a bitmask
    """
    adjacency = view.graph.adjacency
    scale = math.lcm(1, *(Fraction(weights[v]).denominator for v in bits(view.vertices)))

    network = nx.DiGraph()
    network.add_node(_SOURCE)
    network.add_node(_SINK)
    has_edge = False
    for u in bits(view.left):
        row = adjacency[u] & view.right
        if not row:
            continue
        has_edge = True
        network.add_edge(_SOURCE, u, capacity=int(Fraction(weights[u]) * scale))
        for v in bits(row):
            network.add_edge(u, v)
            if not network.has_edge(v, _SINK):
                network.add_edge(v, _SINK, capacity=int(Fraction(weights[v]) * scale))
    if not has_edge:
        return 0

    cut_value, (source_side, _) = nx.minimum_cut(network, _SOURCE, _SINK)
    cover = 0
    for u in bits(view.left):
        if network.has_node(u) and u not in source_side:
            cover |= 1 << u
    for v in bits(view.right):
        if network.has_node(v) and v in source_side:
            cover |= 1 << v

    assert _covers_view(view, cover), "Minimum cut cover misses an edge"
    assert sum(int(Fraction(weights[v]) * scale) for v in bits(cover)) == cut_value
    return cover


def cover_bipartite(view: BipartiteView, weights: Optional[Sequence] = None) -> int:
    """Minimum cover of the view: König when unweighted, minimum cut otherwise."""
    if weights is None:
        return min_vertex_cover_konig(view)
    return min_weight_vertex_cover_bipartite(view, weights)
