"""
Rooted layouts, neighbour-equivalence representatives and the dynamic
program computing a maximum-weight T-independent set along a layout.

For a node x with vertex set V_x, two T-independent sets X, W inside V_x
are interchangeable when X∩T and W∩T have the same neighbours outside V_x,
and so do X∖T and W∖T. Tables therefore keep one best set per pair of
1-neighbour-equivalence representatives.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from domain.bitset import bits, full_mask, mask_of
from domain.entities import Graph, Instance, Layout, SolutionCover
from domain.exceptions import CapExceededError, LayoutMismatchError
from domain.graph_ops import is_t_independent

logger = logging.getLogger(__name__)

DEFAULT_MIM_EXACT_EDGE_CAP = 20
DEFAULT_LAYOUT_SEARCH_CAP = 8


def caterpillar_from_order(order: Sequence[int]) -> Layout:
    """
    Left-spine layout whose i-th leaf carries order[i].

    Leaves get ids 0..n-1 and spine nodes n..2n-2; a single vertex gives a
    one-leaf layout.

    Raises:
        ValueError: If the order is empty or repeats a vertex
    """
    n = len(order)
    if n == 0:
        raise ValueError("A layout needs at least one vertex")
    if len(set(order)) != n:
        raise ValueError("Vertex order repeats a vertex")

    leaf_vertex = {i: v for i, v in enumerate(order)}
    if n == 1:
        return Layout(root=0, children={}, leaf_vertex=leaf_vertex)

    children: Dict[int, Tuple[int, int]] = {n: (0, 1)}
    for i in range(2, n):
        children[n + i - 1] = (n + i - 2, i)
    return Layout(root=2 * n - 2, children=children, leaf_vertex=leaf_vertex)


def random_layout(vertices: Sequence[int], rng: random.Random) -> Layout:
    """Random rooted layout built by merging two random subtrees until one remains."""
    n = len(vertices)
    if n == 0:
        raise ValueError("A layout needs at least one vertex")
    leaf_vertex = {i: v for i, v in enumerate(vertices)}
    pool = list(range(n))
    children: Dict[int, Tuple[int, int]] = {}
    next_id = n
    while len(pool) > 1:
        left, right = rng.sample(pool, 2)
        pool.remove(left)
        pool.remove(right)
        children[next_id] = (left, right)
        pool.append(next_id)
        next_id += 1
    return Layout(root=pool[0], children=children, leaf_vertex=leaf_vertex)


class MimEstimate(NamedTuple):
    value: int
    exact: bool


def _crossing_edges(graph: Graph, cut: int) -> List[Tuple[int, int]]:
    outside = graph.all_mask & ~cut
    return [(a, b) for a in bits(cut) for b in bits(graph.adjacency[a] & outside)]


def cut_mim(graph: Graph, cut: int, edge_cap: int = DEFAULT_MIM_EXACT_EDGE_CAP) -> MimEstimate:
    """
    Maximum induced matching of the bipartite graph of edges crossing (A, V∖A).

    Exact (maximum clique of the edge-compatibility graph) when there are at
    most ``edge_cap`` crossing edges, a greedy lower bound otherwise.
    """
    edges = _crossing_edges(graph, cut)
    if not edges:
        return MimEstimate(0, True)
    adjacency = graph.adjacency

    def compatible(first: Tuple[int, int], second: Tuple[int, int]) -> bool:
        (a1, b1), (a2, b2) = first, second
        return (a1 != a2 and b1 != b2
                and not adjacency[a1] >> b2 & 1 and not adjacency[a2] >> b1 & 1)

    if len(edges) > edge_cap:
        chosen: List[Tuple[int, int]] = []
        for edge in edges:
            if all(compatible(edge, other) for other in chosen):
                chosen.append(edge)
        logger.warning(f"Cut has {len(edges)} crossing edges; reporting a lower bound of {len(chosen)}")
        return MimEstimate(len(chosen), False)

    compatibility = nx.Graph()
    compatibility.add_nodes_from(range(len(edges)))
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if compatible(edges[i], edges[j]):
                compatibility.add_edge(i, j)
    clique, _ = nx.max_weight_clique(compatibility, weight=None)
    return MimEstimate(len(clique), True)


def layout_mim_width(graph: Graph, layout: Layout,
                     edge_cap: int = DEFAULT_MIM_EXACT_EDGE_CAP) -> MimEstimate:
    """Largest cut mim over the nodes of a layout."""
    width, exact = 0, True
    for cut in layout.vertex_sets().values():
        estimate = cut_mim(graph, cut, edge_cap)
        width = max(width, estimate.value)
        exact = exact and estimate.exact
    return MimEstimate(width, exact)


def search_layout(graph: Graph, cap: int = DEFAULT_LAYOUT_SEARCH_CAP,
                  edge_cap: int = DEFAULT_MIM_EXACT_EDGE_CAP) -> Tuple[Layout, int]:
    """
    Layout of minimum mim-width by dynamic programming over vertex subsets.

    Returns:
        (layout, width)

    Raises:
        CapExceededError: If the graph has more than ``cap`` vertices
        ValueError: If the graph has no vertices
    """
    n = graph.vertex_count
    if n > cap:
        raise CapExceededError(f"Layout search is capped at {cap} vertices, got {n}")
    if n == 0:
        raise ValueError("A layout needs at least one vertex")

    full = full_mask(n)
    mim = {subset: cut_mim(graph, subset, edge_cap).value for subset in range(1, full + 1)}
    best: Dict[int, Tuple[int, Optional[int]]] = {}
    for subset in sorted(range(1, full + 1), key=lambda s: s.bit_count()):
        if subset.bit_count() == 1:
            best[subset] = (mim[subset], None)
            continue
        anchor = subset & -subset
        rest = subset ^ anchor
        choice = None
        # Every split puts the lowest vertex on the left, so each is tried once.
        part = rest
        while True:
            left = anchor | part
            if left != subset:
                right = subset ^ left
                width = max(best[left][0], best[right][0])
                if choice is None or width < choice[0]:
                    choice = (width, left)
            if part == 0:
                break
            part = (part - 1) & rest
        best[subset] = (max(mim[subset], choice[0]), choice[1])

    children: Dict[int, Tuple[int, int]] = {}
    leaf_vertex: Dict[int, int] = {}
    counter = [0]

    def build(subset: int) -> int:
        node = counter[0]
        counter[0] += 1
        left = best[subset][1]
        if left is None:
            leaf_vertex[node] = subset.bit_length() - 1
        else:
            children[node] = (build(left), build(subset ^ left))
        return node

    root = build(full)
    return Layout(root=root, children=children, leaf_vertex=leaf_vertex), best[full][0]


def nec_bound(cut_size: int, mim: int, d: int = 1) -> int:
    """Upper bound on the number of d-neighbour classes: subsets of size at most d·mim."""
    return sum(math.comb(cut_size, i) for i in range(min(d * mim, cut_size) + 1))


def literal_nec_bound(cut_size: int, mim: int, d: int = 1) -> int:
    return cut_size ** (d * mim)


@dataclass
class RepIndex:
    """
    Representatives of the d-neighbour-equivalence classes of subsets of a cut A.

    ``representatives`` maps each class signature to its representative (a
    subset of A as a mask); ``order`` lists representatives in discovery order.
    """
    graph: Graph
    cut_set: int
    d: int
    representatives: Dict[Hashable, int] = field(default_factory=dict)
    order: List[int] = field(default_factory=list)

    @property
    def outside(self) -> int:
        return self.graph.all_mask & ~self.cut_set

    @property
    def class_count(self) -> int:
        return len(self.order)

    def signature(self, subset: int) -> Hashable:
        adjacency = self.graph.adjacency
        if self.d == 1:
            reach = 0
            for v in bits(subset):
                reach |= adjacency[v]
            return reach & self.outside
        return tuple(min(self.d, (adjacency[v] & subset).bit_count()) for v in bits(self.outside))


def compute_representatives(graph: Graph, cut: int, d: int = 1) -> RepIndex:
    """
    Representatives of minimum size for every class.

    For d = 1 this is a breadth-first closure from the empty set under
    single-vertex additions, since the class of X ∪ {v} depends only on the
    class of X. Counting classes (d > 1) lack that property and are found by
    enumerating subsets of the cut in order of size.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    index = RepIndex(graph=graph, cut_set=cut, d=d)
    index.representatives[index.signature(0)] = 0
    index.order.append(0)

    if d > 1:
        members = list(bits(cut))
        for size in range(1, len(members) + 1):
            for chosen in itertools.combinations(members, size):
                subset = mask_of(chosen)
                key = index.signature(subset)
                if key not in index.representatives:
                    index.representatives[key] = subset
                    index.order.append(subset)
        return index

    head = 0
    while head < len(index.order):
        current = index.order[head]
        head += 1
        for v in bits(cut & ~current):
            grown = current | (1 << v)
            key = index.signature(grown)
            if key not in index.representatives:
                index.representatives[key] = grown
                index.order.append(grown)
    return index


def rep_of(index: RepIndex, subset: int) -> int:
    """
    Canonical representative of a subset's class.

    Raises:
        ValueError: If the subset is not within the cut
    """
    if subset & ~index.cut_set:
        raise ValueError("Subset is not contained in the cut set")
    return index.representatives[index.signature(subset)]


@dataclass
class DPTable:
    """Best T-independent set per (rep of X∩T, rep of X∖T) pair."""
    node: Optional[int]
    entries: Dict[Tuple[int, int], Tuple[int, int]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def best(self) -> Tuple[int, int]:
        """(weight, set) of maximum weight; ties go to the first key in insertion order."""
        return max(self.entries.values(), key=lambda entry: entry[0])


def reduce_table(graph: Graph, t_mask: int, cut: int, candidates: Iterable[Tuple[int, int]],
                 index: Optional[RepIndex] = None, node: Optional[int] = None) -> DPTable:
    """
    Keep one maximum-weight T-independent candidate per class pair.

    Args:
        candidates: (weight, vertex mask) pairs with masks inside ``cut``
        index: Representatives for ``cut``; computed when omitted
    """
    if index is None:
        index = compute_representatives(graph, cut, 1)
    table = DPTable(node=node)
    for weight, subset in candidates:
        if not is_t_independent(graph, t_mask, subset):
            continue
        key = (rep_of(index, subset & t_mask), rep_of(index, subset & ~t_mask))
        held = table.entries.get(key)
        if held is None or weight > held[0]:
            table.entries[key] = (weight, subset)
    return table


def _terminal_reach(graph: Graph, t_mask: int, subset: int) -> int:
    reach = 0
    for v in bits(subset & t_mask):
        reach |= graph.adjacency[v]
    return reach


def _combine(graph: Graph, t_mask: int, left: DPTable, right: DPTable) -> List[Tuple[int, int]]:
    """Pairwise unions of the children's sets that stay T-independent."""
    right_entries = [(weight, subset, _terminal_reach(graph, t_mask, subset))
                     for weight, subset in right.entries.values()]
    merged = []
    for weight_a, subset_a in left.entries.values():
        reach_a = _terminal_reach(graph, t_mask, subset_a)
        for weight_b, subset_b, reach_b in right_entries:
            fits = not reach_a & subset_b and not reach_b & subset_a
            assert fits == is_t_independent(graph, t_mask, subset_a | subset_b), \
                "Union compatibility disagrees with the direct check"
            if fits:
                merged.append((weight_a + weight_b, subset_a | subset_b))
    return merged


def solve_mim(instance: Instance, layout: Layout) -> SolutionCover:
    """
    Minimum (weight) T-vertex cover by dynamic programming along a rooted layout.

    Raises:
        LayoutMismatchError: If the layout's leaves are not exactly the graph's vertices
    """
    graph = instance.graph
    if graph.vertex_count == 0:
        return SolutionCover.build(instance, 0, "mim", {'table_sizes': {}})
    if not layout.covers(graph.vertex_count):
        raise LayoutMismatchError(
            f"Layout has {layout.leaf_count} leaves but the graph has {graph.vertex_count} vertices")

    t_mask = instance.t_mask
    weights, _ = instance.integer_weights()
    vertex_sets = layout.vertex_sets()
    tables: Dict[int, DPTable] = {}
    sizes: Dict[int, int] = {}

    for node in layout.postorder():
        cut = vertex_sets[node]
        index = compute_representatives(graph, cut, 1)
        if node in layout.children:
            left, right = layout.children[node]
            candidates = _combine(graph, t_mask, tables.pop(left), tables.pop(right))
        else:
            v = layout.leaf_vertex[node]
            candidates = [(0, 0), (weights[v], 1 << v)]
        table = reduce_table(graph, t_mask, cut, candidates, index, node)
        assert len(table) <= index.class_count ** 2 + 1, "Table exceeds the class-pair bound"
        tables[node] = table
        sizes[node] = len(table)

    _, independent = tables[layout.root].best()
    cover = graph.all_mask & ~independent
    statistics = {'table_sizes': sizes, 'max_table': max(sizes.values())}
    return SolutionCover.build(instance, cover, "mim", statistics)
