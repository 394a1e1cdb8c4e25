"""
Brute-force references and instance builders shared by the test modules.
"""

import random
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from hypothesis import strategies as st

from domain.bitset import bits
from domain.entities import Graph, Instance, Measure
from domain.graph_ops import add_edges, induced_subgraph, is_independent, is_t_vertex_cover
from domain.value_objects import BipartiteView
from infrastructure.recognition import contains_induced, parse_h_spec

STAR_TEXT = """\
# K1,4 with the leaves as terminals
p svc 5 4
e 1 2
e 1 3
e 1 4
e 1 5
t 2
t 3
t 4
t 5
"""


def graph_of(vertex_count: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    return Graph.from_edges(vertex_count, list(edges))


def instance_of(vertex_count: int, edges: Iterable[Tuple[int, int]], terminals: Iterable[int],
                weights: Optional[Iterable] = None) -> Instance:
    return Instance(graph=graph_of(vertex_count, edges), t_set=frozenset(terminals),
                    weights=None if weights is None else tuple(Fraction(w) for w in weights))


def brute_force_optimum(instance: Instance) -> Measure:
    """Minimum measure over all 2^n vertex subsets."""
    return min(instance.weight_of(mask) for mask in range(1 << instance.vertex_count)
               if is_t_vertex_cover(instance, mask))


def brute_force_vertex_cover_number(graph: Graph) -> int:
    instance = Instance(graph=graph, t_set=frozenset(range(graph.vertex_count)))
    return brute_force_optimum(instance)


def brute_force_maximal_independent_sets(graph: Graph, within: Optional[int] = None) -> Set[int]:
    within = graph.all_mask if within is None else within
    found = set()
    subset = within
    while True:
        if is_independent(graph, subset):
            free = [v for v in bits(within & ~subset) if not graph.adjacency[v] & subset]
            if not free:
                found.add(subset)
        if subset == 0:
            break
        subset = (subset - 1) & within
    return found


def brute_force_view_cover(view: BipartiteView, weights=None) -> Measure:
    """Cheapest vertex set of the view touching every left-right edge."""
    members = list(bits(view.vertices))
    adjacency = view.graph.adjacency
    edges = [(u, v) for u in bits(view.left) for v in bits(adjacency[u] & view.right)]
    best = None
    for pick in range(1 << len(members)):
        chosen = 0
        for i, v in enumerate(members):
            if pick >> i & 1:
                chosen |= 1 << v
        if all(chosen >> u & 1 or chosen >> v & 1 for u, v in edges):
            cost = sum((Fraction(weights[v]) if weights else 1) for v in bits(chosen))
            if best is None or cost < best:
                best = cost
    return best


def random_graph(rng: random.Random, vertex_count: int, edge_probability: float) -> Graph:
    return graph_of(vertex_count, [(u, v) for u in range(vertex_count) for v in range(u + 1, vertex_count)
                                   if rng.random() < edge_probability])


def random_test_instance(rng: random.Random, vertex_count: int, edge_probability: float,
                         t_probability: float = 0.5, weighted: bool = False) -> Instance:
    graph = random_graph(rng, vertex_count, edge_probability)
    terminals = frozenset(v for v in range(vertex_count) if rng.random() < t_probability)
    weights = None
    if weighted:
        weights = tuple(Fraction(rng.randint(1, 6), rng.choice([1, 2, 3])) for _ in range(vertex_count))
    return Instance(graph=graph, t_set=terminals, weights=weights)


def free_instance(seed: int, spec: str, vertex_count: int = 7, edge_probability: float = 0.6,
                  weighted: bool = False, attempts: int = 300) -> Instance:
    """
    First random instance (by seed) whose graph has no induced copy of the pattern.

    Falls back to the complete graph, which contains no pattern with a non-edge.
    """
    rng = random.Random(seed)
    pattern = parse_h_spec(spec)
    for _ in range(attempts):
        instance = random_test_instance(rng, vertex_count, edge_probability, weighted=weighted)
        if contains_induced(instance.graph, pattern) is None:
            return instance
    complete = graph_of(vertex_count, [(u, v) for u in range(vertex_count) for v in range(u + 1, vertex_count)])
    return Instance(graph=complete, t_set=frozenset(range(0, vertex_count, 2)))


def repair_free(graph: Graph, spec: str, rng: random.Random, within: Optional[int] = None) -> Graph:
    """
    Add edges between non-adjacent witness vertices until the graph (or its
    subgraph induced by ``within``) has no induced copy of the pattern.

    Terminates because a clique contains no pattern with a non-edge.
    """
    pattern = parse_h_spec(spec)
    h = pattern.pattern_graph
    non_edges = [(a, b) for a in range(h.vertex_count) for b in range(a + 1, h.vertex_count)
                 if not h.has_edge(a, b)]
    if not non_edges:
        raise ValueError(f"Pattern {spec} has no non-edge to fill")
    while True:
        if within is None:
            host, original = graph, list(range(graph.vertex_count))
        else:
            host, original = induced_subgraph(graph, within)
        witness = contains_induced(host, pattern)
        if witness is None:
            return graph
        a, b = rng.choice(non_edges)
        graph = add_edges(graph, [(original[witness[a]], original[witness[b]])])


def sp2_free_instance(seed: int, s: int, vertex_count: int, weighted: bool = False) -> Instance:
    """Random instance whose G[T] is sP2-free; s = 1 leaves T independent."""
    rng = random.Random(seed)
    instance = random_test_instance(rng, vertex_count, rng.uniform(0.2, 0.6), rng.uniform(0.3, 0.8), weighted)
    t_mask = instance.t_mask
    if s == 1:
        kept = [(u, v) for u, v in instance.graph.edge_list if not (t_mask >> u & 1 and t_mask >> v & 1)]
        return instance.with_graph(graph_of(vertex_count, kept))
    return instance.with_graph(repair_free(instance.graph, f"{s}P2", rng, within=t_mask))


def linear_forest_free_instance(seed: int, s: int, vertex_count: int, weighted: bool = False) -> Instance:
    """Random instance whose graph is (sP1+P2+P3)-free."""
    rng = random.Random(seed)
    instance = random_test_instance(rng, vertex_count, rng.uniform(0.45, 0.85), rng.uniform(0.3, 0.8), weighted)
    spec = f"{s}P1+P2+P3" if s else "P2+P3"
    return instance.with_graph(repair_free(instance.graph, spec, rng))


def interval_graph(intervals: Sequence[Tuple[int, int]]) -> Graph:
    """Intersection graph of closed integer intervals (start, end)."""
    n = len(intervals)
    return graph_of(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                        if intervals[u][0] <= intervals[v][1] and intervals[v][0] <= intervals[u][1]])


def assert_witness(graph: Graph, pattern: Graph, witness: dict) -> None:
    """The witness is injective and maps edges and non-edges of the pattern faithfully."""
    assert sorted(witness) == list(range(pattern.vertex_count))
    assert len(set(witness.values())) == len(witness)
    for a in range(pattern.vertex_count):
        for b in range(a + 1, pattern.vertex_count):
            assert pattern.has_edge(a, b) == graph.has_edge(witness[a], witness[b])


@st.composite
def instances(draw, max_vertices: int = 8, weighted: bool = False, min_vertices: int = 0) -> Instance:
    """Hypothesis strategy for small instances, optionally with rational weights."""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs: List[Tuple[int, int]] = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    terminals = draw(st.frozensets(st.integers(min_value=0, max_value=n - 1))) if n else frozenset()
    weights = None
    if weighted:
        weights = tuple(Fraction(draw(st.integers(min_value=1, max_value=6)),
                                 draw(st.sampled_from([1, 2, 3]))) for _ in range(n))
    return Instance(graph=graph_of(n, edges), t_set=terminals, weights=weights)


@st.composite
def graphs(draw, max_vertices: int = 8, min_vertices: int = 0) -> Graph:
    return draw(instances(max_vertices=max_vertices, min_vertices=min_vertices)).graph
