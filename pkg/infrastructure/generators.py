"""
Instance generators: hardness-reduction gadgets with optimum certificates,
and seeded random instances.

Certificates rest on two facts. Replacing every edge by a path of length 3
raises the vertex cover number by exactly m. Adding edges inside an
independent set I does not change the minimum (V∖I)-vertex cover, which
stays equal to the vertex cover number of the original graph.
"""

import logging
import random
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from domain.bitset import bits, mask_of
from domain.entities import Graph, Instance, ReductionTrace
from domain.exceptions import PreconditionViolation
from domain.graph_ops import add_edges, is_independent
from domain.value_objects import RandomInstanceParams, UnipolarPartition
from infrastructure.recognition import contains_induced, is_subcubic, parse_h_spec, verify_2_unipolar

logger = logging.getLogger(__name__)


def two_subdivision(graph: Graph) -> Tuple[Graph, ReductionTrace]:
    """
    Replace each edge uv by a path u - w_uv - w_vu - v.

    The j-th edge (u, v) of the sorted edge list, u < v, gets w_uv = n + 2j
    next to u and w_vu = n + 2j + 1 next to v. Original vertices keep their
    indices.
    """
    n = graph.vertex_count
    edges: List[Tuple[int, int]] = []
    for j, (u, v) in enumerate(graph.edge_list):
        near_u, near_v = n + 2 * j, n + 2 * j + 1
        edges.extend([(u, near_u), (near_u, near_v), (near_v, v)])
    m = graph.edge_count
    subdivided = Graph.from_edges(n + 2 * m, edges)
    trace = ReductionTrace(kind="two-subdivision", source_graph=graph, offset=m,
                           vertex_map={v: v for v in range(n)},
                           t_set=frozenset(range(subdivided.vertex_count)))
    return subdivided, trace


def augment(graph: Graph, independent: Iterable[int], extra_edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Add edges inside an independent set I.

    Raises:
        PreconditionViolation: If I is not independent
        ValueError: If an added edge leaves I, repeats or is a loop
    """
    independent_mask = mask_of(independent)
    if not is_independent(graph, independent_mask):
        raise PreconditionViolation("Augmentation set is not independent")
    extra_edges = list(extra_edges)
    for u, v in extra_edges:
        if not (independent_mask >> u & 1 and independent_mask >> v & 1):
            raise ValueError(f"Edge {u}-{v} does not lie inside the independent set")
    if len({(min(u, v), max(u, v)) for u, v in extra_edges}) != len(extra_edges):
        raise ValueError("Duplicate edge in augmentation")
    return add_edges(graph, extra_edges)


_CLAW = parse_h_spec("claw")
_DIAMOND = parse_h_spec("diamond")


def gen_claw_diamond(source: Graph) -> Tuple[Instance, ReductionTrace]:
    """
    Claw-free, diamond-free subcubic instance with optimum vc(source) + 4m.

    The source is subdivided twice; W are the neighbours of the original
    vertices, and each degree-3 original vertex gets an edge between its two
    lowest-indexed neighbours. T = V∖W.

    Raises:
        PreconditionViolation: If the source has a vertex of degree above 3
    """
    if not is_subcubic(source):
        raise PreconditionViolation(f"Source has maximum degree {source.max_degree()}, expected at most 3")

    once, _ = two_subdivision(source)
    twice, _ = two_subdivision(once)
    originals = range(source.vertex_count)
    near = 0
    extra = []
    for u in originals:
        near |= twice.adjacency[u]
        if source.degree(u) == 3:
            first, second = list(bits(twice.adjacency[u]))[:2]
            extra.append((first, second))
    graph = augment(twice, bits(near), extra)

    assert contains_induced(graph, _CLAW) is None, "Generated graph contains a claw"
    assert contains_induced(graph, _DIAMOND) is None, "Generated graph contains a diamond"
    assert is_subcubic(graph), "Generated graph is not subcubic"

    t_set = frozenset(bits(graph.all_mask & ~near))
    trace = ReductionTrace(kind="claw-diamond", source_graph=source, offset=4 * source.edge_count,
                           vertex_map={v: v for v in originals}, t_set=t_set,
                           claims=("claw-free", "diamond-free", "subcubic"))
    logger.debug(f"Claw/diamond gadget: {graph}, offset {trace.offset}")
    return Instance(graph=graph, t_set=t_set), trace


def gen_two_unipolar(source: Graph) -> Tuple[Instance, ReductionTrace]:
    """
    2-unipolar instance with optimum vc(source) + m.

    The source is 2-subdivided and its original vertices made into a clique;
    the subdivision vertices form T, so G[T] is a perfect matching.
    """
    subdivided, _ = two_subdivision(source)
    n = source.vertex_count
    clique_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    graph = augment(subdivided, range(n), clique_edges)

    t_set = frozenset(range(n, graph.vertex_count))
    partition = UnipolarPartition(clique_part=frozenset(range(n)), cluster_part=t_set)
    t_mask = mask_of(t_set)
    assert verify_2_unipolar(graph, partition), "Generated partition is not 2-unipolar"
    assert all((graph.adjacency[t] & t_mask).bit_count() == 1 for t in t_set), \
        "G[T] is not a perfect matching"

    trace = ReductionTrace(kind="two-unipolar", source_graph=source, offset=source.edge_count,
                           vertex_map={v: v for v in range(n)}, t_set=t_set, certificate=partition,
                           claims=("2-unipolar",))
    return Instance(graph=graph, t_set=t_set), trace


def random_instance(params: RandomInstanceParams) -> Instance:
    """
    Seeded random instance: each pair is an edge with the given probability,
    round(t_fraction * n) terminals are sampled, and weights (if requested)
    are integers from the range divided by the denominator.
    """
    rng = random.Random(params.seed)
    n = params.vertex_count
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < params.edge_probability]
    terminals = frozenset(rng.sample(range(n), round(params.t_fraction * n)))
    weights = None
    if params.weight_range is not None:
        low, high = params.weight_range
        weights = tuple(Fraction(rng.randint(low, high), params.weight_denominator) for _ in range(n))
    return Instance(graph=Graph.from_edges(n, edges), t_set=terminals, weights=weights)


def random_source(vertex_count: int, edge_probability: float, seed: int,
                  max_degree: Optional[int] = None) -> Graph:
    """
    Seeded random source graph for the gadgets.

    With ``max_degree`` set, a sampled edge is skipped when an endpoint is
    already saturated, so the result respects the degree bound.
    """
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError(f"Edge probability must be in [0, 1], got {edge_probability}")
    rng = random.Random(seed)
    degrees = [0] * vertex_count
    edges = []
    for u in range(vertex_count):
        for v in range(u + 1, vertex_count):
            if rng.random() >= edge_probability:
                continue
            if max_degree is not None and max(degrees[u], degrees[v]) >= max_degree:
                continue
            edges.append((u, v))
            degrees[u] += 1
            degrees[v] += 1
    return Graph.from_edges(vertex_count, edges)
