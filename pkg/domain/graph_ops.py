"""
Fundamental T-vertex-cover predicates and graph constructions.

Everything here is pure and works on the bitmask adjacency of Graph.
"""

from typing import Iterable, List, Sequence, Tuple, Union

from .bitset import bits, mask_of
from .entities import Graph, Instance

VertexSet = Union[int, Iterable[int]]


def _as_mask(vertices: VertexSet, vertex_count: int) -> int:
    mask = vertices if isinstance(vertices, int) else mask_of(vertices)
    if mask < 0 or mask >> vertex_count:
        raise ValueError(f"Vertex set has indices outside 0..{vertex_count - 1}")
    return mask


def is_t_vertex_cover(instance: Instance, vertices: VertexSet) -> bool:
    """
    Check that every edge with an endpoint in T has an endpoint in the set.

    Args:
        instance: The instance whose terminals define the relevant edges
        vertices: Candidate cover as bitmask or iterable

    Raises:
        ValueError: If a vertex index is out of range
    """
    graph = instance.graph
    cover = _as_mask(vertices, graph.vertex_count)
    uncovered = graph.all_mask & ~cover
    for t in bits(instance.t_mask & uncovered):
        if graph.adjacency[t] & uncovered:
            return False
    return True


def is_vertex_cover(graph: Graph, vertices: VertexSet) -> bool:
    cover = _as_mask(vertices, graph.vertex_count)
    uncovered = graph.all_mask & ~cover
    return all(not graph.adjacency[v] & uncovered for v in bits(uncovered))


def is_independent(graph: Graph, vertices: VertexSet) -> bool:
    mask = _as_mask(vertices, graph.vertex_count)
    return all(not graph.adjacency[v] & mask for v in bits(mask))


def is_t_independent(graph: Graph, t_set: VertexSet, vertices: VertexSet) -> bool:
    """True iff G[X] has no edge touching a terminal in X."""
    mask = _as_mask(vertices, graph.vertex_count)
    t_mask = _as_mask(t_set, graph.vertex_count)
    return all(not graph.adjacency[v] & mask for v in bits(mask & t_mask))


def restrict_to_t_incident(instance: Instance) -> Instance:
    """
    Delete every edge whose endpoints both lie outside T.

    Vertex set, terminals, weights and the optimum are unchanged.
    """
    graph = instance.graph
    t_mask = instance.t_mask
    rows = tuple(row if t_mask >> v & 1 else row & t_mask
                 for v, row in enumerate(graph.adjacency))
    if rows == graph.adjacency:
        return instance
    return instance.with_graph(Graph(graph.vertex_count, rows, graph.labels))


def induced_subgraph(graph: Graph, vertices: VertexSet) -> Tuple[Graph, List[int]]:
    """
    Induced subgraph on a vertex set, renumbered densely.

    Returns:
        (subgraph, original) where ``original[i]`` is the source index of new vertex i
    """
    mask = _as_mask(vertices, graph.vertex_count)
    original = list(bits(mask))
    position = {v: i for i, v in enumerate(original)}
    rows = []
    for v in original:
        row = 0
        for u in bits(graph.adjacency[v] & mask):
            row |= 1 << position[u]
        rows.append(row)
    labels = tuple(graph.labels[v] for v in original) if graph.labels is not None else None
    return Graph(len(original), tuple(rows), labels), original


def induced_instance(instance: Instance, vertices: VertexSet) -> Tuple[Instance, List[int]]:
    """Restrict an instance (graph, terminals, weights) to a vertex subset."""
    graph, original = induced_subgraph(instance.graph, vertices)
    t_mask = instance.t_mask
    terminals = frozenset(i for i, v in enumerate(original) if t_mask >> v & 1)
    weights = None
    if instance.weights is not None:
        weights = tuple(instance.weights[v] for v in original)
    return Instance(graph=graph, t_set=terminals, weights=weights), original


def lift_mask(mask: int, original: Sequence[int]) -> int:
    """Map a mask over a renumbered subgraph back to source indices."""
    lifted = 0
    for i in bits(mask):
        lifted |= 1 << original[i]
    return lifted


def complement(graph: Graph) -> Graph:
    full = graph.all_mask
    rows = tuple(full & ~row & ~(1 << v) for v, row in enumerate(graph.adjacency))
    return Graph(graph.vertex_count, rows, graph.labels)


def disjoint_union(first: Graph, second: Graph) -> Graph:
    """Union with the second operand's vertices renumbered after the first's."""
    shift = first.vertex_count
    rows = first.adjacency + tuple(row << shift for row in second.adjacency)
    return Graph(first.vertex_count + second.vertex_count, rows)


def add_edges(graph: Graph, edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Return the graph plus the given edges.

    Raises:
        ValueError: On loops, out-of-range endpoints or edges already present
    """
    rows = list(graph.adjacency)
    n = graph.vertex_count
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"Invalid edge {u}-{v}")
        if rows[u] >> v & 1:
            raise ValueError(f"Edge {u}-{v} already present")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), graph.labels)


def connected_components(graph: Graph, within: int) -> List[int]:
    """Connected components of G[within] as masks, ordered by lowest vertex."""
    components = []
    remaining = within
    while remaining:
        frontier = remaining & -remaining
        component = 0
        while frontier:
            component |= frontier
            reach = 0
            for v in bits(frontier):
                reach |= graph.adjacency[v]
            frontier = reach & within & ~component
        components.append(component)
        remaining &= ~component
    return components


def is_clique(graph: Graph, vertices: int) -> bool:
    return all((graph.adjacency[v] | (1 << v)) & vertices == vertices for v in bits(vertices))


_BUILDERS = ('path', 'cycle', 'complete', 'star', 'disjoint-union', 'complement')


def build_named(kind: str, size: int = 0, operands: Sequence[Graph] = ()) -> Graph:
    """
    Build one of the named graphs.

    Args:
        kind: path, cycle, complete, star, disjoint-union or complement
        size: P_size, C_size, K_size, or K_{1,size} for a star
        operands: Graphs for disjoint-union (two or more) and complement (one)

    Raises:
        ValueError: On unknown kinds or invalid sizes
    """
    if kind == 'path':
        if size < 0:
            raise ValueError("Path size must be nonnegative")
        return Graph.from_edges(size, [(i, i + 1) for i in range(size - 1)])

    if kind == 'cycle':
        if size < 3:
            raise ValueError(f"Cycle needs at least 3 vertices, got {size}")
        return Graph.from_edges(size, [(i, (i + 1) % size) for i in range(size)])

    if kind == 'complete':
        if size <= 0:
            raise ValueError(f"Complete graph needs at least 1 vertex, got {size}")
        return Graph.from_edges(size, [(u, v) for u in range(size) for v in range(u + 1, size)])

    if kind == 'star':
        if size < 0:
            raise ValueError("Star size must be nonnegative")
        return Graph.from_edges(size + 1, [(0, leaf) for leaf in range(1, size + 1)])

    if kind == 'disjoint-union':
        if len(operands) < 2:
            raise ValueError("Disjoint union needs at least two operands")
        result = operands[0]
        for operand in operands[1:]:
            result = disjoint_union(result, operand)
        return result

    if kind == 'complement':
        if len(operands) != 1:
            raise ValueError("Complement takes exactly one operand")
        return complement(operands[0])

    raise ValueError(f"Unknown graph builder '{kind}'. Supported: {', '.join(_BUILDERS)}")

