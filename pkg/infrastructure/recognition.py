"""
Graph class recognition: forbidden-pattern parsing, induced-subgraph search
and the recognizers used by the dispatcher and the generators.
"""

import logging
import re
from typing import Dict, List, NamedTuple, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from domain.bitset import bits, full_mask, mask_of
from domain.entities import Graph
from domain.exceptions import CapExceededError
from domain.graph_ops import build_named, connected_components, disjoint_union
from domain.value_objects import GraphClass, HFreeVerdict, HPattern, UnipolarPartition

logger = logging.getLogger(__name__)

DEFAULT_PATTERN_CAP = 10
DEFAULT_UNIPOLAR_CAP = 16

_TERM = re.compile(r'^(\d*)(?:P(\d+)|C(\d+)|K1,(\d+)|K(\d+)|(diamond)|(claw))$')


def _diamond() -> Graph:
    return Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def _term_graph(match: 're.Match', term: str) -> Graph:
    path, cycle, star, complete, diamond, claw = match.groups()[1:]
    if path is not None:
        if int(path) < 1:
            raise ValueError(f"Path needs at least one vertex in '{term}'")
        return build_named('path', int(path))
    if cycle is not None:
        if int(cycle) < 3:
            raise ValueError(f"Cycle needs at least 3 vertices in '{term}'")
        return build_named('cycle', int(cycle))
    if star is not None:
        return build_named('star', int(star))
    if complete is not None:
        return build_named('complete', int(complete))
    if diamond is not None:
        return _diamond()
    return build_named('star', 3)


def parse_h_spec(text: str) -> HPattern:
    """
    Parse a pattern such as ``2P1+P2+P3``, ``K1,3``, ``C5`` or ``diamond``.

    Grammar: ``term ("+" term)*`` with ``term = [int] (P<int> | C<int> | K<int> | K1,<int>)``
    plus the names ``diamond`` and ``claw``.

    Raises:
        ValueError: On syntax errors or invalid sizes
    """
    terms = [t.strip() for t in text.replace(' ', '').split('+')]
    if not text.strip() or any(not t for t in terms):
        raise ValueError(f"Empty term in pattern '{text}'")

    parts: List[Graph] = []
    for term in terms:
        match = _TERM.match(term)
        if match is None:
            raise ValueError(f"Cannot parse pattern term '{term}'")
        copies = int(match.group(1)) if match.group(1) else 1
        if copies < 1:
            raise ValueError(f"Multiplier must be positive in '{term}'")
        graph = _term_graph(match, term)
        parts.extend([graph] * copies)

    result = parts[0]
    for part in parts[1:]:
        result = disjoint_union(result, part)
    return HPattern(pattern_graph=result, source_spec=text.replace(' ', ''))


def contains_induced(graph: Graph, pattern: HPattern,
                     cap: int = DEFAULT_PATTERN_CAP) -> Optional[Dict[int, int]]:
    """
    Search for an induced copy of the pattern.

    Args:
        graph: Host graph G
        pattern: Forbidden graph H
        cap: Largest pattern size accepted

    Returns:
        Injective map from pattern vertices to graph vertices with
        uv in E(H) iff map(u)map(v) in E(G), or None when G is H-free

    Raises:
        CapExceededError: If the pattern has more than ``cap`` vertices
    """
    if pattern.size > cap:
        raise CapExceededError(f"Pattern {pattern.name} has {pattern.size} vertices, cap is {cap}")
    if pattern.size > graph.vertex_count:
        return None
    if pattern.pattern_graph.edge_count > graph.edge_count:
        return None

    matcher = isomorphism.GraphMatcher(graph.to_networkx(), pattern.pattern_graph.to_networkx())
    for mapping in matcher.subgraph_isomorphisms_iter():
        return {h: g for g, h in mapping.items()}
    return None


def is_cluster_graph(graph: Graph) -> bool:
    """True iff every connected component is a clique (the graph is P3-free)."""
    adjacency = graph.adjacency
    for v in range(graph.vertex_count):
        closed = adjacency[v] | (1 << v)
        for u in bits(adjacency[v]):
            if adjacency[u] | (1 << u) != closed:
                return False
    return True


def is_bipartite(graph: Graph) -> Optional[Tuple[int, int]]:
    """
    Two-colour the graph.

    Returns:
        (left mask, right mask) with no monochromatic edge, or None if an odd cycle exists
    """
    try:
        colouring = nx.bipartite.color(graph.to_networkx())
    except nx.NetworkXError:
        return None
    left = mask_of(v for v, colour in colouring.items() if colour == 1)
    return left, graph.all_mask & ~left


def verify_2_unipolar(graph: Graph, partition: UnipolarPartition) -> bool:
    """
    Check that V1 is a clique and G[V2] is a disjoint union of cliques of size at most 2.

    Raises:
        ValueError: If the parts overlap or do not cover V
    """
    if partition.clique_part & partition.cluster_part:
        raise ValueError("Partition parts overlap")
    if partition.clique_part | partition.cluster_part != frozenset(range(graph.vertex_count)):
        raise ValueError("Partition does not cover the vertex set")

    clique = mask_of(partition.clique_part)
    cluster = mask_of(partition.cluster_part)
    return _is_2_unipolar_split(graph, clique, cluster)


def _is_2_unipolar_split(graph: Graph, clique: int, cluster: int) -> bool:
    adjacency = graph.adjacency
    for v in bits(clique):
        if (adjacency[v] | (1 << v)) & clique != clique:
            return False
    return all((adjacency[v] & cluster).bit_count() <= 1 for v in bits(cluster))


def find_2_unipolar_partition(graph: Graph,
                              cap: int = DEFAULT_UNIPOLAR_CAP) -> Optional[UnipolarPartition]:
    """
    Exhaustive search for a 2-unipolar partition, largest clique part first.

    Raises:
        CapExceededError: If the graph has more than ``cap`` vertices
    """
    n = graph.vertex_count
    if n > cap:
        raise CapExceededError(f"2-unipolar search is capped at {cap} vertices, got {n}")

    full = full_mask(n)
    cliques = [mask_of(c) for c in nx.enumerate_all_cliques(graph.to_networkx())]
    for clique in reversed(cliques + [0]):
        if _is_2_unipolar_split(graph, clique, full & ~clique):
            return UnipolarPartition(clique_part=frozenset(bits(clique)),
                                     cluster_part=frozenset(bits(full & ~clique)))
    return None


def max_degree(graph: Graph) -> int:
    return graph.max_degree()


def is_subcubic(graph: Graph) -> bool:
    return max_degree(graph) <= 3


class FreenessLevel(NamedTuple):
    """Smallest parameter s for which a graph avoids a pattern family, with the tests run."""
    level: Optional[int]
    evidence: List[Tuple[str, bool]]
    witness: Optional[Dict[int, int]] = None


def _family_level(graph: Graph, specs: List[Tuple[int, str]], cap: int) -> FreenessLevel:
    evidence = []
    witness = None
    for s, spec in specs:
        pattern = parse_h_spec(spec)
        if pattern.size > cap:
            break
        found = contains_induced(graph, pattern, cap)
        evidence.append((f"{spec}-free", found is None))
        if found is None:
            return FreenessLevel(s, evidence)
        witness = found
    return FreenessLevel(None, evidence, witness)


def sp2_freeness_level(graph: Graph, max_s: int, cap: int = DEFAULT_PATTERN_CAP) -> FreenessLevel:
    """Smallest s in 1..max_s such that the graph is sP2-free."""
    return _family_level(graph, [(s, f"{s}P2") for s in range(1, max_s + 1)], cap)


def linear_forest_level(graph: Graph, max_s: int, cap: int = DEFAULT_PATTERN_CAP) -> FreenessLevel:
    """Smallest s in 0..max_s such that the graph is (sP1+P2+P3)-free."""
    specs = [(s, f"{s}P1+P2+P3" if s else "P2+P3") for s in range(0, max_s + 1)]
    return _family_level(graph, specs, cap)


def recognize_class(graph: Graph, graph_class: GraphClass,
                    unipolar_cap: int = DEFAULT_UNIPOLAR_CAP) -> bool:
    """Membership test for one of the named graph classes."""
    if graph_class == GraphClass.CLUSTER:
        return is_cluster_graph(graph)
    if graph_class == GraphClass.BIPARTITE:
        return is_bipartite(graph) is not None
    if graph_class == GraphClass.TWO_UNIPOLAR:
        return find_2_unipolar_partition(graph, unipolar_cap) is not None
    if graph_class == GraphClass.SUBCUBIC:
        return is_subcubic(graph)
    raise ValueError(f"Unsupported graph class: {graph_class}")


def _path_sizes(graph: Graph) -> Optional[List[int]]:
    """Component sizes if the graph is a linear forest, else None."""
    sizes = []
    for component in connected_components(graph, graph.all_mask):
        size = component.bit_count()
        edges = sum((graph.adjacency[v] & component).bit_count() for v in bits(component)) // 2
        if edges != size - 1:
            return None
        sizes.append(size)
    return sizes


def _has_cycle(graph: Graph) -> bool:
    for component in connected_components(graph, graph.all_mask):
        edges = sum((graph.adjacency[v] & component).bit_count() for v in bits(component)) // 2
        if edges >= component.bit_count():
            return True
    return False


_P2P3_SHAPES = {(), (2,), (3,), (2, 2), (2, 3)}
_P4_SHAPES = {(), (2,), (3,), (4,)}


def classify_h_free(pattern: HPattern) -> HFreeVerdict:
    """
    Complexity of Subset Vertex Cover on H-free graphs.

    Polynomial when H is an induced subgraph of sP1+P2+P3, sP2 or sP1+P4;
    NP-complete when H contains a cycle, a claw or 2P3; open otherwise.
    """
    graph = pattern.pattern_graph
    if _has_cycle(graph):
        return HFreeVerdict("np-complete", "cycle")
    if graph.max_degree() >= 3:
        return HFreeVerdict("np-complete", "claw")

    sizes = _path_sizes(graph)

    isolated = sizes.count(1)
    shape = tuple(sorted(size for size in sizes if size >= 2))

    if shape in _P2P3_SHAPES:
        return HFreeVerdict("polynomial", "sP1+P2+P3", isolated)
    if all(size == 2 for size in shape):
        return HFreeVerdict("polynomial", "sP2", len(sizes))
    if shape in _P4_SHAPES:
        return HFreeVerdict("polynomial", "sP1+P4", isolated)

    longest = shape[-1]
    if all(size == 2 for size in shape[:-1]):
        pairs = len(shape) - 1
        if longest == 3 and pairs >= 2:
            return HFreeVerdict("open", "rP1+sP2+P3")
        if longest == 4 and pairs >= 1:
            return HFreeVerdict("open", "rP1+sP2+P4")
        if longest in (5, 6):
            return HFreeVerdict("open", f"rP1+sP2+P{longest}")

    if sum((size + 1) // 4 for size in shape) >= 2:
        return HFreeVerdict("np-complete", "2P3")
    raise AssertionError(f"Unclassified linear forest {shape}")


def classify_t_free(pattern: HPattern) -> HFreeVerdict:
    """Complexity when only G[T] is required to be H-free: polynomial iff H is an induced subgraph of sP2."""
    graph = pattern.pattern_graph
    if graph.max_degree() <= 1:
        components = len(connected_components(graph, graph.all_mask))
        return HFreeVerdict("polynomial", "sP2", components)
    return HFreeVerdict("np-complete", "P3")
