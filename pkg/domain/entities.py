"""
Domain entities for the Subset Vertex Cover workbench.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .bitset import bits, full_mask, mask_of, to_set

Measure = Union[int, Fraction]


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on vertices ``0..vertex_count-1``.

    ``adjacency[v]`` is the neighbourhood of ``v`` as a bitmask. ``labels``
    optionally keeps external vertex names (the 1-based ids of a file).
    """
    vertex_count: int
    adjacency: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        """Validate the graph after initialization."""
        if self.vertex_count < 0:
            raise ValueError("Vertex count must be nonnegative")

        if len(self.adjacency) != self.vertex_count:
            raise ValueError(f"Expected {self.vertex_count} adjacency rows, got {len(self.adjacency)}")

        limit = full_mask(self.vertex_count)
        for v, row in enumerate(self.adjacency):
            if row & ~limit:
                raise ValueError(f"Vertex {v} has a neighbour index out of range")
            if row >> v & 1:
                raise ValueError(f"Self-loop at vertex {v}")
            for u in bits(row):
                if not self.adjacency[u] >> v & 1:
                    raise ValueError(f"Adjacency is not symmetric for edge {v}-{u}")

        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("Labels must name every vertex")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> 'Graph':
        """
        Build a graph from an edge list.

        Raises:
            ValueError: On self-loops, duplicate edges or out-of-range endpoints
        """
        rows = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"Edge endpoint out of range: {u}-{v}")
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"Duplicate edge {u}-{v}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(vertex_count, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, vertex_count: int) -> 'Graph':
        return cls(vertex_count, (0,) * vertex_count)

    @property
    def all_mask(self) -> int:
        return full_mask(self.vertex_count)

    @cached_property
    def edge_list(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return tuple((u, v) for u in range(self.vertex_count)
                     for v in bits(self.adjacency[u] >> (u + 1) << (u + 1)))

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbours(self, v: int) -> List[int]:
        return list(bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adjacency), default=0)

    def label(self, v: int) -> str:
        """External name of a vertex (1-based id when no labels are stored)."""
        return self.labels[v] if self.labels is not None else str(v + 1)

    def to_networkx(self):
        """Convert to a networkx.Graph with integer nodes in index order."""
        import networkx as nx

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        nx_graph.add_edges_from(self.edge_list)
        return nx_graph

    def __str__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def __repr__(self) -> str:
        return self.__str__()


@dataclass(frozen=True)
class Instance:
    """
    A Subset Vertex Cover instance: graph, terminals T, optional weights and budget.

    Weights are exact rationals; an instance without weights is unweighted
    (every vertex counts 1).
    """
    graph: Graph
    t_set: FrozenSet[int]
    weights: Optional[Tuple[Fraction, ...]] = None
    budget: Optional[int] = None

    def __post_init__(self):
        """Validate the instance after initialization."""
        if not isinstance(self.t_set, frozenset):
            object.__setattr__(self, 't_set', frozenset(self.t_set))

        n = self.graph.vertex_count
        for v in self.t_set:
            if not 0 <= v < n:
                raise ValueError(f"Terminal {v} is not a vertex")

        if self.weights is not None:
            weights = tuple(Fraction(w) for w in self.weights)
            if len(weights) != n:
                raise ValueError("Weights must be given for every vertex")
            for v, w in enumerate(weights):
                if w <= 0:
                    raise ValueError(f"Weight of vertex {v} must be positive, got {w}")
            object.__setattr__(self, 'weights', weights)

        if self.budget is not None and self.budget < 0:
            raise ValueError("Budget must be nonnegative")

    @cached_property
    def t_mask(self) -> int:
        return mask_of(self.t_set)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def vertex_weight(self, v: int) -> Measure:
        return self.weights[v] if self.weights is not None else 1

    def weight_of(self, vertices: Union[int, Iterable[int]]) -> Measure:
        """
        Size (unweighted) or total weight (weighted) of a vertex set.

        Args:
            vertices: Either a bitmask or an iterable of vertex indices
        """
        members = bits(vertices) if isinstance(vertices, int) else vertices
        if self.weights is None:
            return sum(1 for _ in members)
        return sum((self.weights[v] for v in members), Fraction(0))

    def integer_weights(self) -> Tuple[List[int], int]:
        """
        Weights scaled to integers by their common denominator.

        Returns:
            (scaled weights, scale) with ``weight[v] == scaled[v] / scale``
        """
        if self.weights is None:
            return [1] * self.vertex_count, 1
        scale = math.lcm(*(w.denominator for w in self.weights))
        return [int(w * scale) for w in self.weights], scale

    def with_graph(self, graph: Graph) -> 'Instance':
        """Create a new Instance on a different graph with the same vertex set."""
        return Instance(graph=graph, t_set=self.t_set, weights=self.weights, budget=self.budget)

    def unweighted(self) -> 'Instance':
        return Instance(graph=self.graph, t_set=self.t_set, budget=self.budget)

    def __str__(self) -> str:
        return (f"Instance(n={self.graph.vertex_count}, m={self.graph.edge_count}, "
                f"|T|={len(self.t_set)}, weighted={self.is_weighted})")

    def __repr__(self) -> str:
        return self.__str__()


@dataclass(frozen=True)
class SolutionCover:
    """
    A vertex set claimed to be a T-vertex cover, with its measure and provenance.
    """
    vertices: FrozenSet[int]
    measure: Measure
    algorithm: str
    statistics: Dict[str, Any] = field(default_factory=dict, compare=False)
    within_budget: Optional[bool] = None

    @classmethod
    def build(cls, instance: Instance, cover: Union[int, Iterable[int]], algorithm: str,
              statistics: Optional[Dict[str, Any]] = None) -> 'SolutionCover':
        """Build a solution, computing measure and budget verdict from the instance."""
        vertices = to_set(cover) if isinstance(cover, int) else frozenset(cover)
        measure = instance.weight_of(vertices)
        within = None if instance.budget is None else measure <= instance.budget
        return cls(vertices=vertices, measure=measure, algorithm=algorithm,
                   statistics=dict(statistics or {}), within_budget=within)

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def __str__(self) -> str:
        return f"SolutionCover(measure={self.measure}, size={len(self.vertices)}, algorithm={self.algorithm})"

    def __repr__(self) -> str:
        return self.__str__()


@dataclass(frozen=True)
class Layout:
    """
    Rooted binary layout: every internal node has two children and every
    leaf carries a distinct vertex.
    """
    root: int
    children: Dict[int, Tuple[int, int]]
    leaf_vertex: Dict[int, int]

    def __post_init__(self):
        """Validate tree shape: reachability, arity and leaf bijection."""
        for node, kids in self.children.items():
            if len(kids) != 2:
                raise ValueError(f"Node {node} must have exactly 2 children")
            if node in self.leaf_vertex:
                raise ValueError(f"Node {node} is both a leaf and an inner node")

        seen = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node in seen:
                raise ValueError(f"Node {node} is reachable twice")
            seen.add(node)
            if node in self.children:
                stack.extend(self.children[node])
            elif node not in self.leaf_vertex:
                raise ValueError(f"Node {node} has no children and no vertex")

        all_nodes = set(self.children) | set(self.leaf_vertex)
        if seen != all_nodes:
            raise ValueError(f"Unreachable layout nodes: {sorted(all_nodes - seen)}")

        if len(set(self.leaf_vertex.values())) != len(self.leaf_vertex):
            raise ValueError("Two leaves carry the same vertex")

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_vertex)

    def postorder(self) -> List[int]:
        """Nodes ordered so that children come before their parent."""
        order: List[int] = []
        stack: List[Tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or node not in self.children:
                order.append(node)
                continue
            stack.append((node, True))
            left, right = self.children[node]
            stack.append((right, False))
            stack.append((left, False))
        return order

    def vertex_sets(self) -> Dict[int, int]:
        """Map each node x to the mask of V_x (vertices at leaves below x)."""
        sets: Dict[int, int] = {}
        for node in self.postorder():
            if node in self.children:
                left, right = self.children[node]
                sets[node] = sets[left] | sets[right]
            else:
                sets[node] = 1 << self.leaf_vertex[node]
        return sets

    def covers(self, vertex_count: int) -> bool:
        """True iff the leaves carry exactly the vertices ``0..vertex_count-1``."""
        return sorted(self.leaf_vertex.values()) == list(range(vertex_count))


@dataclass(frozen=True)
class ClusterDecomposition:
    """
    The components of a cluster graph G[T'] split into large cliques and
    isolated vertices, plus the full terminal set the decomposition was taken in.
    """
    large_components: Tuple[int, ...]
    small_vertices: int
    terminals: int

    @property
    def large_count(self) -> int:
        return len(self.large_components)


@dataclass(frozen=True)
class ReductionTrace:
    """
    Certificate linking a generated instance's optimum to its source graph:
    opt(generated) = vc(source) + offset.
    """
    kind: str
    source_graph: Graph
    offset: int
    vertex_map: Dict[int, int]
    t_set: FrozenSet[int]
    certificate: Optional[Any] = None
    claims: Tuple[str, ...] = ()
    source_vc: Optional[int] = None

    @property
    def expected_optimum(self) -> Optional[int]:
        if self.source_vc is None:
            return None
        return self.source_vc + self.offset

    def with_source_vc(self, source_vc: int) -> 'ReductionTrace':
        """Create a new trace that records the source graph's vertex cover number."""
        return ReductionTrace(kind=self.kind, source_graph=self.source_graph, offset=self.offset,
                              vertex_map=self.vertex_map, t_set=self.t_set,
                              certificate=self.certificate, claims=self.claims,
                              source_vc=source_vc)


@dataclass
class DispatchReport:
    """Which algorithm the dispatcher chose, the class tests behind it, and the result."""
    chosen_algorithm: str
    class_evidence: List[Tuple[str, bool]]
    result: Optional[SolutionCover] = None
    parameter: Optional[int] = None
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'algorithm': self.chosen_algorithm,
            'parameter': self.parameter,
            'class_evidence': [{'test': name, 'passed': passed} for name, passed in self.class_evidence],
            'warnings': list(self.warnings),
        }
