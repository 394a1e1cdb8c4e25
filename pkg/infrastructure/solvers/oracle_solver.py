"""
Exact branch-and-bound solvers used as ground truth.

Two independent paths are provided: branching directly on uncovered
T-incident edges, and plain vertex-cover branching on the graph restricted
to T-incident edges. Both keep a lock-protected incumbent.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from domain.bitset import bits
from domain.entities import Graph, Instance, SolutionCover
from domain.exceptions import CapExceededError
from domain.graph_ops import restrict_to_t_incident
from domain.interfaces.solver import Solver
from domain.value_objects import SolverOptions

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 26


class _Incumbent:
    """Best cover found so far; only ever improves."""

    def __init__(self, cost: int, mask: int):
        self.cost = cost
        self.mask = mask
        self._lock = threading.Lock()

    def offer(self, cost: int, mask: int) -> None:
        with self._lock:
            if cost < self.cost:
                self.cost = cost
                self.mask = mask


class _TreeSearch:
    """
    Depth-first branch and bound over "relevant" edges.

    ``relevant[u]`` is the set of neighbours of u across an edge that must be
    covered. A state is (cover, excluded, cost); excluded vertices already
    have all their relevant neighbours in the cover.
    """

    def __init__(self, relevant: Sequence[int], weights: Sequence[int], incumbent: _Incumbent):
        self.relevant = relevant
        self.weights = weights
        self.incumbent = incumbent
        self.nodes = 0

    def lower_bound(self, cover: int, active: int) -> int:
        """Greedy matching on uncovered edges; each matched edge costs its lighter endpoint."""
        used = 0
        bound = 0
        for u in bits(active):
            if used >> u & 1:
                continue
            partners = self.relevant[u] & ~cover & ~used
            if partners:
                v = (partners & -partners).bit_length() - 1
                used |= (1 << u) | (1 << v)
                bound += min(self.weights[u], self.weights[v])
        return bound

    def branch_choice(self, cover: int, active: int) -> Tuple[int, int]:
        """Vertex with the most uncovered relevant edges, lowest index on ties."""
        best_vertex, best_degree = -1, 0
        for u in bits(active):
            degree = (self.relevant[u] & ~cover).bit_count()
            if degree > best_degree:
                best_vertex, best_degree = u, degree
        return best_vertex, best_degree

    def children(self, cover: int, active: int, cost: int) -> List[Tuple[int, int, int]]:
        u, degree = self.branch_choice(cover, active)
        if degree == 0:
            return []
        forced = self.relevant[u] & ~cover
        take = (cover | (1 << u), active & ~(1 << u), cost + self.weights[u])
        skip = (cover | forced, active & ~(1 << u) & ~forced,
                cost + sum(self.weights[v] for v in bits(forced)))
        return [take, skip]

    def search(self, cover: int, active: int, cost: int) -> None:
        self.nodes += 1
        if cost >= self.incumbent.cost:
            return
        if cost + self.lower_bound(cover, active) >= self.incumbent.cost:
            # A zero bound here means every relevant edge is covered.
            return
        kids = self.children(cover, active, cost)
        if not kids:
            self.incumbent.offer(cost, cover)
            return
        for child in kids:
            self.search(*child)


def _run(relevant: Sequence[int], weights: Sequence[int], vertex_count: int,
         start_mask: int, threads: int) -> Tuple[int, int]:
    """Solve from the full active set; returns (best mask, explored nodes)."""
    start_cost = sum(weights[v] for v in bits(start_mask))
    incumbent = _Incumbent(start_cost + 1, start_mask)
    # start_mask is feasible; the +1 lets the search reach it as a leaf too.
    active = (1 << vertex_count) - 1
    root = _TreeSearch(relevant, weights, incumbent)

    if threads <= 1:
        root.search(0, active, 0)
        return incumbent.mask, root.nodes

    frontier = [(0, active, 0)]
    while frontier and len(frontier) < 4 * threads:
        expanded = []
        for state in frontier:
            kids = root.children(*state)
            if kids:
                expanded.extend(kids)
            else:
                incumbent.offer(state[2], state[0])
        if not expanded:
            frontier = []
            break
        frontier = expanded

    workers = [_TreeSearch(relevant, weights, incumbent) for _ in frontier]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda pair: pair[0].search(*pair[1]), zip(workers, frontier)))
    return incumbent.mask, root.nodes + sum(w.nodes for w in workers)


def _check_cap(vertex_count: int, cap: int) -> None:
    if vertex_count > cap:
        raise CapExceededError(f"Exact search is capped at {cap} vertices, got {vertex_count}")


def solve_exact(instance: Instance, cap: int = DEFAULT_ORACLE_CAP, threads: int = 1) -> SolutionCover:
    """
    Minimum (weight) T-vertex cover by branching on uncovered T-incident edges.

    Vertices outside T with no uncovered T-incident edge are never branched on.

    Raises:
        CapExceededError: If the instance has more than ``cap`` vertices
    """
    n = instance.vertex_count
    _check_cap(n, cap)
    t_mask = instance.t_mask
    adjacency = instance.graph.adjacency
    relevant = [row if t_mask >> v & 1 else row & t_mask for v, row in enumerate(adjacency)]
    weights, _ = instance.integer_weights()

    best, nodes = _run(relevant, weights, n, t_mask, threads)
    logger.debug(f"T-edge branching explored {nodes} nodes")
    return SolutionCover.build(instance, best, "oracle", {'nodes': nodes})


def solve_exact_weighted(instance: Instance, cap: int = DEFAULT_ORACLE_CAP,
                         threads: int = 1) -> SolutionCover:
    """
    Minimum total-weight T-vertex cover.

    Raises:
        ValueError: If the instance carries no weights
        CapExceededError: If the instance has more than ``cap`` vertices
    """
    if not instance.is_weighted:
        raise ValueError("Weighted oracle needs an instance with weights")
    return solve_exact(instance, cap, threads)


class _VertexDeletionSearch:
    """
    Plain vertex-cover branch and bound on a shrinking vertex set.

    Branches on a maximum-degree vertex v of the remaining graph: either v
    joins the cover and is deleted, or N(v) joins the cover and N[v] is deleted.
    """

    def __init__(self, adjacency: Sequence[int], weights: Sequence[int], incumbent: _Incumbent):
        self.adjacency = adjacency
        self.weights = weights
        self.incumbent = incumbent
        self.nodes = 0

    def lower_bound(self, remaining: int) -> int:
        used = 0
        bound = 0
        for u in bits(remaining):
            if used >> u & 1:
                continue
            partners = self.adjacency[u] & remaining & ~used
            if partners:
                v = (partners & -partners).bit_length() - 1
                used |= (1 << u) | (1 << v)
                bound += min(self.weights[u], self.weights[v])
        return bound

    def search(self, remaining: int, cover: int, cost: int) -> None:
        self.nodes += 1
        if cost + self.lower_bound(remaining) >= self.incumbent.cost:
            return
        pivot, pivot_degree = -1, 0
        for v in bits(remaining):
            degree = (self.adjacency[v] & remaining).bit_count()
            if degree > pivot_degree:
                pivot, pivot_degree = v, degree
        if pivot_degree == 0:
            self.incumbent.offer(cost, cover)
            return
        neighbours = self.adjacency[pivot] & remaining
        self.search(remaining & ~(1 << pivot), cover | (1 << pivot), cost + self.weights[pivot])
        self.search(remaining & ~neighbours & ~(1 << pivot), cover | neighbours,
                    cost + sum(self.weights[v] for v in bits(neighbours)))


def min_vertex_cover_exact(graph: Graph, weights: Optional[Sequence] = None,
                           cap: int = DEFAULT_ORACLE_CAP) -> SolutionCover:
    """
    Minimum (weight) vertex cover by vertex-deletion branching.

    Raises:
        CapExceededError: If the graph has more than ``cap`` vertices
    """
    n = graph.vertex_count
    _check_cap(n, cap)
    instance = Instance(graph=graph, t_set=frozenset(range(n)), weights=weights)
    scaled, _ = instance.integer_weights()
    non_isolated = 0
    for v, row in enumerate(graph.adjacency):
        if row:
            non_isolated |= 1 << v

    incumbent = _Incumbent(sum(scaled[v] for v in bits(non_isolated)) + 1, non_isolated)
    search = _VertexDeletionSearch(graph.adjacency, scaled, incumbent)
    search.search(non_isolated, 0, 0)
    logger.debug(f"Vertex cover branching explored {search.nodes} nodes")
    return SolutionCover.build(instance, incumbent.mask, "vc-exact", {'nodes': search.nodes})


def solve_exact_reduced(instance: Instance, cap: int = DEFAULT_ORACLE_CAP) -> SolutionCover:
    """
    Second exact path: drop edges outside T, then solve plain vertex cover.

    Every edge of the restricted graph is T-incident, so its minimum vertex
    covers are exactly the minimum T-vertex covers.
    """
    restricted = restrict_to_t_incident(instance)
    cover = min_vertex_cover_exact(restricted.graph, instance.weights, cap)
    return SolutionCover.build(instance, cover.vertices, "oracle-reduced", cover.statistics)


class OracleSolver(Solver):
    """
    Exact solver for any instance up to the configured vertex cap.
    """

    def __init__(self, cap: int = DEFAULT_ORACLE_CAP):
        """Initialize the oracle with its vertex cap."""
        self.cap = cap
        self.logger = logging.getLogger(__name__)

    def solve(self, instance: Instance, options: SolverOptions) -> SolutionCover:
        if not self.validate_instance(instance, options):
            raise CapExceededError(f"Oracle is capped at {self.cap} vertices, got {instance.vertex_count}")
        self.logger.info(f"Solving {instance} exactly")
        solution = solve_exact(instance, self.cap, options.threads)
        self.logger.info(f"Oracle finished: measure {solution.measure}")
        return solution

    def validate_instance(self, instance: Instance, options: SolverOptions) -> bool:
        return instance.vertex_count <= self.cap
