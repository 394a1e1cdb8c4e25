"""
Solver for (P2+P3)-free graphs, lifted to (sP1+P2+P3)-free graphs by peeling.

An optimal cover S either covers every edge of G (then a minimum vertex
cover is optimal) or leaves an edge uv with u, v outside T uncovered. In the
second case every terminal neighbour of u and v is in S, and the remaining
terminals T' induce a cluster graph whose cliques D_1..D_p are handled by
the two cases below; every other decision is a König problem.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Tuple

from domain.bitset import bits
from domain.entities import ClusterDecomposition, Graph, Instance, Measure, SolutionCover
from domain.exceptions import PreconditionViolation
from domain.graph_ops import connected_components, is_clique, is_t_vertex_cover, restrict_to_t_incident
from domain.interfaces.solver import Solver
from domain.value_objects import BipartiteView, SolverOptions
from infrastructure.bipartite import cover_bipartite
from infrastructure.recognition import DEFAULT_PATTERN_CAP, contains_induced, linear_forest_level, parse_h_spec
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP, min_vertex_cover_exact
from infrastructure.solvers.peeling_solver import peel_p1

logger = logging.getLogger(__name__)

Candidate = Tuple[Measure, int]


def cluster_decomposition(graph: Graph, t_prime: int, terminals: int) -> ClusterDecomposition:
    """Split G[T'] into its large cliques and its isolated vertices."""
    large = []
    small = 0
    for component in connected_components(graph, t_prime):
        assert is_clique(graph, component), "G[T'] must be a cluster graph"
        if component.bit_count() >= 2:
            large.append(component)
        else:
            small |= component
    return ClusterDecomposition(large_components=tuple(large), small_vertices=small, terminals=terminals)


def find_property_vertices(graph: Graph, decomp: ClusterDecomposition, excluded: int) -> int:
    """
    Vertices w outside T (and outside ``excluded``) such that w has a neighbour
    and a non-neighbour in some D_i, or neighbours in two different D_i, or a
    neighbour in some D_i and a neighbour in A.
    """
    adjacency = graph.adjacency
    found = 0
    candidates = graph.all_mask & ~decomp.terminals & ~excluded
    for w in bits(candidates):
        row = adjacency[w]
        touched = 0
        mixed = False
        for clique in decomp.large_components:
            if row & clique:
                touched += 1
                if clique & ~row:
                    mixed = True
        if mixed or touched >= 2 or (touched and row & decomp.small_vertices):
            found |= 1 << w
    return found


def check_semi_complete(graph: Graph, w: int, clique: int) -> bool:
    """
    True iff w is adjacent to all vertices of the clique except at most one.

    Raises:
        ValueError: If the vertex set is not a clique
    """
    if not is_clique(graph, clique):
        raise ValueError("Vertex set is not a clique")
    return (graph.adjacency[w] & clique).bit_count() >= clique.bit_count() - 1


class _P2P3Search:
    """Candidate generation for one instance; ``restricted`` drops edges outside T."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.graph = instance.graph
        self.restricted = restrict_to_t_incident(instance).graph
        self.t_mask = instance.t_mask
        self.outside = self.graph.all_mask & ~self.t_mask
        self.weights = instance.weights
        self.rejected = 0

    def konig(self, cover: int, left: int, right: int) -> int:
        """Cover the edges between ``left`` and ``right`` on top of ``cover``."""
        view = BipartiteView(self.restricted, left, right)
        return cover | cover_bipartite(view, self.weights)

    def best_of(self, candidates: Iterator[int]) -> Optional[Candidate]:
        best = None
        for candidate in candidates:
            if not is_t_vertex_cover(self.instance, candidate):
                self.rejected += 1
                logger.warning("Discarding a candidate that is not a T-vertex cover")
                continue
            measure = self.instance.weight_of(candidate)
            if best is None or measure < best[0]:
                best = (measure, candidate)
        return best

    def edge_branch(self, branch: Tuple[int, int]) -> Optional[Candidate]:
        """Best candidate when the edge ends stay out of S and ``forced`` goes in."""
        forced, ends = branch
        t_prime = self.t_mask & ~forced
        decomp = cluster_decomposition(self.graph, t_prime, self.t_mask)
        if decomp.large_count <= 2:
            return self.best_of(self._few_cliques(forced, decomp))
        return self.best_of(self._many_cliques(forced, ends, decomp))

    def _few_cliques(self, forced: int, decomp: ClusterDecomposition) -> Iterator[int]:
        """At most two large cliques: try every choice of at most one survivor per clique."""
        choices = [[None] + list(bits(clique)) for clique in decomp.large_components]
        for survivors in itertools.product(*choices):
            cover = forced
            for clique, survivor in zip(decomp.large_components, survivors):
                cover |= clique if survivor is None else clique & ~(1 << survivor)
            yield self.konig(cover, self.t_mask & ~cover, self.outside)

    def _many_cliques(self, forced: int, ends: int, decomp: ClusterDecomposition) -> Iterator[int]:
        """Three or more large cliques: branch on one property vertex staying out, or all going in."""
        properties = find_property_vertices(self.graph, decomp, ends)
        adjacency = self.graph.adjacency

        for w in bits(properties):
            for clique in decomp.large_components:
                assert check_semi_complete(self.graph, w, clique), "Property vertex is not semi-complete"
            cover = forced | (adjacency[w] & self.t_mask)
            remaining = self.t_mask & ~cover
            assert all(not adjacency[t] & remaining for t in bits(remaining)), \
                "Terminals left by a property vertex must be independent"
            yield self.konig(cover, remaining, self.outside)

        cover = forced | properties
        remaining = self.graph.all_mask & ~cover
        for clique in decomp.large_components:
            cover |= self._clique_choice(clique, remaining)
        yield self.konig(cover, decomp.small_vertices, self.outside & ~cover)

    def _clique_choice(self, clique: int, remaining: int) -> int:
        """
        Cheapest cover of a clique together with its private outside neighbours:
        the whole clique, or all but one vertex x plus x's outside neighbours.
        """
        adjacency = self.restricted.adjacency
        best = clique
        best_measure = self.instance.weight_of(clique)
        for x in bits(clique):
            option = (clique & ~(1 << x)) | (adjacency[x] & remaining & ~clique)
            measure = self.instance.weight_of(option)
            if measure < best_measure:
                best, best_measure = option, measure
        return best


def _edge_branches(graph: Graph, t_mask: int) -> List[Tuple[int, int]]:
    """(forced terminals, edge ends) for edges uv outside T, one per distinct forced set."""
    seen = set()
    ordered = []
    for u, v in graph.edge_list:
        if t_mask >> u & 1 or t_mask >> v & 1:
            continue
        forced = (graph.adjacency[u] | graph.adjacency[v]) & t_mask
        if forced not in seen:
            seen.add(forced)
            ordered.append((forced, (1 << u) | (1 << v)))
    return ordered


def solve_p2p3(instance: Instance, pattern_cap: int = DEFAULT_PATTERN_CAP,
               oracle_cap: int = DEFAULT_ORACLE_CAP, threads: int = 1) -> SolutionCover:
    """
    Minimum (weight) T-vertex cover on a (P2+P3)-free graph.

    Raises:
        PreconditionViolation: If G contains an induced P2+P3
        CapExceededError: If the exact vertex cover step exceeds its cap
    """
    witness = contains_induced(instance.graph, parse_h_spec("P2+P3"), pattern_cap)
    if witness is not None:
        raise PreconditionViolation("Graph is not (P2+P3)-free", pattern="P2+P3", witness=witness)

    vertex_cover = min_vertex_cover_exact(instance.graph, instance.weights, oracle_cap)
    best_cover = vertex_cover.mask
    best_measure = instance.weight_of(best_cover)

    search = _P2P3Search(instance)
    branches = _edge_branches(instance.graph, instance.t_mask)
    if threads > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search.edge_branch, branches))
    else:
        results = [search.edge_branch(branch) for branch in branches]

    for result in results:
        if result is not None and result[0] < best_measure:
            best_measure, best_cover = result

    statistics = {'edge_branches': len(branches), 'rejected_candidates': search.rejected}
    return SolutionCover.build(instance, best_cover, "p2p3", statistics)


class P2P3Solver(Solver):
    """
    Polynomial solver for (sP1+P2+P3)-free graphs, s <= options.max_s.
    """

    def __init__(self, pattern_cap: int = DEFAULT_PATTERN_CAP, oracle_cap: int = DEFAULT_ORACLE_CAP):
        """Initialize the solver with its search caps."""
        self.pattern_cap = pattern_cap
        self.oracle_cap = oracle_cap
        self.logger = logging.getLogger(__name__)

    def solve(self, instance: Instance, options: SolverOptions) -> SolutionCover:
        level = linear_forest_level(instance.graph, options.max_s, self.pattern_cap)
        if level.level is None:
            spec = level.evidence[-1][0].removesuffix('-free') if level.evidence else "P2+P3"
            raise PreconditionViolation(f"Graph is not {spec}-free", pattern=spec, witness=level.witness)

        self.logger.info(f"Solving {instance} with the (P2+P3)-free solver, peeling {level.level} levels")

        def base(residual: Instance) -> SolutionCover:
            return solve_p2p3(residual, self.pattern_cap, self.oracle_cap, options.threads)

        solution = peel_p1(instance, base, level.level, residual_pattern="P2+P3",
                           pattern_cap=self.pattern_cap)
        self.logger.info(f"(P2+P3)-free solver finished: measure {solution.measure}")
        return SolutionCover.build(instance, solution.vertices, "p2p3",
                                   {**solution.statistics, 's': level.level})

    def validate_instance(self, instance: Instance, options: SolverOptions) -> bool:
        return linear_forest_level(instance.graph, options.max_s, self.pattern_cap).level is not None
