"""
Solver for instances whose terminal subgraph G[T] is sP2-free.

Every minimal solution splits as R ∪ W where R is a minimal vertex cover of
G[T] and W covers the bipartite remainder between T∖R and V∖T, so the
solver enumerates the maximal independent sets I of G[T] and runs König on
(I, V∖T) for each.
"""

import logging

from domain.entities import Instance, SolutionCover
from domain.exceptions import PreconditionViolation
from domain.graph_ops import induced_subgraph, restrict_to_t_incident
from domain.interfaces.solver import Solver
from domain.value_objects import BipartiteView, SolverOptions
from infrastructure.bipartite import cover_bipartite
from infrastructure.mis_enumeration import enum_maximal_independent_sets
from infrastructure.recognition import DEFAULT_PATTERN_CAP, contains_induced, parse_h_spec

logger = logging.getLogger(__name__)


def check_t_sp2_free(instance: Instance, s: int, pattern_cap: int = DEFAULT_PATTERN_CAP) -> None:
    """
    Raises:
        PreconditionViolation: If G[T] contains an induced sP2; the witness uses graph indices
    """
    terminal_graph, original = induced_subgraph(instance.graph, instance.t_mask)
    spec = f"{s}P2"
    found = contains_induced(terminal_graph, parse_h_spec(spec), pattern_cap)
    if found is not None:
        witness = {h: original[g] for h, g in found.items()}
        raise PreconditionViolation(f"G[T] is not {spec}-free", pattern=spec, witness=witness)


def solve_sp2(instance: Instance, s: int, pattern_cap: int = DEFAULT_PATTERN_CAP) -> SolutionCover:
    """
    Minimum (weight) T-vertex cover when G[T] is sP2-free.

    Args:
        instance: Instance with G[T] sP2-free
        s: The freeness parameter, at least 1

    Raises:
        ValueError: If s < 1
        PreconditionViolation: If G[T] contains an induced sP2
    """
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    check_t_sp2_free(instance, s, pattern_cap)

    restricted = restrict_to_t_incident(instance)
    graph = restricted.graph
    t_mask = instance.t_mask
    outside = graph.all_mask & ~t_mask
    weights = instance.weights

    best_cover = t_mask
    best_measure = instance.weight_of(t_mask)
    stream = enum_maximal_independent_sets(graph, within=t_mask, masks=True)
    for independent in stream:
        removed = t_mask & ~independent
        view = BipartiteView(graph, independent, outside)
        candidate = removed | cover_bipartite(view, weights)
        measure = instance.weight_of(candidate)
        if measure < best_measure:
            best_cover, best_measure = candidate, measure

    statistics = {'minimal_covers': stream.emitted, 'row_reads': stream.row_reads, 's': s}
    logger.debug(f"sP2 solver examined {stream.emitted} minimal covers of G[T]")
    return SolutionCover.build(instance, best_cover, "sp2", statistics)


class Sp2Solver(Solver):
    """
    Polynomial solver for instances with G[T] sP2-free, s = options.max_s.
    """

    def __init__(self, pattern_cap: int = DEFAULT_PATTERN_CAP):
        """Initialize the solver with the induced-subgraph search cap."""
        self.pattern_cap = pattern_cap
        self.logger = logging.getLogger(__name__)

    def solve(self, instance: Instance, options: SolverOptions) -> SolutionCover:
        self.logger.info(f"Solving {instance} with the sP2 solver, s={options.max_s}")
        solution = solve_sp2(instance, max(options.max_s, 1), self.pattern_cap)
        self.logger.info(f"sP2 solver finished: measure {solution.measure}")
        return solution

    def validate_instance(self, instance: Instance, options: SolverOptions) -> bool:
        try:
            check_t_sp2_free(instance, max(options.max_s, 1), self.pattern_cap)
            return True
        except PreconditionViolation:
            return False
