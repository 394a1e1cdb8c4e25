"""
Peeling isolated-vertex components off a forbidden pattern.

A maximum T-independent set I either avoids T (then I = V∖T) or contains a
terminal v, in which case I∖{v} is a maximum T-independent set of G - N[v].
If G is (sP1+H)-free, every G - N[v] is ((s-1)P1+H)-free, so s peeling
levels reduce to a solver for H-free graphs.
"""

import logging
from typing import Callable, Optional, Tuple

from domain.entities import Instance, Measure, SolutionCover
from domain.exceptions import PreconditionViolation
from domain.graph_ops import induced_instance, lift_mask
from infrastructure.recognition import DEFAULT_PATTERN_CAP, contains_induced, parse_h_spec

logger = logging.getLogger(__name__)

BaseSolver = Callable[[Instance], SolutionCover]


def _level_spec(level: int, residual_pattern: str) -> str:
    return f"{level}P1+{residual_pattern}" if level else residual_pattern


class _Peeler:

    def __init__(self, base: BaseSolver, residual_pattern: Optional[str], pattern_cap: int):
        self.base = base
        self.residual_pattern = residual_pattern
        self.pattern_cap = pattern_cap
        self.base_calls = 0

    def best_independent(self, instance: Instance, level: int) -> Tuple[Measure, int]:
        """Maximum-weight T-independent set of the instance as (weight, mask)."""
        graph = instance.graph
        if level == 0:
            self.base_calls += 1
            independent = graph.all_mask & ~self.base(instance).mask
            return instance.weight_of(independent), independent

        outside = graph.all_mask & ~instance.t_mask
        best = (instance.weight_of(outside), outside)
        for v in sorted(instance.t_set):
            closed = graph.adjacency[v] | (1 << v)
            residual, original = induced_instance(instance, graph.all_mask & ~closed)
            self._check_residual(residual, level - 1)
            weight, found = self.best_independent(residual, level - 1)
            weight += instance.vertex_weight(v)
            if weight > best[0]:
                best = (weight, lift_mask(found, original) | (1 << v))
        return best

    def _check_residual(self, residual: Instance, level: int) -> None:
        if self.residual_pattern is None:
            return
        spec = _level_spec(level, self.residual_pattern)
        pattern = parse_h_spec(spec)
        if pattern.size > self.pattern_cap:
            return
        witness = contains_induced(residual.graph, pattern, self.pattern_cap)
        if witness is not None:
            raise PreconditionViolation(f"Residual graph is not {spec}-free", pattern=spec, witness=witness)


def peel_p1(instance: Instance, base: BaseSolver, s: int, residual_pattern: Optional[str] = None,
            pattern_cap: int = DEFAULT_PATTERN_CAP) -> SolutionCover:
    """
    Minimum (weight) T-vertex cover of an (sP1+H)-free instance from an H-free solver.

    Args:
        instance: The instance
        base: Solver for H-free instances
        s: Number of peeling levels; s = 0 calls the base solver directly
        residual_pattern: H as a pattern string; when given, every residual
            graph is checked to be free of the pattern one level down

    Raises:
        ValueError: If s is negative
        PreconditionViolation: If a residual graph still contains the pattern
    """
    if s < 0:
        raise ValueError(f"Peeling depth must be nonnegative, got {s}")
    if s == 0:
        return base(instance)

    peeler = _Peeler(base, residual_pattern, pattern_cap)
    _, independent = peeler.best_independent(instance, s)
    cover = instance.graph.all_mask & ~independent
    logger.debug(f"Peeling {s} levels used {peeler.base_calls} base calls")
    return SolutionCover.build(instance, cover, "peel", {'levels': s, 'base_calls': peeler.base_calls})
