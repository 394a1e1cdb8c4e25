"""
Use case for verifying claimed solutions.
"""

import logging
from typing import NamedTuple, Optional

from domain.entities import Instance, Measure, ReductionTrace, SolutionCover
from domain.exceptions import VerificationFailure
from domain.graph_ops import is_t_vertex_cover
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP, min_vertex_cover_exact


class VerificationResult(NamedTuple):
    measure: Measure
    expected_optimum: Optional[int] = None

    @property
    def optimality_checked(self) -> bool:
        return self.expected_optimum is not None


class VerifySolutionUseCase:
    """
    Use case for checking that a solution is a T-vertex cover and, given a
    generator trace, that its measure matches the certified optimum.
    """

    def __init__(self, oracle_cap: int = DEFAULT_ORACLE_CAP):
        """
        Initialize the verify use case.

        Args:
            oracle_cap: Largest source graph whose vertex cover number is computed
                when the trace does not record one
        """
        self.oracle_cap = oracle_cap
        self.logger = logging.getLogger(__name__)

    def execute(self, instance: Instance, solution: SolutionCover,
                trace: Optional[ReductionTrace] = None) -> VerificationResult:
        """
        Execute the verification.

        Raises:
            VerificationFailure: If the set is not a T-vertex cover, its declared measure
                is wrong, the trace does not belong to the instance, or the measure
                misses the certified optimum
        """
        try:
            if not is_t_vertex_cover(instance, solution.vertices):
                raise VerificationFailure("Solution is not a T-vertex cover")

            measure = instance.weight_of(solution.vertices)
            if solution.measure != measure:
                raise VerificationFailure(
                    f"Declared measure {solution.measure} differs from the recomputed measure {measure}")
            if trace is None:
                self.logger.info(f"Verified a T-vertex cover of measure {measure}")
                return VerificationResult(measure)

            if trace.t_set != instance.t_set:
                raise VerificationFailure("Trace terminals do not match the instance")

            expected = self.expected_optimum(trace)
            if measure != expected:
                raise VerificationFailure(f"Measure {measure} differs from the certified optimum {expected}")

            self.logger.info(f"Verified an optimal T-vertex cover of measure {measure}")
            return VerificationResult(measure, expected)

        except ValueError as e:
            self.logger.error(f"Verification failed: {str(e)}")
            raise

    def expected_optimum(self, trace: ReductionTrace) -> int:
        """Certified optimum, computing the source vertex cover number when the trace lacks it."""
        if trace.source_vc is not None:
            return trace.expected_optimum
        source_vc = min_vertex_cover_exact(trace.source_graph, cap=self.oracle_cap).measure
        return trace.with_source_vc(source_vc).expected_optimum
