"""
Abstract base class for Subset Vertex Cover solvers.
"""

from abc import ABC, abstractmethod

from ..entities import Instance, SolutionCover
from ..value_objects import SolverOptions


class Solver(ABC):
    """
    Abstract base class for Subset Vertex Cover solvers.

    This interface defines the contract every solver route (exact oracle,
    polynomial algorithms for restricted classes, mim-width dynamic program)
    fulfils so the dispatcher can treat them uniformly.
    """

    @abstractmethod
    def solve(self, instance: Instance, options: SolverOptions) -> SolutionCover:
        """
        Compute a minimum (weight) T-vertex cover.

        Args:
            instance: The instance to solve
            options: SolverOptions carrying the per-solve choices

        Returns:
            SolutionCover with measure, witness set and statistics

        Raises:
            PreconditionViolation: If the instance lies outside the solver's class
            CapExceededError: If an exponential routine would exceed its cap
        """
        pass

    @abstractmethod
    def validate_instance(self, instance: Instance, options: SolverOptions) -> bool:
        """
        Check whether the solver's precondition holds for an instance.

        Args:
            instance: The instance to check
            options: SolverOptions carrying the per-solve choices

        Returns:
            True if solve() can be applied, False otherwise
        """
        pass
