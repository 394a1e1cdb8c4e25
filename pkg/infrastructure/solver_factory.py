"""
Factory for creating Subset Vertex Cover solvers based on the algorithm tag.
"""

from functools import partial
from typing import Callable, Dict

from domain.entities import Instance
from domain.interfaces.solver import Solver
from domain.value_objects import AlgorithmTag, SolverOptions
from infrastructure.mimwidth import DEFAULT_LAYOUT_SEARCH_CAP
from infrastructure.recognition import DEFAULT_PATTERN_CAP
from infrastructure.solvers.mim_solver import MimSolver
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP, OracleSolver
from infrastructure.solvers.p2p3_solver import P2P3Solver
from infrastructure.solvers.sp2_solver import Sp2Solver


class SolverFactory:
    """
    Factory class for creating solver instances configured with the search caps.
    """

    def __init__(self, oracle_cap: int = DEFAULT_ORACLE_CAP, pattern_cap: int = DEFAULT_PATTERN_CAP,
                 layout_search_cap: int = DEFAULT_LAYOUT_SEARCH_CAP):
        """Initialize the solver factory with the available solvers."""
        self._solvers: Dict[AlgorithmTag, Callable[[], Solver]] = {
            AlgorithmTag.SP2: partial(Sp2Solver, pattern_cap=pattern_cap),
            AlgorithmTag.P2P3: partial(P2P3Solver, pattern_cap=pattern_cap, oracle_cap=oracle_cap),
            AlgorithmTag.ORACLE: partial(OracleSolver, cap=oracle_cap),
            AlgorithmTag.MIM: partial(MimSolver, layout_search_cap=layout_search_cap),
        }

    def create_solver(self, algorithm: AlgorithmTag) -> Solver:
        """
        Create a solver instance for the specified algorithm.

        Args:
            algorithm: The solver route; AUTO is resolved by the dispatcher, not here

        Returns:
            Solver instance for the specified algorithm

        Raises:
            ValueError: If the algorithm is not supported
        """
        if algorithm not in self._solvers:
            supported = ', '.join(tag.value for tag in self._solvers)
            raise ValueError(f"Algorithm '{algorithm.value}' is not supported. "
                             f"Supported algorithms: {supported}")
        return self._solvers[algorithm]()

    def get_supported_algorithms(self) -> list[AlgorithmTag]:
        return list(self._solvers.keys())

    def is_supported(self, algorithm: AlgorithmTag) -> bool:
        return algorithm in self._solvers

    def validate_solve(self, instance: Instance, options: SolverOptions) -> bool:
        """
        Check whether the solver named in the options accepts the instance.

        Returns:
            True if the solve can be performed, False otherwise
        """
        if not self.is_supported(options.algorithm):
            return False

        try:
            return self.create_solver(options.algorithm).validate_instance(instance, options)
        except ValueError:
            return False
