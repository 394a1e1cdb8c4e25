"""
Use case for solving Subset Vertex Cover instances.
"""

import logging
from typing import List, Optional, Tuple

from domain.entities import DispatchReport, Instance, SolutionCover
from domain.exceptions import NoApplicableAlgorithm, VerificationFailure
from domain.graph_ops import induced_subgraph, is_t_vertex_cover
from domain.value_objects import AlgorithmTag, SolverOptions
from infrastructure.recognition import DEFAULT_PATTERN_CAP, linear_forest_level, sp2_freeness_level
from infrastructure.solver_factory import SolverFactory
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP


class SolveInstanceUseCase:
    """
    Use case for solving an instance with a named solver or by dispatch.

    Dispatch tries, in order: G[T] sP2-free, G (sP1+P2+P3)-free, a supplied
    layout, and finally the exact oracle for small instances.
    """

    def __init__(self, solver_factory: SolverFactory, pattern_cap: int = DEFAULT_PATTERN_CAP,
                 oracle_cap: int = DEFAULT_ORACLE_CAP):
        """
        Initialize the solve use case.

        Args:
            solver_factory: Factory for creating solvers
            pattern_cap: Largest pattern the class tests search for
            oracle_cap: Largest instance the oracle fallback accepts
        """
        self.solver_factory = solver_factory
        self.pattern_cap = pattern_cap
        self.oracle_cap = oracle_cap
        self.logger = logging.getLogger(__name__)

    def execute(self, instance: Instance, options: SolverOptions) -> DispatchReport:
        """
        Execute the solve use case.

        Weights in the instance are only honoured when ``options.weighted`` is set.

        Returns:
            DispatchReport with the chosen algorithm, the class tests and the solution

        Raises:
            PreconditionViolation: If a named solver does not apply
            NoApplicableAlgorithm: If dispatch finds no route
            CapExceededError: If an exponential routine exceeds its cap
            VerificationFailure: If the solution is not a T-vertex cover
        """
        if not options.weighted and instance.is_weighted:
            instance = instance.unweighted()

        try:
            self.logger.info(f"Starting solve of {instance} with {options}")
            if options.algorithm is AlgorithmTag.AUTO:
                report = self.dispatch(instance, options)
            else:
                solver = self.solver_factory.create_solver(options.algorithm)
                solution = solver.solve(instance, options)
                report = DispatchReport(chosen_algorithm=options.algorithm.value, class_evidence=[],
                                        result=solution, parameter=solution.statistics.get('s'))

            self.verify_result(instance, report.result)
            self.logger.info(f"Solved {instance} with {report.chosen_algorithm}: "
                             f"measure {report.result.measure}")
            return report

        except ValueError as e:
            self.logger.error(f"Solve failed: {str(e)}")
            raise

    def dispatch(self, instance: Instance, options: SolverOptions) -> DispatchReport:
        """
        Pick the first route whose precondition holds and run it.

        Raises:
            NoApplicableAlgorithm: If no route applies
        """
        evidence: List[Tuple[str, bool]] = []

        terminal_graph, _ = induced_subgraph(instance.graph, instance.t_mask)
        sp2 = sp2_freeness_level(terminal_graph, options.max_s, self.pattern_cap)
        evidence.extend((f"G[T] {name}", passed) for name, passed in sp2.evidence)
        if sp2.level is not None:
            return self._run_route(instance, options.with_max_s(sp2.level), AlgorithmTag.SP2,
                                   evidence, sp2.level)

        forest = linear_forest_level(instance.graph, options.max_s, self.pattern_cap)
        evidence.extend(forest.evidence)
        if forest.level is not None:
            return self._run_route(instance, options.with_max_s(forest.level), AlgorithmTag.P2P3,
                                   evidence, forest.level)

        evidence.append(("layout supplied", options.has_layout))
        if options.has_layout:
            return self._run_route(instance, options, AlgorithmTag.MIM, evidence)

        evidence.append((f"n <= {self.oracle_cap}", instance.vertex_count <= self.oracle_cap))
        if instance.vertex_count <= self.oracle_cap:
            warning = "No polynomial route applies; falling back to the exact oracle"
            self.logger.warning(warning)
            report = self._run_route(instance, options, AlgorithmTag.ORACLE, evidence)
            report.warnings.append(warning)
            return report

        raise NoApplicableAlgorithm(f"No applicable algorithm for {instance}: "
                                    f"no class test passed, no layout given and n exceeds "
                                    f"the oracle cap of {self.oracle_cap}")

    def _run_route(self, instance: Instance, options: SolverOptions, algorithm: AlgorithmTag,
                   evidence: List[Tuple[str, bool]], parameter: Optional[int] = None) -> DispatchReport:
        self.logger.info(f"Dispatching to {algorithm.value}")
        solver = self.solver_factory.create_solver(algorithm)
        solution = solver.solve(instance, options.with_algorithm(algorithm))
        return DispatchReport(chosen_algorithm=algorithm.value, class_evidence=evidence,
                              result=solution, parameter=parameter)

    def verify_result(self, instance: Instance, solution: SolutionCover) -> None:
        """
        Raises:
            VerificationFailure: If the solution is not a T-vertex cover of the instance
        """
        if not is_t_vertex_cover(instance, solution.vertices):
            raise VerificationFailure(f"{solution.algorithm} returned a set that is not a T-vertex cover")
