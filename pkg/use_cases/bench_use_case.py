"""
Use case for benchmarking solver routes against the exact oracle.
"""

import logging
import time
from typing import List, NamedTuple, Optional, Sequence, Tuple

from tqdm import tqdm

from domain.entities import Instance, Measure
from domain.exceptions import VerificationFailure
from domain.value_objects import AlgorithmTag, SolverOptions, format_measure
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP, solve_exact
from use_cases.solve_instance_use_case import SolveInstanceUseCase


class BenchRow(NamedTuple):
    name: str
    algorithm: str
    status: str
    measure: Optional[Measure] = None
    reference: Optional[Measure] = None
    seconds: float = 0.0
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'algorithm': self.algorithm,
            'status': self.status,
            'measure': None if self.measure is None else format_measure(self.measure),
            'reference': None if self.reference is None else format_measure(self.reference),
            'seconds': round(self.seconds, 6),
            'detail': self.detail,
        }


class BenchReport(NamedTuple):
    rows: List[BenchRow]

    @property
    def mismatches(self) -> List[BenchRow]:
        return [row for row in self.rows if row.status in ('mismatch', 'invalid')]

    def to_dict(self) -> dict:
        return {'rows': [row.to_dict() for row in self.rows], 'mismatches': len(self.mismatches)}


class BenchUseCase:
    """
    Use case for running several routes over a set of instances.

    Row status is ``ok``, ``mismatch`` (measure differs from the oracle),
    ``invalid`` (not a T-vertex cover), ``not-applicable`` (precondition or
    cap) or ``unchecked`` (no oracle reference for large instances).
    """

    def __init__(self, solve_use_case: SolveInstanceUseCase, oracle_cap: int = DEFAULT_ORACLE_CAP):
        """
        Initialize the bench use case.

        Args:
            solve_use_case: Use case running each route with self-verification
            oracle_cap: Largest instance that gets an oracle reference
        """
        self.solve_use_case = solve_use_case
        self.oracle_cap = oracle_cap
        self.logger = logging.getLogger(__name__)

    def execute(self, instances: Sequence[Tuple[str, Instance]], algorithms: Sequence[AlgorithmTag],
                options: SolverOptions, show_progress: bool = False) -> BenchReport:
        """
        Execute the benchmark.

        Returns:
            BenchReport with one row per instance and algorithm
        """
        rows = []
        for name, instance in tqdm(instances, desc="bench", disable=not show_progress):
            compared = instance if options.weighted else instance.unweighted()
            reference = None
            if compared.vertex_count <= self.oracle_cap:
                reference = solve_exact(compared, self.oracle_cap, options.threads).measure
            for algorithm in algorithms:
                rows.append(self._run(name, instance, options.with_algorithm(algorithm), reference))

        report = BenchReport(rows)
        if report.mismatches:
            self.logger.warning(f"{len(report.mismatches)} of {len(rows)} runs disagree with the oracle")
        return report

    def _run(self, name: str, instance: Instance, options: SolverOptions,
             reference: Optional[Measure]) -> BenchRow:
        tag = options.algorithm.value
        start = time.perf_counter()
        factory = self.solve_use_case.solver_factory
        if options.algorithm is not AlgorithmTag.AUTO and not factory.validate_solve(instance, options):
            return BenchRow(name, tag, 'not-applicable', seconds=time.perf_counter() - start,
                            detail="solver does not accept the instance")
        try:
            result = self.solve_use_case.execute(instance, options).result
        except VerificationFailure as e:
            return BenchRow(name, tag, 'invalid', seconds=time.perf_counter() - start, detail=str(e))
        except ValueError as e:
            return BenchRow(name, tag, 'not-applicable', seconds=time.perf_counter() - start, detail=str(e))
        elapsed = time.perf_counter() - start

        if reference is None:
            status = 'unchecked'
        elif result.measure == reference:
            status = 'ok'
        else:
            status = 'mismatch'
            self.logger.warning(f"{tag} on {name}: measure {result.measure}, oracle {reference}")
        return BenchRow(name, tag, status, result.measure, reference, elapsed)
