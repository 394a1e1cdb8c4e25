"""
Tests for the solve dispatcher, verification, corpus generation and bench.
"""

import logging
from fractions import Fraction

import pytest

from domain.entities import Instance, SolutionCover
from domain.exceptions import NoApplicableAlgorithm, PreconditionViolation, VerificationFailure
from domain.graph_ops import build_named
from domain.interfaces.solver import Solver
from domain.value_objects import AlgorithmTag, CorpusOptions, GeneratorKind, SolverOptions
from infrastructure.generators import gen_two_unipolar
from infrastructure.solver_factory import SolverFactory
from infrastructure.solvers.oracle_solver import solve_exact
from use_cases import BenchUseCase, GenerateCorpusUseCase, SolveInstanceUseCase, VerifySolutionUseCase
from tests.helpers import instance_of


class AllVerticesSolver(Solver):
    """Always answers with every vertex: a valid cover, rarely optimal."""

    def solve(self, instance, options):
        return SolutionCover.build(instance, instance.graph.all_mask, "all")

    def validate_instance(self, instance, options):
        return True


class EmptySetSolver(AllVerticesSolver):

    def solve(self, instance, options):
        return SolutionCover.build(instance, 0, "empty")


class StubFactory(SolverFactory):

    def __init__(self, solver: Solver):
        super().__init__()
        self.solver = solver

    def create_solver(self, algorithm):
        if algorithm is AlgorithmTag.ORACLE:
            return self.solver
        return super().create_solver(algorithm)


def test_dispatch_prefers_sp2(solve_use_case, star):
    report = solve_use_case.execute(star, SolverOptions())
    assert report.chosen_algorithm == "sp2"
    assert report.parameter == 1
    assert report.class_evidence[0] == ("G[T] 1P2-free", True)
    assert report.result.vertices == frozenset({0})


def test_dispatch_falls_to_p2p3(solve_use_case, terminal_triangle):
    report = solve_use_case.execute(terminal_triangle, SolverOptions(max_s=1))
    assert report.chosen_algorithm == "p2p3"
    assert report.parameter == 0
    assert report.result.measure == 2
    assert report.class_evidence == [("G[T] 1P2-free", False), ("P2+P3-free", True)]


def test_dispatch_uses_a_supplied_order(solve_use_case, linear_forest_instance):
    report = solve_use_case.execute(linear_forest_instance, SolverOptions(max_s=1, order=tuple(range(6))))
    assert report.chosen_algorithm == "mim"
    assert report.result.measure == 2
    assert report.class_evidence[-1] == ("layout supplied", True)


def test_dispatch_falls_back_to_the_oracle(solve_use_case, linear_forest_instance, caplog):
    with caplog.at_level(logging.WARNING):
        report = solve_use_case.execute(linear_forest_instance, SolverOptions(max_s=1))
    assert report.chosen_algorithm == "oracle"
    assert report.result.measure == 2
    assert report.warnings
    assert report.class_evidence[-2:] == [("layout supplied", False), ("n <= 26", True)]
    assert "falling back" in caplog.text


def test_dispatch_without_a_route(linear_forest_instance):
    use_case = SolveInstanceUseCase(SolverFactory(oracle_cap=5), oracle_cap=5)
    with pytest.raises(NoApplicableAlgorithm):
        use_case.execute(linear_forest_instance, SolverOptions(max_s=1))


def test_named_route_precondition(solve_use_case, terminal_triangle):
    with pytest.raises(PreconditionViolation) as excinfo:
        solve_use_case.execute(terminal_triangle, SolverOptions(algorithm=AlgorithmTag.SP2, max_s=1))
    assert excinfo.value.pattern == "1P2"


def test_weights_are_ignored_unless_requested(solve_use_case):
    instance = instance_of(3, [(0, 1), (1, 2)], [0, 2], weights=[1, 5, 1])
    assert solve_use_case.execute(instance, SolverOptions()).result.vertices == frozenset({1})
    weighted = solve_use_case.execute(instance, SolverOptions(weighted=True)).result
    assert weighted.vertices == frozenset({0, 2})
    assert weighted.measure == 2


def test_solver_output_is_verified(star):
    use_case = SolveInstanceUseCase(StubFactory(EmptySetSolver()))
    with pytest.raises(VerificationFailure):
        use_case.execute(star, SolverOptions(algorithm=AlgorithmTag.ORACLE))


def test_solver_factory():
    factory = SolverFactory()
    assert AlgorithmTag.AUTO not in factory.get_supported_algorithms()
    with pytest.raises(ValueError):
        factory.create_solver(AlgorithmTag.AUTO)
    assert factory.is_supported(AlgorithmTag.MIM)
    assert not factory.validate_solve(instance_of(3, [(0, 1)], [0]), SolverOptions())


def test_verify_plain_cover(star):
    result = VerifySolutionUseCase().execute(star, SolutionCover.build(star, {0}, "claimed"))
    assert result.measure == 1
    assert not result.optimality_checked

    with pytest.raises(VerificationFailure):
        VerifySolutionUseCase().execute(star, SolutionCover.build(star, set(), "claimed"))


def test_verify_rejects_a_wrong_declared_measure(star):
    verifier = VerifySolutionUseCase()
    with pytest.raises(VerificationFailure, match="Declared measure"):
        verifier.execute(star, SolutionCover(vertices=frozenset({0}), measure=0, algorithm="file"))

    weighted = instance_of(3, [(0, 1), (1, 2)], [0, 2], weights=[1, Fraction(5, 2), 1])
    claimed = SolutionCover(vertices=frozenset({1}), measure=Fraction(5, 2), algorithm="file")
    assert verifier.execute(weighted, claimed).measure == Fraction(5, 2)
    with pytest.raises(VerificationFailure):
        verifier.execute(weighted.unweighted(), claimed)


def test_verify_against_a_trace():
    instance, trace = gen_two_unipolar(build_named('complete', 3))
    verifier = VerifySolutionUseCase()

    result = verifier.execute(instance, solve_exact(instance), trace)
    assert result.expected_optimum == 5
    assert result.optimality_checked

    with pytest.raises(VerificationFailure):
        verifier.execute(instance, SolutionCover.build(instance, instance.graph.all_mask, "claimed"), trace)

    other_terminals = Instance(graph=instance.graph, t_set=frozenset(range(instance.vertex_count)))
    with pytest.raises(VerificationFailure):
        verifier.execute(other_terminals, SolutionCover.build(other_terminals, other_terminals.graph.all_mask,
                                                              "claimed"), trace)


def test_gadget_corpus(tmp_path, repository):
    use_case = GenerateCorpusUseCase(repository)
    items = use_case.execute(CorpusOptions(kind=GeneratorKind.CLAW_DIAMOND, count=2, vertex_count=4,
                                           edge_probability=0.5), tmp_path)
    assert [item.name for item in items] == ["claw-diamond-0000", "claw-diamond-0001"]
    for item in items:
        assert item.instance_path == tmp_path / f"{item.name}.svc"
        assert item.trace_path.exists()
        trace = repository.load_trace(item.trace_path)
        assert trace.source_vc is not None
        assert trace.claims == ("claw-free", "diamond-free", "subcubic")
        assert repository.load_instance(item.instance_path).t_set == trace.t_set


def test_gadget_corpus_from_given_sources(tmp_path, repository, solve_use_case):
    items = GenerateCorpusUseCase(repository).execute(CorpusOptions(kind=GeneratorKind.TWO_UNIPOLAR), tmp_path,
                                                      sources=[("triangle", build_named('complete', 3))])
    assert items[0].name == "triangle"
    instance = repository.load_instance(items[0].instance_path)
    trace = repository.load_trace(items[0].trace_path)
    report = solve_use_case.execute(instance, SolverOptions())
    assert VerifySolutionUseCase().execute(instance, report.result, trace).expected_optimum == 5


def test_random_corpus_is_reproducible(tmp_path, repository):
    options = CorpusOptions(kind=GeneratorKind.RANDOM, count=3, seed=11, vertex_count=7)
    first = GenerateCorpusUseCase(repository).execute(options, tmp_path / "a")
    second = GenerateCorpusUseCase(repository).execute(options, tmp_path / "b")
    assert [item.name for item in first] == ["random-0000", "random-0001", "random-0002"]
    assert all(item.trace_path is None for item in first)
    for a, b in zip(first, second):
        assert a.instance_path.read_text() == b.instance_path.read_text()


def test_random_corpus_takes_no_sources(tmp_path, repository):
    use_case = GenerateCorpusUseCase(repository)
    with pytest.raises(ValueError):
        use_case.execute(CorpusOptions(kind=GeneratorKind.RANDOM), tmp_path,
                         sources=[("triangle", build_named('complete', 3))])
    with pytest.raises(ValueError):
        use_case.build(GeneratorKind.RANDOM, build_named('complete', 3))


def test_bench_statuses(solve_use_case, star, terminal_triangle):
    report = BenchUseCase(solve_use_case).execute(
        [("star", star), ("triangle", terminal_triangle)],
        [AlgorithmTag.SP2, AlgorithmTag.ORACLE, AlgorithmTag.AUTO], SolverOptions(max_s=1))
    statuses = {(row.name, row.algorithm): row.status for row in report.rows}
    assert len(report.rows) == 6
    assert statuses[("triangle", "sp2")] == "not-applicable"
    skipped = next(row for row in report.rows if (row.name, row.algorithm) == ("triangle", "sp2"))
    assert skipped.detail == "solver does not accept the instance"
    assert skipped.measure is None
    assert all(status == "ok" for key, status in statuses.items() if key != ("triangle", "sp2"))
    assert report.mismatches == []
    assert report.to_dict()['mismatches'] == 0


def test_bench_flags_mismatches_and_skips_large_instances(star):
    stubbed = SolveInstanceUseCase(StubFactory(AllVerticesSolver()))
    report = BenchUseCase(stubbed).execute([("star", star)], [AlgorithmTag.ORACLE], SolverOptions())
    assert report.rows[0].status == "mismatch"
    assert report.rows[0].measure == 5
    assert report.rows[0].reference == 1

    unchecked = BenchUseCase(SolveInstanceUseCase(SolverFactory()), oracle_cap=2).execute(
        [("star", star)], [AlgorithmTag.SP2], SolverOptions())
    assert unchecked.rows[0].status == "unchecked"
