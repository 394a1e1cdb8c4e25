"""
Command-line interface of the Subset Vertex Cover workbench.

Results go to stdout as ``s <measure>`` / ``v <vertex>`` lines (or one JSON
report with ``--json``); logs go to stderr. Exit codes: 0 success, 2 usage
or file format error, 3 precondition violation, 4 verification failure.
"""

import argparse
import hashlib
import itertools
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from config.app_config import AppConfig, LogLevel
from domain.entities import Graph, Instance, Layout, Measure
from domain.exceptions import (CapExceededError, NoApplicableAlgorithm, PreconditionViolation,
                               VerificationFailure)
from domain.graph_ops import induced_subgraph
from domain.value_objects import (AlgorithmTag, CorpusOptions, GeneratorKind, GraphClass, SolverOptions,
                                  format_measure)
from infrastructure.generators import random_instance
from infrastructure.instance_repository_impl import InstanceRepositoryImpl, serialize_layout
from infrastructure.mimwidth import caterpillar_from_order, layout_mim_width, search_layout
from infrastructure.mis_enumeration import count_check_sp2_bound, enum_maximal_independent_sets
from infrastructure.recognition import (classify_h_free, classify_t_free, contains_induced, find_2_unipolar_partition,
                                        is_bipartite, parse_h_spec, recognize_class)
from infrastructure.solver_factory import SolverFactory
from use_cases.bench_use_case import BenchUseCase
from use_cases.generate_corpus_use_case import GenerateCorpusUseCase, item_seeds
from use_cases.solve_instance_use_case import SolveInstanceUseCase
from use_cases.verify_solution_use_case import VerifySolutionUseCase

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """What one CLI invocation did; ``--json`` prints it."""
    command: List[str]
    exit_code: int = EXIT_OK
    input_digest: Optional[str] = None
    algorithm: Optional[str] = None
    measure: Optional[Measure] = None
    witness_path: Optional[str] = None
    statistics: Dict[str, Any] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': list(self.command),
            'exit_code': self.exit_code,
            'input_digest': self.input_digest,
            'algorithm': self.algorithm,
            'measure': None if self.measure is None else format_measure(self.measure),
            'witness_path': self.witness_path,
            'statistics': self.statistics,
            'details': self.details,
            'error': self.error,
        }


def _digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _parse_order(text: str, vertex_count: int) -> Tuple[int, ...]:
    """Comma-separated 1-based vertex order to a 0-based tuple."""
    try:
        order = tuple(int(token) - 1 for token in text.split(',') if token.strip())
    except ValueError:
        raise ValueError(f"Invalid vertex order '{text}'")
    if sorted(order) != list(range(vertex_count)):
        raise ValueError(f"Vertex order must list each of the {vertex_count} vertices once")
    return order


def _parse_weight_range(text: Optional[str]) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    try:
        low, high = (int(part) for part in text.split(':'))
    except ValueError:
        raise ValueError(f"Weight range must look like LOW:HIGH, got '{text}'")
    return low, high


def _one_based(witness: Optional[Dict[int, int]]) -> Optional[Dict[str, int]]:
    if witness is None:
        return None
    return {str(h + 1): g + 1 for h, g in sorted(witness.items())}


def _instance_files(paths: Sequence[str]) -> List[Path]:
    files = []
    for raw in paths:
        path = Path(raw)
        files.extend(sorted(path.glob('*.svc')) if path.is_dir() else [path])
    return files


def route_names(supported: Sequence[AlgorithmTag]) -> List[str]:
    """Route names accepted on the command line: auto plus every route the factory builds."""
    return [AlgorithmTag.AUTO.value] + [tag.value for tag in supported]


def build_parser(supported: Sequence[AlgorithmTag]) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="Print a JSON run report")
    common.add_argument('--threads', type=int, help="Worker threads for the exact and (P2+P3)-free searches")
    common.add_argument('--max-s', dest='max_s', type=int, help="Largest s tried by the class tests")
    common.add_argument('--oracle-cap', dest='oracle_cap', type=int)
    common.add_argument('--pattern-cap', dest='pattern_cap', type=int)
    common.add_argument('--unipolar-cap', dest='unipolar_cap', type=int)
    common.add_argument('--mim-exact-edge-cap', dest='mim_exact_edge_cap', type=int)
    common.add_argument('--layout-search-cap', dest='layout_search_cap', type=int)
    common.add_argument('--log-level', dest='log_level', choices=[level.value for level in LogLevel])
    common.add_argument('--log-file', dest='log_file')

    parser = argparse.ArgumentParser(prog='svc-workbench', description="Subset Vertex Cover workbench")
    commands = parser.add_subparsers(dest='command', required=True)

    solve = commands.add_parser('solve', parents=[common], help="Solve an instance")
    solve.add_argument('--input', required=True)
    solve.add_argument('--algo', default=AlgorithmTag.AUTO.value, choices=route_names(supported))
    solve.add_argument('--weighted', action='store_true', help="Honour vertex weights from the file")
    placement = solve.add_mutually_exclusive_group()
    placement.add_argument('--layout', help="Rooted layout file for the mim solver")
    placement.add_argument('--order', help="Comma-separated 1-based vertex order for a caterpillar layout")
    solve.add_argument('--out', help="Write the solution file here")

    generate = commands.add_parser('generate', parents=[common], help="Generate instances with certificates")
    generate.add_argument('kind', choices=[kind.value for kind in GeneratorKind])
    generate.add_argument('--input', nargs='*', help="Source instance files or directories (gadgets only)")
    generate.add_argument('--out', required=True, help="Output directory")
    _add_random_arguments(generate)

    check = commands.add_parser('check', help="Class tests and complexity verdicts")
    checks = check.add_subparsers(dest='check_command', required=True)
    hfree = checks.add_parser('hfree', parents=[common], help="Search an induced copy of H")
    hfree.add_argument('--h', required=True, help="Pattern such as 2P1+P2+P3, K1,3, C5 or diamond")
    hfree.add_argument('--input', required=True)
    hfree.add_argument('--terminals', action='store_true', help="Search in G[T] instead of G")
    graph_class = checks.add_parser('class', parents=[common], help="Test membership in a named class")
    graph_class.add_argument('--name', required=True, choices=[name.value for name in GraphClass])
    graph_class.add_argument('--input', required=True)
    classify = checks.add_parser('classify', parents=[common], help="Complexity of H-free inputs")
    classify.add_argument('--h', required=True)
    classify.add_argument('--terminals', action='store_true', help="Only G[T] is required to be H-free")

    verify = commands.add_parser('verify', parents=[common], help="Verify a solution file")
    verify.add_argument('--input', required=True)
    verify.add_argument('--solution', required=True)
    verify.add_argument('--trace', help="Generator trace certifying the optimum")
    verify.add_argument('--weighted', action='store_true', help="Measure the cover by the file's vertex weights")

    enum_mis = commands.add_parser('enum-mis', parents=[common], help="Enumerate maximal independent sets")
    enum_mis.add_argument('--input', required=True)
    enum_mis.add_argument('--limit', type=int)
    enum_mis.add_argument('--count-only', action='store_true')
    enum_mis.add_argument('--bound-s', type=int, help="Compare the count with n^(2s)+1")

    layout = commands.add_parser('layout', help="Rooted layouts and their mim-width")
    layouts = layout.add_subparsers(dest='layout_command', required=True)
    search = layouts.add_parser('search', parents=[common], help="Layout of minimum mim-width")
    search.add_argument('--input', required=True)
    search.add_argument('--out')
    caterpillar = layouts.add_parser('caterpillar', parents=[common], help="Caterpillar layout from an order")
    caterpillar.add_argument('--input', required=True)
    caterpillar.add_argument('--order', required=True)
    caterpillar.add_argument('--out')

    bench = commands.add_parser('bench', parents=[common], help="Compare routes against the oracle")
    bench.add_argument('--input', nargs='*', help="Instance files or directories; a random corpus otherwise")
    bench.add_argument('--algos', default='sp2,p2p3,mim,oracle', help="Comma-separated routes")
    bench.add_argument('--weighted', action='store_true')
    _add_random_arguments(bench)

    return parser


def _add_random_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--count', type=int, default=1)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--n', dest='vertex_count', type=int, default=8)
    parser.add_argument('--p', dest='edge_probability', type=float, default=0.3)
    parser.add_argument('--t-fraction', dest='t_fraction', type=float, default=0.5)
    parser.add_argument('--weights', help="Integer weight range LOW:HIGH")
    parser.add_argument('--denominator', type=int, default=1)


class CommandLineApp:
    """
    Dispatches parsed arguments to the use cases and renders the results.
    """

    def __init__(self, config: AppConfig, out: TextIO):
        self.config = config
        self.out = out
        self.logger = logging.getLogger(__name__)

        self.repository = InstanceRepositoryImpl()
        self.solver_factory = SolverFactory(oracle_cap=config.oracle_cap, pattern_cap=config.pattern_cap,
                                            layout_search_cap=config.layout_search_cap)
        self.solve_use_case = SolveInstanceUseCase(self.solver_factory, config.pattern_cap, config.oracle_cap)
        self.verify_use_case = VerifySolutionUseCase(config.oracle_cap)
        self.corpus_use_case = GenerateCorpusUseCase(self.repository, config.oracle_cap)
        self.bench_use_case = BenchUseCase(self.solve_use_case, config.oracle_cap)

    def emit(self, line: str = "") -> None:
        print(line, file=self.out)

    def handle(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        """Run one subcommand, filling in the report; returns the text output lines."""
        handlers = {
            'solve': self.solve,
            'generate': self.generate,
            'verify': self.verify,
            'enum-mis': self.enum_mis,
            'bench': self.bench,
        }
        if args.command == 'check':
            return {'hfree': self.check_hfree, 'class': self.check_class,
                    'classify': self.check_classify}[args.check_command](args, report)
        if args.command == 'layout':
            return {'search': self.layout_search,
                    'caterpillar': self.layout_caterpillar}[args.layout_command](args, report)
        return handlers[args.command](args, report)

    def _load(self, args: argparse.Namespace, report: RunReport) -> Instance:
        path = Path(args.input)
        instance = self.repository.load_instance(path)
        report.input_digest = _digest(path)
        return instance

    def solve(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        instance = self._load(args, report)
        layout = self.repository.load_layout(Path(args.layout), instance.vertex_count) if args.layout else None
        order = _parse_order(args.order, instance.vertex_count) if args.order else None
        options = SolverOptions(algorithm=AlgorithmTag(args.algo), max_s=self.config.max_s,
                                weighted=args.weighted, layout=layout, order=order,
                                threads=self.config.threads)

        start = time.perf_counter()
        dispatch = self.solve_use_case.execute(instance, options)
        solution = dispatch.result

        report.algorithm = dispatch.chosen_algorithm
        report.measure = solution.measure
        report.statistics = {**solution.statistics, 'wall_time': round(time.perf_counter() - start, 6)}
        report.details = {**dispatch.to_dict(), 'vertices': [v + 1 for v in sorted(solution.vertices)]}
        if solution.within_budget is not None:
            report.details['within_budget'] = solution.within_budget
        if args.out:
            self.repository.save_solution(solution, Path(args.out))
            report.witness_path = args.out

        lines = [f"s {format_measure(solution.measure)}"]
        lines.extend(f"v {v + 1}" for v in sorted(solution.vertices))
        return lines

    def generate(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        options = CorpusOptions(kind=GeneratorKind(args.kind), count=args.count, seed=args.seed,
                                vertex_count=args.vertex_count, edge_probability=args.edge_probability,
                                t_fraction=args.t_fraction, weight_range=_parse_weight_range(args.weights),
                                weight_denominator=args.denominator)
        sources = None
        if args.input:
            sources = [(path.stem, self.repository.load_instance(path).graph)
                       for path in _instance_files(args.input)]

        items = self.corpus_use_case.execute(options, Path(args.out), sources, show_progress=not args.json)
        report.details = {'items': [{'name': item.name, 'instance': str(item.instance_path),
                                     'trace': str(item.trace_path) if item.trace_path else None}
                                    for item in items]}
        return [str(item.instance_path) for item in items]

    def check_hfree(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        instance = self._load(args, report)
        pattern = parse_h_spec(args.h)
        graph, original = instance.graph, list(range(instance.vertex_count))
        if args.terminals:
            graph, original = induced_subgraph(instance.graph, instance.t_mask)

        found = contains_induced(graph, pattern, self.config.pattern_cap)
        witness = None if found is None else {h: original[g] for h, g in found.items()}
        report.details = {'pattern': pattern.name, 'free': witness is None, 'witness': _one_based(witness)}
        if witness is None:
            return [f"{pattern.name}-free"]
        return [f"contains {pattern.name}"] + [f"w {h} {g}" for h, g in _one_based(witness).items()]

    def check_class(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        graph = self._load(args, report).graph
        graph_class = GraphClass(args.name)
        member = recognize_class(graph, graph_class, self.config.unipolar_cap)
        report.details = {'class': graph_class.value, 'member': member}
        lines = ["yes" if member else "no"]

        if member and graph_class is GraphClass.BIPARTITE:
            left, right = is_bipartite(graph)
            report.details['parts'] = [[v + 1 for v in range(graph.vertex_count) if part >> v & 1]
                                       for part in (left, right)]
        elif member and graph_class is GraphClass.TWO_UNIPOLAR:
            partition = find_2_unipolar_partition(graph, self.config.unipolar_cap)
            report.details['parts'] = [sorted(v + 1 for v in partition.clique_part),
                                       sorted(v + 1 for v in partition.cluster_part)]
        for part in report.details.get('parts', []):
            lines.append("part " + " ".join(str(v) for v in part))
        return lines

    def check_classify(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        pattern = parse_h_spec(args.h)
        verdict = classify_t_free(pattern) if args.terminals else classify_h_free(pattern)
        report.details = {'pattern': pattern.name, 'scope': 'G[T]' if args.terminals else 'G',
                          'status': verdict.status, 'reason': verdict.reason, 'parameter': verdict.parameter}
        return [str(verdict)]

    def verify(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        instance = self._load(args, report)
        if not args.weighted:
            instance = instance.unweighted()
        solution = self.repository.load_solution(Path(args.solution), instance.vertex_count)
        trace = self.repository.load_trace(Path(args.trace)) if args.trace else None

        result = self.verify_use_case.execute(instance, solution, trace)
        report.measure = result.measure
        report.witness_path = args.solution
        report.details = {'optimality_checked': result.optimality_checked,
                          'expected_optimum': result.expected_optimum}
        lines = [f"s {format_measure(result.measure)}", "c valid T-vertex cover"]
        if result.optimality_checked:
            lines.append(f"c optimal, certified optimum {result.expected_optimum}")
        return lines

    def enum_mis(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        graph = self._load(args, report).graph
        stream = enum_maximal_independent_sets(graph)
        sets = [sorted(v + 1 for v in found) for found in itertools.islice(stream, args.limit)]
        count = len(sets)
        lines = []
        if not args.count_only:
            lines.extend("m " + " ".join(str(v) for v in members) for members in sets)
        lines.append(f"c count {count}")
        report.statistics = {'count': count, 'row_reads': stream.row_reads}
        report.details = {} if args.count_only else {'sets': sets}

        if args.bound_s is not None:
            check = count_check_sp2_bound(graph, args.bound_s)
            report.details['bound'] = {'count': check.count, 'bound': check.bound, 'within': check.within}
            lines.append(f"c bound {check.bound} {'holds' if check.within else 'violated'}")
        return lines

    def _layout_lines(self, graph: Graph, layout: Layout, args: argparse.Namespace, report: RunReport) -> List[str]:
        width = layout_mim_width(graph, layout, self.config.mim_exact_edge_cap)
        report.statistics = {'mim_width': width.value, 'exact': width.exact}
        lines = [f"c mim-width {width.value}" + ("" if width.exact else " (lower bound)")]
        if args.out:
            self.repository.save_layout(layout, Path(args.out))
            report.witness_path = args.out
        else:
            lines.extend(serialize_layout(layout).splitlines())
        return lines

    def layout_search(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        graph = self._load(args, report).graph
        layout, _ = search_layout(graph, self.config.layout_search_cap, self.config.mim_exact_edge_cap)
        return self._layout_lines(graph, layout, args, report)

    def layout_caterpillar(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        graph = self._load(args, report).graph
        layout = caterpillar_from_order(_parse_order(args.order, graph.vertex_count))
        return self._layout_lines(graph, layout, args, report)

    def bench(self, args: argparse.Namespace, report: RunReport) -> List[str]:
        known = route_names(self.solver_factory.get_supported_algorithms())
        names = [token.strip() for token in args.algos.split(',') if token.strip()]
        unknown = [name for name in names if name not in known]
        if unknown or not names:
            raise ValueError(f"Unknown routes {unknown} in --algos; choose from {', '.join(known)}")
        algorithms = [AlgorithmTag(name) for name in names]
        if args.input:
            instances = [(path.stem, self.repository.load_instance(path)) for path in _instance_files(args.input)]
        else:
            corpus = CorpusOptions(kind=GeneratorKind.RANDOM, count=args.count, seed=args.seed,
                                   vertex_count=args.vertex_count, edge_probability=args.edge_probability,
                                   t_fraction=args.t_fraction, weight_range=_parse_weight_range(args.weights),
                                   weight_denominator=args.denominator)
            instances = [(f"random-{i:04d}", random_instance(corpus.item_params(seed)))
                         for i, seed in enumerate(item_seeds(args.seed, args.count))]

        options = SolverOptions(max_s=self.config.max_s, weighted=args.weighted, threads=self.config.threads)
        result = self.bench_use_case.execute(instances, algorithms, options, show_progress=not args.json)
        report.details = result.to_dict()
        if result.mismatches:
            report.exit_code = EXIT_VERIFICATION
            report.error = f"{len(result.mismatches)} runs disagree with the oracle"

        lines = []
        for row in result.rows:
            measure = '-' if row.measure is None else format_measure(row.measure)
            reference = '-' if row.reference is None else format_measure(row.reference)
            lines.append(f"{row.name} {row.algorithm} {row.status} {measure} {reference} {row.seconds:.4f}")
        lines.append(f"c mismatches {len(result.mismatches)}")
        return lines


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> RunReport:
    """
    Parse ``argv``, run the subcommand and print its output.

    Returns:
        RunReport whose exit_code is 0, 2, 3 or 4
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    report = RunReport(command=argv)

    try:
        args = build_parser(SolverFactory().get_supported_algorithms()).parse_args(argv)
    except SystemExit as e:
        report.exit_code = EXIT_USAGE if e.code else EXIT_OK
        return report

    try:
        config = AppConfig.from_args(args)
    except ValueError as e:
        report.exit_code = EXIT_USAGE
        report.error = str(e)
        print(f"error: {e}", file=sys.stderr)
        return report

    app = CommandLineApp(config, out)
    lines: List[str] = []
    try:
        lines = app.handle(args, report)
    except (PreconditionViolation, NoApplicableAlgorithm, CapExceededError) as e:
        report.exit_code = EXIT_PRECONDITION
        report.error = str(e)
        if isinstance(e, PreconditionViolation):
            report.details['pattern'] = e.pattern
            report.details['witness'] = _one_based(e.witness)
    except VerificationFailure as e:
        report.exit_code = EXIT_VERIFICATION
        report.error = str(e)
    except (ValueError, OSError) as e:
        report.exit_code = EXIT_USAGE
        report.error = str(e)

    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
        witness = report.details.get('witness')
        if witness:
            print("witness: " + ", ".join(f"{h}->{g}" for h, g in witness.items()), file=sys.stderr)

    if args.json:
        report.details.setdefault('config', config.to_dict())
        app.emit(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        for line in lines:
            app.emit(line)
    return report


def main() -> None:
    sys.exit(run().exit_code)
