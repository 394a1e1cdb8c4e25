"""
File formats of the workbench and the concrete repository that reads and writes them.

Instance file (line oriented, '#' starts a comment, vertices 1-based)::

    p svc <n> <m>
    e <u> <v>
    t <v>
    w <v> <numerator>[/<denominator>]
    k <budget>

Solution file: ``s <measure>`` then one ``v <vertex>`` line per cover vertex.
Layout file: ``root <id>``, ``inner <id> <child> <child>``, ``leaf <id> <vertex>``.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from domain.entities import Graph, Instance, Layout, ReductionTrace, SolutionCover
from domain.exceptions import InstanceFormatError
from domain.interfaces.repository import InstanceRepository
from domain.value_objects import UnipolarPartition, format_measure, parse_measure

logger = logging.getLogger(__name__)


def _content_lines(text: str):
    """Yield (line number, tokens) for every non-empty, non-comment line."""
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line.split()


def _parse_int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(f"{what} must be an integer, got '{token}'", number)


def _parse_vertex(token: str, number: int, vertex_count: int) -> int:
    vertex = _parse_int(token, number, "Vertex")
    if not 1 <= vertex <= vertex_count:
        raise InstanceFormatError(f"Vertex {vertex} out of range 1..{vertex_count}", number)
    return vertex - 1


def parse_instance(text: str) -> Instance:
    """
    Decode instance-file text.

    Vertices are renumbered 0-based; the original 1-based ids are kept as labels.

    Raises:
        InstanceFormatError: Naming the offending line
    """
    vertex_count: Optional[int] = None
    declared_edges = 0
    edges: List[Tuple[int, int]] = []
    seen_edges = set()
    terminals = set()
    weights: Dict[int, Fraction] = {}
    budget: Optional[int] = None
    last_line = 0

    for number, tokens in _content_lines(text):
        last_line = number
        kind = tokens[0]

        if kind == 'p':
            if vertex_count is not None:
                raise InstanceFormatError("Duplicate header", number)
            if len(tokens) != 4 or tokens[1] != 'svc':
                raise InstanceFormatError("Header must read 'p svc <n> <m>'", number)
            vertex_count = _parse_int(tokens[2], number, "Vertex count")
            declared_edges = _parse_int(tokens[3], number, "Edge count")
            if vertex_count < 0 or declared_edges < 0:
                raise InstanceFormatError("Header counts must be nonnegative", number)
            continue

        if vertex_count is None:
            raise InstanceFormatError(f"'{kind}' line before the 'p svc' header", number)

        if kind == 'e':
            if len(tokens) != 3:
                raise InstanceFormatError("Edge line must read 'e <u> <v>'", number)
            u = _parse_vertex(tokens[1], number, vertex_count)
            v = _parse_vertex(tokens[2], number, vertex_count)
            if u == v:
                raise InstanceFormatError(f"Self-loop at vertex {u + 1}", number)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise InstanceFormatError(f"Duplicate edge {u + 1}-{v + 1}", number)
            seen_edges.add(key)
            edges.append(key)

        elif kind == 't':
            if len(tokens) != 2:
                raise InstanceFormatError("Terminal line must read 't <v>'", number)
            v = _parse_vertex(tokens[1], number, vertex_count)
            if v in terminals:
                raise InstanceFormatError(f"Duplicate terminal {v + 1}", number)
            terminals.add(v)

        elif kind == 'w':
            if len(tokens) != 3:
                raise InstanceFormatError("Weight line must read 'w <v> <num>[/<den>]'", number)
            v = _parse_vertex(tokens[1], number, vertex_count)
            if v in weights:
                raise InstanceFormatError(f"Duplicate weight for vertex {v + 1}", number)
            try:
                weight = Fraction(tokens[2])
            except (ValueError, ZeroDivisionError):
                raise InstanceFormatError(f"Invalid weight '{tokens[2]}'", number)
            if weight <= 0:
                raise InstanceFormatError(f"Weight of vertex {v + 1} must be positive", number)
            weights[v] = weight

        elif kind == 'k':
            if len(tokens) != 2 or budget is not None:
                raise InstanceFormatError("Budget line must appear once as 'k <int>'", number)
            budget = _parse_int(tokens[1], number, "Budget")
            if budget < 0:
                raise InstanceFormatError("Budget must be nonnegative", number)

        else:
            raise InstanceFormatError(f"Unknown line type '{kind}'", number)

    if vertex_count is None:
        raise InstanceFormatError("Missing 'p svc <n> <m>' header", last_line or None)
    if len(edges) != declared_edges:
        raise InstanceFormatError(f"Header declares {declared_edges} edges, found {len(edges)}", last_line)

    labels = tuple(str(v + 1) for v in range(vertex_count))
    graph = Graph.from_edges(vertex_count, edges, labels)
    weight_tuple = None
    if weights:
        weight_tuple = tuple(weights.get(v, Fraction(1)) for v in range(vertex_count))
    return Instance(graph=graph, t_set=frozenset(terminals), weights=weight_tuple, budget=budget)


def serialize_instance(instance: Instance) -> str:
    """Encode an instance; weighted instances list a weight for every vertex."""
    graph = instance.graph
    lines = [f"p svc {graph.vertex_count} {graph.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edge_list)
    lines.extend(f"t {v + 1}" for v in sorted(instance.t_set))
    if instance.weights is not None:
        lines.extend(f"w {v + 1} {format_measure(w)}" for v, w in enumerate(instance.weights))
    if instance.budget is not None:
        lines.append(f"k {instance.budget}")
    return "\n".join(lines) + "\n"


def serialize_solution(solution: SolutionCover) -> str:
    lines = [f"s {format_measure(solution.measure)}"]
    lines.extend(f"v {v + 1}" for v in sorted(solution.vertices))
    return "\n".join(lines) + "\n"


def parse_solution(text: str, vertex_count: int) -> SolutionCover:
    """
    Decode solution-file text.

    Raises:
        InstanceFormatError: On a missing or repeated ``s`` line or bad vertices
    """
    measure = None
    vertices = set()
    for number, tokens in _content_lines(text):
        if tokens[0] == 's' and len(tokens) == 2:
            if measure is not None:
                raise InstanceFormatError("Duplicate 's' line", number)
            try:
                measure = parse_measure(tokens[1])
            except (ValueError, ZeroDivisionError):
                raise InstanceFormatError(f"Invalid measure '{tokens[1]}'", number)
        elif tokens[0] == 'v' and len(tokens) == 2:
            v = _parse_vertex(tokens[1], number, vertex_count)
            if v in vertices:
                raise InstanceFormatError(f"Duplicate cover vertex {v + 1}", number)
            vertices.add(v)
        else:
            raise InstanceFormatError(f"Unexpected solution line '{' '.join(tokens)}'", number)
    if measure is None:
        raise InstanceFormatError("Missing 's <measure>' line")
    return SolutionCover(vertices=frozenset(vertices), measure=measure, algorithm="file")


def parse_layout(text: str, vertex_count: int) -> Layout:
    """
    Decode layout-file text into a validated Layout.

    Raises:
        InstanceFormatError: On malformed lines, non-bijective leaves or broken tree shape
    """
    root = None
    children: Dict[int, Tuple[int, int]] = {}
    leaves: Dict[int, int] = {}
    for number, tokens in _content_lines(text):
        kind = tokens[0]
        if kind == 'root' and len(tokens) == 2:
            if root is not None:
                raise InstanceFormatError("Duplicate root line", number)
            root = _parse_int(tokens[1], number, "Node id")
        elif kind == 'inner' and len(tokens) == 4:
            node = _parse_int(tokens[1], number, "Node id")
            if node in children or node in leaves:
                raise InstanceFormatError(f"Node {node} defined twice", number)
            children[node] = (_parse_int(tokens[2], number, "Node id"),
                              _parse_int(tokens[3], number, "Node id"))
        elif kind == 'leaf' and len(tokens) == 3:
            node = _parse_int(tokens[1], number, "Node id")
            if node in children or node in leaves:
                raise InstanceFormatError(f"Node {node} defined twice", number)
            leaves[node] = _parse_vertex(tokens[2], number, vertex_count)
        else:
            raise InstanceFormatError(f"Unexpected layout line '{' '.join(tokens)}'", number)

    if root is None:
        raise InstanceFormatError("Missing 'root <id>' line")
    try:
        layout = Layout(root=root, children=children, leaf_vertex=leaves)
    except ValueError as e:
        raise InstanceFormatError(f"Invalid layout: {str(e)}")
    if not layout.covers(vertex_count):
        raise InstanceFormatError("Layout leaves do not carry every vertex exactly once")
    return layout


def serialize_layout(layout: Layout) -> str:
    lines = [f"root {layout.root}"]
    for node in layout.postorder():
        if node in layout.children:
            left, right = layout.children[node]
            lines.append(f"inner {node} {left} {right}")
        else:
            lines.append(f"leaf {node} {layout.leaf_vertex[node] + 1}")
    return "\n".join(lines) + "\n"


def trace_to_dict(trace: ReductionTrace) -> Dict[str, Any]:
    """JSON-ready form of a trace; vertices are written 1-based."""
    source = trace.source_graph
    data: Dict[str, Any] = {
        'kind': trace.kind,
        'source': {
            'n': source.vertex_count,
            'edges': [[u + 1, v + 1] for u, v in source.edge_list],
        },
        'offset': trace.offset,
        'vertex_map': {str(k + 1): v + 1 for k, v in sorted(trace.vertex_map.items())},
        't_set': [v + 1 for v in sorted(trace.t_set)],
        'claims': list(trace.claims),
        'certificate': None,
    }
    if isinstance(trace.certificate, UnipolarPartition):
        data['certificate'] = {
            'clique_part': [v + 1 for v in sorted(trace.certificate.clique_part)],
            'cluster_part': [v + 1 for v in sorted(trace.certificate.cluster_part)],
        }
    if trace.source_vc is not None:
        data['vc'] = trace.source_vc
    return data


def trace_from_dict(data: Dict[str, Any]) -> ReductionTrace:
    """
    Rebuild a trace from its JSON form.

    Raises:
        InstanceFormatError: If a required field is missing or malformed
    """
    try:
        source = Graph.from_edges(int(data['source']['n']),
                                  [(u - 1, v - 1) for u, v in data['source']['edges']])
        certificate = None
        if data.get('certificate'):
            certificate = UnipolarPartition(
                clique_part=frozenset(v - 1 for v in data['certificate']['clique_part']),
                cluster_part=frozenset(v - 1 for v in data['certificate']['cluster_part']),
            )
        return ReductionTrace(
            kind=data['kind'],
            source_graph=source,
            offset=int(data['offset']),
            vertex_map={int(k) - 1: int(v) - 1 for k, v in data.get('vertex_map', {}).items()},
            t_set=frozenset(v - 1 for v in data.get('t_set', [])),
            certificate=certificate,
            claims=tuple(data.get('claims', [])),
            source_vc=data.get('vc'),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceFormatError(f"Invalid trace: {str(e)}")


class InstanceRepositoryImpl(InstanceRepository):
    """
    Concrete repository storing workbench files on the local file system.
    """

    def __init__(self):
        """Initialize the instance repository."""
        self.logger = logging.getLogger(__name__)

    def _read(self, file_path: Path) -> str:
        file_path = Path(file_path)
        if not file_path.exists():
            raise FileNotFoundError(f"File does not exist: {file_path}")
        return file_path.read_text(encoding='utf-8')

    def _write(self, output_path: Path, text: str) -> None:
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(text, encoding='utf-8')
        self.logger.info(f"Wrote {output_path}")

    def load_instance(self, file_path: Path) -> Instance:
        try:
            return parse_instance(self._read(file_path))
        except InstanceFormatError as e:
            self.logger.error(f"Error loading instance {file_path}: {str(e)}")
            raise

    def save_instance(self, instance: Instance, output_path: Path) -> None:
        self._write(output_path, serialize_instance(instance))

    def load_solution(self, file_path: Path, vertex_count: int) -> SolutionCover:
        return parse_solution(self._read(file_path), vertex_count)

    def save_solution(self, solution: SolutionCover, output_path: Path) -> None:
        self._write(output_path, serialize_solution(solution))

    def load_layout(self, file_path: Path, vertex_count: int) -> Layout:
        return parse_layout(self._read(file_path), vertex_count)

    def save_layout(self, layout: Layout, output_path: Path) -> None:
        self._write(output_path, serialize_layout(layout))

    def load_trace(self, file_path: Path) -> ReductionTrace:
        try:
            data = json.loads(self._read(file_path))
        except json.JSONDecodeError as e:
            raise InstanceFormatError(f"Trace is not valid JSON: {str(e)}")
        return trace_from_dict(data)

    def save_trace(self, trace: ReductionTrace, output_path: Path) -> None:
        self._write(output_path, json.dumps(trace_to_dict(trace), indent=2, sort_keys=True) + "\n")
