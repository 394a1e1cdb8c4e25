"""
Domain value objects for the Subset Vertex Cover workbench.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Optional, Tuple

from .entities import Graph, Layout


class AlgorithmTag(Enum):
    """Solver routes selectable from the command line."""
    AUTO = "auto"
    SP2 = "sp2"
    P2P3 = "p2p3"
    ORACLE = "oracle"
    MIM = "mim"


class GraphClass(Enum):
    """Named classes the recognizers can check."""
    CLUSTER = "cluster"
    BIPARTITE = "bipartite"
    TWO_UNIPOLAR = "2unipolar"
    SUBCUBIC = "subcubic"


class GeneratorKind(Enum):
    """Instance generators selectable from the command line."""
    TWO_SUBDIVISION = "two-subdivision"
    CLAW_DIAMOND = "claw-diamond"
    TWO_UNIPOLAR = "two-unipolar"
    RANDOM = "random"


@dataclass(frozen=True)
class HPattern:
    """
    A forbidden induced subgraph H, optionally with the textual form it was parsed from.
    """
    pattern_graph: Graph
    source_spec: Optional[str] = None

    def __post_init__(self):
        if self.pattern_graph.vertex_count == 0:
            raise ValueError("Pattern graph must be nonempty")

    @property
    def size(self) -> int:
        return self.pattern_graph.vertex_count

    @property
    def name(self) -> str:
        return self.source_spec or str(self.pattern_graph)

    def __str__(self) -> str:
        return f"HPattern({self.name})"


@dataclass(frozen=True)
class UnipolarPartition:
    """Split of V into a clique part V1 and a part V2 of cliques of size at most 2."""
    clique_part: FrozenSet[int]
    cluster_part: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'clique_part', frozenset(self.clique_part))
        object.__setattr__(self, 'cluster_part', frozenset(self.cluster_part))


@dataclass(frozen=True)
class BipartiteView:
    """
    Bipartite window onto a graph: only edges between ``left`` and ``right``
    (both bitmasks) belong to the view.
    """
    graph: Graph
    left: int
    right: int

    def __post_init__(self):
        """Validate that the parts are disjoint and that no edge stays inside a part."""
        if self.left & self.right:
            raise ValueError("Left and right parts of a bipartite view overlap")

        adjacency = self.graph.adjacency
        for part, name in ((self.left, "left"), (self.right, "right")):
            rest = part
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if adjacency[v] & part:
                    raise ValueError(f"View is not bipartite: edge inside the {name} part at vertex {v}")
                rest ^= low

    @property
    def vertices(self) -> int:
        return self.left | self.right


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edges, each stored as (left vertex, right vertex)."""
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError(f"Matching edges share an endpoint at {u}-{v}")
            seen.update((u, v))

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class HFreeVerdict:
    """
    Complexity verdict for Subset Vertex Cover on H-free inputs.

    ``status`` is one of ``polynomial``, ``np-complete`` or ``open``;
    ``reason`` names the algorithm route or the hardness source.
    """
    status: str
    reason: str
    parameter: Optional[int] = None

    def __str__(self) -> str:
        suffix = f" (s={self.parameter})" if self.parameter is not None else ""
        return f"{self.status}: {self.reason}{suffix}"


@dataclass(frozen=True)
class RandomInstanceParams:
    """
    Parameters of a reproducible random instance. The seed is mandatory.
    """
    vertex_count: int
    edge_probability: float
    t_fraction: float
    seed: int
    weight_range: Optional[Tuple[int, int]] = None
    weight_denominator: int = 1

    def __post_init__(self):
        """Validate random instance parameters after initialization."""
        if self.vertex_count < 0:
            raise ValueError("Vertex count must be nonnegative")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError(f"Edge probability must be in [0, 1], got {self.edge_probability}")
        if not 0.0 <= self.t_fraction <= 1.0:
            raise ValueError(f"Terminal fraction must be in [0, 1], got {self.t_fraction}")
        if self.seed is None:
            raise ValueError("A seed is required")
        if self.weight_range is not None:
            low, high = self.weight_range
            if low <= 0 or high < low:
                raise ValueError(f"Invalid weight range: {self.weight_range}")
        if self.weight_denominator <= 0:
            raise ValueError("Weight denominator must be positive")


@dataclass(frozen=True)
class CorpusOptions:
    """
    What a corpus run generates: the generator, how many items, and the
    random parameters used for instances and for gadget source graphs.
    """
    kind: GeneratorKind
    count: int = 1
    seed: int = 0
    vertex_count: int = 8
    edge_probability: float = 0.3
    t_fraction: float = 0.5
    weight_range: Optional[Tuple[int, int]] = None
    weight_denominator: int = 1

    def __post_init__(self):
        """Validate corpus options after initialization."""
        if not isinstance(self.kind, GeneratorKind):
            raise ValueError(f"Invalid generator: {self.kind}")
        if self.count < 1:
            raise ValueError("Corpus count must be at least 1")
        self.item_params(self.seed)

    def item_params(self, seed: int) -> RandomInstanceParams:
        """Random instance parameters for one corpus item."""
        return RandomInstanceParams(vertex_count=self.vertex_count, edge_probability=self.edge_probability,
                                    t_fraction=self.t_fraction, seed=seed, weight_range=self.weight_range,
                                    weight_denominator=self.weight_denominator)


@dataclass(frozen=True)
class SolverOptions:
    """
    Value object with the per-solve choices. Immutable so a dispatch run
    cannot change its own configuration midway.
    """
    algorithm: AlgorithmTag = AlgorithmTag.AUTO
    max_s: int = 3
    weighted: bool = False
    layout: Optional[Layout] = None
    order: Optional[Tuple[int, ...]] = None
    threads: int = 1

    def __post_init__(self):
        """Validate solver options after initialization."""
        if not isinstance(self.algorithm, AlgorithmTag):
            raise ValueError(f"Invalid algorithm: {self.algorithm}")
        if self.max_s < 0:
            raise ValueError("max_s must be nonnegative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.layout is not None and self.order is not None:
            raise ValueError("Give either a layout or a vertex order, not both")

    @property
    def has_layout(self) -> bool:
        return self.layout is not None or self.order is not None

    def with_algorithm(self, algorithm: AlgorithmTag) -> 'SolverOptions':
        """Create new SolverOptions with a different algorithm."""
        return SolverOptions(algorithm=algorithm, max_s=self.max_s, weighted=self.weighted,
                             layout=self.layout, order=self.order, threads=self.threads)

    def with_max_s(self, max_s: int) -> 'SolverOptions':
        """Create new SolverOptions with a different freeness parameter."""
        return SolverOptions(algorithm=self.algorithm, max_s=max_s, weighted=self.weighted,
                             layout=self.layout, order=self.order, threads=self.threads)

    def __str__(self) -> str:
        return f"SolverOptions(algorithm={self.algorithm.value}, max_s={self.max_s}, weighted={self.weighted})"


def format_measure(measure) -> str:
    """Render an integer or rational measure the way solution files store it."""
    if isinstance(measure, Fraction):
        if measure.denominator == 1:
            return str(measure.numerator)
        return f"{measure.numerator}/{measure.denominator}"
    return str(measure)


def parse_measure(text: str):
    """Inverse of format_measure."""
    if '/' in text:
        return Fraction(text)
    return int(text)
