"""
Use case for generating instance corpora with optimum certificates.
"""

import logging
import random
from pathlib import Path
from typing import List, NamedTuple, Optional, Sequence, Tuple

from tqdm import tqdm

from domain.entities import Graph, Instance, ReductionTrace
from domain.interfaces.repository import InstanceRepository
from domain.value_objects import CorpusOptions, GeneratorKind
from infrastructure.generators import (gen_claw_diamond, gen_two_unipolar, random_instance, random_source,
                                       two_subdivision)
from infrastructure.solvers.oracle_solver import DEFAULT_ORACLE_CAP, min_vertex_cover_exact


class CorpusItem(NamedTuple):
    name: str
    instance_path: Path
    trace_path: Optional[Path] = None


def item_seeds(seed: int, count: int) -> List[int]:
    """Per-item seeds drawn from one base seed, so a corpus is reproducible as a whole."""
    rng = random.Random(seed)
    return [rng.getrandbits(32) for _ in range(count)]


class GenerateCorpusUseCase:
    """
    Use case for writing generated instances, each gadget instance with a
    ``<name>.trace.json`` sidecar certifying its optimum.
    """

    def __init__(self, instance_repository: InstanceRepository, oracle_cap: int = DEFAULT_ORACLE_CAP):
        """
        Initialize the corpus use case.

        Args:
            instance_repository: Repository for instance and trace files
            oracle_cap: Largest source graph whose vertex cover number is recorded in the trace
        """
        self.instance_repository = instance_repository
        self.oracle_cap = oracle_cap
        self.logger = logging.getLogger(__name__)

    def execute(self, options: CorpusOptions, output_directory: Path,
                sources: Optional[Sequence[Tuple[str, Graph]]] = None,
                show_progress: bool = False) -> List[CorpusItem]:
        """
        Execute the corpus generation.

        Args:
            options: Generator and random parameters
            output_directory: Directory receiving the files
            sources: Named source graphs for the gadgets; random sources are drawn when omitted
            show_progress: Show a progress bar on stderr

        Returns:
            The written items in generation order

        Raises:
            PreconditionViolation: If a source does not fit the generator
            ValueError: If random instances are requested from given sources
        """
        try:
            self.logger.info(f"Generating a {options.kind.value} corpus in {output_directory}")
            seeds = item_seeds(options.seed, options.count)

            if options.kind is GeneratorKind.RANDOM:
                if sources is not None:
                    raise ValueError("The random generator does not take source graphs")
                jobs = [(f"random-{i:04d}", seed) for i, seed in enumerate(seeds)]
                items = [self._write_random(name, options, seed, output_directory)
                         for name, seed in tqdm(jobs, desc="generate", disable=not show_progress)]
            else:
                if sources is None:
                    max_degree = 3 if options.kind is GeneratorKind.CLAW_DIAMOND else None
                    sources = [(f"{options.kind.value}-{i:04d}",
                                random_source(options.vertex_count, options.edge_probability, seed, max_degree))
                               for i, seed in enumerate(seeds)]
                items = [self._write_gadget(name, options.kind, source, output_directory)
                         for name, source in tqdm(sources, desc="generate", disable=not show_progress)]

            self.logger.info(f"Generated {len(items)} instances")
            return items

        except ValueError as e:
            self.logger.error(f"Corpus generation failed: {str(e)}")
            raise

    def build(self, kind: GeneratorKind, source: Graph) -> Tuple[Instance, ReductionTrace]:
        """Run one gadget generator and record the source vertex cover number when affordable."""
        if kind is GeneratorKind.TWO_SUBDIVISION:
            graph, trace = two_subdivision(source)
            instance = Instance(graph=graph, t_set=trace.t_set)
        elif kind is GeneratorKind.CLAW_DIAMOND:
            instance, trace = gen_claw_diamond(source)
        elif kind is GeneratorKind.TWO_UNIPOLAR:
            instance, trace = gen_two_unipolar(source)
        else:
            raise ValueError(f"Generator '{kind.value}' has no source graph")

        if source.vertex_count <= self.oracle_cap:
            trace = trace.with_source_vc(min_vertex_cover_exact(source, cap=self.oracle_cap).measure)
        return instance, trace

    def _write_gadget(self, name: str, kind: GeneratorKind, source: Graph, directory: Path) -> CorpusItem:
        instance, trace = self.build(kind, source)
        instance_path = directory / f"{name}.svc"
        trace_path = directory / f"{name}.trace.json"
        self.instance_repository.save_instance(instance, instance_path)
        self.instance_repository.save_trace(trace, trace_path)
        return CorpusItem(name, instance_path, trace_path)

    def _write_random(self, name: str, options: CorpusOptions, seed: int, directory: Path) -> CorpusItem:
        instance = random_instance(options.item_params(seed))
        instance_path = directory / f"{name}.svc"
        self.instance_repository.save_instance(instance, instance_path)
        return CorpusItem(name, instance_path)
