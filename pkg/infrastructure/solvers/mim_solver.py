"""
Mim-width dynamic programming solver.
"""

import logging

from domain.entities import Instance, Layout, SolutionCover
from domain.exceptions import LayoutMismatchError
from domain.interfaces.solver import Solver
from domain.value_objects import SolverOptions
from infrastructure.mimwidth import (DEFAULT_LAYOUT_SEARCH_CAP, caterpillar_from_order, search_layout,
                                     solve_mim)


class MimSolver(Solver):
    """
    Solver running the layout dynamic program.

    The layout comes from the options (a rooted layout or a vertex order);
    small graphs without one get a layout of minimum mim-width by search.
    """

    def __init__(self, layout_search_cap: int = DEFAULT_LAYOUT_SEARCH_CAP):
        """Initialize the solver with the layout search cap."""
        self.layout_search_cap = layout_search_cap
        self.logger = logging.getLogger(__name__)

    def resolve_layout(self, instance: Instance, options: SolverOptions) -> Layout:
        """
        Pick the layout for a solve.

        Raises:
            ValueError: If no layout is given and the graph is too large to search
            LayoutMismatchError: If the order does not list every vertex once
        """
        n = instance.vertex_count
        if options.layout is not None:
            return options.layout
        if options.order is not None:
            if sorted(options.order) != list(range(n)):
                raise LayoutMismatchError("Vertex order must list every vertex exactly once")
            return caterpillar_from_order(options.order)
        if 0 < n <= self.layout_search_cap:
            layout, width = search_layout(instance.graph, self.layout_search_cap)
            self.logger.info(f"Searched a layout of mim-width {width}")
            return layout
        raise ValueError(f"The mim solver needs a layout or vertex order for graphs with more than "
                         f"{self.layout_search_cap} vertices")

    def solve(self, instance: Instance, options: SolverOptions) -> SolutionCover:
        if instance.vertex_count == 0:
            return SolutionCover.build(instance, 0, "mim", {'table_sizes': {}})
        layout = self.resolve_layout(instance, options)
        self.logger.info(f"Solving {instance} along a layout with {layout.leaf_count} leaves")
        solution = solve_mim(instance, layout)
        self.logger.info(f"Mim solver finished: measure {solution.measure}, "
                         f"largest table {solution.statistics['max_table']}")
        return solution

    def validate_instance(self, instance: Instance, options: SolverOptions) -> bool:
        if options.layout is not None:
            return options.layout.covers(instance.vertex_count)
        if options.order is not None:
            return sorted(options.order) == list(range(instance.vertex_count))
        return instance.vertex_count <= self.layout_search_cap
