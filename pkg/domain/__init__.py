# Domain layer - entities, value objects, predicates

from .entities import (ClusterDecomposition, DispatchReport, Graph, Instance, Layout,
                       ReductionTrace, SolutionCover)
from .value_objects import (AlgorithmTag, BipartiteView, GraphClass, HFreeVerdict, HPattern,
                            Matching, RandomInstanceParams, SolverOptions, UnipolarPartition)
from .interfaces import InstanceRepository, Solver

__all__ = [
    'Graph',
    'Instance',
    'SolutionCover',
    'Layout',
    'ClusterDecomposition',
    'ReductionTrace',
    'DispatchReport',
    'AlgorithmTag',
    'BipartiteView',
    'GraphClass',
    'HFreeVerdict',
    'HPattern',
    'Matching',
    'RandomInstanceParams',
    'SolverOptions',
    'UnipolarPartition',
    'InstanceRepository',
    'Solver',
]
