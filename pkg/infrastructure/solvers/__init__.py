"""
Subset Vertex Cover solver implementations.
"""

from .mim_solver import MimSolver
from .oracle_solver import OracleSolver
from .p2p3_solver import P2P3Solver
from .sp2_solver import Sp2Solver

__all__ = ['MimSolver', 'OracleSolver', 'P2P3Solver', 'Sp2Solver']
