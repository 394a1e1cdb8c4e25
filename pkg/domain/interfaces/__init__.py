"""
Domain interfaces - abstract base classes for repositories and solvers.
"""

from .repository import InstanceRepository
from .solver import Solver

__all__ = ['InstanceRepository', 'Solver']
