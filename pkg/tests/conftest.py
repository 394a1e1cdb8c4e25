"""
Shared fixtures for the workbench tests.
"""

from pathlib import Path

import pytest

from domain.entities import Instance
from infrastructure.instance_repository_impl import InstanceRepositoryImpl
from infrastructure.solver_factory import SolverFactory
from tests.helpers import STAR_TEXT, instance_of
from use_cases.solve_instance_use_case import SolveInstanceUseCase


@pytest.fixture
def star() -> Instance:
    """Centre 0 joined to four terminal leaves; {0} is the unique optimum."""
    return instance_of(5, [(0, leaf) for leaf in range(1, 5)], range(1, 5))


@pytest.fixture
def terminal_triangle() -> Instance:
    return instance_of(3, [(0, 1), (1, 2), (0, 2)], range(3))


@pytest.fixture
def linear_forest_instance() -> Instance:
    """P1+P2+P3 on six vertices, every vertex a terminal."""
    return instance_of(6, [(1, 2), (3, 4), (4, 5)], range(6))


@pytest.fixture
def repository() -> InstanceRepositoryImpl:
    return InstanceRepositoryImpl()


@pytest.fixture
def solve_use_case() -> SolveInstanceUseCase:
    return SolveInstanceUseCase(SolverFactory())


@pytest.fixture
def star_file(tmp_path: Path) -> Path:
    path = tmp_path / "star.svc"
    path.write_text(STAR_TEXT)
    return path
