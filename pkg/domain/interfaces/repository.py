"""
Abstract base class for instance storage operations.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from ..entities import Instance, Layout, ReductionTrace, SolutionCover


class InstanceRepository(ABC):
    """
    Abstract base class for reading and writing workbench files.

    This interface defines the contract for loading and storing instances,
    solutions, rooted layouts and reduction traces.
    """

    @abstractmethod
    def load_instance(self, file_path: Path) -> Instance:
        """
        Load an instance file.

        Args:
            file_path: Path to a ``p svc`` instance file

        Returns:
            The decoded Instance

        Raises:
            FileNotFoundError: If the file doesn't exist
            InstanceFormatError: If the file is malformed
        """
        pass

    @abstractmethod
    def save_instance(self, instance: Instance, output_path: Path) -> None:
        """
        Save an instance file.

        Args:
            instance: Instance to store
            output_path: Path where the file should be written
        """
        pass

    @abstractmethod
    def load_solution(self, file_path: Path, vertex_count: int) -> SolutionCover:
        """
        Load a solution file (``s`` line plus ``v`` lines).

        Args:
            file_path: Path to the solution file
            vertex_count: Number of vertices of the instance, for range checks

        Raises:
            FileNotFoundError: If the file doesn't exist
            InstanceFormatError: If the file is malformed
        """
        pass

    @abstractmethod
    def save_solution(self, solution: SolutionCover, output_path: Path) -> None:
        """
        Save a solution file.

        Args:
            solution: SolutionCover to store
            output_path: Path where the file should be written
        """
        pass

    @abstractmethod
    def load_layout(self, file_path: Path, vertex_count: int) -> Layout:
        """
        Load a rooted layout file.

        Raises:
            FileNotFoundError: If the file doesn't exist
            InstanceFormatError: If the file is malformed or not a valid layout
        """
        pass

    @abstractmethod
    def save_layout(self, layout: Layout, output_path: Path) -> None:
        """Save a rooted layout file."""
        pass

    @abstractmethod
    def load_trace(self, file_path: Path) -> ReductionTrace:
        """
        Load a reduction trace sidecar (JSON).

        Raises:
            FileNotFoundError: If the file doesn't exist
            InstanceFormatError: If required fields are missing
        """
        pass

    @abstractmethod
    def save_trace(self, trace: ReductionTrace, output_path: Path) -> None:
        """Save a reduction trace sidecar (JSON)."""
        pass
