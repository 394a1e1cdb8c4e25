"""
Application configuration management.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Dict, Any
import argparse
import logging
import sys
from enum import Enum


class LogLevel(Enum):
    """Logging levels."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


@dataclass
class AppConfig:
    """
    Application configuration settings.

    Built from command-line flags only; no configuration file is read, so a
    run is reproduced by its argv alone.
    """

    # Application settings
    app_name: str = "svc-workbench"
    app_version: str = "1.0.0"

    # Search caps for the exponential routines
    oracle_cap: int = 26
    pattern_cap: int = 10
    unipolar_cap: int = 16
    mim_exact_edge_cap: int = 20
    layout_search_cap: int = 8

    # Solver settings
    max_s: int = 3
    threads: int = 1

    # Logging settings
    log_level: LogLevel = LogLevel.WARNING
    log_file: Optional[Path] = None

    def __post_init__(self):
        """Validate configuration after creation."""
        self.logger = logging.getLogger(__name__)

        for name in ('oracle_cap', 'pattern_cap', 'unipolar_cap', 'mim_exact_edge_cap', 'layout_search_cap'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_s < 0:
            raise ValueError("max_s must be nonnegative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

        if isinstance(self.log_level, str):
            self.log_level = LogLevel(self.log_level.upper())

        # Ensure paths are Path objects
        if isinstance(self.log_file, str):
            self.log_file = Path(self.log_file)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'AppConfig':
        """
        Build the configuration from parsed command-line flags and set up logging.

        Flags a subcommand does not define keep their defaults.
        """
        known = {name: getattr(args, name) for name in cls.__dataclass_fields__
                 if getattr(args, name, None) is not None}
        config = cls(**known)
        config._setup_logging()
        return config

    def _setup_logging(self):
        """Set up application logging; stdout stays reserved for results."""
        handlers = [logging.StreamHandler(sys.stderr)]
        if self.log_file is not None:
            self.log_file.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(self.log_file))

        logging.basicConfig(
            level=getattr(logging, self.log_level.value),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        Configuration as a JSON-ready dictionary for run reports.
        """
        return {
            'app_name': self.app_name,
            'app_version': self.app_version,
            'oracle_cap': self.oracle_cap,
            'pattern_cap': self.pattern_cap,
            'unipolar_cap': self.unipolar_cap,
            'mim_exact_edge_cap': self.mim_exact_edge_cap,
            'layout_search_cap': self.layout_search_cap,
            'max_s': self.max_s,
            'threads': self.threads,
            'log_level': self.log_level.value,
            'log_file': str(self.log_file) if self.log_file else None,
        }
