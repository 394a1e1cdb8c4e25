#!/usr/bin/env python3
"""
svc-workbench - Main Application Entry Point
Command-line tools for solving, generating and checking Subset Vertex Cover instances.
"""

from presentation.cli import main


if __name__ == "__main__":
    main()
