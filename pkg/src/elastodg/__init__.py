"""
elastodg initialization
"""

import sys

from . import cli
from .runner import RunResult, check, run


def main():
    """Main entry point for the package."""
    sys.exit(cli.main())


__all__ = ["main", "cli", "run", "check", "RunResult"]
