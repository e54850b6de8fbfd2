"""
Command-line front end: ``python -m src.cli <command> ...``
"""

from .main import COMMANDS, build_parser, run

__all__ = [
    'COMMANDS',
    'build_parser',
    'run',
]
