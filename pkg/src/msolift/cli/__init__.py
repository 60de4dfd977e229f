"""Command-line front end."""

from msolift.cli.main import build_parser, main, run

__all__ = ["build_parser", "main", "run"]
