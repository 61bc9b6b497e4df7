"""CLI interface for ahb-inverse."""

from .main import cli

__all__ = ["cli"]
