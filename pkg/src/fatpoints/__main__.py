"""Entry point for ``python -m fatpoints``."""

from .cli import entry

entry()
