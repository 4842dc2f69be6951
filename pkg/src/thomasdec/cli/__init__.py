"""Source-language front end, artifacts and the command-line driver."""

from .main import main
from .syntax import format_document, parse

__all__ = ["main", "parse", "format_document"]
