"""Quiver presentations of descent algebras of type B from binary forests."""
from .forest import Node, format_forest, parse_forest
from .quiver import build_quiver, path_of
from .relations import kernel_I, verify_conjecture

__all__ = [
    "Node", "build_quiver", "format_forest", "kernel_I", "parse_forest", "path_of",
    "verify_conjecture",
]
__version__ = "0.1.0"
