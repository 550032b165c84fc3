"""Figure rendering for twsketch experiment results.

Consumes only the CSV/JSON files the experiment harness emits; no access to
the library internals.
"""

from .spec import FigureSpec, SpecError
from .render import render

__version__ = "0.1.0"

__all__ = ["FigureSpec", "SpecError", "render", "__version__"]
