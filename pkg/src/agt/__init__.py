"""Exact combinatorics of admissible weights and Gelfand-Tsetlin realizations for sl_{n+1}."""

from .errors import AgtError
from .rootsys import Root, Weight

__all__ = ["AgtError", "Root", "Weight"]
__version__ = "0.1.0"
