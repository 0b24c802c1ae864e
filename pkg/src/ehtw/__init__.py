"""Desk-scale algorithms for (C4, theta, prism, even wheel)-free graphs."""

from .graph import Graph
from .errors import BudgetExhausted, GuardrailError, InputError

__version__ = "0.1.0"

__all__ = ["Graph", "InputError", "GuardrailError", "BudgetExhausted", "__version__"]
