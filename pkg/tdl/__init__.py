from .commons import BudgetExceededException, DEFAULTS, InvalidInputException, TDLException
from .digraph import Digraph, GraphKind, WeightParam, from_hex, to_hex
from .lab import DigraphLab

__version__ = "0.1.0"

__all__ = ["DigraphLab", "Digraph", "GraphKind", "WeightParam", "DEFAULTS", "TDLException",
           "InvalidInputException", "BudgetExceededException", "from_hex", "to_hex"]
