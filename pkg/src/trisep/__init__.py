"""Three-qubit separable states of length ten: witnesses, kill-sets and certificates."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import TrisepError
from .linalg import DEFAULT_TOL, Tolerances
from .xstate import XState

__all__ = ["BACKEND", "DEFAULT_TOL", "Tolerances", "TrisepError", "XState", "__version__"]
