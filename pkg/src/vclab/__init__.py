"""Vector chromatic numbers, their optimal SDP solutions and categorical products."""

__version__ = "0.1.0"

from .graphs import Graph, categorical_product  # noqa: E402
from .linalg import BACKEND  # noqa: E402
from .tolerances import DEFAULT, Tolerances  # noqa: E402
from .vectorcoloring import ChiResult, DualWitness, VectorColoring, chi_sv, chi_v  # noqa: E402

__all__ = [
    "BACKEND",
    "DEFAULT",
    "ChiResult",
    "DualWitness",
    "Graph",
    "Tolerances",
    "VectorColoring",
    "__version__",
    "categorical_product",
    "chi_sv",
    "chi_v",
]
