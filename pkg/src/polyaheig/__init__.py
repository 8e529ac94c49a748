"""Roots of real-rooted polynomials as eigenvalues of an arrowhead matrix."""

__version__ = "0.1.0"

from .dd import DoubleDouble  # noqa: E402
from .polynomial import Polynomial  # noqa: E402
from .solver import SolveReport, generate_wilkinson, solve  # noqa: E402

__all__ = ["DoubleDouble", "Polynomial", "SolveReport", "generate_wilkinson", "solve", "__version__"]
