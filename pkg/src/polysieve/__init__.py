"""Desk-scale computations around large-sieve sums with multivariate
polynomial moduli: congruence solution counts in boxes, Farey spacing
statistics, average discrepancies of primes in polynomial progressions, and
norm-form prime-divisor searches."""

__version__ = "0.1.0"

from .errors import BudgetError
from .mvpoly import FactoredPoly, MvPoly, parse_poly

__all__ = ["BudgetError", "FactoredPoly", "MvPoly", "parse_poly", "__version__"]
