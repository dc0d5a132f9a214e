"""Noncommutative polynomial factorization toolkit.

Exact arithmetic over Q and small prime fields, sparse free-algebra
polynomials, circuit/ABP intermediate representations, a bivariate
embedding with automaton-based factor recovery, a brute-force dense
factorization oracle, and linear matrix factorization (3x3 algorithm
and the 4x4 quaternion gadget).
"""

from ncfactor.errors import BudgetExceededError, FormatError

__all__ = ["BudgetExceededError", "FormatError"]
__version__ = "0.1.0"
