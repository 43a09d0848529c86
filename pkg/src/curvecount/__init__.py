"""Exact-arithmetic curve counting on K3 x E and abelian threefolds."""
from .numeric import BiDualNumber, DualNumber, Rational
from .series import BeyondTruncation, MultiSeries, var

__version__ = "0.1.0"

__all__ = ["BeyondTruncation", "BiDualNumber", "DualNumber", "MultiSeries", "Rational", "var"]
