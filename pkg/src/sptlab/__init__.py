"""Exact q-series laboratory for partition and smallest-parts congruences."""

from .series import Series, GridError, UnitError, ValidityError

__all__ = ["Series", "GridError", "UnitError", "ValidityError"]
__version__ = "0.1.0"
