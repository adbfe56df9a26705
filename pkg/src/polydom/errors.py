"""Exception types shared across the package."""


class PolydomError(Exception):
    pass


class DimensionMismatch(PolydomError, ValueError):
    """Two polynomials (or a polynomial and a point) live in different R^d."""


class ShapeMismatch(PolydomError, ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class ZeroOperator(PolydomError, ValueError):
    """The operator symbol is identically zero where a nonzero one is required."""
