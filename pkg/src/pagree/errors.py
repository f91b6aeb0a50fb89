"""Error types that distinguish failure classes beyond plain ValueError.

Domain errors (bad indices, non-divisor widths, invalid inputs) raise
ValueError directly; the classes here mark the two failure modes callers
may want to handle differently.
"""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


class NumericCheckError(ArithmeticError):
    """An internal numerical cross-check failed beyond its tolerance."""
