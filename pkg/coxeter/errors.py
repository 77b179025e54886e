"""
coxnorm/coxeter/errors.py
Exceptions raised while building and querying finite reflection groups.
"""


class CoxeterError(ValueError):
    """Base class for reflection group errors."""


class SpecParseError(CoxeterError):
    """Group spec string or component data is malformed."""


class OrderCapExceeded(CoxeterError):
    """Predicted or enumerated group order is above the configured cap."""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"Group order {order} exceeds order cap {cap}")


class NumericalAmbiguity(CoxeterError):
    """Root matching violated the tolerance separation audit."""


class MixedGroups(CoxeterError):
    """Elements from different groups were combined."""
