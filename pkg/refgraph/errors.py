"""
coxnorm/refgraph/errors.py
Exceptions for hypergraph construction and search.
"""


class RefGraphError(ValueError):
    """Base class for reflection hypergraph errors."""


class UnknownPreset(RefGraphError):
    """Preset name or parameters are not recognised."""


class SearchCapExceeded(RefGraphError):
    """Exhaustive search refused: too many vertices."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Search over {size} vertices exceeds the cap of {cap}")
