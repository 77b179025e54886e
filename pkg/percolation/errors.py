"""
coxnorm/percolation/errors.py
Exceptions for folding, certificates and Cauchy-Schwarz trees.
"""


class PercolationError(ValueError):
    """Base class for percolation errors."""


class NotAReflection(PercolationError):
    """A folding step names an element that is not a reflection."""


class GroupMismatch(PercolationError):
    """Certificate and hypergraph belong to different groups or subsets."""


class CertificateInvalid(PercolationError):
    """A certificate does not percolate or its leaf is not monochromatic."""


class DepthCap(PercolationError):
    """Cauchy-Schwarz tree depth above the materialisation cap."""

    def __init__(self, depth: int, cap: int):
        self.depth = depth
        self.cap = cap
        super().__init__(f"Tree depth {depth} exceeds the cap of {cap}")


class IndexOutOfRange(PercolationError):
    """An element or edge id outside 0..size-1."""
