"""
coxnorm/kernels/errors.py
Exceptions for kernel evaluation and inequality checks.
"""


class KernelError(ValueError):
    """Base class for kernel errors."""


class InvalidKernel(KernelError):
    """Kernel values are malformed: wrong shape, non-finite, or asymmetric when declared symmetric."""


class WorkCapExceeded(KernelError):
    """Brute-force evaluation would visit too many assignments."""

    def __init__(self, work: int, cap: int):
        self.work = work
        self.cap = cap
        super().__init__(f"Evaluation needs {work} assignments, above the work cap of {cap}")


class ResolutionCap(KernelError):
    """Exact cut-norm enumeration refused at this resolution."""


class NotStableFamily(KernelError):
    """Complex norm requested for a hypergraph whose generator subsets share a reflection."""


class ImaginaryResidue(KernelError):
    """A quantity that must be real has a significant imaginary part."""
