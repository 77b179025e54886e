"""
coxnorm/kernels/step_kernel.py
Step kernels: functions on [0,1]^k constant on the cells of a uniform grid.
"""

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from kernels.errors import InvalidKernel

SYMMETRY_TOLERANCE = 1e-12


@dataclass
class StepKernel:
    """
    Values on an n x ... x n grid (k axes), every cell of measure n^{-k}.

    `symmetric` is only meaningful for k = 2 and is checked on construction.
    """
    values: np.ndarray
    symmetric: bool = False
    bound: float = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values)
        if not np.issubdtype(values.dtype, np.complexfloating):
            values = values.astype(float)
        if values.ndim < 1 or len(set(values.shape)) != 1:
            raise InvalidKernel(f"Kernel values must form an n x ... x n array, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidKernel("Kernel values must be finite")
        if self.symmetric:
            if values.ndim != 2:
                raise InvalidKernel("Only 2-ary kernels carry a symmetry flag")
            if not np.allclose(values, values.T, rtol=0.0, atol=SYMMETRY_TOLERANCE):
                raise InvalidKernel("Kernel declared symmetric is not")
        self.values = values
        self.bound = float(np.abs(values).max()) if values.size else 0.0

    @classmethod
    def constant(cls, c: complex, n: int, k: int = 2) -> 'StepKernel':
        return cls(np.full((n,) * k, c), symmetric=(k == 2))

    @property
    def arity(self) -> int:
        return self.values.ndim

    @property
    def resolution(self) -> int:
        return self.values.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    @property
    def is_nonnegative(self) -> bool:
        return not self.is_complex and bool(np.all(self.values >= 0))

    def mean(self) -> complex:
        return self.values.mean()

    def abs(self) -> 'StepKernel':
        return StepKernel(np.abs(self.values), symmetric=self.symmetric)

    def conj(self) -> 'StepKernel':
        return StepKernel(np.conj(self.values), symmetric=self.symmetric)

    def real(self) -> 'StepKernel':
        return StepKernel(np.real(self.values), symmetric=self.symmetric)

    def scale(self, c: complex) -> 'StepKernel':
        return StepKernel(c * self.values, symmetric=self.symmetric)

    def __add__(self, other: 'StepKernel') -> 'StepKernel':
        if self.values.shape != other.values.shape:
            raise InvalidKernel("Kernels of different shapes cannot be added")
        return StepKernel(self.values + other.values, symmetric=self.symmetric and other.symmetric)

    def tensor(self, other: 'StepKernel') -> 'StepKernel':
        """
        Product kernel on the product grid: cell (i, i') of axis j becomes
        cell i * n' + i', and the value is f(i...) g(i'...).
        """
        if self.arity != other.arity:
            raise InvalidKernel("Tensor product needs kernels of the same arity")
        k = self.arity
        outer = np.multiply.outer(self.values, other.values)
        # interleave axes (a_1, b_1, a_2, b_2, ...)
        order = [axis for j in range(k) for axis in (j, k + j)]
        shape = (self.resolution * other.resolution,) * k
        return StepKernel(outer.transpose(order).reshape(shape),
                          symmetric=self.symmetric and other.symmetric)


@dataclass
class ColoredFamily:
    """Kernels f_1..f_m and an edge colouring chi with values in 0..m-1."""
    kernels: List[StepKernel]
    coloring: Sequence[int]

    def __post_init__(self):
        if not self.kernels:
            raise InvalidKernel("A coloured family needs at least one kernel")
        shapes = {f.values.shape for f in self.kernels}
        if len(shapes) != 1:
            raise InvalidKernel(f"Kernel shapes disagree: {sorted(shapes)}")
        self.coloring = tuple(int(c) for c in self.coloring)
        if any(not 0 <= c < len(self.kernels) for c in self.coloring):
            raise InvalidKernel("Colouring uses a colour with no kernel")

    @classmethod
    def monochromatic(cls, kernel: StepKernel, num_edges: int) -> 'ColoredFamily':
        return cls([kernel], [0] * num_edges)

    @property
    def arity(self) -> int:
        return self.kernels[0].arity

    @property
    def resolution(self) -> int:
        return self.kernels[0].resolution

    def edge_arrays(self) -> List[np.ndarray]:
        return [self.kernels[c].values for c in self.coloring]

    def abs(self) -> 'ColoredFamily':
        return ColoredFamily([f.abs() for f in self.kernels], self.coloring)
