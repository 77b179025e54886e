"""
coxnorm/kernels/norms.py
Graph norms ||f||_H = |t_H(f)|^{1/|E|}, their absolute versions, Schatten
norms of step operators and the complex norm of stable reflection hypergraphs.
"""

import logging

import numpy as np
from scipy.linalg import eigvalsh, svdvals

from kernels.density import DEFAULT_WORK_CAP, colored_density, homomorphism_density
from kernels.errors import ImaginaryResidue, KernelError, NotStableFamily
from kernels.step_kernel import ColoredFamily, StepKernel
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph

logger = logging.getLogger(__name__)

IMAGINARY_TOLERANCE = 1e-9


def _edge_root(value: float, hypergraph: Hypergraph) -> float:
    if hypergraph.num_edges == 0:
        raise KernelError("Graph norms need at least one edge")
    return float(abs(value)) ** (1.0 / hypergraph.num_edges)


def graph_norm(hypergraph: Hypergraph, kernel: StepKernel, work_cap: int = DEFAULT_WORK_CAP) -> float:
    """||f||_H = |t_H(f)|^{1/|E(H)|}."""
    return _edge_root(homomorphism_density(hypergraph, kernel, work_cap=work_cap), hypergraph)


def abs_graph_norm(hypergraph: Hypergraph, kernel: StepKernel, work_cap: int = DEFAULT_WORK_CAP) -> float:
    """||f||_{r(H)} = t_H(|f|)^{1/|E(H)|}."""
    return _edge_root(homomorphism_density(hypergraph, kernel.abs(), work_cap=work_cap), hypergraph)


def schatten_norm(kernel: StepKernel, p: float) -> float:
    """
    Schatten p-norm of the integral operator of a 2-ary step kernel.

    The operator acts on step functions as values / n, so its singular
    values are those of that matrix.
    """
    if kernel.arity != 2:
        raise KernelError("Schatten norms are defined for 2-ary kernels")
    matrix = kernel.values / kernel.resolution
    if kernel.symmetric and not kernel.is_complex:
        singular = np.abs(eigvalsh(matrix))
    else:
        singular = svdvals(matrix)
    return float(np.sum(singular ** p) ** (1.0 / p))


def complex_integral(hypergraph: ReflectionHypergraph, kernel: StepKernel,
                     work_cap: int = DEFAULT_WORK_CAP) -> complex:
    """
    The integrand prod_e f^(e), with f conjugated on edges whose group
    element has odd length.

    With S_1 & ... & S_k empty every edge carries exactly one group element,
    which fixes the parity of that edge.
    """
    if not isinstance(hypergraph, ReflectionHypergraph):
        raise KernelError("The complex norm needs a reflection hypergraph with its group")
    if not hypergraph.stable:
        raise NotStableFamily(
            f"Generator subsets share {sorted(hypergraph.common_generators)}; edges do not determine chambers"
        )
    parity = hypergraph.group.lengths[hypergraph.edge_element] % 2
    family = ColoredFamily([kernel, kernel.conj()], parity.tolist())
    return complex(colored_density(hypergraph, family, work_cap=work_cap))


def complex_graph_norm(hypergraph: ReflectionHypergraph, kernel: StepKernel,
                       imaginary_tol: float = IMAGINARY_TOLERANCE,
                       work_cap: int = DEFAULT_WORK_CAP) -> float:
    value = complex_integral(hypergraph, kernel, work_cap=work_cap)
    if abs(value.imag) > imaginary_tol:
        raise ImaginaryResidue(f"Imaginary part {value.imag:.3e} exceeds {imaginary_tol:g}")
    return _edge_root(value.real, hypergraph)
