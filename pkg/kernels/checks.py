"""
coxnorm/kernels/checks.py
Inequality checks on step kernels. Each returns a CheckReport with the
inequality written as lhs <= rhs.
"""

import logging
import math
from typing import Optional

import numpy as np

from kernels.cut_norm import cut_norm_exact, cut_norm_profile, hypergraph_cut_norm
from kernels.decomposition import NDecomposition, validate_n_decomposition
from kernels.density import DEFAULT_WORK_CAP, colored_density, homomorphism_density
from kernels.errors import InvalidKernel, KernelError
from kernels.norms import (IMAGINARY_TOLERANCE, abs_graph_norm, complex_graph_norm,
                           complex_integral, graph_norm, schatten_norm)
from kernels.report import CheckReport, report
from kernels.step_kernel import ColoredFamily, StepKernel
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph

logger = logging.getLogger(__name__)

EQUALITY_TOLERANCE = 1e-9
INEQUALITY_TOLERANCE = 1e-12

# bipartite 4-cycle; the first entry of every edge is on the left
C4 = Hypergraph(vertices=['a0', 'a1', 'b0', 'b1'], edges=[(0, 2), (0, 3), (1, 2), (1, 3)])


def _sizes(hypergraph: Hypergraph, kernel: StepKernel) -> dict:
    return {'vertices': hypergraph.num_vertices, 'edges': hypergraph.num_edges,
            'n': kernel.resolution}


def _require_nonnegative(kernel: StepKernel):
    if not kernel.is_nonnegative:
        raise InvalidKernel("This check needs a nonnegative real kernel")


def check_holder(hypergraph: Hypergraph, family: ColoredFamily, abs_mode: bool = True,
                 tol: float = INEQUALITY_TOLERANCE, work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """
    <F; chi>_H <= prod_e ||f_chi(e)||_{r(H)} on |f_i|, or with abs_mode off
    |<F; chi>_H| <= prod_e ||f_chi(e)||_H, which is only offered for stable
    reflection hypergraphs.
    """
    if abs_mode:
        family = family.abs()
        norms = [abs_graph_norm(hypergraph, f, work_cap=work_cap) for f in family.kernels]
    else:
        if not (isinstance(hypergraph, ReflectionHypergraph) and hypergraph.stable):
            raise KernelError("Signed Hölder checks are offered for stable reflection hypergraphs only")
        norms = [graph_norm(hypergraph, f, work_cap=work_cap) for f in family.kernels]
    lhs = abs(colored_density(hypergraph, family, work_cap=work_cap))
    rhs = math.prod(norms[c] for c in family.coloring)
    return report('holder' if abs_mode else 'holder-norming', lhs, rhs, tol,
                  colors=len(family.kernels), abs_mode=abs_mode,
                  **_sizes(hypergraph, family.kernels[0]))


def check_sidorenko(hypergraph: Hypergraph, kernel: StepKernel, tol: float = INEQUALITY_TOLERANCE,
                    work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """||f||_{r(K2)} <= ||f||_{r(H)}; the single-edge norm is the mean of f."""
    _require_nonnegative(kernel)
    return report('sidorenko', float(kernel.mean()), abs_graph_norm(hypergraph, kernel, work_cap=work_cap),
                  tol, **_sizes(hypergraph, kernel))


def check_domination(hypergraph: Hypergraph, subgraph: Hypergraph, kernel: StepKernel,
                     tol: float = INEQUALITY_TOLERANCE, work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """||f||_{r(J)} <= ||f||_{r(H)}."""
    return report('domination', abs_graph_norm(subgraph, kernel, work_cap=work_cap),
                  abs_graph_norm(hypergraph, kernel, work_cap=work_cap), tol,
                  subgraph_edges=subgraph.num_edges, **_sizes(hypergraph, kernel))


def check_triangle(hypergraph: Hypergraph, f: StepKernel, g: StepKernel,
                   tol: float = INEQUALITY_TOLERANCE, work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    lhs = abs_graph_norm(hypergraph, f + g, work_cap=work_cap)
    rhs = abs_graph_norm(hypergraph, f, work_cap=work_cap) + abs_graph_norm(hypergraph, g, work_cap=work_cap)
    return report('triangle', lhs, rhs, tol, **_sizes(hypergraph, f))


def check_cutnorm_sandwich(kernel: StepKernel, tol: float = INEQUALITY_TOLERANCE,
                           resolution_cap: int = 16) -> CheckReport:
    """
    ||f||_C4^4 <= ||f||_cut <= ||f||_C4 for |f| <= 1. The upper bound is
    the main inequality; the lower bound is the secondary margin 'lower'.
    """
    if kernel.bound > 1.0 + tol:
        raise InvalidKernel(f"Sandwich bounds need |f| <= 1, got {kernel.bound:.6g}")
    cut = cut_norm_exact(kernel, resolution_cap=resolution_cap)
    c4 = graph_norm(C4, kernel)
    return report('sandwich', cut, c4, tol, secondary={'lower': cut - c4 ** 4},
                  n=kernel.resolution, c4_norm=c4, cut_norm=cut)


def check_tree_gluing(hypergraph: Hypergraph, decomposition: NDecomposition, kernel: StepKernel,
                      tol: float = INEQUALITY_TOLERANCE, work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """
    t_N(f)^{|E(H)|/|E(N)|} <= t_H(f), with the Sidorenko form
    t_{K2}(f)^{|E(H)|} <= t_H(f) as secondary margin.
    """
    _require_nonnegative(kernel)
    valid, violations = validate_n_decomposition(hypergraph, decomposition)
    if not valid:
        raise KernelError(f"Not an N-decomposition: {'; '.join(violations)}")
    template = decomposition.template
    t_h = float(homomorphism_density(hypergraph, kernel, work_cap=work_cap))
    t_n = float(homomorphism_density(template, kernel, work_cap=work_cap))
    lhs = t_n ** (hypergraph.num_edges / template.num_edges)
    sidorenko = t_h - float(kernel.mean()) ** hypergraph.num_edges
    return report('tree-gluing', lhs, t_h, tol, secondary={'sidorenko': sidorenko},
                  bags=len(decomposition.bags), template_edges=template.num_edges,
                  **_sizes(hypergraph, kernel))


def check_complex_norm(hypergraph: ReflectionHypergraph, kernel: StepKernel,
                       imaginary_tol: float = IMAGINARY_TOLERANCE,
                       tol: float = INEQUALITY_TOLERANCE, work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """
    The conjugated integrand is real: lhs is its imaginary part against
    imaginary_tol. On the real part of the kernel the complex norm must
    agree with ||.||_H; the disagreement is the secondary margin.
    """
    value = complex_integral(hypergraph, kernel, work_cap=work_cap)
    real = kernel.real()
    agreement = abs(complex_graph_norm(hypergraph, real, imaginary_tol, work_cap=work_cap)
                    - graph_norm(hypergraph, real, work_cap=work_cap))
    return report('complex', abs(value.imag), imaginary_tol, 0.0,
                  secondary={'real_agreement': tol - agreement},
                  integral=[value.real, value.imag], **_sizes(hypergraph, kernel))


def check_equal(name: str, value: float, expected: float, tol: float = EQUALITY_TOLERANCE,
                relative: bool = False, **metadata) -> CheckReport:
    """Equality as |value - expected| <= tol, optionally relative to |expected|."""
    error = abs(value - expected)
    if relative:
        error /= max(abs(expected), np.finfo(float).tiny)
    return report(name, error, 0.0, tol, value=value, expected=expected, relative=relative, **metadata)


def check_schatten(cycle: Hypergraph, kernel: StepKernel, tol: float = EQUALITY_TOLERANCE) -> CheckReport:
    """||f||_{C_2k} equals the Schatten 2k-norm of the step operator."""
    return check_equal('schatten', graph_norm(cycle, kernel), schatten_norm(kernel, cycle.num_edges),
                       tol, cycle=cycle.num_edges, n=kernel.resolution)


def check_cut_profile(hypergraph: ReflectionHypergraph, kernel: StepKernel,
                      tol: float = INEQUALITY_TOLERANCE, cells_cap: int = 24,
                      work_cap: int = DEFAULT_WORK_CAP) -> CheckReport:
    """||f||_{cut,M} <= ||f||_H with M the cut-norm profile of H."""
    blocks = cut_norm_profile(hypergraph)
    cut = hypergraph_cut_norm(kernel, blocks, mode='exact', cells_cap=cells_cap)
    return report('cut-profile', cut, graph_norm(hypergraph, kernel, work_cap=work_cap), tol,
                  blocks=[list(b) for b in blocks], **_sizes(hypergraph, kernel))


def check_cut_ascent(kernel: StepKernel, blocks, tol: float = EQUALITY_TOLERANCE,
                     seed: Optional[int] = 0) -> CheckReport:
    """Coordinate ascent reaches the exact hypergraph cut norm."""
    exact = hypergraph_cut_norm(kernel, blocks, mode='exact')
    ascent = hypergraph_cut_norm(kernel, blocks, mode='ascent', seed=seed)
    return check_equal('cut-ascent', ascent, exact, tol, blocks=[list(b) for b in blocks],
                       n=kernel.resolution)
