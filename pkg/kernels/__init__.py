"""
coxnorm/kernels
Step kernels, homomorphism densities, graph and cut norms, and the
inequality checks run over them.
"""

from kernels.checks import (check_complex_norm, check_cutnorm_sandwich, check_domination, check_holder,
                            check_sidorenko, check_tree_gluing, check_triangle)
from kernels.cut_norm import cut_norm_exact, cut_norm_profile, hypergraph_cut_norm
from kernels.decomposition import NDecomposition, validate_n_decomposition
from kernels.density import colored_density, colored_density_brute, density_fast, homomorphism_density
from kernels.errors import (ImaginaryResidue, InvalidKernel, KernelError, NotStableFamily, ResolutionCap,
                            WorkCapExceeded)
from kernels.norms import abs_graph_norm, complex_graph_norm, graph_norm, schatten_norm
from kernels.report import CheckReport
from kernels.step_kernel import ColoredFamily, StepKernel
from kernels.suites import SUITES, run_suite

__all__ = [
    'CheckReport', 'ColoredFamily', 'ImaginaryResidue', 'InvalidKernel', 'KernelError', 'NDecomposition',
    'NotStableFamily', 'ResolutionCap', 'SUITES', 'StepKernel', 'WorkCapExceeded', 'abs_graph_norm',
    'check_complex_norm', 'check_cutnorm_sandwich', 'check_domination', 'check_holder',
    'check_sidorenko', 'check_tree_gluing', 'check_triangle', 'colored_density', 'colored_density_brute',
    'complex_graph_norm', 'cut_norm_exact', 'cut_norm_profile', 'density_fast', 'graph_norm',
    'homomorphism_density', 'hypergraph_cut_norm', 'run_suite', 'schatten_norm',
    'validate_n_decomposition',
]
