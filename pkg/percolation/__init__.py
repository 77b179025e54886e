"""
coxnorm/percolation
Folding calculus, percolation certificates and Cauchy-Schwarz trees.
"""

from percolation.certificate import (FoldStep, PercolationCertificate, build_percolating_certificate,
                                     certificate_to_monochromatic_leaf, project_certificate_to_edges,
                                     shortest_certificate, verify_percolation)
from percolation.cs_tree import CSTree, build_cs_tree
from percolation.errors import (CertificateInvalid, DepthCap, GroupMismatch, IndexOutOfRange, NotAReflection,
                                PercolationError)
from percolation.folding import fold_edge_set, fold_word_set, is_stack

__all__ = [
    'CSTree', 'CertificateInvalid', 'DepthCap', 'FoldStep', 'GroupMismatch', 'IndexOutOfRange',
    'NotAReflection',
    'PercolationCertificate', 'PercolationError', 'build_cs_tree', 'build_percolating_certificate',
    'certificate_to_monochromatic_leaf', 'fold_edge_set', 'fold_word_set', 'is_stack',
    'project_certificate_to_edges', 'shortest_certificate', 'verify_percolation',
]
