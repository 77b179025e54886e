"""
coxnorm/refgraph
Reflection graphs and hypergraphs, cut involutions and polytope presets.
"""

from refgraph.errors import RefGraphError, SearchCapExceeded, UnknownPreset
from refgraph.hypergraph import (Hypergraph, ReflectionHypergraph, build_reflection_hypergraph,
                                 tensor_product)
from refgraph.involutions import (CutInvolution, enumerate_cut_involutions, induced_involution,
                                  is_edge_transitive_under, reflection_involutions,
                                  stable_involutions)
from refgraph.isomorphism import graph_isomorphic
from refgraph.presets import domination_pair, even_cycle, gowers_octahedron, m_k, preset, simplex_incidence

__all__ = [
    'CutInvolution', 'Hypergraph', 'RefGraphError', 'ReflectionHypergraph', 'SearchCapExceeded',
    'UnknownPreset', 'build_reflection_hypergraph', 'domination_pair', 'enumerate_cut_involutions',
    'even_cycle', 'gowers_octahedron', 'graph_isomorphic', 'induced_involution',
    'is_edge_transitive_under', 'm_k', 'preset', 'reflection_involutions', 'simplex_incidence',
    'stable_involutions', 'tensor_product',
]
