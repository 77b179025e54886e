"""
coxnorm/refgraph/isomorphism.py
Isomorphism tests for small hypergraphs, optionally pinning named vertices.
"""

import logging
from typing import Dict, Iterable, Optional, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from refgraph.errors import SearchCapExceeded
from refgraph.hypergraph import Hypergraph
from refgraph.involutions import SEARCH_VERTEX_CAP

logger = logging.getLogger(__name__)

GraphLike = Union[Hypergraph, nx.Graph]


def as_hypergraph(graph: GraphLike) -> Hypergraph:
    if isinstance(graph, Hypergraph):
        return graph
    return Hypergraph.from_networkx(graph)


def _labelled_incidence(hypergraph: Hypergraph, pinned: Iterable[str]) -> nx.Graph:
    pinned = set(pinned)
    incidence = hypergraph.incidence_graph()
    for v, name in enumerate(hypergraph.vertices):
        incidence.nodes[('v', v)]['pin'] = name if name in pinned else None
    for j in range(hypergraph.num_edges):
        incidence.nodes[('e', j)]['pin'] = None
    return incidence


def graph_isomorphic(first: GraphLike, second: GraphLike,
                     pinned: Optional[Iterable[str]] = None,
                     vertex_cap: int = SEARCH_VERTEX_CAP) -> Tuple[bool, Optional[Dict[str, str]]]:
    """
    Test two (hyper)graphs for isomorphism.

    Returns (True, witness) with the witness mapping vertex names of `first`
    to vertex names of `second`, or (False, None). Vertices named in `pinned`
    must be present in both and are mapped to themselves.
    """
    h1, h2 = as_hypergraph(first), as_hypergraph(second)
    size = max(h1.num_vertices, h2.num_vertices)
    if size > vertex_cap:
        raise SearchCapExceeded(size, vertex_cap)
    if (h1.num_vertices, h1.num_edges, h1.uniformity) != (h2.num_vertices, h2.num_edges, h2.uniformity):
        return False, None
    if sorted(h1.degrees()) != sorted(h2.degrees()):
        return False, None

    pinned = list(pinned or [])
    missing = [name for name in pinned if name not in h1.vertices or name not in h2.vertices]
    if missing:
        return False, None

    matcher = GraphMatcher(
        _labelled_incidence(h1, pinned), _labelled_incidence(h2, pinned),
        node_match=lambda a, b: a['kind'] == b['kind'] and a['pin'] == b['pin'],
    )
    if not matcher.is_isomorphic():
        return False, None
    witness = {h1.vertices[v]: h2.vertices[w]
               for (kind, v), (_, w) in matcher.mapping.items() if kind == 'v'}
    return True, witness


def check_witness(first: GraphLike, second: GraphLike, witness: Dict[str, str]) -> bool:
    """Confirm a vertex map sends the edges of `first` exactly onto the edges of `second`."""
    h1, h2 = as_hypergraph(first), as_hypergraph(second)
    if sorted(witness) != sorted(h1.vertices) or sorted(witness.values()) != sorted(h2.vertices):
        return False
    images = {frozenset(witness[h1.vertices[v]] for v in e) for e in h1.edges}
    targets = {frozenset(h2.vertices[v] for v in e) for e in h2.edges}
    return images == targets
