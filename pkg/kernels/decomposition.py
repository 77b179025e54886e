"""
coxnorm/kernels/decomposition.py
N-decompositions: tree decompositions whose bags all induce a copy of a
template graph N, with isomorphisms between adjacent bags fixing their overlap.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from refgraph.hypergraph import Hypergraph
from refgraph.isomorphism import check_witness, graph_isomorphic

logger = logging.getLogger(__name__)

Witness = Dict[str, str]


@dataclass
class NDecomposition:
    """
    Bags are sets of vertex names of H; `tree` lists adjacent bag indices.

    `witnesses[(a, b)]` optionally maps the vertices of bag a onto bag b; a
    missing witness is searched for during validation.
    """
    bags: List[FrozenSet[str]]
    tree: List[Tuple[int, int]]
    template: Hypergraph
    witnesses: Dict[Tuple[int, int], Witness] = field(default_factory=dict)

    def __post_init__(self):
        self.bags = [frozenset(b) for b in self.bags]
        self.tree = [(int(a), int(b)) for a, b in self.tree]

    @classmethod
    def single_bag(cls, hypergraph: Hypergraph) -> 'NDecomposition':
        return cls(bags=[frozenset(hypergraph.vertices)], tree=[], template=hypergraph)

    def tree_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.bags)))
        graph.add_edges_from(self.tree)
        return graph


def _induced(hypergraph: Hypergraph, names: FrozenSet[str]) -> Hypergraph:
    return hypergraph.induced(hypergraph.vertex_id(name) for name in names)


def _fixes(witness: Witness, overlap: FrozenSet[str]) -> bool:
    return all(witness.get(name) == name for name in overlap)


def validate_n_decomposition(hypergraph: Hypergraph,
                             decomposition: NDecomposition) -> Tuple[bool, List[str]]:
    """
    Check the tree-decomposition axioms, that every bag induces a copy of N,
    and that adjacent bags are related by an isomorphism fixing their overlap.

    Found witnesses are stored on the decomposition.
    """
    violations: List[str] = []
    bags = decomposition.bags
    names = set(hypergraph.vertices)

    tree = decomposition.tree_graph()
    if not bags:
        return False, ["no bags"]
    if not nx.is_tree(tree):
        violations.append("bag graph is not a tree")

    unknown = set().union(*bags) - names
    if unknown:
        violations.append(f"bags use unknown vertices {sorted(unknown)}")
    uncovered = names - set().union(*bags)
    if uncovered:
        violations.append(f"vertices {sorted(uncovered)} lie in no bag")

    for edge in hypergraph.edges:
        members = {hypergraph.vertices[v] for v in edge}
        if not any(members <= bag for bag in bags):
            violations.append(f"edge {sorted(members)} lies in no bag")

    for name in sorted(names):
        holding = [i for i, bag in enumerate(bags) if name in bag]
        if holding and not nx.is_connected(tree.subgraph(holding)):
            violations.append(f"bags containing {name} are not connected in the tree")

    if violations:
        return False, violations

    for i, bag in enumerate(bags):
        same, _ = graph_isomorphic(_induced(hypergraph, bag), decomposition.template)
        if not same:
            violations.append(f"bag {i} does not induce a copy of the template")

    for a, b in decomposition.tree:
        first, second = _induced(hypergraph, bags[a]), _induced(hypergraph, bags[b])
        overlap = bags[a] & bags[b]
        witness: Optional[Witness] = decomposition.witnesses.get((a, b))
        if witness is not None:
            if not (check_witness(first, second, witness) and _fixes(witness, overlap)):
                violations.append(f"witness for bags {a}-{b} is not an isomorphism fixing their overlap")
            continue
        same, witness = graph_isomorphic(first, second, pinned=sorted(overlap))
        if same:
            decomposition.witnesses[(a, b)] = witness
        else:
            violations.append(f"no isomorphism between bags {a} and {b} fixes their overlap")

    logger.debug("N-decomposition with %d bags: %d violations", len(bags), len(violations))
    return not violations, violations


def _cycle_edges(names: Sequence[str]) -> List[Tuple[str, str]]:
    return [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]


def cycle_graph(length: int, prefix: str = 'x') -> Hypergraph:
    return Hypergraph.from_named_edges(_cycle_edges([f"{prefix}{i}" for i in range(length)]))


def path_graph(num_vertices: int, prefix: str = 'x') -> Hypergraph:
    names = [f"{prefix}{i}" for i in range(num_vertices)]
    return Hypergraph.from_named_edges(zip(names, names[1:]), vertices=names)


def _subdivided_k4_edges(corners: Sequence[str], midpoint) -> List[Tuple[str, str]]:
    edges = []
    for i in range(4):
        for j in range(i + 1, 4):
            middle = midpoint(i, j)
            edges.extend([(corners[i], middle), (middle, corners[j])])
    return edges


def subdivided_k4_graph() -> Hypergraph:
    corners = [f"v{i}" for i in range(1, 5)]
    return Hypergraph.from_named_edges(
        _subdivided_k4_edges(corners, lambda i, j: f"u{i + 1}{j + 1}"))


def two_c4_gluing() -> Tuple[Hypergraph, NDecomposition]:
    """Two 4-cycles a-b-c-d and a-b-e-f sharing the edge ab: 6 vertices, 7 edges."""
    first = ['a', 'b', 'c', 'd']
    second = ['a', 'b', 'e', 'f']
    edges = _cycle_edges(first) + [e for e in _cycle_edges(second) if set(e) != {'a', 'b'}]
    graph = Hypergraph.from_named_edges(edges)
    decomposition = NDecomposition(bags=[frozenset(first), frozenset(second)], tree=[(0, 1)],
                                   template=cycle_graph(4))
    return graph, decomposition


def double_subdivided_k4() -> Tuple[Hypergraph, NDecomposition]:
    """
    Two 1-subdivisions of K4 glued along the induced 6-cycle
    v1-u12-v2-u23-v3-u13: 14 vertices, 18 edges.
    """
    shared = {(0, 1): 'u12', (1, 2): 'u23', (0, 2): 'u13'}
    first_corners = ['v1', 'v2', 'v3', 'v4']
    second_corners = ['v1', 'v2', 'v3', 'w4']
    first = _subdivided_k4_edges(first_corners, lambda i, j: shared.get((i, j), f"u{i + 1}{j + 1}"))
    second = _subdivided_k4_edges(second_corners, lambda i, j: shared.get((i, j), f"x{i + 1}{j + 1}"))
    seen = {frozenset(e) for e in first}
    graph = Hypergraph.from_named_edges(first + [e for e in second if frozenset(e) not in seen])
    bags = [frozenset(v for e in first for v in e), frozenset(v for e in second for v in e)]
    decomposition = NDecomposition(bags=bags, tree=[(0, 1)], template=subdivided_k4_graph())
    return graph, decomposition
