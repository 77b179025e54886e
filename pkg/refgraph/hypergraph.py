"""
coxnorm/refgraph/hypergraph.py
Uniform hypergraphs and reflection hypergraphs built from parabolic cosets.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from coxeter.group import CoxeterGroup
from refgraph.errors import RefGraphError

logger = logging.getLogger(__name__)


@dataclass
class Hypergraph:
    """
    A uniform hypergraph on named vertices.

    Edges are tuples of vertex indices. For k-partite hypergraphs the i-th
    entry of every edge lies in part i; generic hypergraphs carry no order.
    """
    vertices: List[str]
    edges: List[Tuple[int, ...]]
    edge_index: Dict[FrozenSet[int], int] = field(init=False, repr=False)

    def __post_init__(self):
        self.edges = [tuple(int(v) for v in e) for e in self.edges]
        if len(set(self.vertices)) != len(self.vertices):
            raise RefGraphError("Vertex names must be distinct")
        sizes = {len(e) for e in self.edges}
        if len(sizes) > 1:
            raise RefGraphError(f"Hypergraph is not uniform: edge sizes {sorted(sizes)}")
        self.edge_index = {}
        for j, e in enumerate(self.edges):
            if len(set(e)) != len(e):
                raise RefGraphError(f"Edge {e} repeats a vertex")
            if any(not 0 <= v < len(self.vertices) for v in e):
                raise RefGraphError(f"Edge {e} uses an unknown vertex")
            key = frozenset(e)
            if key in self.edge_index:
                raise RefGraphError(f"Duplicate edge {[self.vertices[v] for v in e]}")
            self.edge_index[key] = j

    @classmethod
    def from_named_edges(cls, edges: Iterable[Sequence[str]],
                         vertices: Optional[Sequence[str]] = None) -> 'Hypergraph':
        edges = [tuple(str(v) for v in e) for e in edges]
        names = list(vertices) if vertices is not None else []
        seen = set(names)
        for e in edges:
            for v in e:
                if v not in seen:
                    seen.add(v)
                    names.append(v)
        position = {name: i for i, name in enumerate(names)}
        return cls(vertices=names, edges=[tuple(position[v] for v in e) for e in edges])

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Hypergraph':
        return cls.from_named_edges(([str(u), str(v)] for u, v in graph.edges()),
                                    vertices=[str(v) for v in graph.nodes()])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def uniformity(self) -> int:
        return len(self.edges[0]) if self.edges else 0

    def vertex_id(self, name: str) -> int:
        return self.vertices.index(name)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=int)
        for e in self.edges:
            deg[list(e)] += 1
        return deg

    def clique_expansion(self) -> nx.Graph:
        """Graph on the same vertices with every edge replaced by a clique."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        for e in self.edges:
            graph.add_edges_from((u, v) for i, u in enumerate(e) for v in e[i + 1:])
        return graph

    def incidence_graph(self) -> nx.Graph:
        """Bipartite vertex/edge incidence graph; nodes carry a 'kind' attribute."""
        graph = nx.Graph()
        graph.add_nodes_from((('v', i) for i in range(self.num_vertices)), kind='vertex')
        graph.add_nodes_from((('e', j) for j in range(self.num_edges)), kind='edge')
        for j, e in enumerate(self.edges):
            graph.add_edges_from((('e', j), ('v', v)) for v in e)
        return graph

    def edge_map(self, permutation: Sequence[int]) -> np.ndarray:
        """Image of every edge under a vertex permutation; -1 where the image is not an edge."""
        perm = np.asarray(permutation)
        return np.array([self.edge_index.get(frozenset(perm[list(e)].tolist()), -1)
                         for e in self.edges], dtype=np.int64)

    def is_automorphism(self, permutation: Sequence[int]) -> bool:
        perm = list(permutation)
        if sorted(perm) != list(range(self.num_vertices)):
            return False
        return bool(np.all(self.edge_map(perm) >= 0))

    def induced(self, vertex_ids: Iterable[int]) -> 'Hypergraph':
        keep = set(int(v) for v in vertex_ids)
        used = sorted(keep)
        position = {v: i for i, v in enumerate(used)}
        edges = [tuple(position[v] for v in e) for e in self.edges if keep.issuperset(e)]
        return Hypergraph(vertices=[self.vertices[v] for v in used], edges=edges)

    def disjoint_union(self, other: 'Hypergraph') -> 'Hypergraph':
        shift = self.num_vertices
        return Hypergraph(
            vertices=[f"0.{v}" for v in self.vertices] + [f"1.{v}" for v in other.vertices],
            edges=list(self.edges) + [tuple(v + shift for v in e) for e in other.edges],
        )


@dataclass(eq=False)
class ReflectionHypergraph(Hypergraph):
    """
    The (S_1,...,S_k; S, W)-reflection hypergraph.

    Part i is the list of left cosets of W_i = <S_i>; vertex ids number the
    parts consecutively. Every group element w determines the edge
    (wW_1, ..., wW_k); `edge_of_element` records that surjection.
    """
    group: CoxeterGroup = field(default=None, repr=False)
    subsets: Tuple[FrozenSet[int], ...] = ()
    part_offsets: Tuple[int, ...] = ()
    vertex_part: np.ndarray = field(default=None, repr=False)
    vertex_representative: np.ndarray = field(default=None, repr=False)
    coset_maps: Tuple[np.ndarray, ...] = field(default=(), repr=False)
    edge_of_element: np.ndarray = field(default=None, repr=False)
    edge_element: np.ndarray = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.subsets)

    @property
    def common_generators(self) -> FrozenSet[int]:
        return reduce(frozenset.intersection, self.subsets)

    @property
    def stable(self) -> bool:
        """True iff no mirror contains an edge, i.e. the S_i have empty intersection."""
        return not self.common_generators

    def part(self, i: int) -> range:
        start = self.part_offsets[i]
        stop = self.part_offsets[i + 1] if i + 1 < self.k else self.num_vertices
        return range(start, stop)

    def vertices_of_elements(self, elements: np.ndarray) -> np.ndarray:
        """(len(elements), k) array of vertex ids of the edges (wW_1, ..., wW_k)."""
        elements = np.asarray(elements)
        return np.stack([self.part_offsets[i] + self.coset_maps[i][elements]
                         for i in range(self.k)], axis=-1)

    @property
    def fundamental_edge(self) -> int:
        """Edge of the identity element, lying in the closed fundamental chamber."""
        return int(self.edge_of_element[0])

    def representative_word(self, vertex: int) -> Tuple[int, ...]:
        return self.group.word(int(self.vertex_representative[vertex]))

    def chamber_elements(self, edge: int) -> np.ndarray:
        """Group elements whose closed chamber contains the edge: one coset of <S_1 & ... & S_k>."""
        return np.flatnonzero(self.edge_of_element == edge)


def build_reflection_hypergraph(group: CoxeterGroup,
                                subsets: Sequence[Iterable[int]]) -> ReflectionHypergraph:
    """
    Reflection hypergraph of `group` for generator subsets S_1..S_k.

    Vertices are ordered by part, then by coset representative id; edges by
    the smallest element id mapping onto them.
    """
    subsets = tuple(frozenset(int(i) for i in s) for s in subsets)
    if len(subsets) < 2:
        raise RefGraphError("A reflection hypergraph needs at least two generator subsets")
    for s in subsets:
        bad = [i for i in s if not 0 <= i < group.rank]
        if bad:
            raise RefGraphError(f"Generator indices {bad} out of range for {group.label}")

    names: List[str] = []
    offsets: List[int] = []
    coset_maps: List[np.ndarray] = []
    vertex_part: List[int] = []
    vertex_rep: List[int] = []
    for i, subset in enumerate(subsets):
        cosets, coset_of = group.coset_partition(subset)
        offsets.append(len(names))
        coset_maps.append(coset_of)
        for c, coset in enumerate(cosets):
            names.append(f"{i}:{c}")
            vertex_part.append(i)
            vertex_rep.append(coset.representative)

    tuples = np.stack([offsets[i] + coset_maps[i] for i in range(len(subsets))], axis=1)
    _, first, inverse = np.unique(tuples, axis=0, return_index=True, return_inverse=True)
    # renumber edges by first occurrence
    rank_of = np.empty(len(first), dtype=np.int64)
    rank_of[np.argsort(first, kind='stable')] = np.arange(len(first))
    edge_of_element = rank_of[np.asarray(inverse).ravel()]
    edge_element = np.sort(first)
    edges = [tuple(int(v) for v in tuples[w]) for w in edge_element]

    hypergraph = ReflectionHypergraph(
        vertices=names, edges=edges, group=group, subsets=subsets,
        part_offsets=tuple(offsets), vertex_part=np.array(vertex_part),
        vertex_representative=np.array(vertex_rep), coset_maps=tuple(coset_maps),
        edge_of_element=edge_of_element, edge_element=edge_element,
    )

    common = group.parabolic_subgroup(hypergraph.common_generators)
    if hypergraph.num_edges * len(common) != group.order:
        raise RefGraphError(
            f"Edge count {hypergraph.num_edges} does not equal |W| / |<common>| = "
            f"{group.order} / {len(common)}"
        )
    logger.info("Reflection hypergraph of %s with S=%s: %d vertices, %d edges",
                group.label, [sorted(s) for s in subsets], hypergraph.num_vertices, hypergraph.num_edges)
    return hypergraph


def tensor_product(first: ReflectionHypergraph, second: ReflectionHypergraph) -> ReflectionHypergraph:
    """Reflection hypergraph of the product group with S_i = S_i' + S_i''."""
    from coxeter.group import build_group
    from coxeter.spec import CoxeterSpec

    if first.k != second.k:
        raise RefGraphError("Tensor product needs hypergraphs of the same uniformity")
    spec = CoxeterSpec(components=first.group.spec.components + second.group.spec.components,
                       order_cap=max(first.group.spec.order_cap, second.group.spec.order_cap))
    shift = first.group.rank
    subsets = [set(a) | {shift + i for i in b} for a, b in zip(first.subsets, second.subsets)]
    return build_reflection_hypergraph(build_group(spec), subsets)
