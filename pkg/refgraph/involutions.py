"""
coxnorm/refgraph/involutions.py
Cut involutions: involutory automorphisms whose fixed vertices separate
the clique expansion into halves that the involution swaps.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from refgraph.errors import RefGraphError, SearchCapExceeded
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph

logger = logging.getLogger(__name__)

SEARCH_VERTEX_CAP = 20

Orientation = Tuple[FrozenSet[int], FrozenSet[int]]


@dataclass(frozen=True)
class CutInvolution:
    """
    An involution phi with fixed set F and oriented halves L, R.

    `orientations` lists every valid (L, R) split when the involution was
    found by search; (left, right) is the first of them.
    """
    permutation: Tuple[int, ...]
    fixed: FrozenSet[int]
    left: FrozenSet[int]
    right: FrozenSet[int]
    stable: bool
    source: str = 'search'
    root_index: Optional[int] = None
    reflection: Optional[int] = None
    orientations: Tuple[Orientation, ...] = ()

    def __call__(self, vertex: int) -> int:
        return self.permutation[vertex]

    def reversed(self) -> 'CutInvolution':
        """Same involution with L and R exchanged."""
        return replace(self, left=self.right, right=self.left)

    def oriented(self, left: FrozenSet[int], right: FrozenSet[int]) -> 'CutInvolution':
        return replace(self, left=frozenset(left), right=frozenset(right))

    def edge_map(self, hypergraph: Hypergraph) -> np.ndarray:
        return hypergraph.edge_map(self.permutation)

    def fold_map(self, hypergraph: Hypergraph, sign: int = 1) -> np.ndarray:
        """
        Edge map of phi+ (sign > 0) or phi- (sign < 0).

        phi+ sends edges touching R to their mirror image and fixes the rest;
        phi- does the same for edges touching L.
        """
        moved = self.right if sign > 0 else self.left
        images = self.edge_map(hypergraph)
        touches = np.array([any(v in moved for v in e) for e in hypergraph.edges], dtype=bool)
        return np.where(touches, images, np.arange(hypergraph.num_edges))

    def validate(self, hypergraph: Hypergraph) -> List[str]:
        """Violated cut-involution properties, empty if none."""
        problems = []
        perm = np.asarray(self.permutation)
        n = hypergraph.num_vertices
        if len(perm) != n or sorted(perm.tolist()) != list(range(n)):
            return ["not a permutation of the vertices"]
        if not np.array_equal(perm[perm], np.arange(n)):
            problems.append("not an involution")
        if np.all(perm == np.arange(n)):
            problems.append("identity")
        if not hypergraph.is_automorphism(perm):
            problems.append("not an automorphism")
        if set(np.flatnonzero(perm == np.arange(n)).tolist()) != set(self.fixed):
            problems.append("fixed set does not match the permutation")
        if self.left & self.right or (self.left | self.right | self.fixed) != set(range(n)) \
                or self.fixed & (self.left | self.right):
            problems.append("L, R and F do not partition the vertices")
        if {int(perm[v]) for v in self.left} != set(self.right):
            problems.append("phi(L) != R")
        expansion = hypergraph.clique_expansion()
        if any((u in self.left and v in self.right) or (u in self.right and v in self.left)
               for u, v in expansion.edges()):
            problems.append("L and R are joined in the clique expansion")
        remaining = expansion.subgraph(set(range(n)) - set(self.fixed))
        if nx.number_connected_components(remaining) < 2:
            problems.append("fixed set is not a vertex cut of the clique expansion")
        if self.stable != (not any(set(e) <= self.fixed for e in hypergraph.edges)):
            problems.append("stable flag disagrees with the fixed set")
        return problems


def separated_components(hypergraph: Hypergraph, fixed: FrozenSet[int],
                         expansion: Optional[nx.Graph] = None) -> List[FrozenSet[int]]:
    """Components of the clique expansion after deleting the fixed vertices."""
    if expansion is None:
        expansion = hypergraph.clique_expansion()
    remaining = expansion.subgraph(set(range(hypergraph.num_vertices)) - set(fixed))
    components = [frozenset(c) for c in nx.connected_components(remaining)]
    return sorted(components, key=min)


def cut_orientations(hypergraph: Hypergraph, permutation: Sequence[int],
                     fixed: FrozenSet[int], expansion: Optional[nx.Graph] = None) -> List[Orientation]:
    """
    Every (L, R) split for an involution, or [] if its fixed set does not cut.

    The fixed set must leave at least two components and every component
    must be swapped with a different one; each swapped pair contributes one
    binary choice.
    """
    components = separated_components(hypergraph, fixed, expansion)
    if len(components) < 2:
        return []
    owner = {v: c for c, comp in enumerate(components) for v in comp}
    pairs = []
    seen = set()
    for c, comp in enumerate(components):
        image = {owner[permutation[v]] for v in comp}
        if len(image) != 1:
            return []
        partner = image.pop()
        if partner == c:
            return []
        if c not in seen:
            seen.update((c, partner))
            pairs.append((c, partner))

    orientations = []
    for choice in itertools.product((False, True), repeat=len(pairs)):
        left, right = set(), set()
        for (a, b), flip in zip(pairs, choice):
            if flip:
                a, b = b, a
            left |= components[a]
            right |= components[b]
        orientations.append((frozenset(left), frozenset(right)))
    return orientations


def has_edge_inside(hypergraph: Hypergraph, vertices: FrozenSet[int]) -> bool:
    return any(set(e) <= vertices for e in hypergraph.edges)


def induced_involution(hypergraph: ReflectionHypergraph, reflection: int) -> CutInvolution:
    """
    Cut involution wW_i -> twW_i induced by a reflection t of the group.

    A vertex is fixed when its cone lies in the mirror of t, i.e. when the
    root w^{-1}(alpha_t) is supported on S_i; otherwise it joins L or R
    according to the sign of that root.
    """
    group = hypergraph.group
    t = int(reflection)
    if not group.is_reflection(t):
        raise RefGraphError(f"Element {t} of {group.label} is not a reflection")
    root = group.root_of(t)

    perm = np.empty(hypergraph.num_vertices, dtype=np.int64)
    fixed, left, right = set(), set(), set()
    for i in range(hypergraph.k):
        vertices = np.array(hypergraph.part(i))
        reps = hypergraph.vertex_representative[vertices]
        perm[vertices] = hypergraph.part_offsets[i] + hypergraph.coset_maps[i][group.multiply_ids(t, reps)]
        codes = group.images[group.inverse_ids(reps), root]
        support = group.roots.support[codes >> 1]
        outside = np.array(sorted(set(range(group.rank)) - hypergraph.subsets[i]), dtype=int)
        in_mirror = ~support[:, outside].any(axis=1) if len(outside) else np.ones(len(reps), dtype=bool)
        for v, mirror, code in zip(vertices.tolist(), in_mirror, codes):
            if mirror:
                fixed.add(v)
            elif code & 1:
                right.add(v)
            else:
                left.add(v)

    if set(np.flatnonzero(perm == np.arange(len(perm))).tolist()) != fixed:
        raise RefGraphError(f"Mirror of reflection {t} disagrees with its fixed vertices")
    fixed = frozenset(fixed)
    return CutInvolution(
        permutation=tuple(int(p) for p in perm), fixed=fixed,
        left=frozenset(left), right=frozenset(right),
        stable=not has_edge_inside(hypergraph, fixed),
        source='reflection', root_index=root, reflection=t,
    )


def reflection_involutions(hypergraph: ReflectionHypergraph,
                           simple_only: bool = False) -> List[CutInvolution]:
    group = hypergraph.group
    reflections = group.simple_reflections if simple_only else group.reflections
    return [induced_involution(hypergraph, t) for t in reflections]


def involutive_automorphisms(hypergraph: Hypergraph,
                             vertex_cap: int = SEARCH_VERTEX_CAP) -> List[Tuple[int, ...]]:
    """
    All non-identity automorphisms of order two, as vertex permutations.

    Backtracks over vertices in breadth-first order: each unassigned vertex
    is either fixed or swapped with a later unassigned vertex of the same
    degree signature, and an edge is checked as soon as all its vertices
    have images.
    """
    n = hypergraph.num_vertices
    if n > vertex_cap:
        raise SearchCapExceeded(n, vertex_cap)
    expansion = hypergraph.clique_expansion()
    degrees = hypergraph.degrees()
    signature = [(int(degrees[v]), tuple(sorted(int(degrees[u]) for u in expansion[v])))
                 for v in range(n)]
    order = []
    for component in sorted(nx.connected_components(expansion), key=min):
        root = max(sorted(component), key=lambda v: degrees[v])
        order.append(root)
        order.extend(v for _, v in nx.bfs_edges(expansion, root))
    incident = [[] for _ in range(n)]
    for e in hypergraph.edges:
        for v in e:
            incident[v].append(e)

    perm = [-1] * n
    found = []

    def consistent(assigned) -> bool:
        for v in assigned:
            for e in incident[v]:
                images = [perm[x] for x in e]
                if min(images) >= 0 and frozenset(images) not in hypergraph.edge_index:
                    return False
        return True

    def extend(i: int):
        while i < n and perm[order[i]] >= 0:
            i += 1
        if i == n:
            found.append(tuple(perm))
            return
        v = order[i]
        perm[v] = v
        if consistent((v,)):
            extend(i + 1)
        for u in order[i + 1:]:
            if perm[u] < 0 and signature[u] == signature[v]:
                perm[v], perm[u] = u, v
                if consistent((v, u)):
                    extend(i + 1)
                perm[u] = -1
        perm[v] = -1

    extend(0)
    identity = tuple(range(n))
    return sorted(perm for perm in found if perm != identity)


def enumerate_cut_involutions(hypergraph: Hypergraph,
                              vertex_cap: int = SEARCH_VERTEX_CAP) -> List[CutInvolution]:
    """
    All cut involutions of a small hypergraph, found by exhaustive search.

    Involutive automorphisms come from `involutive_automorphisms`; those
    whose fixed set cuts the clique expansion are kept with every orientation.
    """
    expansion = hypergraph.clique_expansion()
    results = []
    for perm in involutive_automorphisms(hypergraph, vertex_cap):
        fixed = frozenset(v for v in range(len(perm)) if perm[v] == v)
        orientations = cut_orientations(hypergraph, perm, fixed, expansion)
        if not orientations:
            continue
        left, right = orientations[0]
        results.append(CutInvolution(
            permutation=perm, fixed=fixed, left=left, right=right,
            stable=not has_edge_inside(hypergraph, fixed),
            source='search', orientations=tuple(orientations),
        ))
    results.sort(key=lambda phi: (sorted(phi.fixed), phi.permutation))
    logger.debug("Found %d cut involutions on %d vertices", len(results), hypergraph.num_vertices)
    return results


def stable_involutions(hypergraph: Hypergraph,
                       vertex_cap: int = SEARCH_VERTEX_CAP) -> List[CutInvolution]:
    return [phi for phi in enumerate_cut_involutions(hypergraph, vertex_cap) if phi.stable]


def edge_orbits(hypergraph: Hypergraph,
                involutions: Sequence[CutInvolution]) -> List[List[int]]:
    """Edge orbits of the group generated by the involutions, sorted by smallest edge."""
    graph = nx.Graph()
    graph.add_nodes_from(range(hypergraph.num_edges))
    for phi in involutions:
        images = phi.edge_map(hypergraph)
        if np.any(images < 0):
            raise RefGraphError("Involution is not an automorphism of the hypergraph")
        graph.add_edges_from((e, int(f)) for e, f in enumerate(images) if e != f)
    return sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])


def is_edge_transitive_under(hypergraph: Hypergraph,
                             involutions: Sequence[CutInvolution]) -> Tuple[bool, List[List[int]]]:
    orbits = edge_orbits(hypergraph, involutions)
    return len(orbits) <= 1, orbits


def cut_involution_group_edge_orbits(hypergraph: Hypergraph,
                                     vertex_cap: int = SEARCH_VERTEX_CAP) -> List[List[int]]:
    """Edge orbits under the group generated by all cut involutions."""
    return edge_orbits(hypergraph, enumerate_cut_involutions(hypergraph, vertex_cap))
