"""
coxnorm/percolation/folding.py
Folding maps on group elements and on edge sets.

On the group, t+ w = tw if l(tw) < l(w) and w otherwise, t- w = tw if
l(tw) > l(w) and w otherwise; K+-(t) = {w : t+- w in K}. On edges,
J+-(phi) = {e : phi+-(e) in J}.
"""

from typing import FrozenSet, Iterable

import numpy as np

from coxeter.group import CoxeterGroup
from percolation.errors import IndexOutOfRange, NotAReflection
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph
from refgraph.involutions import CutInvolution


def _members(ids: Iterable[int], size: int, what: str) -> np.ndarray:
    """Boolean membership mask; ids must lie in 0..size-1."""
    ids = np.fromiter((int(i) for i in ids), dtype=np.int64)
    bad = ids[(ids < 0) | (ids >= size)]
    if len(bad):
        raise IndexOutOfRange(f"{what} id {int(bad[0])} is outside 0..{size - 1}")
    members = np.zeros(size, dtype=bool)
    members[ids] = True
    return members


def _sign(sign) -> int:
    if sign in ('+', 1):
        return 1
    if sign in ('-', -1):
        return -1
    raise ValueError(f"Fold sign must be '+' or '-', got {sign!r}")


def fold_elements(group: CoxeterGroup, reflection: int, elements, sign=1) -> np.ndarray:
    """Vectorised t+ (sign +) or t- (sign -) on element ids."""
    t = int(reflection)
    if not group.is_reflection(t):
        raise NotAReflection(f"Element {t} of {group.label} is not a reflection")
    elements = np.asarray(elements)
    moved = group.multiply_ids(t, elements)
    if _sign(sign) > 0:
        return np.where(group.lengths[moved] < group.lengths[elements], moved, elements)
    return np.where(group.lengths[moved] > group.lengths[elements], moved, elements)


def fold_word_set(group: CoxeterGroup, elements: Iterable[int], reflection: int, sign=1) -> FrozenSet[int]:
    """K+-(t) = {w in W : t+- w in K}."""
    members = _members(elements, group.order, "Element")
    folded = fold_elements(group, reflection, np.arange(group.order), sign)
    return frozenset(np.flatnonzero(members[folded]).tolist())


def fold_edge_set(hypergraph: Hypergraph, edges: Iterable[int],
                  involution: CutInvolution, sign=1) -> FrozenSet[int]:
    """J+-(phi) = {e : phi+-(e) in J}."""
    members = _members(edges, hypergraph.num_edges, "Edge")
    image = involution.fold_map(hypergraph, _sign(sign))
    return frozenset(np.flatnonzero(members[image]).tolist())


def is_stack(group: CoxeterGroup, elements: Iterable[int]) -> bool:
    """Closed under descent: w in K and l(sw) < l(w) for simple s imply sw in K."""
    members = _members(elements, group.order, "Element")
    ids = np.flatnonzero(members)
    for s in group.simple_reflections:
        moved = group.multiply_ids(s, ids)
        shorter = group.lengths[moved] < group.lengths[ids]
        if not np.all(members[moved[shorter]]):
            return False
    return True


def elements_over_edges(hypergraph: ReflectionHypergraph, edges: Iterable[int]) -> FrozenSet[int]:
    """All chambers whose closure holds one of the edges."""
    members = _members(edges, hypergraph.num_edges, "Edge")
    return frozenset(np.flatnonzero(members[hypergraph.edge_of_element]).tolist())

