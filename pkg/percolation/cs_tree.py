"""
coxnorm/percolation/cs_tree.py
Cauchy-Schwarz trees: complete binary trees of edge colourings in which
the children of chi are chi o phi+ (left) and chi o phi- (right).
"""

import json
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from percolation.errors import DepthCap, PercolationError
from refgraph.hypergraph import Hypergraph
from refgraph.involutions import CutInvolution

logger = logging.getLogger(__name__)

CS_TREE_SCHEMA = "coxnorm.cstree/1"
DEPTH_CAP = 12

Coloring = Tuple[int, ...]


@dataclass(frozen=True)
class CSTree:
    """
    levels[d] holds the 2^d colourings at depth d, left to right; the node
    at position p has children 2p (phi+) and 2p + 1 (phi-).
    """
    root: Coloring
    involutions: Tuple[CutInvolution, ...]
    levels: Tuple[Tuple[Coloring, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def leaves(self) -> Tuple[Coloring, ...]:
        return self.levels[-1]

    def leaf(self, branch: Sequence[str]) -> Coloring:
        """Leaf reached by a word over '+' / '-'."""
        position = 0
        for symbol in branch:
            position = 2 * position + (0 if symbol == '+' else 1)
        return self.levels[len(branch)][position]

    def monochromatic_leaves(self) -> List[int]:
        return [p for p, chi in enumerate(self.leaves) if len(set(chi)) == 1]

    def to_dict(self) -> dict:
        def node(d: int, p: int) -> dict:
            entry = {'coloring': list(self.levels[d][p]), 'children': []}
            if d < self.depth:
                entry['children'] = [node(d + 1, 2 * p), node(d + 1, 2 * p + 1)]
            return entry
        return {'schema': CS_TREE_SCHEMA, 'depth': self.depth, 'tree': node(0, 0)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def build_cs_tree(graph: Hypergraph, involutions: Sequence[CutInvolution],
                  root_coloring: Sequence[int], depth: Optional[int] = None,
                  depth_cap: int = DEPTH_CAP) -> CSTree:
    """Materialise the Cauchy-Schwarz tree of an involution sequence."""
    involutions = tuple(involutions)
    if depth is None:
        depth = len(involutions)
    if depth != len(involutions):
        raise PercolationError(f"Depth {depth} needs exactly {depth} involutions, got {len(involutions)}")
    if depth > depth_cap:
        raise DepthCap(depth, depth_cap)
    root = tuple(int(c) for c in root_coloring)
    if len(root) != graph.num_edges:
        raise PercolationError("Root colouring must colour every edge")

    maps = [(phi.fold_map(graph, 1), phi.fold_map(graph, -1)) for phi in involutions]
    level = np.array([root])
    levels = [(root,)]
    for plus, minus in maps:
        # children interleaved: (chi o phi+, chi o phi-) for each parent
        level = np.stack([level[:, plus], level[:, minus]], axis=1).reshape(-1, graph.num_edges)
        levels.append(tuple(tuple(int(c) for c in row) for row in level))
    logger.debug("Cauchy-Schwarz tree of depth %d with %d leaves", depth, len(levels[-1]))
    return CSTree(root=root, involutions=involutions, levels=tuple(levels))
