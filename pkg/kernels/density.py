"""
coxnorm/kernels/density.py
Homomorphism densities t_H(f) and coloured densities <F; chi>_H of step kernels.

Two evaluators:
  - brute force over all n^|V| vertex assignments; the oracle
  - variable elimination for graphs, contracting one vertex at a time in a
    greedy minimum-degree order with numpy.einsum
"""

import logging
from typing import List, Tuple

import networkx as nx
import numpy as np

from kernels.errors import InvalidKernel, WorkCapExceeded
from kernels.step_kernel import ColoredFamily, StepKernel
from refgraph.hypergraph import Hypergraph

logger = logging.getLogger(__name__)

DEFAULT_WORK_CAP = 10 ** 8
CHUNK_SIZE = 1 << 16
# one operand slot is taken by the output
EINSUM_MAX_OPERANDS = 31

Factor = Tuple[Tuple[int, ...], np.ndarray]


def _check_family(hypergraph: Hypergraph, family: ColoredFamily):
    if len(family.coloring) != hypergraph.num_edges:
        raise InvalidKernel(
            f"Colouring has {len(family.coloring)} entries for {hypergraph.num_edges} edges"
        )
    if hypergraph.num_edges and family.arity != hypergraph.uniformity:
        raise InvalidKernel(
            f"{family.arity}-ary kernels cannot be placed on a {hypergraph.uniformity}-uniform hypergraph"
        )


def _dtype(family: ColoredFamily):
    return complex if any(f.is_complex for f in family.kernels) else float


def _scalar(value, dtype):
    return complex(value) if dtype is complex else float(np.real(value))


def colored_density_brute(hypergraph: Hypergraph, family: ColoredFamily,
                          work_cap: int = DEFAULT_WORK_CAP):
    """
    <F; chi>_H by summing the edge product over every vertex assignment.

    The sum is a single unoptimised numpy.einsum over all edge factors, so
    it still visits every assignment; isolated vertices only contribute a
    factor n and are left out. Hypergraphs with more edges than einsum
    accepts operands fall back to decoding assignments in chunks.
    """
    _check_family(hypergraph, family)
    n = family.resolution
    total = n ** hypergraph.num_vertices
    if total > work_cap:
        raise WorkCapExceeded(total, work_cap)
    dtype = _dtype(family)
    if hypergraph.num_edges == 0:
        return _scalar(1.0, dtype)
    if hypergraph.num_edges > EINSUM_MAX_OPERANDS:
        return _brute_chunked(hypergraph, family, dtype)

    used = sorted({v for e in hypergraph.edges for v in e})
    label = {v: i for i, v in enumerate(used)}
    operands = []
    for edge, values in zip(hypergraph.edges, family.edge_arrays()):
        operands.extend([values, [label[v] for v in edge]])
    summed = np.einsum(*operands, [], optimize=False)
    return _scalar(summed / n ** len(used), dtype)


def _brute_chunked(hypergraph: Hypergraph, family: ColoredFamily, dtype):
    """Mixed-radix decoding of assignments, vertex 0 the most significant digit."""
    num_vertices = hypergraph.num_vertices
    n = family.resolution
    total = n ** num_vertices
    powers = np.array([n ** p for p in range(num_vertices - 1, -1, -1)], dtype=np.int64)
    arrays = family.edge_arrays()
    accumulated = dtype(0)
    for start in range(0, total, CHUNK_SIZE):
        index = np.arange(start, min(total, start + CHUNK_SIZE), dtype=np.int64)
        digits = (index[:, None] // powers) % n
        product = np.ones(len(index), dtype=dtype)
        for edge, values in zip(hypergraph.edges, arrays):
            product *= values[tuple(digits[:, v] for v in edge)]
        accumulated += product.sum()
    return _scalar(accumulated / total, dtype)


def _interaction_graph(hypergraph: Hypergraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(hypergraph.num_vertices))
    graph.add_edges_from(hypergraph.edges)
    return graph


def _eliminate(factors: List[Factor], node: int, n: int) -> Tuple[List[Factor], Factor]:
    """Sum one variable out of the product of the factors that mention it."""
    involved = [f for f in factors if node in f[0]]
    rest = [f for f in factors if node not in f[0]]
    neighbours = sorted({v for variables, _ in involved for v in variables} - {node})
    local = {v: i for i, v in enumerate([node] + neighbours)}
    operands = []
    for variables, array in involved:
        operands.extend([array, [local[v] for v in variables]])
    contracted = np.einsum(*operands, [local[v] for v in neighbours]) / n
    return rest, (tuple(neighbours), contracted)


def colored_density_fast(graph: Hypergraph, family: ColoredFamily):
    """
    <F; chi>_H for a graph by variable elimination.

    The next vertex eliminated is always one of minimum degree in the
    current interaction graph, whose neighbours then become a clique.
    """
    _check_family(graph, family)
    if graph.num_edges and graph.uniformity != 2:
        raise InvalidKernel("Variable elimination is only used for graphs")
    dtype = _dtype(family)
    n = family.resolution
    factors: List[Factor] = [(tuple(e), values) for e, values in zip(graph.edges, family.edge_arrays())]
    interaction = _interaction_graph(graph)
    result = dtype(1)
    width = 0

    while interaction.number_of_nodes():
        node = min(interaction.degree, key=lambda item: (item[1], item[0]))[0]
        neighbours = list(interaction.neighbors(node))
        width = max(width, len(neighbours))
        if any(node in variables for variables, _ in factors):
            factors, new = _eliminate(factors, node, n)
            if new[0]:
                factors.append(new)
            else:
                result *= new[1]
        interaction.add_edges_from((u, v) for i, u in enumerate(neighbours) for v in neighbours[i + 1:])
        interaction.remove_node(node)

    logger.debug("Eliminated %d vertices, widest contraction over %d neighbours",
                 graph.num_vertices, width)
    return _scalar(result, dtype)


def density_fast(graph: Hypergraph, kernel: StepKernel):
    """t_H(f) for a graph H by variable elimination."""
    return colored_density_fast(graph, ColoredFamily.monochromatic(kernel, graph.num_edges))


def colored_density(hypergraph: Hypergraph, family: ColoredFamily,
                    work_cap: int = DEFAULT_WORK_CAP):
    """Fast path for graphs, brute force for hypergraphs."""
    if hypergraph.uniformity == 2:
        return colored_density_fast(hypergraph, family)
    return colored_density_brute(hypergraph, family, work_cap=work_cap)


def homomorphism_density(hypergraph: Hypergraph, kernel: StepKernel,
                         work_cap: int = DEFAULT_WORK_CAP):
    return colored_density(hypergraph, ColoredFamily.monochromatic(kernel, hypergraph.num_edges),
                           work_cap=work_cap)
