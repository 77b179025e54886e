"""
coxnorm/refgraph/graph_io.py
Graph JSON, DOT export and adjacency-list import.
"""

import json
import logging
from typing import Iterable, Union

from refgraph.errors import RefGraphError
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph

logger = logging.getLogger(__name__)

GRAPH_SCHEMA = "coxnorm.graph/1"


def hypergraph_to_dict(hypergraph: Hypergraph) -> dict:
    """
    Graph JSON. Reflection hypergraphs list their parts with generator
    subsets and coset representative words; generic ones a flat vertex list.
    """
    doc = {'schema': GRAPH_SCHEMA, 'k': hypergraph.uniformity}
    if isinstance(hypergraph, ReflectionHypergraph):
        doc['group'] = hypergraph.group.spec.to_dict()
        doc['parts'] = [
            {
                'generators': sorted(subset),
                'vertices': [{'id': v, 'name': hypergraph.vertices[v],
                              'rep_word': list(hypergraph.representative_word(v))}
                             for v in hypergraph.part(i)],
            }
            for i, subset in enumerate(hypergraph.subsets)
        ]
        doc['stable'] = hypergraph.stable
    else:
        doc['vertices'] = [{'id': v, 'name': name} for v, name in enumerate(hypergraph.vertices)]
    doc['edges'] = [list(e) for e in hypergraph.edges]
    return doc


def hypergraph_from_dict(doc: dict) -> Hypergraph:
    """Generic hypergraph from graph JSON; part structure is flattened."""
    if doc.get('schema') != GRAPH_SCHEMA:
        raise RefGraphError(f"Unsupported graph document schema: {doc.get('schema')}")
    if 'parts' in doc:
        vertices = sorted((v for part in doc['parts'] for v in part['vertices']), key=lambda v: v['id'])
    else:
        vertices = sorted(doc['vertices'], key=lambda v: v['id'])
    if [v['id'] for v in vertices] != list(range(len(vertices))):
        raise RefGraphError("Vertex ids must be 0..n-1")
    names = [v.get('name', str(v['id'])) for v in vertices]
    return Hypergraph(vertices=names, edges=[tuple(e) for e in doc['edges']])


def to_dot(hypergraph: Hypergraph, name: str = "H") -> str:
    """DOT text for a graph; parts of a reflection graph get bipartite rank hints."""
    if hypergraph.uniformity != 2:
        raise RefGraphError("DOT export is only defined for graphs")
    lines = [f"graph {name} {{", "  rankdir=LR;"]
    if isinstance(hypergraph, ReflectionHypergraph):
        shapes = ("circle", "box")
        for i in range(hypergraph.k):
            members = " ".join(f'"{hypergraph.vertices[v]}"' for v in hypergraph.part(i))
            lines.append(f"  subgraph part{i} {{ rank=same; node [shape={shapes[i % 2]}]; {members}; }}")
    else:
        for v in hypergraph.vertices:
            lines.append(f'  "{v}";')
    for u, v in hypergraph.edges:
        lines.append(f'  "{hypergraph.vertices[u]}" -- "{hypergraph.vertices[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_adjacency_list(lines: Iterable[str]) -> Hypergraph:
    """One edge per line, whitespace-separated vertex tokens; '#' starts a comment."""
    edges = []
    for raw in lines:
        line = raw.split('#', 1)[0].strip()
        if line:
            edges.append(line.split())
    if not edges:
        raise RefGraphError("Adjacency list has no edges")
    return Hypergraph.from_named_edges(edges)


def read_adjacency_list(path: str) -> Hypergraph:
    with open(path) as f:
        return parse_adjacency_list(f)


def write_graph(hypergraph: Hypergraph, path: str) -> None:
    with open(path, 'w') as f:
        json.dump(hypergraph_to_dict(hypergraph), f, indent=2)
    logger.info("Wrote graph with %d vertices to %s", hypergraph.num_vertices, path)


def load_graph(source: Union[str, dict]) -> Hypergraph:
    """Graph JSON (path or parsed dict), or an adjacency list for any other file."""
    if isinstance(source, dict):
        return hypergraph_from_dict(source)
    with open(source) as f:
        text = f.read()
    if text.lstrip().startswith('{'):
        return hypergraph_from_dict(json.loads(text))
    return parse_adjacency_list(text.splitlines())
