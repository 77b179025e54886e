"""
coxnorm/percolation/certificate.py
Percolation certificates: folding schedules that grow the fundamental edge
to every edge of a reflection hypergraph.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from coxeter.group import CoxeterGroup, build_group
from coxeter.spec import CoxeterSpec
from kernels.report import CheckReport, report
from percolation.errors import CertificateInvalid, GroupMismatch, NotAReflection, PercolationError
from percolation.folding import fold_edge_set, fold_word_set
from refgraph.hypergraph import ReflectionHypergraph, build_reflection_hypergraph
from refgraph.involutions import CutInvolution, induced_involution, is_edge_transitive_under

logger = logging.getLogger(__name__)

CERTIFICATE_SCHEMA = "coxnorm.certificate/1"
SEARCH_ORDER_CAP = 48
SEARCH_STATE_CAP = 200000


@dataclass(frozen=True)
class FoldStep:
    """Fold with the reflection `reflection` (an element id) on side `sign` (+1 or -1)."""
    reflection: int
    sign: int = 1

    @property
    def symbol(self) -> str:
        return '+' if self.sign > 0 else '-'


@dataclass(frozen=True)
class PercolationCertificate:
    spec: CoxeterSpec
    subsets: Tuple[FrozenSet[int], ...]
    steps: Tuple[FoldStep, ...]
    initial_edge: int = 0
    stable: bool = False

    def __len__(self):
        return len(self.steps)

    def to_dict(self, group: CoxeterGroup) -> dict:
        return {
            'schema': CERTIFICATE_SCHEMA,
            'group_spec': self.spec.to_dict(),
            'subsets': [sorted(s) for s in self.subsets],
            'initial_edge': self.initial_edge,
            'steps': [{'reflection_word': list(group.word(step.reflection)), 'sign': step.symbol}
                      for step in self.steps],
            'stable': self.stable,
        }

    def to_json(self, group: CoxeterGroup) -> str:
        return json.dumps(self.to_dict(group), indent=2)


def certificate_from_dict(doc: dict, group: Optional[CoxeterGroup] = None) -> PercolationCertificate:
    """
    Parse a certificate document. Reflection words are resolved in `group`
    (built from the document when omitted); words of non-reflections are
    kept as given and rejected at verification.
    """
    if doc.get('schema') != CERTIFICATE_SCHEMA:
        raise CertificateInvalid(f"Unsupported certificate schema: {doc.get('schema')}")
    spec = CoxeterSpec.from_dict(doc['group_spec'])
    if group is None:
        group = build_group(spec)
    elif group.spec.components != spec.components:
        raise GroupMismatch(f"Certificate is for {spec.label}, group is {group.label}")
    steps = []
    for index, step in enumerate(doc['steps']):
        if step.get('sign') not in ('+', '-'):
            raise CertificateInvalid(f"Step {index} has sign {step.get('sign')!r}")
        try:
            element = group.element_from_word(step['reflection_word']).index
        except ValueError as exc:
            raise CertificateInvalid(f"Step {index}: {exc}") from exc
        steps.append(FoldStep(element, 1 if step['sign'] == '+' else -1))
    return PercolationCertificate(
        spec=spec, subsets=tuple(frozenset(s) for s in doc['subsets']), steps=tuple(steps),
        initial_edge=int(doc.get('initial_edge', 0)), stable=bool(doc.get('stable', False)),
    )


def load_certificate(path: str, group: Optional[CoxeterGroup] = None) -> PercolationCertificate:
    with open(path) as f:
        return certificate_from_dict(json.load(f), group)


def canonical_schedule(group: CoxeterGroup) -> Tuple[FoldStep, ...]:
    """Every simple reflection in index order, once per length level, all with sign +."""
    return tuple(FoldStep(s, 1) for _ in range(group.max_length) for s in group.simple_reflections)


def build_percolating_certificate(group: CoxeterGroup, subsets: Sequence[Iterable[int]],
                                  hypergraph: Optional[ReflectionHypergraph] = None) -> PercolationCertificate:
    """
    The constructive schedule: for each length level L = 0 .. l_max - 1,
    fold once with every simple reflection. The result has |S| * l_max steps.
    """
    subsets = tuple(frozenset(int(i) for i in s) for s in subsets)
    if hypergraph is None:
        hypergraph = build_reflection_hypergraph(group, subsets)
    steps = canonical_schedule(group)
    stable = all(induced_involution(hypergraph, s).stable for s in group.simple_reflections)
    logger.info("Certificate for %s: %d steps, stable=%s", group.label, len(steps), stable)
    return PercolationCertificate(spec=group.spec, subsets=subsets, steps=steps,
                                  initial_edge=hypergraph.fundamental_edge, stable=stable)


def replay_on_group(group: CoxeterGroup, cert: PercolationCertificate) -> List[FrozenSet[int]]:
    """Element sets K_0 = {e}, K_{i+1} = K_i+-(t_i)."""
    trace = [frozenset([0])]
    for step in cert.steps:
        trace.append(fold_word_set(group, trace[-1], step.reflection, step.sign))
    return trace


def _check_group(hypergraph: ReflectionHypergraph, cert: PercolationCertificate):
    if hypergraph.group.spec.components != cert.spec.components:
        raise GroupMismatch(f"Certificate is for {cert.spec.label}, hypergraph for {hypergraph.group.label}")
    if tuple(hypergraph.subsets) != tuple(frozenset(s) for s in cert.subsets):
        raise GroupMismatch("Certificate subsets differ from the hypergraph's")


def step_involutions(hypergraph: ReflectionHypergraph,
                     cert: PercolationCertificate) -> Dict[int, CutInvolution]:
    """Induced involution of every reflection used by the certificate."""
    used = {}
    for step in cert.steps:
        if step.reflection not in used:
            if not hypergraph.group.is_reflection(step.reflection):
                raise NotAReflection(f"Element {step.reflection} is not a reflection")
            used[step.reflection] = induced_involution(hypergraph, step.reflection)
    return used


def project_certificate_to_edges(hypergraph: ReflectionHypergraph,
                                 cert: PercolationCertificate) -> List[FrozenSet[int]]:
    """Edge sets J_0 = {initial edge}, J_{i+1} = J_i+-(phi_{t_i})."""
    _check_group(hypergraph, cert)
    involutions = step_involutions(hypergraph, cert)
    trace = [frozenset([cert.initial_edge])]
    for step in cert.steps:
        trace.append(fold_edge_set(hypergraph, trace[-1], involutions[step.reflection], step.sign))
    return trace


def _first_invalid_step(hypergraph: ReflectionHypergraph, cert: PercolationCertificate) -> Optional[int]:
    for index, step in enumerate(cert.steps):
        if not 0 <= step.reflection < hypergraph.group.order \
                or not hypergraph.group.is_reflection(step.reflection) or step.sign not in (1, -1):
            return index
    return None


def verify_percolation(hypergraph: ReflectionHypergraph, cert: PercolationCertificate) -> CheckReport:
    """
    Passes iff the replay reaches every edge, the involutions used act
    edge-transitively, and a certificate claiming stability uses only stable
    involutions. Stable certificates are annotated "norming", the others
    "weakly_norming".
    """
    _check_group(hypergraph, cert)
    total = hypergraph.num_edges
    annotation = 'norming' if cert.stable else 'weakly_norming'
    metadata = {'group': cert.spec.label, 'subsets': [sorted(s) for s in cert.subsets],
                'steps': len(cert.steps), 'annotation': annotation}

    bad = _first_invalid_step(hypergraph, cert)
    if bad is not None or cert.initial_edge != hypergraph.fundamental_edge:
        first = bad if bad is not None else 0
        return report('percolation', total, 0, 0.0, first_violation=first,
                      reason='invalid step' if bad is not None else 'initial edge is not the fundamental edge',
                      **metadata)

    trace = project_certificate_to_edges(hypergraph, cert)
    involutions = list(step_involutions(hypergraph, cert).values())
    transitive, orbits = is_edge_transitive_under(hypergraph, involutions)
    secondary = {'edge_transitivity': 0.0 if transitive else -float(len(orbits) - 1)}
    if cert.stable:
        unstable = [phi.reflection for phi in involutions if not phi.stable]
        secondary['stability'] = -float(len(unstable))

    final = trace[-1]
    first_violation = None
    if len(final) < total:
        first_violation = len(cert.steps)
    result = report('percolation', total, len(final), 0.0, secondary=secondary,
                    first_violation=first_violation, orbits=len(orbits), **metadata)
    logger.info("Percolation check on %s: %s (%s)", cert.spec.label,
                'pass' if result.verdict else 'fail', annotation)
    return result


def certificate_to_monochromatic_leaf(hypergraph: ReflectionHypergraph, cert: PercolationCertificate,
                                      coloring: Optional[Sequence[int]] = None
                                      ) -> Tuple[Tuple[int, ...], Tuple[str, ...]]:
    """
    Follow the Cauchy-Schwarz tree branch that picks the certificate's sign
    at every level. The leaf is chi o phi_1 o ... o phi_N; it is returned
    with the branch word and must be monochromatic in the colour of the
    initial edge.
    """
    _check_group(hypergraph, cert)
    if coloring is None:
        coloring = range(1, hypergraph.num_edges + 1)
    chi = np.asarray(list(coloring))
    if len(chi) != hypergraph.num_edges:
        raise CertificateInvalid("Colouring must assign a colour to every edge")
    try:
        involutions = step_involutions(hypergraph, cert)
    except NotAReflection as exc:
        raise CertificateInvalid(str(exc)) from exc

    composed = np.arange(hypergraph.num_edges)
    for step in reversed(cert.steps):
        composed = involutions[step.reflection].fold_map(hypergraph, step.sign)[composed]
    leaf = tuple(int(c) for c in chi[composed])
    branch = tuple(step.symbol for step in cert.steps)
    if set(leaf) != {int(chi[cert.initial_edge])}:
        raise CertificateInvalid(f"Leaf {leaf} is not monochromatic in the initial edge's colour")
    return leaf, branch


def shortest_certificate(hypergraph: ReflectionHypergraph,
                         order_cap: int = SEARCH_ORDER_CAP,
                         state_cap: int = SEARCH_STATE_CAP) -> Optional[PercolationCertificate]:
    """
    Breadth-first search for a shortest percolating sequence using any
    reflection with either sign. Returns None when the state cap is hit.
    """
    group = hypergraph.group
    if group.order > order_cap:
        raise PercolationError(f"Shortest-certificate search is limited to groups of order <= {order_cap}")
    moves = []
    for t in group.reflections:
        phi = induced_involution(hypergraph, t)
        for sign in (1, -1):
            moves.append((FoldStep(t, sign), phi.fold_map(hypergraph, sign)))

    full = (1 << hypergraph.num_edges) - 1
    start = 1 << hypergraph.fundamental_edge
    parent: Dict[int, Tuple[int, FoldStep]] = {start: (-1, None)}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == full:
            steps = []
            while parent[state][0] >= 0:
                state, step = parent[state]
                steps.append(step)
            steps.reverse()
            stable = all(induced_involution(hypergraph, s.reflection).stable for s in steps)
            return PercolationCertificate(spec=group.spec, subsets=hypergraph.subsets, steps=tuple(steps),
                                          initial_edge=hypergraph.fundamental_edge, stable=stable)
        for step, image in moves:
            folded = 0
            for e, target in enumerate(image):
                if state >> int(target) & 1:
                    folded |= 1 << e
            if folded not in parent:
                parent[folded] = (state, step)
                if len(parent) > state_cap:
                    logger.warning("Shortest-certificate search hit the state cap of %d", state_cap)
                    return None
                queue.append(folded)
    return None
