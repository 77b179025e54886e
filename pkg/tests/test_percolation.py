import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxeter import build_group, parse_spec
from percolation import (FoldStep, PercolationCertificate, build_cs_tree, build_percolating_certificate,
                         certificate_to_monochromatic_leaf, fold_edge_set, fold_word_set, is_stack,
                         project_certificate_to_edges, shortest_certificate, verify_percolation)
from percolation.certificate import certificate_from_dict, replay_on_group, step_involutions
from percolation.errors import CertificateInvalid, DepthCap, GroupMismatch, IndexOutOfRange, NotAReflection
from percolation.folding import elements_over_edges
from refgraph import CutInvolution, build_reflection_hypergraph, preset
from refgraph.graph_io import parse_adjacency_list
from refgraph.presets import acceptance_presets

STABLE_PRESETS = {'c6', 'c4', 'octahedron_subdivision', 'k22_replacement_octahedron',
                  'gowers_octahedron(3)', 'm_k(3)', 'tetra_flag_3graph'}

C6_LEAVES = [
    (1, 1, 1, 1, 1, 1), (2, 1, 1, 2, 2, 2), (2, 2, 2, 2, 3, 3), (3, 3, 3, 3, 3, 3),
    (6, 6, 6, 6, 6, 6), (5, 6, 6, 5, 5, 5), (5, 5, 5, 5, 4, 4), (4, 4, 4, 4, 4, 4),
]


def certified(name):
    h = preset(name)
    return h, build_percolating_certificate(h.group, h.subsets, hypergraph=h)


def hexagon_involutions():
    """Vertex-axis reflections of the hexagon 1..6 (vertex ids 0..5), oriented by hand."""
    def involution(swaps, fixed, left, right):
        perm = list(range(6))
        for a, b in swaps:
            perm[a], perm[b] = b, a
        return CutInvolution(permutation=tuple(perm), fixed=frozenset(fixed), left=frozenset(left),
                             right=frozenset(right), stable=True)
    return [
        involution([(1, 5), (2, 4)], {0, 3}, {1, 2}, {4, 5}),
        involution([(0, 2), (5, 3)], {1, 4}, {0, 5}, {2, 3}),
        involution([(1, 3), (0, 4)], {2, 5}, {0, 1}, {3, 4}),
    ]


def hexagon():
    return parse_adjacency_list(["1 2", "2 3", "3 4", "4 5", "5 6", "6 1"])


def test_fold_identity_set(a3):
    for s in a3.simple_reflections:
        assert fold_word_set(a3, {0}, s, '+') == {0, s}


def test_fold_whole_group(b3):
    everything = frozenset(range(b3.order))
    for t in b3.reflections:
        assert fold_word_set(b3, everything, t, 1) == everything
        assert fold_word_set(b3, everything, t, -1) == everything


def test_fold_rejects_non_reflections(a3):
    rotation = a3.element_from_word([0, 1]).index
    with pytest.raises(NotAReflection):
        fold_word_set(a3, {0}, rotation, '+')


def test_replay_reaches_i2_3(i2_3):
    cert = build_percolating_certificate(i2_3, [{0}, {1}])
    trace = replay_on_group(i2_3, cert)
    assert len(cert) == 6
    assert trace[-1] == frozenset(range(6))


@pytest.mark.parametrize("text,subsets,steps", [
    ("I2:3", [{0}, {1}], 6),
    ("A3", [{1, 2}, {0, 2}], 18),
    ("A1", [{0}, {0}], 1),
])
def test_certificate_lengths(text, subsets, steps):
    group = build_group(parse_spec(text))
    cert = build_percolating_certificate(group, subsets)
    assert len(cert) == steps == group.rank * group.max_length
    assert all(step.sign == 1 for step in cert.steps)


@given(data=st.data())
def test_folding_is_idempotent(b3, data):
    members = data.draw(st.sets(st.integers(0, b3.order - 1), max_size=20))
    t = data.draw(st.sampled_from(b3.reflections))
    sign = data.draw(st.sampled_from(['+', '-']))
    once = fold_word_set(b3, members, t, sign)
    assert fold_word_set(b3, once, t, sign) == once


def stack_closure(group, members):
    stack = set(members)
    frontier = list(stack)
    while frontier:
        w = frontier.pop()
        for s in group.simple_reflections:
            sw = int(group.multiply_ids(s, w))
            if group.lengths[sw] < group.lengths[w] and sw not in stack:
                stack.add(sw)
                frontier.append(sw)
    return stack


@given(data=st.data())
def test_stacks_grow_under_simple_folds(a3, data):
    seeds = data.draw(st.sets(st.integers(0, a3.order - 1), min_size=1, max_size=4))
    stack = stack_closure(a3, seeds)
    assert is_stack(a3, stack)
    for s in a3.simple_reflections:
        assert stack <= fold_word_set(a3, stack, s, '+')


def test_is_stack_rejects_gaps(a3):
    assert not is_stack(a3, {a3.element_from_word([0, 1]).index})


@pytest.mark.parametrize("text", ["I2:3", "A3", "B3", "H3"])
def test_level_completion(text):
    group = build_group(parse_spec(text))
    cert = build_percolating_certificate(group, [set(range(group.rank)), set(range(group.rank))])
    trace = replay_on_group(group, cert)
    for level in range(group.max_length):
        members = trace[(level + 1) * group.rank]
        assert set(np.flatnonzero(group.lengths <= level + 1).tolist()) <= members


@pytest.mark.parametrize("name", acceptance_presets())
def test_preset_certificates_verify(name):
    h, cert = certified(name)
    assert len(cert) == h.group.rank * h.group.max_length
    result = verify_percolation(h, cert)
    assert result.verdict
    assert result.metadata['annotation'] == ('norming' if name in STABLE_PRESETS else 'weakly_norming')
    assert cert.stable == (name in STABLE_PRESETS)


def test_named_verdicts():
    assert verify_percolation(*certified('c6')).metadata['annotation'] == 'norming'
    assert verify_percolation(*certified('k1_4')).metadata['annotation'] == 'weakly_norming'
    assert verify_percolation(*certified('octahedron_subdivision')).metadata['annotation'] == 'norming'


def test_projection_reaches_all_edges():
    h, cert = certified('c6')
    trace = project_certificate_to_edges(h, cert)
    assert len(trace) == 7 and trace[-1] == frozenset(range(6))
    h, cert = certified('subdivided_k4')
    trace = project_certificate_to_edges(h, cert)
    assert len(trace) == 19 and len(trace[-1]) == 12


def test_empty_certificate_projection():
    h = preset('q3_hypercube')
    empty = PercolationCertificate(spec=h.group.spec, subsets=h.subsets, steps=())
    assert project_certificate_to_edges(h, empty) == [frozenset([0])]


@pytest.mark.parametrize("name", acceptance_presets())
def test_group_and_edge_folds_correspond(name):
    h, cert = certified(name)
    group = h.group
    edges = project_certificate_to_edges(h, cert)
    for i, step in enumerate(cert.steps):
        folded = fold_word_set(group, elements_over_edges(h, edges[i]), step.reflection, step.sign)
        assert folded == elements_over_edges(h, edges[i + 1])


@pytest.mark.parametrize("name", ['c4', 'c6', 'subdivided_k4', 'k1_4', 'q3_hypercube',
                                  'octahedron_subdivision', 'gowers_octahedron(3)', 'tetra_flag_3graph'])
def test_leaf_identity_on_prefixes(name):
    h, cert = certified(name)
    involutions = step_involutions(h, cert)
    edges = project_certificate_to_edges(h, cert)
    composed = np.arange(h.num_edges)
    # composed_i = phi_1 o ... o phi_i, built by appending on the right
    for i, step in enumerate(cert.steps):
        composed = composed[involutions[step.reflection].fold_map(h, step.sign)]
        reached = set(np.flatnonzero(composed == cert.initial_edge).tolist())
        assert reached == set(edges[i + 1])


def test_signed_edge_folds_on_c6():
    h = preset('c6')
    phi = step_involutions(h, build_percolating_certificate(h.group, h.subsets, h))[h.group.simple_reflections[0]]
    plus = fold_edge_set(h, {0}, phi, '+')
    assert len(plus) == 2 and 0 in plus
    assert fold_edge_set(h, range(6), phi, '-') == frozenset(range(6))


def test_group_mismatch():
    h, cert = certified('c6')
    with pytest.raises(GroupMismatch):
        verify_percolation(preset('k1_4'), cert)
    other = build_reflection_hypergraph(h.group, [{1}, {0}])
    with pytest.raises(GroupMismatch):
        project_certificate_to_edges(other, cert)


def test_corrupted_certificate_reports_first_violation():
    h, cert = certified('c6')
    doc = cert.to_dict(h.group)
    doc['steps'][3]['reflection_word'] = [0, 1]
    corrupted = certificate_from_dict(doc, h.group)
    result = verify_percolation(h, corrupted)
    assert not result.verdict
    assert result.metadata['first_violation'] == 3


def test_truncated_certificate_fails():
    h, cert = certified('subdivided_k4')
    short = PercolationCertificate(spec=cert.spec, subsets=cert.subsets, steps=cert.steps[:3])
    result = verify_percolation(h, short)
    assert not result.verdict
    assert result.metadata['first_violation'] == 3


def test_certificate_json_round_trip():
    h, cert = certified('q3_hypercube')
    doc = cert.to_dict(h.group)
    assert doc['schema'] == 'coxnorm.certificate/1'
    assert doc['steps'][0] == {'reflection_word': [0], 'sign': '+'}
    assert certificate_from_dict(doc) == cert


def test_c6_cs_tree_leaves():
    tree = build_cs_tree(hexagon(), hexagon_involutions(), (1, 2, 3, 4, 5, 6), depth=3)
    assert list(tree.leaves) == C6_LEAVES
    assert tree.leaf('+++') == (1, 1, 1, 1, 1, 1)
    assert tree.monochromatic_leaves() == [0, 3, 4, 7]
    assert len(tree.to_dict()['tree']['children']) == 2


def test_hand_oriented_hexagon_involutions_are_valid():
    for phi in hexagon_involutions():
        assert phi.validate(hexagon()) == []


def test_cs_tree_small_cases():
    tree = build_cs_tree(hexagon(), [], (1, 2, 3, 4, 5, 6), depth=0)
    assert tree.leaves == ((1, 2, 3, 4, 5, 6),)
    mono = build_cs_tree(hexagon(), hexagon_involutions(), [7] * 6)
    assert all(set(chi) == {7} for level in mono.levels for chi in level)
    assert len(mono.leaves) == 8


def test_cs_tree_depth_cap():
    phi = hexagon_involutions()[0]
    with pytest.raises(DepthCap):
        build_cs_tree(hexagon(), [phi] * 13, range(1, 7))


def test_monochromatic_leaf_from_certificates():
    h, cert = certified('c6')
    leaf, branch = certificate_to_monochromatic_leaf(h, cert)
    assert set(leaf) == {h.fundamental_edge + 1}
    assert branch == ('+',) * 6

    h, cert = certified('q3_hypercube')
    leaf, branch = certificate_to_monochromatic_leaf(h, cert)
    assert len(branch) == 3 * h.group.max_length == 18
    assert len(set(leaf)) == 1


def test_single_edge_needs_no_folds():
    h = build_reflection_hypergraph(build_group(parse_spec("A1")), [{0}, {0}])
    assert h.num_edges == 1
    empty = PercolationCertificate(spec=h.group.spec, subsets=h.subsets, steps=())
    leaf, branch = certificate_to_monochromatic_leaf(h, empty)
    assert leaf == (1,) and branch == ()


def test_incomplete_certificate_has_no_monochromatic_leaf():
    h, cert = certified('c6')
    short = PercolationCertificate(spec=cert.spec, subsets=cert.subsets, steps=cert.steps[:2])
    with pytest.raises(CertificateInvalid):
        certificate_to_monochromatic_leaf(h, short)


def test_shortest_certificate_search():
    h = preset('c6')
    found = shortest_certificate(h)
    assert found is not None
    assert len(found) <= 6
    assert verify_percolation(h, found).verdict
    with pytest.raises(ValueError):
        shortest_certificate(preset('simplex_incidence(4,0,1)'))


def test_fold_step_symbol():
    assert FoldStep(1, -1).symbol == '-'


def test_fold_rejects_out_of_range_ids(a3):
    s = a3.simple_reflections[0]
    with pytest.raises(IndexOutOfRange):
        fold_word_set(a3, {-1}, s, '+')
    with pytest.raises(IndexOutOfRange):
        fold_word_set(a3, {a3.order}, s, '+')
    with pytest.raises(IndexOutOfRange):
        is_stack(a3, {0, -3})
    h = preset('c6')
    phi = step_involutions(h, build_percolating_certificate(h.group, h.subsets, h))[h.group.simple_reflections[0]]
    with pytest.raises(IndexOutOfRange):
        fold_edge_set(h, {-1}, phi, '+')
    with pytest.raises(IndexOutOfRange):
        elements_over_edges(h, {6})
