import itertools
from collections import deque

import numpy as np
import pytest

from coxeter import (build_group, chamber_of, element_from_word, length, multiply,
                     parabolic_cosets, parse_spec)
from coxeter.errors import CoxeterError, MixedGroups, OrderCapExceeded
from coxeter.serialize import group_from_dict, group_to_dict
from coxeter.spec import CoxeterSpec


SMALL_GROUPS = ["A1", "A2", "A3", "B3", "D3", "I2:3", "I2:5", "I2:8", "H3", "A1xA1", "A2xA1", "B2xI2:3"]


@pytest.mark.parametrize("text,order,positive,rank", [
    ("A3", 24, 6, 3),
    ("I2:3", 6, 3, 2),
    ("B3", 48, 9, 3),
    ("D3", 24, 6, 3),
    ("H3", 120, 15, 3),
    ("A1xA1xA1", 8, 3, 3),
])
def test_group_orders(text, order, positive, rank):
    group = build_group(parse_spec(text))
    assert group.order == order
    assert group.num_positive_roots == positive
    assert group.rank == rank
    assert len(group.reflections) == positive


def test_f4_order():
    group = build_group(parse_spec("F4"))
    assert group.order == 1152
    assert group.num_positive_roots == 24


def test_enumeration_order(a3):
    assert a3.word(0) == ()
    assert [a3.word(w) for w in range(1, 4)] == [(0,), (1,), (2,)]
    assert list(a3.lengths) == sorted(a3.lengths)
    for L in range(a3.max_length + 1):
        words = [a3.word(w) for w in np.flatnonzero(a3.lengths == L)]
        assert words == sorted(words)


def test_enumeration_is_deterministic():
    first = build_group(parse_spec("B3"))
    second = build_group(parse_spec("B3"))
    assert [first.word(w) for w in range(first.order)] == [second.word(w) for w in range(second.order)]


def test_element_from_word(i2_3):
    assert element_from_word(i2_3, []).index == 0
    assert length(i2_3, element_from_word(i2_3, [])) == 0
    s = element_from_word(i2_3, [1])
    assert length(i2_3, s) == 1
    longest = element_from_word(i2_3, [0, 1, 0])
    assert length(i2_3, longest) == 3 == i2_3.num_positive_roots
    assert longest == i2_3.longest_element()
    assert element_from_word(i2_3, [1, 0, 1]) == longest


def test_word_out_of_range(i2_3):
    with pytest.raises(CoxeterError):
        element_from_word(i2_3, [2])


def test_multiply_identities(a3):
    e = a3.identity
    for w in a3.elements():
        assert multiply(a3, e, w) == w
        assert multiply(a3, w, a3.inverse(w)) == e
    for i in range(a3.rank):
        s = a3.simple_reflection(i)
        assert multiply(a3, s, s) == e


def test_multiply_matches_words(b3, rng):
    for _ in range(50):
        u = rng.integers(b3.rank, size=rng.integers(0, 8)).tolist()
        v = rng.integers(b3.rank, size=rng.integers(0, 8)).tolist()
        assert b3.element_from_word(u) * b3.element_from_word(v) == b3.element_from_word(u + v)


def test_mixed_groups(a3, b3):
    with pytest.raises(MixedGroups):
        multiply(a3, a3.identity, b3.identity)


def test_longest_element_of_a3(a3):
    assert a3.max_length == 6
    assert length(a3, a3.longest_element()) == 6


@pytest.mark.parametrize("text", SMALL_GROUPS)
def test_length_matches_breadth_first_distance(text):
    group = build_group(parse_spec(text))
    distance = np.full(group.order, -1)
    distance[0] = 0
    queue = deque([0])
    while queue:
        w = queue.popleft()
        for i in range(group.rank):
            v = int(group.multiply_ids(w, group.simple_reflections[i]))
            if distance[v] < 0:
                distance[v] = distance[w] + 1
                queue.append(v)
    assert np.array_equal(distance, group.lengths)


@pytest.mark.parametrize("text", SMALL_GROUPS)
def test_determinant_parity(text):
    group = build_group(parse_spec(text))
    for w in range(group.order):
        assert np.linalg.det(group.matrix(w)) == pytest.approx((-1) ** group.length(w))


@pytest.mark.parametrize("text", ["A3", "B3", "I2:5"])
def test_exchange_direction(text):
    group = build_group(parse_spec(text))
    for t in group.reflections:
        root = group.root_of(t)
        tw = group.multiply_ids(t, np.arange(group.order))
        for w in range(group.order):
            shorter = group.lengths[tw[w]] < group.lengths[w]
            assert group.lengths[tw[w]] != group.lengths[w]
            assert shorter == (group.chamber_of(w).sign_at(root) < 0)


def test_reflections_are_involutions_flipping_one_root(b3):
    for j in range(b3.num_positive_roots):
        t = b3.reflection_for_root(j)
        assert b3.is_reflection(t)
        assert t * t == b3.identity
        matrix = b3.matrix(t)
        root = b3.roots.positive_roots[j]
        assert np.allclose(matrix @ root, -root)
    assert not b3.is_reflection(b3.identity)


def test_simple_reflection_ids(a3):
    assert a3.simple_reflections == (1, 2, 3)
    assert [a3.root_of(s) for s in a3.simple_reflections] == [0, 1, 2]


def test_chambers_of_i2_3(i2_3):
    fundamental = chamber_of(i2_3, i2_3.identity)
    assert set(fundamental.signs) == {1}
    s0 = i2_3.simple_reflection(0)
    signs = chamber_of(i2_3, s0).signs
    assert signs[0] == -1 and signs[1] == 1

    chambers = [chamber_of(i2_3, w) for w in i2_3.elements()]
    assert len({c.signs for c in chambers}) == 6
    for chamber in chambers:
        sampled = np.sign(i2_3.roots.positive_roots @ np.array(chamber.sample_point))
        assert tuple(int(s) for s in sampled) == chamber.signs


@pytest.mark.parametrize("text", ["A3", "B3", "H3"])
def test_simple_transitivity(text):
    group = build_group(parse_spec(text))
    signs = {group.chamber_of(w).signs for w in range(group.order)}
    assert len(signs) == group.order


def test_positive_roots_nonnegative_in_simple_basis():
    group = build_group(parse_spec("H3"))
    assert np.all(group.roots.coefficients >= 0)
    assert np.allclose(group.roots.positive_roots[:3], group.roots.simple_roots)
    assert np.allclose(np.linalg.norm(group.roots.positive_roots, axis=1), 1.0)


def test_product_roots_live_in_orthogonal_blocks():
    group = build_group(parse_spec("A2xA1"))
    simple = group.roots.simple_roots
    assert np.allclose(simple[:2, 2], 0.0)
    assert np.allclose(simple[2, :2], 0.0)


def test_cosets_of_a3(a3):
    cosets = parabolic_cosets(a3, {1, 2})
    assert len(cosets) == 4
    assert all(len(c) == 6 for c in cosets)
    assert len(parabolic_cosets(a3, range(3))) == 1
    singletons = parabolic_cosets(a3, [])
    assert len(singletons) == 24 and all(len(c) == 1 for c in singletons)


@pytest.mark.parametrize("subset", [(), (0,), (1,), (0, 2), (1, 2), (0, 1, 2)])
def test_coset_partition(b3, subset):
    cosets, coset_of = b3.coset_partition(subset)
    subgroup = set(b3.parabolic_subgroup(subset).tolist())
    assert sum(len(c) for c in cosets) == b3.order
    assert sorted(itertools.chain.from_iterable(c.members for c in cosets)) == list(range(b3.order))
    for index, coset in enumerate(cosets):
        lengths = [b3.length(m) for m in coset.members]
        assert b3.length(coset.representative) == min(lengths)
        assert lengths.count(min(lengths)) == 1
        for m in coset.members:
            assert coset_of[m] == index
            assert int(b3.multiply_ids(b3.inverse(coset.representative).index, m)) in subgroup
    reps = [c.representative for c in cosets]
    assert reps == sorted(reps)


def test_order_cap_during_enumeration():
    custom = {'components': [{'family': 'custom', 'rank': 2, 'coxeter_matrix': [[1, 6], [6, 1]]}],
              'order_cap': 8}
    with pytest.raises(OrderCapExceeded):
        build_group(CoxeterSpec.from_dict(custom))


def test_custom_component_matches_family():
    custom = CoxeterSpec.from_dict(
        {'components': [{'family': 'custom', 'rank': 3,
                         'coxeter_matrix': [[1, 3, 2], [3, 1, 3], [2, 3, 1]]}]})
    assert build_group(custom).order == 24


def test_group_document_round_trip(b3):
    rebuilt = group_from_dict(group_to_dict(b3))
    assert rebuilt.order == b3.order
    assert group_to_dict(rebuilt)['elements'] == group_to_dict(b3)['elements']


def test_group_document_rejects_wrong_words(i2_3):
    doc = group_to_dict(i2_3)
    doc['elements'][4] = [1, 1]
    with pytest.raises(CoxeterError):
        group_from_dict(doc)
