"""
coxnorm/coxeter/group.py
Finite reflection groups as signed permutations of the positive roots.

Each element is stored as an integer array over the positive roots: entry j
is the signed code (2*k + sign) of w(alpha_j). Composition, inversion and
length are exact integer operations on these arrays.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from coxeter.errors import CoxeterError, MixedGroups, OrderCapExceeded
from coxeter.roots import ROOT_MATCH_TOLERANCE, RootSystem, build_root_system, reflection_matrix
from coxeter.spec import CoxeterSpec

logger = logging.getLogger(__name__)


def compose_codes(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Signed permutation of a o b; stacked arrays are composed row by row."""
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim == 1 and b.ndim == 1:
        return a[b >> 1] ^ (b & 1)
    a, b = np.broadcast_arrays(np.atleast_2d(a), np.atleast_2d(b))
    return np.take_along_axis(a, b >> 1, axis=1) ^ (b & 1)


@dataclass(frozen=True)
class GroupElement:
    """Handle on an enumerated element: owning group plus its id."""
    group: 'CoxeterGroup'
    index: int

    @property
    def length(self) -> int:
        return int(self.group.lengths[self.index])

    @property
    def word(self) -> Tuple[int, ...]:
        return self.group.word(self.index)

    def __mul__(self, other: 'GroupElement') -> 'GroupElement':
        return self.group.multiply(self, other)

    def __repr__(self):
        return f"GroupElement({self.group.label}, id={self.index}, word={list(self.word)})"


@dataclass(frozen=True)
class Chamber:
    """The open chamber wC0 and the sign of <x, alpha> on it for every positive root."""
    element: int
    signs: Tuple[int, ...]
    sample_point: Tuple[float, ...]

    def sign_at(self, root_index: int) -> int:
        return self.signs[root_index]


@dataclass(frozen=True)
class ParabolicCoset:
    """Left coset w<I> with its minimal-length representative."""
    generators: FrozenSet[int]
    representative: int
    members: Tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, element_id: int) -> bool:
        return element_id in self.members


class CoxeterGroup:
    """
    A finite reflection group with a complete, deterministic enumeration.

    Element ids follow breadth-first order by length, ties broken by the
    lexicographically smallest reduced word. Id 0 is the identity and ids
    1..rank are the simple reflections.
    """

    def __init__(self, spec: CoxeterSpec, tolerance: float = ROOT_MATCH_TOLERANCE):
        self.spec = spec
        self.roots: RootSystem = build_root_system(
            spec.coxeter_matrix(), tolerance=tolerance, order_cap=spec.order_cap
        )
        self.rank = spec.rank
        n = self.roots.num_positive
        self.simple_codes = np.stack(
            [self.roots.simple_reflection_codes(i) for i in range(self.rank)]
        ).astype(np.int64)

        self._enumerate()
        self._build_lookup()
        self._build_reflections()
        self._inverse = self._compute_inverses()
        self._coset_cache: Dict[FrozenSet[int], Tuple[List[ParabolicCoset], np.ndarray]] = {}

        logger.info("Built %s: order %d, %d positive roots, longest length %d",
                    self.label, self.order, n, self.max_length)

    # -- enumeration -------------------------------------------------------

    def _enumerate(self):
        n = self.roots.num_positive
        cap = self.spec.order_cap
        identity = (2 * np.arange(n)).astype(np.int64)

        levels = [identity[None, :]]
        parents = [np.array([-1])]
        letters = [np.array([-1])]
        total = 1
        offset = 0

        while True:
            current = levels[-1]
            length = len(levels) - 1
            # candidates w*s_i in (w, i) order
            candidates = np.stack(
                [compose_codes(current, np.broadcast_to(s, current.shape)) for s in self.simple_codes],
                axis=1,
            ).reshape(-1, n)
            cand_parent = np.repeat(np.arange(len(current)) + offset, self.rank)
            cand_letter = np.tile(np.arange(self.rank), len(current))

            longer = (candidates & 1).sum(axis=1) == length + 1
            candidates = candidates[longer]
            if not len(candidates):
                break
            _, first = np.unique(candidates, axis=0, return_index=True)
            first.sort()

            offset += len(current)
            total += len(first)
            if total > cap:
                raise OrderCapExceeded(total, cap)
            levels.append(candidates[first])
            parents.append(cand_parent[longer][first])
            letters.append(cand_letter[longer][first])

        self.images = np.vstack(levels)
        self.parent = np.concatenate(parents)
        self.last_letter = np.concatenate(letters)
        self.lengths = (self.images & 1).sum(axis=1)
        self.order = len(self.images)
        self.max_length = int(self.lengths.max())

        # letters used by the reduced word, filled level by level
        letter_mask = np.zeros(self.order, dtype=np.int64)
        start = 1
        for level in levels[1:]:
            stop = start + len(level)
            ids = np.arange(start, stop)
            letter_mask[ids] = letter_mask[self.parent[ids]] | (np.int64(1) << self.last_letter[ids])
            start = stop
        self.letter_mask = letter_mask

        predicted = self.spec.predicted_order()
        if predicted is not None and predicted != self.order:
            raise CoxeterError(f"Enumerated {self.order} elements, expected {predicted}")

    def _build_lookup(self):
        # an element is determined by the images of the simple roots
        keys_src = self.images[:, :self.rank].astype(np.uint64)
        for attempt in range(8):
            weights = np.random.default_rng(attempt).integers(
                1, 2 ** 63, size=self.rank, dtype=np.uint64) | np.uint64(1)
            keys = keys_src @ weights
            order = np.argsort(keys, kind='stable')
            sorted_keys = keys[order]
            if np.all(np.diff(sorted_keys) != 0):
                self._weights = weights
                self._sorted_keys = sorted_keys
                self._key_order = order
                return
        raise CoxeterError("Could not build a collision-free element lookup")

    def ids_of(self, codes: np.ndarray) -> np.ndarray:
        """Element ids for stacked signed permutations; raises if one is not in the group."""
        codes = np.atleast_2d(codes)
        keys = codes[:, :self.rank].astype(np.uint64) @ self._weights
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        ids = self._key_order[pos]
        if not np.array_equal(self.images[ids, :self.rank], codes[:, :self.rank]):
            raise CoxeterError("Signed permutation is not an element of this group")
        return ids

    def _build_reflections(self):
        n = self.roots.num_positive
        reflection_of_root = np.full(n, -1, dtype=np.int64)
        # s_{w(alpha_i)} = w s_i w^{-1}; scan elements until every root is reached
        for w in range(self.order):
            for i in range(self.rank):
                j = int(self.images[w, i]) >> 1
                if reflection_of_root[j] < 0:
                    conj = compose_codes(compose_codes(self.images[w], self.simple_codes[i]),
                                         self._invert_codes(self.images[w]))
                    reflection_of_root[j] = int(self.ids_of(conj)[0])
            if np.all(reflection_of_root >= 0):
                break
        self.reflection_of_root = reflection_of_root
        self.root_of_reflection: Dict[int, int] = {int(t): j for j, t in enumerate(reflection_of_root)}
        self.reflections: Tuple[int, ...] = tuple(sorted(self.root_of_reflection))
        self.simple_reflections: Tuple[int, ...] = tuple(int(reflection_of_root[i]) for i in range(self.rank))

    @staticmethod
    def _invert_codes(codes: np.ndarray) -> np.ndarray:
        inv = np.empty_like(codes)
        inv[codes >> 1] = 2 * np.arange(len(codes)) + (codes & 1)
        return inv

    def _compute_inverses(self) -> np.ndarray:
        inverted = np.empty_like(self.images)
        rows = np.arange(self.order)[:, None]
        inverted[rows, self.images >> 1] = 2 * np.arange(self.images.shape[1])[None, :] + (self.images & 1)
        return self.ids_of(inverted)

    # -- element access ----------------------------------------------------

    @property
    def label(self) -> str:
        return self.spec.label

    @property
    def num_positive_roots(self) -> int:
        return self.roots.num_positive

    def element(self, index: int) -> GroupElement:
        if not 0 <= index < self.order:
            raise CoxeterError(f"Element id {index} out of range for order {self.order}")
        return GroupElement(self, int(index))

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def simple_reflection(self, i: int) -> GroupElement:
        self._check_generator(i)
        return GroupElement(self, self.simple_reflections[i])

    def longest_element(self) -> GroupElement:
        return GroupElement(self, int(np.argmax(self.lengths)))

    def elements(self) -> List[GroupElement]:
        return [GroupElement(self, w) for w in range(self.order)]

    def _check_generator(self, i: int):
        if not 0 <= i < self.rank:
            raise CoxeterError(f"Simple reflection index {i} out of range 0..{self.rank - 1}")

    def _own(self, element) -> int:
        if isinstance(element, GroupElement):
            if element.group is not self:
                raise MixedGroups(f"Element of {element.group.label} used with {self.label}")
            return element.index
        return int(element)

    def word(self, element) -> Tuple[int, ...]:
        """Lexicographically smallest reduced word of an element."""
        w = self._own(element)
        letters = []
        while w > 0:
            letters.append(int(self.last_letter[w]))
            w = int(self.parent[w])
        return tuple(reversed(letters))

    def element_from_word(self, word: Iterable[int]) -> GroupElement:
        codes = self.images[0].copy()
        for i in word:
            self._check_generator(int(i))
            codes = compose_codes(codes, self.simple_codes[int(i)])
        return GroupElement(self, int(self.ids_of(codes)[0]))

    def multiply_ids(self, a, b) -> np.ndarray:
        """Vectorised product ids for broadcastable id arrays."""
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        flat_a, flat_b = a.ravel(), b.ravel()
        codes = compose_codes(self.images[flat_a], self.images[flat_b])
        return self.ids_of(codes).reshape(a.shape)

    def multiply(self, a, b) -> GroupElement:
        """a o b, acting on roots as functions."""
        ia, ib = self._own(a), self._own(b)
        return GroupElement(self, int(self.multiply_ids(ia, ib)))

    def inverse(self, element) -> GroupElement:
        return GroupElement(self, int(self._inverse[self._own(element)]))

    def inverse_ids(self, ids) -> np.ndarray:
        return self._inverse[np.asarray(ids)]

    def length(self, element) -> int:
        """Number of positive roots the element sends to negative roots."""
        return int(self.lengths[self._own(element)])

    def is_reflection(self, element) -> bool:
        return self._own(element) in self.root_of_reflection

    def reflection_for_root(self, root_index: int) -> GroupElement:
        return GroupElement(self, int(self.reflection_of_root[root_index]))

    def root_of(self, reflection) -> int:
        t = self._own(reflection)
        if t not in self.root_of_reflection:
            raise CoxeterError(f"Element {t} is not a reflection")
        return self.root_of_reflection[t]

    def matrix(self, element) -> np.ndarray:
        """Orthogonal matrix of the element, as a product of simple reflection matrices."""
        result = np.eye(self.roots.dimension)
        for i in self.word(element):
            result = result @ reflection_matrix(self.roots.simple_roots[i])
        return result

    # -- geometry ----------------------------------------------------------

    def chamber_of(self, element) -> Chamber:
        """
        The chamber wC0. The sign of <x, alpha> on wC0 is + iff w^{-1}(alpha)
        is a positive root.
        """
        w = self._own(element)
        inv = int(self._inverse[w])
        signs = tuple(int(s) for s in np.where(self.images[inv] & 1, -1, 1))
        point = self.matrix(w) @ self.roots.fundamental_point()
        return Chamber(element=w, signs=signs, sample_point=tuple(float(x) for x in point))

    def parabolic_subgroup(self, generators: Iterable[int]) -> np.ndarray:
        """Ids of <I>, in enumeration order. Reduced words of its members use only letters of I."""
        mask = 0
        for i in generators:
            self._check_generator(int(i))
            mask |= 1 << int(i)
        return np.flatnonzero((self.letter_mask & ~mask) == 0)

    def coset_partition(self, generators: Iterable[int]) -> Tuple[List[ParabolicCoset], np.ndarray]:
        """
        All left cosets w<I> plus an array mapping each element id to its coset index.

        Cosets are ordered by their representative's id, i.e. by length and
        then by word.
        """
        key = frozenset(int(i) for i in generators)
        if key in self._coset_cache:
            return self._coset_cache[key]

        subgroup = self.parabolic_subgroup(key)
        coset_of = np.full(self.order, -1, dtype=np.int64)
        cosets: List[ParabolicCoset] = []
        for w in range(self.order):
            if coset_of[w] >= 0:
                continue
            members = np.sort(self.multiply_ids(w, subgroup))
            coset_of[members] = len(cosets)
            cosets.append(ParabolicCoset(generators=key, representative=w,
                                         members=tuple(int(m) for m in members)))

        logger.debug("%s: %d cosets of <%s>", self.label, len(cosets), sorted(key))
        self._coset_cache[key] = (cosets, coset_of)
        return cosets, coset_of

    def parabolic_cosets(self, generators: Iterable[int]) -> List[ParabolicCoset]:
        return self.coset_partition(generators)[0]

    def to_dict(self) -> dict:
        return {
            'spec': self.spec.to_dict(),
            'order': self.order,
            'num_positive_roots': self.num_positive_roots,
            'max_length': self.max_length,
            'num_reflections': len(self.reflections),
        }


# Function-style entry points

def build_group(spec: CoxeterSpec, tolerance: float = ROOT_MATCH_TOLERANCE) -> CoxeterGroup:
    return CoxeterGroup(spec, tolerance=tolerance)


def element_from_word(group: CoxeterGroup, word: Sequence[int]) -> GroupElement:
    return group.element_from_word(word)


def multiply(group: CoxeterGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    return group.multiply(a, b)


def length(group: CoxeterGroup, w: GroupElement) -> int:
    return group.length(w)


def parabolic_cosets(group: CoxeterGroup, generators: Iterable[int]) -> List[ParabolicCoset]:
    return group.parabolic_cosets(generators)


def chamber_of(group: CoxeterGroup, w: GroupElement) -> Chamber:
    return group.chamber_of(w)
