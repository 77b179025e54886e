"""
coxnorm/coxeter/spec.py
Group specifications: family components, Coxeter matrices and the
compact spec grammar used on the command line ("A3", "I2:5", "B3xA1").
"""

import math
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from coxeter.errors import OrderCapExceeded, SpecParseError


DEFAULT_ORDER_CAP = 10 ** 6

FAMILIES = ('A', 'B', 'D', 'I2', 'H3', 'F4', 'custom')

_COMPONENT_RE = re.compile(r'^(I2):(\d+)$|^(H3|F4)$|^([ABD])(\d+)$')


@dataclass(frozen=True)
class CoxeterComponent:
    """One irreducible factor of a reflection group."""
    family: str
    rank: int
    dihedral_order: Optional[int] = None
    # Only for family 'custom': symmetric integer matrix with 1 on the diagonal
    coxeter_matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecParseError(f"Unknown family: {self.family}. Available: {list(FAMILIES)}")
        if self.rank < 1:
            raise SpecParseError(f"Rank must be positive, got {self.rank}")
        if self.family == 'I2':
            if self.rank != 2:
                raise SpecParseError("I2 components have rank 2")
            if self.dihedral_order is None or self.dihedral_order < 3:
                raise SpecParseError("I2 needs a dihedral order m >= 3")
        elif self.dihedral_order is not None:
            raise SpecParseError("Only I2 components take a dihedral order")
        if self.family == 'H3' and self.rank != 3:
            raise SpecParseError("H3 components have rank 3")
        if self.family == 'F4' and self.rank != 4:
            raise SpecParseError("F4 components have rank 4")
        if self.family == 'D' and self.rank < 2:
            raise SpecParseError("D components need rank >= 2")
        if self.family == 'custom':
            if self.coxeter_matrix is None:
                raise SpecParseError("custom components need a Coxeter matrix")
            m = np.array(self.coxeter_matrix)
            if m.shape != (self.rank, self.rank) or not np.array_equal(m, m.T) \
                    or not np.all(np.diag(m) == 1):
                raise SpecParseError("Coxeter matrix must be symmetric with unit diagonal")
            if np.any(m[~np.eye(self.rank, dtype=bool)] < 2):
                raise SpecParseError("Off-diagonal Coxeter matrix entries must be >= 2")

    @property
    def label(self) -> str:
        if self.family == 'I2':
            return f"I2:{self.dihedral_order}"
        if self.family in ('H3', 'F4'):
            return self.family
        if self.family == 'custom':
            return f"custom{self.rank}"
        return f"{self.family}{self.rank}"

    def coxeter_matrix_array(self) -> np.ndarray:
        """Coxeter matrix m_ij in the index order used throughout the package."""
        r = self.rank
        m = np.full((r, r), 2, dtype=int)
        np.fill_diagonal(m, 1)

        def link(i, j, order):
            m[i, j] = m[j, i] = order

        if self.family == 'A':
            for i in range(r - 1):
                link(i, i + 1, 3)
        elif self.family == 'B':
            # s1 is the short-root end: m(s1, s2) = 4
            if r >= 2:
                link(0, 1, 4)
            for i in range(1, r - 1):
                link(i, i + 1, 3)
        elif self.family == 'D':
            # s1, s2 are the two leaves hanging off s3; s3 - s4 - ... is a chain
            if r == 2:
                pass
            else:
                link(0, 2, 3)
                link(1, 2, 3)
                for i in range(2, r - 1):
                    link(i, i + 1, 3)
        elif self.family == 'I2':
            link(0, 1, self.dihedral_order)
        elif self.family == 'H3':
            link(0, 1, 5)
            link(1, 2, 3)
        elif self.family == 'F4':
            link(0, 1, 3)
            link(1, 2, 4)
            link(2, 3, 3)
        else:
            m = np.array(self.coxeter_matrix, dtype=int)
        return m

    def predicted_order(self) -> Optional[int]:
        """Group order from the classification; None for custom components."""
        r = self.rank
        if self.family == 'A':
            return math.factorial(r + 1)
        if self.family == 'B':
            return 2 ** r * math.factorial(r)
        if self.family == 'D':
            return 2 ** (r - 1) * math.factorial(r)
        if self.family == 'I2':
            return 2 * self.dihedral_order
        if self.family == 'H3':
            return 120
        if self.family == 'F4':
            return 1152
        return None


@dataclass(frozen=True)
class CoxeterSpec:
    """Direct product of irreducible components, in the order given."""
    components: Tuple[CoxeterComponent, ...]
    order_cap: int = DEFAULT_ORDER_CAP

    def __post_init__(self):
        if not self.components:
            raise SpecParseError("A group spec needs at least one component")
        if self.order_cap < 1:
            raise SpecParseError("order_cap must be positive")
        predicted = self.predicted_order()
        if predicted is not None and predicted > self.order_cap:
            raise OrderCapExceeded(predicted, self.order_cap)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def label(self) -> str:
        return 'x'.join(c.label for c in self.components)

    def predicted_order(self) -> Optional[int]:
        total = 1
        for component in self.components:
            order = component.predicted_order()
            if order is None:
                return None
            total *= order
        return total

    def coxeter_matrix(self) -> np.ndarray:
        """Block-diagonal Coxeter matrix; distinct components commute."""
        r = self.rank
        m = np.full((r, r), 2, dtype=int)
        offset = 0
        for component in self.components:
            block = component.coxeter_matrix_array()
            m[offset:offset + component.rank, offset:offset + component.rank] = block
            offset += component.rank
        return m

    def component_offsets(self) -> List[int]:
        offsets, offset = [], 0
        for component in self.components:
            offsets.append(offset)
            offset += component.rank
        return offsets

    def to_dict(self) -> dict:
        data = {'label': self.label, 'order_cap': self.order_cap, 'components': []}
        for c in self.components:
            entry = {'family': c.family, 'rank': c.rank}
            if c.dihedral_order is not None:
                entry['dihedral_order'] = c.dihedral_order
            if c.coxeter_matrix is not None:
                entry['coxeter_matrix'] = [list(row) for row in c.coxeter_matrix]
            data['components'].append(entry)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'CoxeterSpec':
        components = []
        for entry in data['components']:
            matrix = entry.get('coxeter_matrix')
            components.append(CoxeterComponent(
                family=entry['family'],
                rank=int(entry['rank']),
                dihedral_order=entry.get('dihedral_order'),
                coxeter_matrix=tuple(tuple(int(x) for x in row) for row in matrix) if matrix else None,
            ))
        return cls(components=tuple(components),
                   order_cap=int(data.get('order_cap', DEFAULT_ORDER_CAP)))


def parse_component(token: str) -> CoxeterComponent:
    """Parse one factor of the spec grammar: A<n>, B<n>, D<n>, I2:<m>, H3, F4."""
    match = _COMPONENT_RE.match(token.strip())
    if not match:
        raise SpecParseError(f"Cannot parse group component '{token}'")
    if match.group(1):
        return CoxeterComponent('I2', 2, dihedral_order=int(match.group(2)))
    if match.group(3):
        family = match.group(3)
        return CoxeterComponent(family, 3 if family == 'H3' else 4)
    return CoxeterComponent(match.group(4), int(match.group(5)))


def parse_spec(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> CoxeterSpec:
    """
    Parse the group spec mini-grammar.

    A spec is one or more components joined by 'x', e.g. "A3", "I2:5",
    "B3xA1". Components keep their order; simple reflections are numbered
    consecutively across components starting from 0.
    """
    if not text or not text.strip():
        raise SpecParseError("Empty group spec")
    tokens = text.strip().split('x')
    components = tuple(parse_component(token) for token in tokens)
    return CoxeterSpec(components=components, order_cap=order_cap)
