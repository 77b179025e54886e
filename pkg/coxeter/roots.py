"""
coxnorm/coxeter/roots.py
Root systems of finite reflection groups.

Simple roots are read off the Cholesky factor of the Coxeter bilinear form
B_ij = -cos(pi / m_ij); the full root system is the closure of the simple
roots under the simple reflections. Floating point is used exactly once,
while matching reflected roots back onto known ones. Everything after that
is integer bookkeeping on root indices.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import cholesky
from scipy.spatial.distance import cdist

from coxeter.errors import NumericalAmbiguity, OrderCapExceeded

logger = logging.getLogger(__name__)

ROOT_MATCH_TOLERANCE = 1e-9
SEPARATION_FACTOR = 10.0
# Coefficients in the simple basis below this are treated as zero
COEFFICIENT_TOLERANCE = 1e-7


def bilinear_form(coxeter_matrix: np.ndarray) -> np.ndarray:
    """Gram matrix of the simple roots for a Coxeter matrix."""
    m = np.asarray(coxeter_matrix, dtype=float)
    form = -np.cos(np.pi / m)
    # cos(pi/2) is not exactly zero in floating point
    form[np.asarray(coxeter_matrix) == 2] = 0.0
    np.fill_diagonal(form, 1.0)
    return form


def simple_roots_from_matrix(coxeter_matrix: np.ndarray) -> np.ndarray:
    """
    Unit simple roots (one per row) realising the given Coxeter matrix.

    Raises NumericalAmbiguity if the bilinear form is not positive definite,
    i.e. the Coxeter matrix does not describe a finite group.
    """
    form = bilinear_form(coxeter_matrix)
    try:
        factor = cholesky(form, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalAmbiguity(
            "Bilinear form is not positive definite; the group is not finite"
        ) from exc
    return factor


def reflect(vectors: np.ndarray, root: np.ndarray) -> np.ndarray:
    """Reflect row vectors through the hyperplane orthogonal to a unit root."""
    return vectors - 2.0 * np.outer(vectors @ root, root)


def reflection_matrix(root: np.ndarray) -> np.ndarray:
    return np.eye(len(root)) - 2.0 * np.outer(root, root)


@dataclass
class RootSystem:
    """Simple and positive roots of a finite reflection group."""
    dimension: int
    simple_roots: np.ndarray
    positive_roots: np.ndarray
    coefficients: np.ndarray
    tolerance: float = ROOT_MATCH_TOLERANCE
    support: np.ndarray = field(init=False, repr=False)
    heights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.support = np.abs(self.coefficients) > COEFFICIENT_TOLERANCE
        self.heights = self.coefficients.sum(axis=1)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def match_codes(self, vectors: np.ndarray) -> np.ndarray:
        """
        Signed root codes of root vectors.

        A code is 2*j for +alpha_j and 2*j + 1 for -alpha_j, where j indexes
        the positive roots.
        """
        vectors = np.atleast_2d(vectors)
        both = np.vstack([self.positive_roots, -self.positive_roots])
        distances = cdist(vectors, both)
        nearest = distances.argmin(axis=1)
        best = distances[np.arange(len(vectors)), nearest]
        if np.any(best > self.tolerance):
            raise NumericalAmbiguity(
                f"Vector does not match any root within {self.tolerance:g} "
                f"(closest distance {best.max():.3e})"
            )
        n = self.num_positive
        return np.where(nearest < n, 2 * nearest, 2 * (nearest - n) + 1).astype(np.int64)

    def simple_reflection_codes(self, i: int) -> np.ndarray:
        """Signed permutation of the positive roots induced by s_i."""
        return self.match_codes(reflect(self.positive_roots, self.simple_roots[i]))

    def fundamental_point(self) -> np.ndarray:
        """A point x of the fundamental chamber with <x, alpha_i> = 1 for all simple roots."""
        return np.linalg.solve(self.simple_roots, np.ones(self.rank))

    def to_dict(self) -> dict:
        return {
            'dimension': self.dimension,
            'simple_roots': [[repr(float(x)) for x in row] for row in self.simple_roots],
            'tolerance': self.tolerance,
        }


def _closure(simple: np.ndarray, tolerance: float, root_cap: int) -> np.ndarray:
    """All roots: orbit of the simple roots under the simple reflections."""
    roots = np.vstack([simple, -simple])
    frontier = roots
    separation = SEPARATION_FACTOR * tolerance

    while len(frontier):
        images = np.vstack([reflect(frontier, alpha) for alpha in simple])
        nearest = cdist(images, roots).min(axis=1)
        ambiguous = (nearest > tolerance) & (nearest <= separation)
        if np.any(ambiguous):
            raise NumericalAmbiguity(
                f"Root matching is ambiguous: a reflected root lies {nearest[ambiguous].min():.3e} "
                f"from a known root (tolerance {tolerance:g}, separation {separation:g})"
            )
        fresh = images[nearest > separation]

        accepted = []
        for vector in fresh:
            if accepted:
                gap = np.linalg.norm(np.asarray(accepted) - vector, axis=1).min()
                if gap <= tolerance:
                    continue
                if gap <= separation:
                    raise NumericalAmbiguity(
                        f"Two new roots are {gap:.3e} apart, inside the separation band"
                    )
            accepted.append(vector)

        frontier = np.asarray(accepted).reshape(-1, simple.shape[1])
        roots = np.vstack([roots, frontier])
        if len(roots) > root_cap:
            raise OrderCapExceeded(len(roots), root_cap)

    return roots


def build_root_system(coxeter_matrix: np.ndarray,
                      tolerance: float = ROOT_MATCH_TOLERANCE,
                      order_cap: int = 10 ** 6) -> RootSystem:
    """
    Build the root system of a finite Coxeter matrix.

    Positive roots are the roots with nonnegative coefficients in the simple
    basis. They are indexed with the simple roots first (in generator order),
    then by height, then lexicographically by coefficients.
    """
    simple = simple_roots_from_matrix(coxeter_matrix)
    rank = len(simple)
    # every reflection is a group element, so |Phi| <= 2|W|
    roots = _closure(simple, tolerance, root_cap=2 * order_cap)

    coefficients = np.linalg.solve(simple.T, roots.T).T
    nonneg = np.all(coefficients >= -COEFFICIENT_TOLERANCE, axis=1)
    nonpos = np.all(coefficients <= COEFFICIENT_TOLERANCE, axis=1)
    if not np.all(nonneg ^ nonpos):
        raise NumericalAmbiguity("Simple roots do not form a simple system for the closure")

    positive = roots[nonneg]
    coeffs = coefficients[nonneg]
    coeffs[np.abs(coeffs) <= COEFFICIENT_TOLERANCE] = 0.0
    def sort_key(c):
        if np.count_nonzero(c) == 1 and abs(c.max() - 1.0) <= COEFFICIENT_TOLERANCE:
            return (0, int(c.argmax()), ())
        return (1, round(float(c.sum()), 9), tuple(-round(float(x), 9) for x in c))

    keys = [sort_key(c) for c in coeffs]
    order = sorted(range(len(positive)), key=lambda j: keys[j])
    positive = positive[order]
    coeffs = coeffs[order]

    for i in range(rank):
        if not np.allclose(positive[i], simple[i], atol=tolerance):
            raise NumericalAmbiguity("Simple roots are not the lowest positive roots")

    logger.debug("Root system of rank %d: %d positive roots", rank, len(positive))
    return RootSystem(dimension=simple.shape[1], simple_roots=simple,
                      positive_roots=positive, coefficients=coeffs, tolerance=tolerance)
