"""
coxnorm/kernels/cut_norm.py
Cut norms of step kernels.

The graph cut norm is sup |E f(x, y) u(x) v(y)| over u, v with values in
[-1, 1]; the hypergraph cut norm for index sets M_1..M_r replaces u, v by
functions u_i of the coordinates in M_i. The objective is linear in each
u_i separately, so the supremum is attained at +-1 cell values and, once
all but one u_i are fixed, the last one is the sign of its partial
contraction.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from kernels.errors import InvalidKernel, ResolutionCap
from kernels.step_kernel import StepKernel
from refgraph.hypergraph import ReflectionHypergraph

logger = logging.getLogger(__name__)

RESOLUTION_CAP = 16
BRUTE_RESOLUTION_CAP = 10
CELLS_CAP = 24
ASCENT_RESTARTS = 32
ASCENT_MAX_ROUNDS = 100
BATCH_SIZE = 4096

Blocks = Tuple[Tuple[int, ...], ...]


def sign_vectors(n: int, fix_first: bool = False) -> np.ndarray:
    """All vectors in {-1, 1}^n as rows; with fix_first only those starting with +1."""
    free = n - 1 if fix_first and n else n
    bits = (np.arange(2 ** free)[:, None] >> np.arange(free)) & 1
    signs = 1 - 2 * bits
    if fix_first and n:
        signs = np.hstack([np.ones((len(signs), 1), dtype=signs.dtype), signs])
    return signs.astype(float)


def _real_matrix(kernel: StepKernel) -> np.ndarray:
    if kernel.arity != 2:
        raise InvalidKernel("The graph cut norm is defined for 2-ary kernels")
    if kernel.is_complex:
        raise InvalidKernel("Cut norms are computed for real kernels only")
    return kernel.values


def cut_norm_exact(kernel: StepKernel, resolution_cap: int = RESOLUTION_CAP) -> float:
    """
    ||f||_cut by enumerating u in {-1, 1}^n up to a global sign; the best
    v is then the sign of each column sum.
    """
    matrix = _real_matrix(kernel)
    n = kernel.resolution
    if n > resolution_cap:
        raise ResolutionCap(f"Exact cut norm enumerates 2^n sign vectors; n = {n} exceeds {resolution_cap}")
    best = np.abs(sign_vectors(n, fix_first=True) @ matrix).sum(axis=1).max()
    return float(best) / n ** 2


def cut_norm_brute(kernel: StepKernel, resolution_cap: int = BRUTE_RESOLUTION_CAP) -> float:
    """Cut norm by the full double enumeration over u and v."""
    matrix = _real_matrix(kernel)
    n = kernel.resolution
    if n > resolution_cap:
        raise ResolutionCap(f"Double enumeration refused at n = {n} (cap {resolution_cap})")
    signs = sign_vectors(n)
    return float(np.abs(signs @ matrix @ signs.T).max()) / n ** 2


def normalize_blocks(blocks: Sequence[Sequence[int]], arity: int) -> Blocks:
    normalized = []
    for block in blocks:
        block = tuple(sorted({int(j) for j in block}))
        if any(not 0 <= j < arity for j in block):
            raise InvalidKernel(f"Index set {block} is not a subset of 0..{arity - 1}")
        if block:
            normalized.append(block)
    return tuple(normalized)


def _partial(values: np.ndarray, blocks: Blocks, tests: List[Optional[np.ndarray]],
             free: int, batched: bool = False) -> np.ndarray:
    """
    E over the coordinates outside block `free` of f times the other test
    functions, left as a function of the coordinates in block `free`.

    With `batched`, every test array carries a leading batch axis.
    """
    k = values.ndim
    batch = [k] if batched else []
    operands = [values, list(range(k))]
    for i, (block, u) in enumerate(zip(blocks, tests)):
        if i != free:
            operands.extend([u, batch + list(block)])
    contracted = np.einsum(*operands, batch + list(blocks[free]))
    return contracted / values.shape[0] ** (k - len(blocks[free]))


def _objective(values: np.ndarray, blocks: Blocks, tests: List[np.ndarray]) -> float:
    operands = [values, list(range(values.ndim))]
    for block, u in zip(blocks, tests):
        operands.extend([u, list(block)])
    return float(np.einsum(*operands, [])) / values.size


def _exact(values: np.ndarray, blocks: Blocks) -> float:
    n = values.shape[0]
    cells = [n ** len(b) for b in blocks]
    last = int(np.argmax(cells))
    others = [i for i in range(len(blocks)) if i != last]
    bits = sum(cells[i] for i in others)
    scale = n ** len(blocks[last])
    if not others:
        return float(np.abs(_partial(values, blocks, [None], last)).sum()) / scale
    best = 0.0
    # the first cell of the first enumerated block is fixed to +1
    free_bits = bits - 1
    for start in range(0, 2 ** free_bits, BATCH_SIZE):
        masks = np.arange(start, min(2 ** free_bits, start + BATCH_SIZE))
        signs = 1.0 - 2.0 * ((masks[:, None] >> np.arange(free_bits)) & 1)
        signs = np.hstack([np.ones((len(masks), 1)), signs])
        tests: List[Optional[np.ndarray]] = [None] * len(blocks)
        offset = 0
        for i in others:
            tests[i] = signs[:, offset:offset + cells[i]].reshape((len(masks),) + (n,) * len(blocks[i]))
            offset += cells[i]
        g = _partial(values, blocks, tests, last, batched=True)
        best = max(best, float(np.abs(g).reshape(len(masks), -1).sum(axis=1).max()) / scale)
    return best


def _ascent(values: np.ndarray, blocks: Blocks, restarts: int, max_rounds: int, seed: int) -> float:
    n = values.shape[0]
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        tests = [rng.choice([-1.0, 1.0], size=(n,) * len(b)) for b in blocks]
        for _ in range(max_rounds):
            changed = False
            for i in range(len(blocks)):
                update = np.where(_partial(values, blocks, tests, i) >= 0, 1.0, -1.0)
                if not np.array_equal(update, tests[i]):
                    tests[i] = update
                    changed = True
            if not changed:
                break
        best = max(best, abs(_objective(values, blocks, tests)))
    return best


def hypergraph_cut_norm(kernel: StepKernel, blocks: Sequence[Sequence[int]], mode: str = 'exact',
                        cells_cap: int = CELLS_CAP, restarts: int = ASCENT_RESTARTS,
                        max_rounds: int = ASCENT_MAX_ROUNDS, seed: int = 0) -> float:
    """
    ||f||_{cut,M} for index sets M_i (0-based coordinates of the kernel).

    'exact' enumerates +-1 cell values for every block but the largest and
    solves the largest in closed form; 'ascent' runs multistart coordinate
    ascent and returns a lower bound.
    """
    if kernel.is_complex:
        raise InvalidKernel("Cut norms are computed for real kernels only")
    values = kernel.values
    blocks = normalize_blocks(blocks, kernel.arity)
    if not blocks:
        return float(abs(values.mean()))
    if mode == 'exact':
        cells = sum(kernel.resolution ** len(b) for b in blocks)
        if cells > cells_cap:
            raise ResolutionCap(f"Exact hypergraph cut norm over {cells} cells exceeds the cap of {cells_cap}")
        return _exact(values, blocks)
    if mode == 'ascent':
        value = _ascent(values, blocks, restarts, max_rounds, seed)
        logger.debug("Coordinate ascent over %s: lower bound %.6g", blocks, value)
        return value
    raise ValueError(f"Unknown cut-norm mode: {mode}")


def cut_norm_profile(hypergraph: ReflectionHypergraph) -> Blocks:
    """
    Index sets M_i = {j : s_i in S_j}, one per simple reflection that
    appears in some S_j.
    """
    rank = hypergraph.group.rank
    return normalize_blocks(
        [[j for j, subset in enumerate(hypergraph.subsets) if i in subset] for i in range(rank)],
        hypergraph.k,
    )
