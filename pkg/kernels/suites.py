"""
coxnorm/kernels/suites.py
Randomised inequality suites.

Every trial draws its kernels from its own generator, seeded by the trial's
child of a master numpy SeedSequence, so a report is reproduced from
(suite, seed, trial) alone. Trials may run in a process pool; reports come
back ordered by trial index and then by target.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from kernels.checks import (INEQUALITY_TOLERANCE, check_complex_norm, check_cut_ascent,
                            check_cut_profile, check_cutnorm_sandwich, check_domination, check_equal,
                            check_holder, check_schatten, check_sidorenko, check_tree_gluing,
                            check_triangle)
from kernels.decomposition import NDecomposition, cycle_graph, double_subdivided_k4, path_graph, two_c4_gluing
from kernels.density import DEFAULT_WORK_CAP, colored_density_brute, density_fast
from kernels.errors import KernelError
from kernels.report import CheckReport
from kernels.step_kernel import ColoredFamily, StepKernel
from refgraph.hypergraph import Hypergraph, ReflectionHypergraph
from refgraph.presets import acceptance_presets, domination_pair, preset

logger = logging.getLogger(__name__)

HOLDER_COLORS = 3
ORACLE_MAX_VERTICES = 8


def random_kernel(rng: np.random.Generator, n: int, k: int = 2, kind: str = 'nonnegative',
                  symmetric: bool = False) -> StepKernel:
    """
    Uniform random step kernel: 'nonnegative' in [0, 1), 'signed' in
    [-1, 1), 'complex' with real and imaginary parts in [-1, 1).
    """
    shape = (n,) * k
    if kind == 'nonnegative':
        values = rng.uniform(0.0, 1.0, shape)
    elif kind == 'signed':
        values = rng.uniform(-1.0, 1.0, shape)
    elif kind == 'complex':
        values = rng.uniform(-1.0, 1.0, shape) + 1j * rng.uniform(-1.0, 1.0, shape)
    else:
        raise KernelError(f"Unknown kernel kind: {kind}")
    if symmetric:
        if k != 2:
            raise KernelError("Only 2-ary kernels can be symmetric")
        values = np.triu(values) + np.triu(values, 1).T
    return StepKernel(values, symmetric=symmetric)


@lru_cache(maxsize=None)
def _preset(name: str) -> ReflectionHypergraph:
    return preset(name)


@lru_cache(maxsize=None)
def _domination_target(name: str) -> Tuple[Hypergraph, Hypergraph]:
    if name == 'c4-p3':
        return cycle_graph(4), path_graph(3)
    if name == 'c6-p4':
        return cycle_graph(6), path_graph(4)
    if name == 'octahedral-3':
        return domination_pair(3)
    raise KernelError(f"Unknown domination pair: {name}")


@lru_cache(maxsize=None)
def _gluing_target(name: str) -> Tuple[Hypergraph, NDecomposition]:
    if name == 'two_c4':
        return two_c4_gluing()
    if name == 'double_subdivided_k4':
        return double_subdivided_k4()
    raise KernelError(f"Unknown gluing example: {name}")


def _symmetric_for(hypergraph: Hypergraph) -> bool:
    return not isinstance(hypergraph, ReflectionHypergraph) and hypergraph.uniformity == 2


def _holder_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h = _preset(name)
    coloring = rng.integers(HOLDER_COLORS, size=h.num_edges)
    family = ColoredFamily([random_kernel(rng, n, h.k) for _ in range(HOLDER_COLORS)], coloring)
    reports = [check_holder(h, family, abs_mode=True, tol=tol, work_cap=work_cap)]
    if h.stable:
        signed = ColoredFamily([random_kernel(rng, n, h.k, 'signed') for _ in range(HOLDER_COLORS)], coloring)
        reports.append(check_holder(h, signed, abs_mode=False, tol=tol, work_cap=work_cap))
    return reports


def _sidorenko_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h = _preset(name)
    return [check_sidorenko(h, random_kernel(rng, n, h.k), tol=tol, work_cap=work_cap)]


def _triangle_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h = _preset(name)
    f, g = (random_kernel(rng, n, h.k, 'signed') for _ in range(2))
    return [check_triangle(h, f, g, tol=tol, work_cap=work_cap)]


def _domination_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h, j = _domination_target(name)
    kernel = random_kernel(rng, n, h.uniformity, symmetric=_symmetric_for(h))
    return [check_domination(h, j, kernel, tol=tol, work_cap=work_cap)]


def _sandwich_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    return [check_cutnorm_sandwich(random_kernel(rng, n, 2, 'signed'), tol=tol)]


def _tree_gluing_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h, decomposition = _gluing_target(name)
    kernel = random_kernel(rng, n, 2, symmetric=True)
    return [check_tree_gluing(h, decomposition, kernel, tol=tol, work_cap=work_cap)]


def _complex_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h = _preset(name)
    return [check_complex_norm(h, random_kernel(rng, n, h.k, 'complex'), tol=tol, work_cap=work_cap)]


def _schatten_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    cycle = cycle_graph(int(name[1:]))
    return [check_schatten(cycle, random_kernel(rng, n, 2, 'signed', symmetric=True))]


def _oracle_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    """Random graph on at most 8 vertices and random resolution up to n."""
    num_vertices = int(rng.integers(2, ORACLE_MAX_VERTICES + 1))
    pairs = [(u, v) for u in range(num_vertices) for v in range(u + 1, num_vertices)]
    chosen = [p for p in pairs if rng.random() < 0.5] or [pairs[0]]
    graph = Hypergraph(vertices=[str(v) for v in range(num_vertices)], edges=chosen)
    kernel = random_kernel(rng, int(rng.integers(1, n + 1)), 2)
    brute = colored_density_brute(graph, ColoredFamily.monochromatic(kernel, graph.num_edges),
                                  work_cap=work_cap)
    return [check_equal('oracle', density_fast(graph, kernel), brute, tol=1e-10, relative=True,
                        vertices=num_vertices, edges=len(chosen), n=kernel.resolution)]


_CUT_BLOCKS: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    '0|12': ((0,), (1, 2)),
    '01|12': ((0, 1), (1, 2)),
}


def _cut_ascent_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    kernel = random_kernel(rng, n, 3, 'signed')
    return [check_cut_ascent(kernel, _CUT_BLOCKS[name], seed=int(rng.integers(2 ** 31)))]


def _cut_profile_trial(rng, name, n, tol, work_cap) -> List[CheckReport]:
    h = _preset(name)
    return [check_cut_profile(h, random_kernel(rng, n, h.k, 'signed'), tol=tol, work_cap=work_cap)]


@dataclass(frozen=True)
class Suite:
    """A trial function, the targets it visits by default and its default resolution."""
    trial: Callable[..., List[CheckReport]]
    targets: Tuple[str, ...]
    n: int


SUITES: Dict[str, Suite] = {
    'holder': Suite(_holder_trial, tuple(acceptance_presets()), 3),
    'sidorenko': Suite(_sidorenko_trial, tuple(acceptance_presets()), 3),
    'triangle': Suite(_triangle_trial, tuple(acceptance_presets()), 3),
    'domination': Suite(_domination_trial, ('c4-p3', 'c6-p4', 'octahedral-3'), 3),
    'sandwich': Suite(_sandwich_trial, ('c4',), 6),
    'tree-gluing': Suite(_tree_gluing_trial, ('two_c4', 'double_subdivided_k4'), 3),
    'complex': Suite(_complex_trial, ('c4', 'gowers_octahedron(3)'), 3),
    'schatten': Suite(_schatten_trial, ('c4', 'c6', 'c8'), 5),
    'oracle': Suite(_oracle_trial, ('random',), 4),
    'cut-ascent': Suite(_cut_ascent_trial, tuple(_CUT_BLOCKS), 2),
    'cut-profile': Suite(_cut_profile_trial, ('c4', 'gowers_octahedron(3)'), 2),
}


def _run_trial(task) -> List[CheckReport]:
    suite_name, trial, seed_sequence, seed, n, tol, work_cap, targets = task
    suite = SUITES[suite_name]
    rng = np.random.default_rng(seed_sequence)
    reports = []
    for target in targets:
        for check in suite.trial(rng, target, n, tol, work_cap):
            check.metadata.update(suite=suite_name, target=target, seed=seed, trial=trial)
            reports.append(check)
    return reports


def run_suite(name: str, trials: int, n: Optional[int] = None, seed: int = 0,
              tol: float = INEQUALITY_TOLERANCE, jobs: int = 1,
              targets: Optional[Sequence[str]] = None,
              work_cap: int = DEFAULT_WORK_CAP) -> List[CheckReport]:
    """Run `trials` random trials of a suite; reports are ordered by trial, then target."""
    if name not in SUITES:
        raise KernelError(f"Unknown suite: {name}. Available: {sorted(SUITES)}")
    if trials < 0:
        raise KernelError("Number of trials must be nonnegative")
    suite = SUITES[name]
    n = suite.n if n is None else int(n)
    targets = tuple(targets) if targets else suite.targets
    children = np.random.SeedSequence(seed).spawn(trials)
    tasks = [(name, t, child, seed, n, tol, work_cap, targets) for t, child in enumerate(children)]

    logger.info("Suite %s: %d trials over %d targets at n=%d (seed %d, %d jobs)",
                name, trials, len(targets), n, seed, jobs)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            batches = list(executor.map(_run_trial, tasks))
    else:
        batches = [_run_trial(task) for task in tasks]

    reports = [r for batch in batches for r in batch]
    failed = sum(not r.passed for r in reports)
    logger.info("Suite %s: %d reports, %d failed", name, len(reports), failed)
    return reports
