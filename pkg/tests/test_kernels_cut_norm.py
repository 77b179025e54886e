import numpy as np
import pytest

from kernels import (ImaginaryResidue, NotStableFamily, ResolutionCap, StepKernel, complex_graph_norm,
                     cut_norm_exact, cut_norm_profile, graph_norm, hypergraph_cut_norm)
from kernels.cut_norm import cut_norm_brute, sign_vectors
from kernels.norms import complex_integral
from kernels.suites import random_kernel
from refgraph import preset


def test_sign_vectors():
    assert sign_vectors(3).shape == (8, 3)
    fixed = sign_vectors(3, fix_first=True)
    assert fixed.shape == (4, 3)
    assert np.all(fixed[:, 0] == 1)
    assert len({tuple(row) for row in sign_vectors(4)}) == 16


def test_constant_cut_norm():
    assert cut_norm_exact(StepKernel.constant(-0.4, 5)) == pytest.approx(0.4)


def test_rank_one_block_kernel():
    a = np.array([1.0, 1.0, -1.0, 0.0])
    b = np.array([0.5, -0.5, 1.0, 1.0])
    kernel = StepKernel(np.outer(a, b))
    assert cut_norm_exact(kernel) == pytest.approx(np.abs(a).mean() * np.abs(b).mean())


def test_exact_matches_double_enumeration(rng):
    for _ in range(5):
        kernel = random_kernel(rng, 6, 2, 'signed')
        assert cut_norm_exact(kernel) == pytest.approx(cut_norm_brute(kernel), abs=1e-12)


def test_resolution_cap():
    with pytest.raises(ResolutionCap):
        cut_norm_exact(StepKernel.constant(1.0, 17))
    with pytest.raises(ResolutionCap):
        cut_norm_brute(StepKernel.constant(1.0, 11))


def test_graph_cut_norm_is_two_singleton_blocks(rng):
    kernel = random_kernel(rng, 5, 2, 'signed')
    assert hypergraph_cut_norm(kernel, [[0], [1]]) == pytest.approx(cut_norm_exact(kernel), abs=1e-12)


def test_constant_hypergraph_cut_norm():
    kernel = StepKernel.constant(-0.8, 2, k=3)
    assert hypergraph_cut_norm(kernel, [[0], [1, 2]]) == pytest.approx(0.8)
    assert hypergraph_cut_norm(kernel, [[0], [1, 2]], mode='ascent') == pytest.approx(0.8)


def test_single_block_is_l1_norm(rng):
    kernel = random_kernel(rng, 2, 3, 'signed')
    assert hypergraph_cut_norm(kernel, [[0, 1, 2]]) == pytest.approx(np.abs(kernel.values).mean())


def test_empty_profile_is_mean(rng):
    kernel = random_kernel(rng, 2, 3, 'signed')
    assert hypergraph_cut_norm(kernel, [[]]) == pytest.approx(abs(kernel.values.mean()))


@pytest.mark.parametrize("blocks", [[[0], [1, 2]], [[0, 1], [1, 2]]])
def test_ascent_reaches_exact(rng, blocks):
    for _ in range(20):
        kernel = random_kernel(rng, 2, 3, 'signed')
        exact = hypergraph_cut_norm(kernel, blocks)
        ascent = hypergraph_cut_norm(kernel, blocks, mode='ascent', seed=int(rng.integers(1000)))
        assert ascent <= exact + 1e-12
        assert abs(ascent - exact) < 1e-9


def test_cells_cap():
    with pytest.raises(ResolutionCap):
        hypergraph_cut_norm(StepKernel.constant(1.0, 4, k=3), [[0, 1], [1, 2]])


def test_unknown_mode():
    with pytest.raises(ValueError):
        hypergraph_cut_norm(StepKernel.constant(1.0, 2, k=3), [[0]], mode='annealing')


def test_cut_norm_profile():
    assert cut_norm_profile(preset('c4')) == ((0,), (1,))
    assert cut_norm_profile(preset('gowers_octahedron(3)')) == ((1, 2), (0, 2), (0, 1))
    assert cut_norm_profile(preset('m_k(3)')) == ((0,), (1,), (2,))


def test_complex_norm_of_real_kernel(rng):
    for name in ('c4', 'c6', 'gowers_octahedron(3)'):
        h = preset(name)
        kernel = random_kernel(rng, 3, h.k, 'signed')
        assert complex_graph_norm(h, kernel) == pytest.approx(graph_norm(h, kernel), abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_unimodular_rank_one_kernel(rng, n):
    u = np.exp(2j * np.pi * rng.uniform(size=n))
    kernel = StepKernel(np.outer(u, np.conj(u)))
    assert complex_graph_norm(preset('c4'), kernel) == pytest.approx(1.0)


@pytest.mark.parametrize("name", ['c4', 'c6', 'gowers_octahedron(3)'])
def test_imaginary_constant(name):
    h = preset(name)
    assert complex_graph_norm(h, StepKernel.constant(0.6j, 2, k=h.k)) == pytest.approx(0.6)


def test_random_complex_integral_is_real(rng):
    for name in ('c4', 'gowers_octahedron(3)'):
        h = preset(name)
        value = complex_integral(h, random_kernel(rng, 3, h.k, 'complex'))
        assert abs(value.imag) < 1e-9


def test_complex_norm_needs_stable_family():
    with pytest.raises(NotStableFamily):
        complex_graph_norm(preset('k1_4'), StepKernel.constant(1j, 2))


def test_imaginary_residue_is_reported():
    with pytest.raises(ImaginaryResidue):
        complex_graph_norm(preset('c4'), StepKernel.constant(1j, 2), imaginary_tol=-1.0)
