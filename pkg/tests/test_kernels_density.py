import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kernels import (ColoredFamily, StepKernel, WorkCapExceeded, abs_graph_norm, colored_density_brute,
                     density_fast, graph_norm, homomorphism_density, schatten_norm)
from kernels.decomposition import cycle_graph, path_graph
from kernels.density import EINSUM_MAX_OPERANDS, _brute_chunked, colored_density_fast
from kernels.errors import InvalidKernel
from kernels.suites import random_kernel
from refgraph import Hypergraph, preset


def monochromatic(h, kernel):
    return ColoredFamily.monochromatic(kernel, h.num_edges)


def test_all_ones_family():
    h = preset('subdivided_k4')
    family = ColoredFamily([StepKernel.constant(1.0, 3), StepKernel.constant(1.0, 3)],
                           [j % 2 for j in range(h.num_edges)])
    assert colored_density_brute(h, family) == pytest.approx(1.0)


def test_identity_blocks_on_c4():
    c4 = cycle_graph(4)
    kernel = StepKernel(np.eye(2), symmetric=True)
    assert colored_density_brute(c4, monochromatic(c4, kernel)) == pytest.approx(1 / 8)
    assert density_fast(c4, kernel) == pytest.approx(1 / 8)


def test_constant_kernel_on_c4():
    c4 = cycle_graph(4)
    assert density_fast(c4, StepKernel.constant(0.3, 5)) == pytest.approx(0.3 ** 4)


def test_path_double_contraction(rng):
    values = rng.uniform(0, 1, (4, 4))
    kernel = StepKernel(values)
    expected = np.mean(values.mean(axis=0) * values.mean(axis=1))
    p3 = path_graph(3)
    assert density_fast(p3, kernel) == pytest.approx(expected, rel=1e-12)
    assert colored_density_brute(p3, monochromatic(p3, kernel)) == pytest.approx(expected, rel=1e-12)


def test_fast_matches_brute_on_subdivided_k4(rng):
    h = preset('subdivided_k4')
    kernel = random_kernel(rng, 3, 2)
    brute = colored_density_brute(h, monochromatic(h, kernel))
    assert density_fast(h, kernel) == pytest.approx(brute, rel=1e-10)


def test_fast_handles_isolated_vertices(rng):
    graph = Hypergraph(vertices=['a', 'b', 'c', 'z'], edges=[(0, 1), (1, 2)])
    kernel = random_kernel(rng, 3, 2)
    assert density_fast(graph, kernel) == pytest.approx(
        colored_density_brute(graph, monochromatic(graph, kernel)), rel=1e-12)


def test_colored_fast_matches_brute(rng):
    h = preset('q3_hypercube')
    family = ColoredFamily([random_kernel(rng, 3, 2, 'signed') for _ in range(3)],
                           rng.integers(3, size=h.num_edges))
    assert colored_density_fast(h, family) == pytest.approx(colored_density_brute(h, family), abs=1e-13)


@given(st.integers(0, 2 ** 32 - 1))
def test_oracle_equality(seed):
    rng = np.random.default_rng(seed)
    num_vertices = int(rng.integers(2, 9))
    pairs = [(u, v) for u in range(num_vertices) for v in range(u + 1, num_vertices)]
    edges = [p for p in pairs if rng.random() < 0.5] or [pairs[0]]
    graph = Hypergraph(vertices=[str(v) for v in range(num_vertices)], edges=edges)
    kernel = random_kernel(rng, int(rng.integers(1, 5)), 2)
    brute = colored_density_brute(graph, monochromatic(graph, kernel))
    assert abs(density_fast(graph, kernel) - brute) <= 1e-10 * brute


def test_complex_density():
    c4 = cycle_graph(4)
    value = colored_density_brute(c4, monochromatic(c4, StepKernel.constant(1j, 2)))
    assert isinstance(value, complex)
    assert value == pytest.approx(1.0)
    assert density_fast(c4, StepKernel.constant(1j, 2)) == pytest.approx(1.0)


def test_hypergraph_density_uses_brute_force(rng):
    h = preset('gowers_octahedron(3)')
    kernel = random_kernel(rng, 2, 3)
    with pytest.raises(InvalidKernel):
        density_fast(h, kernel)
    assert homomorphism_density(h, kernel) == pytest.approx(colored_density_brute(h, monochromatic(h, kernel)))


def test_work_cap():
    h = preset('subdivided_k4')
    with pytest.raises(WorkCapExceeded):
        colored_density_brute(h, monochromatic(h, StepKernel.constant(1.0, 3)), work_cap=3 ** 9)


def test_mismatched_family():
    h = preset('c6')
    with pytest.raises(InvalidKernel):
        colored_density_brute(h, ColoredFamily.monochromatic(StepKernel.constant(1.0, 2), 5))
    with pytest.raises(InvalidKernel):
        colored_density_brute(h, monochromatic(h, StepKernel.constant(1.0, 2, k=3)))


def test_monochromatic_family_is_norm_power(rng):
    h = preset('c6')
    kernel = random_kernel(rng, 3, 2, 'signed')
    value = colored_density_brute(h, monochromatic(h, kernel))
    assert abs(value) == pytest.approx(graph_norm(h, kernel) ** h.num_edges, rel=1e-10)


def test_tensor_product_is_multiplicative(rng):
    for name, k in (('c6', 2), ('gowers_octahedron(3)', 3)):
        h = preset(name)
        f = random_kernel(rng, 2, k)
        g = random_kernel(rng, 2, k)
        product = homomorphism_density(h, f.tensor(g))
        assert product == pytest.approx(homomorphism_density(h, f) * homomorphism_density(h, g), rel=1e-10)


def test_tensor_square(rng):
    h = preset('subdivided_k4')
    f = random_kernel(rng, 3, 2)
    assert homomorphism_density(h, f.tensor(f)) == pytest.approx(homomorphism_density(h, f) ** 2, rel=1e-10)


def test_constant_norms():
    h = preset('subdivided_k4')
    kernel = StepKernel.constant(0.7, 3)
    assert graph_norm(h, kernel) == pytest.approx(0.7)
    assert abs_graph_norm(h, kernel) == pytest.approx(0.7)


@pytest.mark.parametrize("length", [4, 6, 8])
def test_schatten_identity(rng, length):
    cycle = cycle_graph(length)
    for _ in range(10):
        kernel = random_kernel(rng, 5, 2, 'signed', symmetric=True)
        assert abs(graph_norm(cycle, kernel) - schatten_norm(kernel, length)) < 1e-9


def test_checkerboard_on_c6(rng):
    c6 = cycle_graph(6)
    signs = np.array([[(-1) ** (i + j) for j in range(3)] for i in range(3)], dtype=float)
    kernel = StepKernel(signs * rng.uniform(0.5, 1.0, (3, 3)))
    assert abs_graph_norm(c6, kernel) >= graph_norm(c6, kernel) - 1e-12


@given(st.integers(0, 2 ** 32 - 1), st.floats(-3.0, 3.0))
def test_homogeneity(seed, c):
    rng = np.random.default_rng(seed)
    h = preset('c6')
    kernel = random_kernel(rng, 3, 2, 'signed')
    scaled = abs_graph_norm(h, kernel.scale(c))
    assert scaled == pytest.approx(abs(c) * abs_graph_norm(h, kernel), rel=1e-12, abs=1e-12)


def test_power_identity(rng):
    h = preset('q3_hypercube')
    kernel = random_kernel(rng, 3, 2, 'signed')
    assert abs_graph_norm(h, kernel) ** h.num_edges == pytest.approx(
        homomorphism_density(h, kernel.abs()), rel=1e-10)


def test_step_kernel_validation():
    with pytest.raises(InvalidKernel):
        StepKernel(np.zeros((2, 3)))
    with pytest.raises(InvalidKernel):
        StepKernel(np.array([[0.0, np.nan], [1.0, 0.0]]))
    with pytest.raises(InvalidKernel):
        StepKernel(np.array([[0.0, 1.0], [2.0, 0.0]]), symmetric=True)
    kernel = StepKernel(np.array([[0.5, -2.0], [-2.0, 1.0]]), symmetric=True)
    assert kernel.bound == 2.0
    assert kernel.resolution == 2 and kernel.arity == 2


def test_brute_force_paths_agree_on_tetra_flag(rng):
    h = preset('tetra_flag_3graph')
    family = ColoredFamily([random_kernel(rng, 2, 3, 'signed') for _ in range(2)],
                           rng.integers(2, size=h.num_edges))
    assert colored_density_brute(h, family) == pytest.approx(_brute_chunked(h, family, float), abs=1e-13)


def test_brute_force_with_isolated_vertex(rng):
    h = Hypergraph(vertices=['a', 'b', 'c', 'd', 'z'], edges=[(0, 1, 2), (1, 2, 3)])
    family = monochromatic(h, random_kernel(rng, 3, 3, 'complex'))
    assert colored_density_brute(h, family) == pytest.approx(_brute_chunked(h, family, complex), abs=1e-13)


def test_brute_force_beyond_einsum_operands(rng):
    k9 = Hypergraph(vertices=[str(v) for v in range(9)],
                    edges=[(u, v) for u in range(9) for v in range(u + 1, 9)])
    assert k9.num_edges > EINSUM_MAX_OPERANDS
    kernel = random_kernel(rng, 2, 2)
    assert colored_density_brute(k9, monochromatic(k9, kernel)) == pytest.approx(density_fast(k9, kernel),
                                                                                 rel=1e-10)
