import math

import numpy as np
import pytest

from mahlercocycle import kernels
from mahlercocycle.block2d import fourier_matrix_2d, named_block
from mahlercocycle.cocycle import _as_z, _seed, orbit_points, walk_grid
from mahlercocycle.substitution import BinarySubstitution, fourier_matrix

needs_both = pytest.mark.skipif(len(kernels.available_backends()) < 2, reason="compiled kernels not built")
MODES = [kernels.WALK, kernels.PRODUCT, kernels.ROW_EIGEN, kernels.COLUMN_EIGEN]


def bundle(expansion, n, samples, seed=3):
    return np.stack([_as_z(orbit_points(expansion, n, _seed(seed, s, 0, 0))) for s in range(samples)])


def run_both(*args):
    out = {}
    for name in kernels.available_backends():
        with kernels.use_backend(name):
            out[name] = kernels.cocycle_walk(*args)
    return out["python"], out["compiled"]


def test_backend_switching():
    before = kernels.backend_name()
    with kernels.use_backend("python"):
        assert kernels.backend_name() == "python"
    assert kernels.backend_name() == before
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_compiled_is_default_when_built():
    if "compiled" in kernels.available_backends():
        assert kernels.backend_name() == "compiled"


@needs_both
@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("basis", ["triangular", "standard"])
def test_walk_agrees_1d(mode, basis):
    F = fourier_matrix(BinarySubstitution("1101001", "0010110"))
    z = bundle((7,), 3000, 4)
    vec = np.array([[0.6, 0.8j], [1, 0], [0.3, -0.2], [1j, 1]], dtype=complex)
    if mode in (kernels.ROW_EIGEN, kernels.COLUMN_EIGEN):
        vec = np.tile(np.array([1, -1]) / math.sqrt(2), (4, 1)).astype(complex)
    py, c = run_both(z, walk_grid(F, basis), vec, mode)
    for a, b in zip(py, c):
        assert np.allclose(a, b, rtol=1e-9, atol=1e-9)


@needs_both
@pytest.mark.parametrize("mode", MODES)
def test_walk_agrees_2d(mode):
    F = fourier_matrix_2d(named_block("squiral"))
    z = bundle((3, 3), 2000, 3)
    vec = np.tile(np.array([0.6, 0.8]), (3, 1)).astype(complex)
    py, c = run_both(z, walk_grid(F, "triangular"), vec, mode)
    for a, b in zip(py, c):
        assert np.allclose(a, b, rtol=1e-9, atol=1e-9)


def test_long_walk_does_not_overflow(backend):
    # growth of about 0.66 per step: exp(0.66 * 2e5) is far outside double range
    F = fourier_matrix(BinarySubstitution("11010", "00101"))
    z = bundle((5,), 200_000, 1)
    vec = np.array([[0.6, 0.8j]])
    growth, logdet, mindet = kernels.cocycle_walk(z, walk_grid(F, "triangular"), vec, kernels.WALK)
    assert np.isfinite(growth).all() and np.isfinite(logdet).all()
    assert abs(growth[0] / 200_000 - 0.656) < 0.01
    g2, _, _ = kernels.cocycle_walk(z, walk_grid(F, "triangular"), vec, kernels.PRODUCT)
    assert np.isfinite(g2).all()


def test_invariant_line_is_followed(backend):
    # (1, 0) spans the invariant line of H B H; its growth is sub-exponential
    F = fourier_matrix(BinarySubstitution("1101001", "0010110"))
    z = bundle((7,), 3000, 2)
    vec = np.array([[1, 0], [1, 0]], dtype=complex)
    growth, _, _ = kernels.cocycle_walk(z, walk_grid(F, "triangular"), vec, kernels.WALK)
    assert np.isfinite(growth).all()
    assert np.abs(growth / 3000).max() < 0.01


def test_dead_vector_gives_minus_infinity(backend):
    # first row of every matrix vanishes, so (1, 0) is killed at once
    coef = np.zeros((2, 2, 3, 1))
    coef[1, :, :, 0] = 1
    z = bundle((3,), 500, 1)
    growth, logdet, _ = kernels.cocycle_walk(z, coef, np.array([[1, 0]], dtype=complex), kernels.WALK)
    assert growth[0] == -math.inf
    assert logdet[0] == -math.inf


def test_aberth_agrees_with_numpy(backend):
    rng = np.random.default_rng(0)
    c = rng.integers(-1, 2, (300, 11)).astype(complex)
    c[:, 0] = 1
    c[:, -1] = rng.choice([-1, 1], 300)
    roots, _, _ = kernels.aberth_batch(c)
    for row, r in zip(c, roots):
        ref = np.roots(row[::-1])
        assert np.log(np.maximum(np.abs(ref), 1)).sum() == pytest.approx(np.log(np.maximum(np.abs(r), 1)).sum(), abs=1e-8)


@needs_both
def test_aberth_backends_match():
    rng = np.random.default_rng(1)
    c = rng.integers(-1, 2, (100, 9)).astype(complex)
    c[:, 0] = c[:, -1] = 1
    out = []
    for name in ("python", "compiled"):
        with kernels.use_backend(name):
            roots = kernels.aberth_batch(c)[0]
            out.append(np.log(np.maximum(np.abs(roots), 1)).sum(axis=1))
    assert np.allclose(out[0], out[1], atol=1e-10)
