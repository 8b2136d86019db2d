"""Lyapunov exponents of the Fourier-matrix cocycle B(k) B(Lk) ... B(L^(n-1) k).

Exponents are estimated along sampled orbits of the expanding toral map
k -> L k (mod 1), one axis per torus variable.  A uniformly random point is
drawn as an infinite string of base-L digits; the map is the shift on those
digits, so the orbit points are formed from digit windows and never
degrade the way repeated floating-point multiplication would.

By default the walk runs in the coordinates given by the orthogonal
Hadamard matrix H = [[1, 1], [1, -1]] / sqrt(2).  Every Fourier matrix has
the row eigenvector (1, 1) and the column eigenvector (1, -1), so
H B(k) H is lower triangular with an entry that is exactly zero as an
integer polynomial.  In the standard basis rounding destroys that
invariant line each step, and when both exponents coincide the broken
symmetry shows up as a spurious splitting of order 1/|log eps|.  Norms and
determinants are the same in both bases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .substitution import FourierMatrix, evaluate

DEFAULT_SEED = 1729
MAX_RESAMPLE = 20
BASES = ("triangular", "standard")
_CONE = 1e-3
_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)


class DegenerateCocycleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CocycleParams:
    n_iter: int = 10_000
    n_samples: int = 100
    seed: int = DEFAULT_SEED
    singular_floor: float = 1e-12
    basis: str = "triangular"

    def __post_init__(self):
        if self.n_iter < 100:
            raise ValueError(f"n_iter={self.n_iter} violates n_iter >= 100")
        if self.n_samples < 1:
            raise ValueError(f"n_samples={self.n_samples} violates n_samples >= 1")
        if not self.singular_floor > 0:
            raise ValueError("singular_floor must be positive")
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {self.basis!r}")


@dataclass(frozen=True)
class LyapunovEstimate:
    mean: float
    stderr: float
    per_sample: tuple[float, ...]
    params: CocycleParams = field(repr=False)

    @classmethod
    def from_samples(cls, values: np.ndarray, params: CocycleParams) -> LyapunovEstimate:
        values = np.asarray(values, dtype=float)
        se = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
        return cls(float(values.mean()), se, tuple(float(v) for v in values), params)


def _seed(seed: int, sample: int, attempt: int, stream: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(sample, attempt, stream))


def _digit_window(expansion: int) -> int:
    return math.ceil(64 / math.log2(expansion)) + 1


def orbit_points(expansion: tuple[int, ...], n_iter: int, seq: np.random.SeedSequence) -> np.ndarray:
    """Points k, Lk, ..., L^(n-1) k (mod 1) of one random orbit; shape (n_iter, dim)."""
    rng = np.random.default_rng(seq)
    out = np.empty((n_iter, len(expansion)))
    for axis, L in enumerate(expansion):
        W = _digit_window(L)
        digits = rng.integers(0, L, n_iter + W).astype(float)
        weights = float(L) ** -np.arange(1, W + 1)
        windows = np.lib.stride_tricks.sliding_window_view(digits, W)[:n_iter]
        out[:, axis] = windows @ weights
    return out


def _as_z(k: np.ndarray) -> np.ndarray:
    z = np.ones(k.shape[:-1] + (2,), dtype=complex)
    z[..., : k.shape[-1]] = np.exp(2j * np.pi * k)
    return z


@lru_cache(maxsize=16)
def _orbit_bundle(expansion: tuple[int, ...], n_iter: int, n_samples: int, seed: int) -> np.ndarray:
    z = np.stack([_as_z(orbit_points(expansion, n_iter, _seed(seed, s, 0, 0))) for s in range(n_samples)])
    z.setflags(write=False)
    return z


def _start_vector(seed: int, sample: int, attempt: int) -> np.ndarray:
    """Random complex unit vector kept outside a small cone around (1, 1)."""
    rng = np.random.default_rng(_seed(seed, sample, attempt, 1))
    slow = np.array([1, 1]) / math.sqrt(2)
    while True:
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        if abs(np.vdot(slow, v)) < math.cos(_CONE):
            return v


def walk_grid(F: FourierMatrix, basis: str) -> np.ndarray:
    """Coefficient grid of H B H (triangular) or of B itself (standard)."""
    g = F.grid
    if basis == "standard":
        return g
    # H B H = [[p, 0], [S0 - S1, Q - R]] with p the sum over all positions
    out = np.zeros_like(g)
    out[0, 0] = g[0, 0] + g[1, 0]
    out[1, 0] = (g[0, 0] - g[1, 0] + g[0, 1] - g[1, 1]) / 2
    out[1, 1] = (g[0, 0] - g[1, 0] - g[0, 1] + g[1, 1]) / 2
    return out


def _sample(F: FourierMatrix, params: CocycleParams, mode: int, vector=None, stream_offset: int = 0):
    """Per-sample (growth / n, logdet / n) with singular orbits redrawn.

    ``vector`` fixes the vector for every sample (eigen modes); otherwise a
    random start vector is drawn per sample.
    """
    N, S, seed = params.n_iter, params.n_samples, params.seed
    z = _orbit_bundle(tuple(F.expansion), N, S, seed)
    grid = walk_grid(F, params.basis)
    change = _HADAMARD if params.basis == "triangular" else np.eye(2)

    def vectors(samples, attempt):
        if vector is not None:
            v = np.tile(np.asarray(vector, dtype=complex), (len(samples), 1))
        else:
            v = np.array([_start_vector(seed + stream_offset, s, attempt) for s in samples])
        return v @ change

    growth, logdet, mindet = kernels.cocycle_walk(z, grid, vectors(range(S), 0), mode)
    check_det = not F.determinant_vanishes

    def bad_mask(g, md):
        bad = ~np.isfinite(g)
        if check_det:
            bad |= md < params.singular_floor
        return bad

    bad = np.flatnonzero(bad_mask(growth, mindet))
    attempt = 0
    while bad.size:
        attempt += 1
        if attempt > MAX_RESAMPLE:
            raise ArithmeticError(f"{bad.size} samples still singular after {MAX_RESAMPLE} redraws")
        zb = np.stack([_as_z(orbit_points(tuple(F.expansion), N, _seed(seed, s, attempt, 0))) for s in bad])
        g, ld, md = kernels.cocycle_walk(zb, grid, vectors(bad, attempt), mode)
        growth[bad], logdet[bad], mindet[bad] = g, ld, md
        bad = bad[bad_mask(g, md)]
    return growth / N, logdet / N


def cocycle_product(F: FourierMatrix, k, n: int) -> tuple[np.ndarray, float]:
    """B(k) B(Lk) ... B(L^(n-1) k) as (matrix, log_scale), product = matrix * exp(log_scale).

    The orbit uses the floating-point map k -> L k mod 1 directly, which is
    fine for the short products this function is meant for.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.atleast_1d(np.asarray(k, dtype=float)) % 1.0
    if k.shape != (F.dim,):
        raise ValueError(f"point has {k.size} coordinates, Fourier matrix has dim {F.dim}")
    L = np.asarray(F.expansion, dtype=float)
    m = np.eye(2, dtype=complex)
    log_scale = 0.0
    for _ in range(n):
        m = m @ evaluate(F, k)
        mx = np.abs(m).max()
        if mx == 0:
            return m, 0.0
        m /= mx
        log_scale += math.log(mx)
        k = (L * k) % 1.0
    return m, log_scale


def lyapunov_max(F: FourierMatrix, params: CocycleParams = CocycleParams()) -> LyapunovEstimate:
    """Top exponent from the growth of a random row vector pushed through the cocycle."""
    growth, _ = _sample(F, params, kernels.WALK)
    return LyapunovEstimate.from_samples(growth, params)


def birkhoff_logdet(F: FourierMatrix, params: CocycleParams = CocycleParams()) -> LyapunovEstimate:
    """Birkhoff average of log|det B| along orbits: the sum of both exponents."""
    if F.determinant_vanishes:
        raise DegenerateCocycleError("det B(k) vanishes identically; the exponent sum is -infinity")
    _, logdet = _sample(F, params, kernels.WALK)
    return LyapunovEstimate.from_samples(logdet, params)


def lyapunov_min(
    F: FourierMatrix, params: CocycleParams = CocycleParams(), method: str = "sum-rule"
) -> LyapunovEstimate:
    """Bottom exponent.

    ``"sum-rule"``: log-det average minus the top exponent on the same orbits.
    ``"inverse-norm"``: log-det average minus (1/n) log ||B^(n)||, i.e.
    -(1/n) log ||(B^(n))^-1|| for 2x2 matrices.
    When det B vanishes identically every image is rank one, all nonzero
    vectors share one growth rate, and that rate is returned using a second,
    independent family of start vectors.
    """
    if F.determinant_vanishes:
        growth, _ = _sample(F, params, kernels.WALK, stream_offset=1)
        return LyapunovEstimate.from_samples(growth, params)
    if method == "sum-rule":
        growth, logdet = _sample(F, params, kernels.WALK)
    elif method == "inverse-norm":
        growth, logdet = _sample(F, params, kernels.PRODUCT)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LyapunovEstimate.from_samples(logdet - growth, params)


def lyapunov_pair(F: FourierMatrix, params: CocycleParams = CocycleParams()) -> tuple[LyapunovEstimate, LyapunovEstimate]:
    """(max, min) from a single pass over the orbits."""
    growth, logdet = _sample(F, params, kernels.WALK)
    top = LyapunovEstimate.from_samples(growth, params)
    if F.determinant_vanishes:
        return top, lyapunov_min(F, params)
    return top, LyapunovEstimate.from_samples(logdet - growth, params)


def eigen_exponent(
    F: FourierMatrix, vector, params: CocycleParams = CocycleParams(), side: str = "row"
) -> LyapunovEstimate:
    """Growth rate along a fixed direction that is an eigenvector of every B(k).

    Each step contributes log|<v B(k), v>| (``side="row"``) or
    log|<B(k) v, v>| (``side="column"``) for the normalised v; re-imposing
    the direction each step keeps rounding from drifting into the other
    Oseledets direction.
    """
    mode = {"row": kernels.ROW_EIGEN, "column": kernels.COLUMN_EIGEN}.get(side)
    if mode is None:
        raise ValueError(f"side must be 'row' or 'column', got {side!r}")
    v = np.asarray(vector, dtype=complex)
    left, right = (v, v.conj()) if side == "row" else (v.conj(), v)
    projected = np.einsum("i,ijab,j->ab", left, F.grid, right)
    if not np.abs(projected).max() > 1e-12 * np.abs(v).max() ** 2:
        # the direction is annihilated by every B(k)
        return LyapunovEstimate(-math.inf, 0.0, (-math.inf,) * params.n_samples, params)
    growth, _ = _sample(F, params, mode, vector=v)
    return LyapunovEstimate.from_samples(growth, params)
