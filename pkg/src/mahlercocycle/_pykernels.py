"""Pure numpy implementations of the hot kernels.

Same signatures and semantics as the compiled ``_ckernels`` module.  Root
finding is vectorised across the batch; the cocycle walk replaces the
sequential vector iteration by a pairwise (tree) product of the step
matrices, which telescopes to the same log-growth.
"""

from __future__ import annotations

import numpy as np

WALK, PRODUCT, ROW_EIGEN, COLUMN_EIGEN = 0, 1, 2, 3

_EPS = np.finfo(float).eps
_CHUNK_POINTS = 1 << 18


def _horner(a: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # a: (B, d+1) ascending, z: (B, d)
    p = np.broadcast_to(a[:, -1:], z.shape).astype(complex)
    dp = np.zeros_like(p)
    for m in range(a.shape[1] - 2, -1, -1):
        dp = dp * z + p
        p = p * z + a[:, m:m + 1]
    return p, dp


def _abs_horner(a_abs: np.ndarray, r: np.ndarray) -> np.ndarray:
    acc = np.broadcast_to(a_abs[:, -1:], r.shape).astype(float)
    for m in range(a_abs.shape[1] - 2, -1, -1):
        acc = acc * r + a_abs[:, m:m + 1]
    return acc


def initial_points(a: np.ndarray) -> np.ndarray:
    """Perturbed circle of radius |a_0/a_d|^(1/d) for monic rows ``a``."""
    d = a.shape[1] - 1
    radius = np.abs(a[:, 0]) ** (1.0 / d)
    radius = np.where(radius > 0, radius, 1.0)
    theta = 2 * np.pi * np.arange(d) / d + np.pi / (2 * d) + 0.4
    return radius[:, None] * np.exp(1j * theta)[None, :]


def aberth_batch(coeffs: np.ndarray, maxiter: int = 200):
    """Simultaneous Aberth-Ehrlich iteration for a batch of equal-degree polynomials.

    ``coeffs`` has shape (B, d+1), ascending, nonzero leading coefficient.
    Returns ``(roots, iterations, converged)``.  A root is frozen once its
    residual is at rounding level; each row ends with one guarded Newton
    polish step.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    B, n1 = coeffs.shape
    d = n1 - 1
    a = coeffs / coeffs[:, -1:]
    a_abs = np.abs(a)
    z = initial_points(a)
    active = np.ones((B, d), dtype=bool)
    iters = np.zeros(B, dtype=np.int64)
    eye = np.eye(d, dtype=bool)
    for _ in range(maxiter):
        p, dp = _horner(a, z)
        bound = _abs_horner(a_abs, np.abs(z))
        active &= ~(np.abs(p) <= 4 * _EPS * bound)
        rows = active.any(axis=1)
        if not rows.any():
            break
        iters += rows
        safe_dp = np.where(dp == 0, _EPS, dp)
        newton = p / safe_dp
        diff = z[:, :, None] - z[:, None, :]
        diff[:, eye] = np.inf
        diff = np.where(diff == 0, _EPS, diff)
        s = (1.0 / diff).sum(axis=2)
        denom = 1 - newton * s
        denom = np.where(denom == 0, _EPS, denom)
        step = newton / denom
        z = np.where(active, z - step, z)
    converged = ~active.any(axis=1)
    # guarded Newton polish
    p, dp = _horner(a, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = z - p / dp
    ok = np.isfinite(cand)
    cand = np.where(ok, cand, z)
    pc, _ = _horner(a, cand)
    z = np.where(np.abs(pc) < np.abs(p), cand, z)
    return z, iters, converged


def fourier_entries(z: np.ndarray, coef: np.ndarray) -> np.ndarray:
    """Evaluate the 2x2 Fourier matrix at points z (..., 2); returns (..., 2, 2)."""
    x = z[..., 0]
    y = z[..., 1]
    L1, L2 = coef.shape[2], coef.shape[3]
    out = np.zeros(z.shape[:-1] + (2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            acc = np.zeros(x.shape, dtype=complex)
            for m1 in range(L1 - 1, -1, -1):
                inner = np.zeros(x.shape, dtype=complex)
                for m2 in range(L2 - 1, -1, -1):
                    inner = inner * y + coef[i, j, m1, m2]
                acc = acc * x + inner
            out[..., i, j] = acc
    return out


def _tree_product(b: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ordered product b[:,0] @ b[:,1] @ ... per sample, renormalised.

    Returns (matrix, log_scale, dead) with true product = matrix * exp(log_scale);
    ``dead`` flags samples whose product vanished.
    """
    S = b.shape[0]
    m = b
    scale = np.zeros(m.shape[:2])
    dead = np.zeros(S, dtype=bool)

    def renorm(m, scale):
        mx = np.abs(m).max(axis=(2, 3))
        zero = mx == 0
        mx = np.where(zero, 1.0, mx)
        return m / mx[:, :, None, None], scale + np.log(mx), zero.any(axis=1)

    m, scale, z0 = renorm(m, scale)
    dead |= z0
    while m.shape[1] > 1:
        if m.shape[1] % 2:
            pad = np.broadcast_to(np.eye(2, dtype=complex), (S, 1, 2, 2))
            m = np.concatenate([m, pad], axis=1)
            scale = np.concatenate([scale, np.zeros((S, 1))], axis=1)
        m = m[:, 0::2] @ m[:, 1::2]
        scale = scale[:, 0::2] + scale[:, 1::2]
        m, scale, z0 = renorm(m, scale)
        dead |= z0
    return m[:, 0], scale[:, 0], dead


def _vector_walk(v: np.ndarray, b: np.ndarray) -> np.ndarray:
    """log|v B_0 B_1 ... B_(N-1)| per sample, stepping all samples together.

    A step at a time rather than a tree product: renormalising whole
    matrices would flush a slowly growing component of v to zero.
    """
    S, N = b.shape[:2]
    w = v.copy()
    g = np.zeros(S)
    for n in range(N):
        w = np.einsum("si,sij->sj", w, b[:, n])
        if n % 16 == 15 or n == N - 1:
            nrm = np.linalg.norm(w, axis=1)
            live = nrm > 0
            g[live] += np.log(nrm[live])
            w[live] /= nrm[live, None]
            g[~live] = -np.inf
    return g


def cocycle_walk(z: np.ndarray, coef: np.ndarray, vec: np.ndarray, mode: int):
    """Accumulate log-growth of the Fourier-matrix cocycle along sampled orbits.

    z: (S, N, 2) complex orbit points; coef: (2, 2, L1, L2) 0/1 exponent grid;
    vec: (S, 2) start (or fixed eigen) vectors.  Returns (growth, logdet, mindet),
    each of shape (S,).  ``growth`` is -inf when the iterate vanished.
    """
    z = np.asarray(z, dtype=complex)
    coef = np.asarray(coef, dtype=float)
    vec = np.asarray(vec, dtype=complex)
    S, N = z.shape[:2]
    growth = np.empty(S)
    logdet = np.empty(S)
    mindet = np.empty(S)
    chunk = max(1, _CHUNK_POINTS // max(N, 1))
    for lo in range(0, S, chunk):
        hi = min(S, lo + chunk)
        b = fourier_entries(z[lo:hi], coef)
        det = np.abs(b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0])
        mindet[lo:hi] = det.min(axis=1)
        with np.errstate(divide="ignore"):
            logdet[lo:hi] = np.log(det).sum(axis=1)
        v = vec[lo:hi] / np.linalg.norm(vec[lo:hi], axis=1, keepdims=True)
        if mode == WALK:
            g = _vector_walk(v, b)
        elif mode == PRODUCT:
            m, scale, dead = _tree_product(b)
            nrm = np.linalg.norm(m, ord=2, axis=(1, 2))
            with np.errstate(divide="ignore"):
                g = np.log(nrm) + scale
            g[dead | (nrm == 0)] = -np.inf
        elif mode == ROW_EIGEN:
            f = np.einsum("si,snij,sj->sn", v, b, v.conj())
            with np.errstate(divide="ignore"):
                g = np.log(np.abs(f)).sum(axis=1)
        elif mode == COLUMN_EIGEN:
            f = np.einsum("si,snij,sj->sn", v.conj(), b, v)
            with np.errstate(divide="ignore"):
                g = np.log(np.abs(f)).sum(axis=1)
        else:
            raise ValueError(f"unknown cocycle mode {mode}")
        growth[lo:hi] = g
    return growth, logdet, mindet
