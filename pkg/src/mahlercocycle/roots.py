"""Polynomial roots by simultaneous (Aberth-Ehrlich) iteration."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels
from .polynomial import ComplexPolynomial, IntPolynomial

ROOT_TOL = 1e-12
MAX_ITER = 200


class RootFindingError(ArithmeticError):
    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best scaled residual {best_residual:.3e})")
        self.best_residual = best_residual


def scaled_residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """|p(a)| / ((1+|a|)^deg * max|c|) row-wise; coeffs (B, d+1), roots (B, d)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    d = coeffs.shape[1] - 1
    p = np.broadcast_to(coeffs[:, -1:], roots.shape).astype(complex)
    for m in range(d - 1, -1, -1):
        p = p * roots + coeffs[:, m:m + 1]
    norm = np.abs(coeffs).max(axis=1, keepdims=True)
    return np.abs(p) / ((1 + np.abs(roots)) ** d * norm)


def roots_batch(coeffs, tol: float = ROOT_TOL, maxiter: int = MAX_ITER) -> np.ndarray:
    """Roots of several polynomials of equal degree.

    ``coeffs`` is (B, d+1), ascending, with nonzero leading and constant
    coefficients.  Raises :class:`RootFindingError` if any root misses the
    residual bound ``tol * (1+|a|)^d * max|c|``.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape[1] < 2:
        raise ValueError("roots_batch needs degree >= 1")
    roots, _, _ = kernels.aberth_batch(coeffs, maxiter)
    res = scaled_residuals(coeffs, roots)
    worst = float(res.max()) if res.size else 0.0
    if not np.isfinite(worst) or worst > tol:
        raise RootFindingError(f"root iteration failed to reach tolerance {tol:g}", worst)
    return roots


def find_roots(p: ComplexPolynomial | IntPolynomial | Sequence[complex], tol: float = ROOT_TOL) -> list[complex]:
    """All deg p roots with multiplicity.  Zero roots are returned exactly."""
    if isinstance(p, (ComplexPolynomial, IntPolynomial)):
        c = [complex(v) for v in p.coeffs]
    else:
        c = [complex(v) for v in p]
    while c and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        raise ValueError("find_roots needs a polynomial of degree >= 1")
    v = 0
    while c[v] == 0:
        v += 1
    out = [0j] * v
    core = c[v:]
    if len(core) > 1:
        out.extend(complex(r) for r in roots_batch(np.array([core]), tol)[0])
    return out
