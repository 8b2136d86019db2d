"""Logarithmic Mahler measures.

Three routes: Jensen's formula on computed roots (the primary path), a
plain quadrature of log|p| on the unit circle (an independent check), and an
iterated scheme for polynomials in two or three variables that samples the
outer variables on a torus grid and applies Jensen exactly in the innermost
one.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .polynomial import (
    ComplexPolynomial,
    IntPolynomial,
    PolynomialError,
    as_poly,
    exact_div,
    int_gcd,
    squarefree_factors,
)
from .roots import roots_batch

UNIT_BAND = 1e-10
DEGENERATE_LIMIT = 0.01


class Method(str, enum.Enum):
    JENSEN = "jensen"
    QUADRATURE = "quadrature"
    ITERATED = "iterated"


@dataclass(frozen=True)
class MahlerResult:
    value: float
    method: Method
    est_error: float
    detail: Any = None


def log_plus(moduli: np.ndarray) -> np.ndarray:
    """log max(|a|, 1), with the band |a| = 1 +- 1e-10 counted as zero."""
    r = np.asarray(moduli, dtype=float)
    return np.where(r > 1 + UNIT_BAND, np.log(np.maximum(r, 1.0)), 0.0)


def _jensen_terms(coeffs: list[complex]) -> tuple[np.ndarray, float]:
    """Roots of a polynomial with nonzero constant term and a Newton-step error bound."""
    arr = np.array([coeffs], dtype=complex)
    roots = roots_batch(arr)[0]
    a = arr[0]
    p = np.full_like(roots, a[-1])
    dp = np.zeros_like(roots)
    for m in range(len(a) - 2, -1, -1):
        dp = dp * roots + p
        p = p * roots + a[m]
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.abs(p / dp)
    step = np.where(np.isfinite(step), step, 0.0)
    err = float((step / np.maximum(np.abs(roots), 1.0)).sum())
    return roots, err


def mahler_jensen(p: IntPolynomial | str | list[int]) -> MahlerResult:
    """log|lead| + sum log max(|root|, 1).

    Repeated roots are separated first with an exact square-free
    decomposition, so each root iteration sees only simple roots.
    """
    p = as_poly(p)
    if p.is_zero:
        raise PolynomialError("Mahler measure of 0 undefined")
    lead = math.log(abs(p.leading))
    core = p.strip_monomial()
    if core.degree == 0:
        return MahlerResult(lead, Method.JENSEN, 0.0, ())
    factors = squarefree_factors(core)
    total = lead
    err = 0.0
    roots_out: list[complex] = []
    for f, mult in factors:
        roots, e = _jensen_terms([complex(float(c)) for c in f])
        total += mult * float(log_plus(np.abs(roots)).sum())
        err += mult * e
        roots_out.extend(complex(r) for r in roots for _ in range(mult))
    return MahlerResult(total, Method.JENSEN, err, tuple(roots_out))


def mahler_jensen_complex(p: ComplexPolynomial) -> MahlerResult:
    """Jensen's formula for complex coefficients (no multiplicity separation)."""
    c = list(p.coeffs)
    if not c:
        raise PolynomialError("Mahler measure of 0 undefined")
    lead = math.log(abs(c[-1]))
    v = 0
    while c[v] == 0:
        v += 1
    c = c[v:]
    if len(c) == 1:
        return MahlerResult(lead, Method.JENSEN, 0.0, ())
    roots, err = _jensen_terms(c)
    value = lead + float(log_plus(np.abs(roots)).sum())
    return MahlerResult(value, Method.JENSEN, err, tuple(complex(r) for r in roots))


def _log_abs_on_grid(coeffs: np.ndarray, n: int, rng: np.random.Generator) -> float:
    t = (np.arange(n) + 0.5) / n
    vals = np.abs(np.polyval(coeffs[::-1], np.exp(2j * np.pi * t)))
    for _ in range(5):
        bad = vals < 1e-300
        if not bad.any():
            return float(np.log(vals).mean())
        t[bad] += (rng.random(bad.sum()) - 0.5) * (0.5 / n)
        vals[bad] = np.abs(np.polyval(coeffs[::-1], np.exp(2j * np.pi * t[bad])))
    raise ArithmeticError("quadrature grid keeps hitting a zero of the polynomial")


def mahler_quadrature(p: IntPolynomial | str | list[int], n_points: int = 1 << 16) -> MahlerResult:
    """Midpoint rule for the mean of log|p| over the circle, offset by half a cell."""
    p = as_poly(p)
    if p.is_zero:
        raise PolynomialError("Mahler measure of 0 undefined")
    if n_points < 16:
        raise ValueError("n_points must be at least 16")
    coeffs = np.array([float(c) for c in p.coeffs])
    rng = np.random.default_rng(0)
    v = _log_abs_on_grid(coeffs, n_points, rng)
    v2 = _log_abs_on_grid(coeffs, 2 * n_points, rng)
    return MahlerResult(v, Method.QUADRATURE, abs(v - v2), n_points)


# --- multivariate ---------------------------------------------------------

_VARS = "xyz"


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in up to three variables x, y, z."""

    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(int(e) for e in k): int(v) for k, v in self.terms.items() if v}
        dims = {len(k) for k in clean}
        if len(dims) > 1:
            raise PolynomialError("exponent vectors of different dimension")
        if dims and not 1 <= dims.pop() <= 3:
            raise PolynomialError("only 1 to 3 variables are supported")
        object.__setattr__(self, "terms", clean)

    @property
    def dim(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if self.terms and other.terms and self.dim != other.dim:
            raise PolynomialError(f"cannot multiply polynomials in {self.dim} and {other.dim} variables")
        out: dict[tuple[int, ...], int] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return LaurentPoly(out)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def dense(self) -> np.ndarray:
        """Coefficient array after shifting every exponent to start at 0."""
        keys = np.array(list(self.terms))
        lo = keys.min(axis=0)
        shape = tuple(keys.max(axis=0) - lo + 1)
        arr = np.zeros(shape, dtype=np.int64)
        for k, v in self.terms.items():
            arr[tuple(np.array(k) - lo)] = v
        return arr

    def evaluate(self, *point):
        total = 0
        for k, v in self.terms.items():
            term = v
            for base, e in zip(point, k):
                term = term * base ** e
            total = total + term
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            v = self.terms[k]
            mono = "*".join(_VARS[i] + (f"^{e}" if e != 1 else "") for i, e in enumerate(k) if e)
            if not mono:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        text = "".join(f"{s}{b}" for s, b in parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self) -> str:
        return self.to_text()


_LTERM = re.compile(r"([+-])?(\d+)?((?:\*?[xyz](?:\^-?\d+)?)*)")
_LFACTOR = re.compile(r"\*?([xyz])(?:\^(-?\d+))?")


def parse_laurent(text: str, dim: int | None = None) -> LaurentPoly:
    """Parse sums of monomials like ``"1+y^2-x*y"`` or ``"3*x^2*y^-1"``."""
    s = text.replace(" ", "")
    if not s:
        raise PolynomialError("empty polynomial string")
    raw: list[tuple[dict[str, int], int]] = []
    pos = 0
    while pos < len(s):
        m = _LTERM.match(s, pos)
        if m is None or m.end() == pos:
            raise PolynomialError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, num, mono = m.groups()
        if pos > 0 and sign is None:
            raise PolynomialError(f"missing operator near {s[pos:]!r}")
        if num is None and not mono:
            raise PolynomialError(f"cannot parse polynomial near {s[pos:]!r}")
        if num is not None and mono and not mono.startswith("*"):
            raise PolynomialError(f"expected '*' between coefficient and variable near {s[pos:]!r}")
        if num is None and mono.startswith("*"):
            raise PolynomialError(f"dangling '*' near {s[pos:]!r}")
        exps: dict[str, int] = {}
        for f in _LFACTOR.finditer(mono):
            exps[f.group(1)] = exps.get(f.group(1), 0) + int(f.group(2) or 1)
        c = int(num) if num is not None else 1
        raw.append((exps, -c if sign == "-" else c))
        pos = m.end()
    used = max((_VARS.index(v) + 1 for e, _ in raw for v in e), default=1)
    d = dim if dim is not None else used
    if d < used:
        raise PolynomialError(f"polynomial uses {used} variables but dim={d}")
    terms: dict[tuple[int, ...], int] = {}
    for exps, c in raw:
        k = tuple(exps.get(_VARS[i], 0) for i in range(d))
        terms[k] = terms.get(k, 0) + c
    out = LaurentPoly(terms)
    if out.is_zero:
        raise PolynomialError("polynomial is identically zero")
    return out


def _fiber_measures(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact 1D Mahler measure of every row of C (fibers, ascending coefficients).

    Returns (values, degenerate) where degenerate rows are numerically zero.
    """
    F, n1 = C.shape
    absC = np.abs(C)
    scale = absC.max(axis=1)
    ref = scale.max() if F else 0.0
    degenerate = scale <= 1e-13 * ref
    values = np.zeros(F)
    thresh = 1e-13 * np.where(degenerate, 1.0, scale)[:, None]
    big = absC > thresh
    hi = np.where(big.any(axis=1), n1 - 1 - np.argmax(big[:, ::-1], axis=1), 0)
    lo = np.argmax(big, axis=1)
    live = np.flatnonzero(~degenerate)
    keys = np.stack([lo[live], hi[live]], axis=1)
    for key in np.unique(keys, axis=0):
        a, b = int(key[0]), int(key[1])
        rows = live[(keys[:, 0] == a) & (keys[:, 1] == b)]
        lead = np.log(absC[rows, b])
        if b > a:
            roots = roots_batch(C[rows, a:b + 1])
            lead = lead + log_plus(np.abs(roots)).sum(axis=1)
        values[rows] = lead
    return values, degenerate


def _iterated_average(dense: np.ndarray, n: int) -> tuple[float, int, int]:
    d = dense.ndim
    t = (np.arange(n) + 0.5) / n
    w = np.exp(2j * np.pi * t)
    if d == 2:
        X = w[:, None] ** np.arange(dense.shape[0])[None, :]
        C = X @ dense.astype(complex)
    else:
        X = w[:, None] ** np.arange(dense.shape[0])[None, :]
        Y = w[:, None] ** np.arange(dense.shape[1])[None, :]
        C = np.einsum("ia,jb,abc->ijc", X, Y, dense.astype(complex)).reshape(n * n, -1)
    values, degenerate = _fiber_measures(C)
    n_deg = int(degenerate.sum())
    if n_deg > DEGENERATE_LIMIT * len(values):
        raise ArithmeticError(
            f"{n_deg} of {len(values)} fibers are identically zero; polynomial is degenerate on the grid"
        )
    return float(values[~degenerate].mean()), len(values), n_deg


def mahler_multivariate(p: LaurentPoly | str, outer_grid: int = 4096) -> MahlerResult:
    """Iterated Mahler measure for two or three variables.

    The last variable is integrated exactly (Jensen on every fiber); the
    others are averaged over ``outer_grid`` offset torus points in total
    (per axis ``outer_grid ** (1/(d-1))``).  In two variables the common
    factor of the fiber coefficients (a polynomial in x alone) is split off
    first and measured exactly, since it is what makes fibers vanish.
    """
    if isinstance(p, str):
        p = parse_laurent(p)
    if p.is_zero:
        raise PolynomialError("Mahler measure of 0 undefined")
    d = p.dim
    if d not in (2, 3):
        raise ValueError(f"mahler_multivariate expects 2 or 3 variables, got {d}")
    dense = p.dense()
    content_value = 0.0
    if d == 2:
        cols = [IntPolynomial(dense[:, b].tolist()) for b in range(dense.shape[1])]
        g = IntPolynomial()
        for c in cols:
            g = int_gcd(g, c)
        if g.degree > 0:
            content_value = mahler_jensen(g).value
            width = max(len(exact_div(c, g).coeffs) if not c.is_zero else 0 for c in cols)
            reduced = np.zeros((width, dense.shape[1]), dtype=np.int64)
            for b, c in enumerate(cols):
                q = exact_div(c, g).coeffs if not c.is_zero else ()
                reduced[: len(q), b] = q
            dense = reduced
    n = max(2, int(round(outer_grid ** (1.0 / (d - 1)))))
    value, fibers, n_deg = _iterated_average(dense, n)
    coarse = max(2, n // 2)
    value_coarse, _, _ = _iterated_average(dense, coarse)
    detail = {"per_axis": n, "fibers": fibers, "degenerate": n_deg}
    return MahlerResult(content_value + value, Method.ITERATED, abs(value - value_coarse), detail)
