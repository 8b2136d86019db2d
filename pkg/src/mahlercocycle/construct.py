"""From height-one polynomials to substitutions, and the Borwein search harness."""

from __future__ import annotations

import enum
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .mahler import UNIT_BAND, mahler_jensen
from .polynomial import IntPolynomial, as_poly, reciprocal_of
from .roots import ROOT_TOL, scaled_residuals
from .substitution import BinarySubstitution, is_primitive

MIN_SEARCH_DEGREE = 2
MAX_SEARCH_DEGREE = 16
DEFAULT_FLOOR = 1e-6
# roots closer than this are treated as a cluster and re-done exactly;
# a root of multiplicity k is only located to about eps**(1/k)
_CLUSTER = 1e-2
# measures this small may be cyclotomic noise and are re-done exactly
_NEAR_ZERO = 1e-3
_CHUNK = 3 ** 10


class ConstructionError(ValueError):
    pass


class Coincidence(str, enum.Enum):
    """Column used at a zero coefficient: both words get 0, or both get 1."""

    ZERO = "00"
    ONE = "11"


def _height_one(p: IntPolynomial) -> None:
    if p.is_zero or p.degree < 1:
        raise ConstructionError("polynomial must have degree >= 1")
    bad = [c for c in p.coeffs if c not in (-1, 0, 1)]
    if bad:
        raise ConstructionError(f"polynomial has height {max(abs(c) for c in p.coeffs)}, need coefficients in {{-1,0,1}}")


def substitution_from_signs(p, zero_choice: Sequence[Coincidence | str] = ()) -> BinarySubstitution:
    """Column m is (0,1) for c_m = 1, (1,0) for c_m = -1, and the chosen coincidence for c_m = 0."""
    p = as_poly(p)
    _height_one(p)
    if p.coeffs[0] == 0:
        raise ConstructionError("constant term is zero; strip the monomial factor first")
    zeros = sum(1 for c in p.coeffs if c == 0)
    if len(zero_choice) != zeros:
        raise ConstructionError(f"got {len(zero_choice)} zero choices for {zeros} zero coefficients")
    choices = iter(Coincidence(c) for c in zero_choice)
    w0, w1 = [], []
    for c in p.coeffs:
        if c == 1:
            a, b = "0", "1"
        elif c == -1:
            a, b = "1", "0"
        else:
            a = b = next(choices).value[0]
        w0.append(a)
        w1.append(b)
    return BinarySubstitution("".join(w0), "".join(w1))


def enumerate_substitutions(p, require_primitive: bool = False, include_negation: bool = True) -> list[BinarySubstitution]:
    """All 2^z zero-choice variants of p, then those of -p (the swapped words)."""
    p = as_poly(p)
    _height_one(p)
    zeros = sum(1 for c in p.coeffs if c == 0)
    signs = [p, -p] if include_negation else [p]
    out = []
    for q in signs:
        for zc in itertools.product(list(Coincidence), repeat=zeros):
            s = substitution_from_signs(q, zc)
            if not require_primitive or is_primitive(s):
                out.append(s)
    return out


def symmetry_orbit(p: IntPolynomial) -> list[tuple[int, ...]]:
    """Coefficient tuples of p under sign change, reciprocal and z -> -z."""
    base = [p, reciprocal_of(p)]
    out = []
    for q in base:
        for r in (q, q.substitute_negated()):
            out.append(tuple(r.coeffs))
            out.append(tuple((-r).coeffs))
    return out


def canonical_form(p) -> IntPolynomial:
    """Lexicographically least member of the eight-element symmetry orbit."""
    p = as_poly(p)
    if p.is_zero:
        raise ConstructionError("zero polynomial has no canonical form")
    p = p.strip_monomial()
    return IntPolynomial(list(min(symmetry_orbit(p))))


@dataclass(frozen=True)
class SearchRecord:
    poly: IntPolynomial
    measure: float
    degree: int

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.poly.coeffs), "degree": self.degree, "mahler": self.measure})


def _decode(indices: np.ndarray, degree: int) -> np.ndarray:
    """Coefficient rows for interior base-3 indices; ends take each sign pair."""
    n_inner = degree - 1
    inner = np.empty((len(indices), n_inner), dtype=np.int8)
    rem = indices.copy()
    for j in range(n_inner - 1, -1, -1):
        inner[:, j] = rem % 3 - 1
        rem //= 3
    rows = []
    for c0 in (-1, 1):
        for cd in (-1, 1):
            block = np.empty((len(indices), degree + 1), dtype=np.int8)
            block[:, 0] = c0
            block[:, 1:degree] = inner
            block[:, degree] = cd
            rows.append(block)
    return np.concatenate(rows)


def _keys(c: np.ndarray) -> np.ndarray:
    # lexicographic order of rows equals numeric order of these base-3 keys
    d1 = c.shape[1]
    weights = 3 ** np.arange(d1 - 1, -1, -1, dtype=np.int64)
    return (c.astype(np.int64) + 1) @ weights


def _canonical_rows(c: np.ndarray) -> np.ndarray:
    """Rows that are the least element of their symmetry orbit."""
    alt = np.where(np.arange(c.shape[1]) % 2 == 1, -1, 1).astype(np.int8)
    own = _keys(c)
    best = own.copy()
    for q in (c, c[:, ::-1]):
        for r in (q, q * alt):
            for s in (r, -r):
                best = np.minimum(best, _keys(s))
    return c[own == best]


def _measures(c: np.ndarray) -> np.ndarray:
    """Mahler measures of rows with leading coefficient +-1 via batched roots, exact fallback on clusters."""
    roots, _, _ = kernels.aberth_batch(c.astype(complex))
    ok = scaled_residuals(c.astype(complex), roots).max(axis=1) <= ROOT_TOL
    d = c.shape[1] - 1
    if d > 1:
        gaps = np.abs(roots[:, :, None] - roots[:, None, :])
        gaps[:, np.arange(d), np.arange(d)] = np.inf
        ok &= gaps.min(axis=(1, 2)) >= _CLUSTER
    mod = np.abs(roots)
    contrib = np.where(mod > 1 + UNIT_BAND, np.log(np.maximum(mod, 1.0)), 0.0)
    values = contrib.sum(axis=1)
    ok &= values >= _NEAR_ZERO
    for i in np.flatnonzero(~ok):
        values[i] = mahler_jensen(IntPolynomial(c[i].tolist())).value
    return values


def _search_chunk(task):
    degree, lo, hi, floor = task
    c = _canonical_rows(_decode(np.arange(lo, hi, dtype=np.int64), degree))
    if not len(c):
        return []
    values = _measures(c)
    keep = values > floor
    return [(float(v), tuple(int(x) for x in row)) for v, row in zip(values[keep], c[keep])]


def _degree_one(floor: float) -> list[tuple[float, tuple[int, ...]]]:
    # 1 + z and 1 - z up to symmetry, both cyclotomic
    out = []
    for row in {tuple(canonical_form([a, b]).coeffs) for a in (-1, 1) for b in (-1, 1)}:
        v = mahler_jensen(IntPolynomial(list(row))).value
        if v > floor:
            out.append((v, row))
    return out


def _tasks(max_degree: int, floor: float) -> list[tuple[int, int, int, float]]:
    tasks = []
    for d in range(2, max_degree + 1):
        total = 3 ** (d - 1)
        for lo in range(0, total, _CHUNK):
            tasks.append((d, lo, min(total, lo + _CHUNK), floor))
    return tasks


def borwein_search(max_degree: int, positive_floor: float = DEFAULT_FLOOR, workers: int = 1) -> list[SearchRecord]:
    """All Borwein polynomials of degree 1..max_degree with both end coefficients +-1.

    One representative per symmetry class is kept (least coefficient tuple);
    records with measure above ``positive_floor`` come back sorted by
    (measure, coefficients).  ``workers > 1`` fans chunks out to processes;
    the merged result does not depend on the worker count.
    """
    if not MIN_SEARCH_DEGREE <= max_degree <= MAX_SEARCH_DEGREE:
        raise ConstructionError(
            f"max_degree={max_degree} outside {MIN_SEARCH_DEGREE}..{MAX_SEARCH_DEGREE}"
        )
    if workers < 1:
        raise ConstructionError("workers must be >= 1")
    tasks = _tasks(max_degree, positive_floor)
    found = _degree_one(positive_floor)
    if workers == 1:
        for t in tasks:
            found.extend(_search_chunk(t))
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=kernels.set_backend,
                                 initargs=(kernels.backend_name(),)) as pool:
            for part in pool.map(_search_chunk, tasks):
                found.extend(part)
    found.sort()
    return [SearchRecord(IntPolynomial(list(row)), v, len(row) - 1) for v, row in found]


def to_json_lines(records: Iterable[SearchRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)
