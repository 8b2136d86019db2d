import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlercocycle.polynomial import ComplexPolynomial, IntPolynomial
from mahlercocycle.roots import ROOT_TOL, RootFindingError, find_roots, roots_batch, scaled_residuals

from conftest import GOLDEN_RATIO, LEHMER


def test_z_squared_minus_one():
    assert sorted(r.real for r in find_roots([-1, 0, 1])) == pytest.approx([-1, 1], abs=1e-14)


def test_golden_ratio_roots():
    roots = sorted(r.real for r in find_roots(IntPolynomial([-1, -1, 1])))
    assert roots == pytest.approx([1 - GOLDEN_RATIO, GOLDEN_RATIO], abs=1e-14)


def test_lehmer_has_one_root_outside():
    roots = find_roots(IntPolynomial(LEHMER))
    outside = [r for r in roots if abs(r) > 1 + 1e-10]
    assert len(outside) == 1
    assert abs(outside[0]) == pytest.approx(1.176281, abs=5e-7)


def test_zero_roots_returned_exactly():
    roots = find_roots([0, 0, -1, 1])
    assert roots.count(0j) == 2
    assert any(abs(r - 1) < 1e-14 for r in roots)


def test_complex_coefficients():
    p = ComplexPolynomial([-1j, 0, 1])  # z^2 = i
    for r in find_roots(p):
        assert abs(r * r - 1j) < 1e-13


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        find_roots([3])


def test_failure_reports_best_residual():
    with pytest.raises(RootFindingError) as info:
        roots_batch(np.array([[1.0, 0, 0, 0, 0, 0, 1.0]]), maxiter=1)
    assert info.value.best_residual > 0


def test_batch_matches_numpy(backend):
    rng = np.random.default_rng(3)
    c = rng.integers(-1, 2, (200, 13)).astype(complex)
    c[:, 0] = rng.choice([-1, 1], 200)
    c[:, -1] = rng.choice([-1, 1], 200)
    roots = roots_batch(c, tol=1e-9)
    for row, r in zip(c, roots):
        ref = np.sort_complex(np.roots(row[::-1]))
        got = np.sort_complex(r)
        assert np.abs(np.prod(np.abs(ref)) - np.prod(np.abs(got))) < 1e-8


@settings(max_examples=200, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1, max_size=12))
def test_roots_of_product_of_linear_factors(zs):
    # distinct-ish roots from random points; residual bound must hold
    coeffs = np.array([1.0 + 0j])
    for z in zs:
        coeffs = np.convolve(coeffs, [-z, 1])
    if np.abs(coeffs).max() > 1e8:
        return
    try:
        roots = find_roots(list(coeffs), tol=1e-9)
    except RootFindingError:
        pytest.fail("no convergence on a product of linear factors")
    res = scaled_residuals(coeffs[None, :], np.array([roots]))
    assert res.max() <= 1e-9
    assert len(roots) == len(zs)


def test_default_tolerance():
    assert ROOT_TOL == 1e-12
    roots = find_roots(IntPolynomial(LEHMER))
    assert math.isclose(abs(np.prod(roots)), 1.0, rel_tol=1e-12)
    assert all(abs(cmath.polar(r)[0]) > 0 for r in roots)
