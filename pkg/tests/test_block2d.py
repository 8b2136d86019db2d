import numpy as np
import pytest

from mahlercocycle.block2d import (
    BlockSubstitution2D,
    column_sum_2d,
    fourier_matrix_2d,
    has_coincidence,
    is_bijective,
    is_primitive,
    named_block,
    parse_blocks,
    q_plus_r_2d,
    qr_polynomial_2d,
    substitution_matrix_2d,
)
from mahlercocycle.cocycle import birkhoff_logdet, eigen_exponent, lyapunov_max, lyapunov_min
from mahlercocycle.mahler import mahler_multivariate, parse_laurent
from mahlercocycle.substitution import SubstitutionError, evaluate

from conftest import ONE_X_Y_MEASURE

SQUIRAL_VALUE = 0.723909


def sets(*cells):
    return frozenset(cells)


def test_parse_named_and_text():
    b = parse_blocks("ba/ab;ab/ba")
    assert b == named_block("tm2d")
    assert b.shape == (2, 2)
    assert b.to_text() == "ba/ab;ab/ba"
    assert parse_blocks("10/01;01/10") == b


@pytest.mark.parametrize("text", ["ab/ba", "ab/b;ab/ba", "ax/ba;ab/ba", "a/b;b/a", "ab;ba"])
def test_parse_rejects(text):
    with pytest.raises(SubstitutionError):
        parse_blocks(text)


def test_non_square_blocks():
    b = parse_blocks("aab/bba;bba/aab")
    assert b.shape == (3, 2)
    assert fourier_matrix_2d(b).expansion == (3, 2)


def test_named_block_unknown():
    with pytest.raises(KeyError):
        named_block("penrose")


def test_tm2d_fourier_matrix():
    F = fourier_matrix_2d(named_block("tm2d"))
    diag, off = sets((0, 0), (1, 1)), sets((1, 0), (0, 1))
    assert F.entries == ((diag, off), (off, diag))


def test_ex62_fourier_matrix():
    F = fourier_matrix_2d(named_block("ex62"))
    assert F.entries[0][0] == sets((1, 1))
    assert F.entries[0][1] == sets((0, 0), (1, 0), (0, 1), (1, 1))
    assert F.entries[1][0] == sets((0, 0), (1, 0), (0, 1))
    assert F.entries[1][1] == frozenset()


@pytest.mark.parametrize("name", ["tm2d", "squiral", "ex62"])
def test_fourier_at_origin_is_count_matrix(name):
    b = named_block(name)
    F = fourier_matrix_2d(b)
    assert np.allclose(evaluate(F, [0.0, 0.0]), substitution_matrix_2d(b))
    assert is_primitive(b)


def test_tm2d_qr():
    qr = qr_polynomial_2d(named_block("tm2d"))
    assert qr == parse_laurent("1-x-y+x*y")
    assert abs(mahler_multivariate(qr).value) < 1e-3
    assert abs(mahler_multivariate(column_sum_2d(named_block("tm2d"))).value) < 1e-3


def test_squiral_qr_and_q_plus_r():
    b = named_block("squiral")
    expected = parse_laurent("x+y+x*y+x^2*y+x*y^2-1-x^2-y^2-x^2*y^2")
    assert qr_polynomial_2d(b) == expected
    assert q_plus_r_2d(b) == parse_laurent("1+x+x^2", dim=2) * parse_laurent("1+y+y^2")
    assert is_bijective(b)


def test_equal_blocks_have_zero_qr():
    b = parse_blocks("ab/ba;ab/ba")
    assert qr_polynomial_2d(b).is_zero


def test_right_eigenvector_for_bijective_blocks():
    rng = np.random.default_rng(2)
    for name in ("tm2d", "squiral"):
        b = named_block(name)
        F = fourier_matrix_2d(b)
        qr = qr_polynomial_2d(b)
        for k in rng.random((20, 2)):
            x, y = np.exp(2j * np.pi * k)
            B = evaluate(F, k)
            assert np.allclose(B @ [1, -1], qr.evaluate(x, y) * np.array([1, -1]), atol=1e-12)


def test_ex62_determinant():
    F = fourier_matrix_2d(named_block("ex62"))
    rng = np.random.default_rng(8)
    k = rng.random((100, 2))
    x, y = np.exp(2j * np.pi * k).T
    det = np.linalg.det(evaluate(F, k))
    assert np.abs(det + (1 + x) * (1 + y) * (1 + x + y)).max() < 1e-10


def test_ex62_coincidence():
    assert has_coincidence(named_block("ex62"))
    assert not has_coincidence(named_block("squiral"))


def test_squiral_exponent_both_routes():
    b = named_block("squiral")
    F = fourier_matrix_2d(b)
    assert abs(lyapunov_max(F).mean - SQUIRAL_VALUE) < 0.01
    assert abs(birkhoff_logdet(F).mean - SQUIRAL_VALUE) < 0.01
    assert abs(mahler_multivariate(qr_polynomial_2d(b)).value - SQUIRAL_VALUE) < 5e-3


def test_ex62_exponents():
    F = fourier_matrix_2d(named_block("ex62"))
    assert abs(lyapunov_max(F).mean - ONE_X_Y_MEASURE) < 0.01
    assert abs(birkhoff_logdet(F).mean - ONE_X_Y_MEASURE) < 0.01
    assert abs(lyapunov_min(F).mean) < 0.02
    # bottom exponent through the (1, 1) row eigenvector, whose eigenvalue is (1+x)(1+y)
    assert abs(eigen_exponent(F, [1, 1], side="row").mean) < 0.02


def test_tm2d_exponents_vanish():
    F = fourier_matrix_2d(named_block("tm2d"))
    assert abs(lyapunov_max(F).mean) < 0.02
    assert abs(lyapunov_min(F).mean) < 0.02


def test_block_validation():
    with pytest.raises(SubstitutionError, match="side length"):
        BlockSubstitution2D(((0, 1),), ((1, 0),))
    with pytest.raises(SubstitutionError, match="same shape"):
        BlockSubstitution2D(((0, 1), (1, 0)), ((0, 1, 0), (1, 0, 1)))
