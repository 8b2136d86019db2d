import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlercocycle.block2d import fourier_matrix_2d, named_block
from mahlercocycle.polynomial import IntPolynomial, cyclotomic_sum
from mahlercocycle.substitution import (
    BinarySubstitution,
    PeriodicClass,
    SubstitutionError,
    all_substitutions,
    borwein_polynomial,
    coincidence_polynomials,
    decompose,
    evaluate,
    fourier_matrix,
    is_primitive,
    parse_substitution,
    periodic_class,
    q_and_r,
    qr_polynomial,
    substitution_matrix,
)

TM = BinarySubstitution("01", "10")
PD = BinarySubstitution("01", "00")


@st.composite
def substitutions(draw, max_length=12):
    L = draw(st.integers(2, max_length))
    w = st.text("01", min_size=L, max_size=L)
    return BinarySubstitution(draw(w), draw(w))


def test_parse_and_text():
    s = parse_substitution(" 11010 , 00101 ")
    assert (s.w0, s.w1) == ("11010", "00101")
    assert s.to_text() == "11010,00101"


@pytest.mark.parametrize("text, msg", [
    ("01,1", "equal length"),
    ("0,1", "L >= 2"),
    ("012,100", "not a word"),
    ("01", "expected"),
])
def test_parse_rejects(text, msg):
    with pytest.raises(SubstitutionError, match=msg):
        parse_substitution(text)


def test_decompose_examples():
    d = decompose(TM)
    assert (d.Pa, d.Pb, d.P0, d.P1) == ({0}, {1}, set(), set())
    d = decompose(PD)
    assert (d.P0, d.Pb, d.Pa, d.P1) == ({0}, {1}, set(), set())
    d = decompose(BinarySubstitution("00", "11"))
    assert d.Pa == {0, 1} and not (d.P0 or d.P1 or d.Pb)


@pytest.mark.parametrize("s, matrix", [
    (TM, [[1, 1], [1, 1]]),
    (PD, [[1, 2], [1, 0]]),
    (BinarySubstitution("101", "000"), [[1, 3], [2, 0]]),
])
def test_substitution_matrix(s, matrix):
    assert substitution_matrix(s).tolist() == matrix


@pytest.mark.parametrize("s, expected", [
    (TM, True),
    (BinarySubstitution("000", "101"), False),
    (BinarySubstitution("101", "000"), True),
    (BinarySubstitution("011", "100"), True),
    (BinarySubstitution("01", "11"), False),
    (BinarySubstitution("00", "11"), False),
])
def test_primitivity(s, expected):
    assert is_primitive(s) is expected


def test_primitive_equals_some_power_positive():
    # 2x2 Wielandt bound: checking M^2 is the same as checking M^k for any k >= 2
    for s in all_substitutions(3):
        m = substitution_matrix(s)
        assert is_primitive(s) == bool((np.linalg.matrix_power(m, 6) > 0).all())


@pytest.mark.parametrize("s, cls", [
    (BinarySubstitution("01", "01"), PeriodicClass.EQUAL_WORDS),
    (BinarySubstitution("010", "101"), PeriodicClass.ALTERNATING),
    (BinarySubstitution("10101", "01010"), PeriodicClass.ALTERNATING),
    (TM, PeriodicClass.NONE),
    (PD, PeriodicClass.NONE),
])
def test_periodic_class(s, cls):
    assert periodic_class(s) is cls


def test_periodic_class_requires_primitivity():
    with pytest.raises(SubstitutionError, match="requires primitivity"):
        periodic_class(BinarySubstitution("000", "101"))


def test_fourier_matrix_examples():
    assert fourier_matrix(TM).entries == (({(0,)}, {(1,)}), ({(1,)}, {(0,)}))
    assert fourier_matrix(PD).entries == (({(0,)}, {(0,), (1,)}), ({(1,)}, set()))


@pytest.mark.parametrize("s, k, expected", [
    (TM, 0.0, [[1, 1], [1, 1]]),
    (TM, 0.5, [[1, -1], [-1, 1]]),
    (PD, 0.5, [[1, 0], [-1, 0]]),
    (PD, 0.25, [[1, 1 + 1j], [1j, 0]]),
])
def test_evaluate(s, k, expected):
    assert np.allclose(evaluate(fourier_matrix(s), k), expected, atol=1e-14)


def test_evaluate_batch_and_dim_check():
    F = fourier_matrix(TM)
    out = evaluate(F, np.linspace(0, 1, 7))
    assert out.shape == (7, 2, 2)
    assert evaluate(F, [0.1, 0.2]).shape == (2, 2, 2)
    F2 = fourier_matrix_2d(named_block("tm2d"))
    assert evaluate(F2, [[0.1, 0.2]] * 3).shape == (3, 2, 2)
    with pytest.raises(ValueError):
        evaluate(F2, [0.1, 0.2, 0.3])


@pytest.mark.parametrize("s, qr", [
    (TM, [1, -1]),
    (BinarySubstitution("11010", "00101"), [-1, -1, 1, -1, 1]),
    (BinarySubstitution("01", "01"), []),
    (BinarySubstitution("1001", "1100"), [0, 1, 0, -1]),
])
def test_qr_polynomial(s, qr):
    assert qr_polynomial(s).coeffs == tuple(qr)


def test_borwein_polynomial_strips_monomial():
    assert borwein_polynomial(BinarySubstitution("1001", "1100")).coeffs == (1, 0, -1)


@settings(max_examples=300, deadline=None)
@given(substitutions())
def test_determinant_identity(s):
    F = fourier_matrix(s)
    k = np.random.default_rng(len(s.w0)).random(100)
    z = np.exp(2j * np.pi * k)
    det = np.linalg.det(evaluate(F, k))
    pl = cyclotomic_sum(s.length)
    qr = qr_polynomial(s)
    assert np.abs(det - pl(z) * qr(z)).max() < 1e-10


@settings(max_examples=300, deadline=None)
@given(substitutions())
def test_exact_determinant_grid(s):
    F = fourier_matrix(s)
    expected = cyclotomic_sum(s.length) * qr_polynomial(s)
    got = IntPolynomial(F.determinant_grid[:, 0].tolist())
    assert got == expected
    assert F.determinant_vanishes == (s.w0 == s.w1)


@settings(max_examples=300, deadline=None)
@given(substitutions())
def test_column_partition(s):
    s0, s1 = coincidence_polynomials(s)
    q, r = q_and_r(s)
    assert s0 + s1 + q + r == cyclotomic_sum(s.length)
    d = decompose(s)
    parts = [d.P0, d.P1, d.Pa, d.Pb]
    assert sum(len(p) for p in parts) == s.length
    assert set().union(*parts) == set(range(s.length))
    assert (d.Pa | d.Pb == set(range(s.length))) == s.is_bijective


@settings(max_examples=300, deadline=None)
@given(substitutions(), st.floats(0, 1, exclude_max=True))
def test_eigenvectors(s, k):
    B = evaluate(fourier_matrix(s), k)
    z = np.exp(2j * np.pi * k)
    ones, alt = np.array([1, 1]), np.array([1, -1])
    assert np.allclose(ones @ B, cyclotomic_sum(s.length)(z) * ones, atol=1e-12)
    assert np.allclose(B @ alt, qr_polynomial(s)(z) * alt, atol=1e-12)


@settings(max_examples=300, deadline=None)
@given(substitutions())
def test_qr_zero_iff_equal_words(s):
    assert qr_polynomial(s).is_zero == (s.w0 == s.w1)


@settings(max_examples=300, deadline=None)
@given(substitutions())
def test_fourier_at_zero_is_substitution_matrix(s):
    F = fourier_matrix(s)
    assert np.allclose(evaluate(F, 0.0), substitution_matrix(s))
    col_sizes = [sum(len(F.entries[i][j]) for i in range(2)) for j in range(2)]
    assert col_sizes == [s.length, s.length]


def test_alternating_relation():
    for m in range(1, 5):
        u = "01" * m + "0"
        v = "10" * m + "1"
        s = BinarySubstitution(u, v)
        q, r = q_and_r(s)
        rhs = (q + r).substitute_negated()
        assert (q - r) in (rhs, -rhs)


def test_swapped_negates_qr():
    s = BinarySubstitution("11010", "00101")
    assert qr_polynomial(s.swapped()) == -qr_polynomial(s)
