##
## scalar field and polynomial ring tests
##

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sl2factor.exact_algebra import (
    EC_I, EC_ONE, EC_ZERO, ExactComplex, MultiPoly, compile_approx,
    format_exact, is_exact_scalar, parse_exact, poly_diff, poly_embed,
    poly_equal, poly_eval, poly_from_json, poly_ring_op, poly_to_json,
    scalar_from_json, scalar_to_json)
from sl2factor.errors import PreconditionError

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
exacts = st.builds(ExactComplex, fractions, fractions)


def test_construction_and_coerce():
    assert ExactComplex(3).re == 3
    assert ExactComplex.coerce(Fraction(1, 2)) == ExactComplex(Fraction(1, 2))
    assert ExactComplex.coerce(7) == ExactComplex(7)
    x = ExactComplex(1, 2)
    assert ExactComplex.coerce(x) is x
    assert EC_ZERO.is_zero and not EC_ONE.is_zero
    assert complex(EC_I) == 1j


def test_immutable():
    with pytest.raises(AttributeError):
        ExactComplex(1).re = Fraction(2)


@given(exacts, exacts, exacts)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + EC_ZERO == a
    assert a * EC_ONE == a
    assert a - a == EC_ZERO


@given(exacts, exacts)
def test_division_inverts(a, b):
    if b.is_zero:
        with pytest.raises(ZeroDivisionError):
            a / b
    else:
        assert (a / b) * b == a


@given(exacts)
def test_parse_format_roundtrip(a):
    assert parse_exact(format_exact(a)) == a


def test_parse_forms():
    assert parse_exact("5") == ExactComplex(5)
    assert parse_exact("-3/4") == ExactComplex(Fraction(-3, 4))
    assert parse_exact("1/2+5/3 i") == ExactComplex(Fraction(1, 2),
                                                    Fraction(5, 3))
    assert parse_exact("i") == EC_I
    with pytest.raises(PreconditionError):
        parse_exact("0.5")


def test_powers():
    a = ExactComplex(Fraction(2, 3), Fraction(-1, 5))
    assert a ** 0 == EC_ONE
    assert a ** 3 == a * a * a
    assert a ** -2 == EC_ONE / (a * a)
    assert EC_I ** 2 == ExactComplex(-1)


def test_scalar_json():
    assert scalar_to_json(ExactComplex(Fraction(1, 2))) == "1/2"
    assert scalar_from_json("1/2") == ExactComplex(Fraction(1, 2))
    assert scalar_from_json([1.5, 0.5]) == 1.5 + 0.5j
    assert scalar_from_json(3) == ExactComplex(3)
    back = scalar_from_json(scalar_to_json(2.5 + 1j))
    assert back == 2.5 + 1j


def test_is_exact_scalar():
    assert is_exact_scalar(ExactComplex(1))
    assert is_exact_scalar(Fraction(1, 2))
    assert is_exact_scalar(4)
    assert not is_exact_scalar(0.5)
    assert not is_exact_scalar(1 + 2j)


## polynomials

X = MultiPoly.variable(2, 0)
Y = MultiPoly.variable(2, 1)


def test_poly_basics():
    one = MultiPoly.one(2)
    assert (X + Y) * (X - Y) == X * X - Y * Y
    assert (X + one) ** 2 == X * X + 2 * X + one
    assert MultiPoly.zero(2).is_zero
    assert (X - X).is_zero
    assert X.total_degree() == 1
    assert ((X * Y) ** 3).total_degree() == 6


def test_poly_canonical_sorted():
    p = X * Y ** 2 + X + Y + MultiPoly.one(2)
    exps = [e for e, _ in p.sorted_terms()]
    # graded lexicographic, highest first
    assert exps == [(1, 2), (1, 0), (0, 1), (0, 0)]


def test_poly_diff():
    p = X ** 3 * Y + 2 * Y
    assert p.diff(0) == 3 * X * X * Y
    assert p.diff(1) == X ** 3 + MultiPoly.constant(2, 2)
    assert poly_diff(p, 1) == p.diff(1)


def test_poly_eval_exact_and_approx():
    p = X * X + Y
    val = p.eval((ExactComplex(2), ExactComplex(Fraction(1, 2))))
    assert val == ExactComplex(Fraction(9, 2))
    approx = p.eval((2.0, 0.5))
    assert abs(approx - 4.5) < 1e-14
    fn = compile_approx(p)
    assert abs(fn((2.0, 0.5)) - 4.5) < 1e-14


@given(st.lists(st.tuples(fractions, fractions), min_size=1, max_size=5))
def test_poly_eval_matches_horner_free_sum(coeffs):
    # sum of c_k x^k evaluated exactly equals the direct sum
    p = MultiPoly.zero(1)
    x = MultiPoly.variable(1, 0)
    for k, (re, im) in enumerate(coeffs):
        p = p + MultiPoly.constant(1, ExactComplex(re, im)) * x ** k
    at = ExactComplex(Fraction(3, 7), Fraction(-1, 2))
    direct = sum((ExactComplex(re, im) * at ** k
                  for k, (re, im) in enumerate(coeffs)), EC_ZERO)
    assert p.eval((at,)) == direct


def test_poly_json_roundtrip():
    p = X * Y ** 2 - 3 * X + MultiPoly.constant(2, ExactComplex(0, 1))
    assert poly_from_json(poly_to_json(p)) == p


def test_poly_embed():
    p = X + 2 * Y
    q = poly_embed(p, 4, offset=1)
    v = [MultiPoly.variable(4, i) for i in range(4)]
    assert q == v[1] + 2 * v[2]


def test_poly_ring_op_and_equal():
    assert poly_ring_op("add", X, Y) == X + Y
    assert poly_ring_op("mul", X, Y) == X * Y
    assert poly_equal(X - X, MultiPoly.zero(2))
    assert poly_eval(X * Y, (2.0, 3.0)) == pytest.approx(6.0)


def test_poly_var_count_mismatch_rejected():
    with pytest.raises(PreconditionError):
        X + MultiPoly.variable(3, 0)


def test_poly_to_str():
    p = X * Y + MultiPoly.one(2)
    s = p.to_str(("z2", "z3"))
    assert "z2" in s and "z3" in s
