from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

import pytest

from projqc.exactpoly import IntPoly, TruncSeries, binom, format_terms, series_expand

V = ("x", "y", "z")
X, Y, Z = sympy.symbols("x y z")

exps = st.tuples(*[st.integers(0, 4)] * 3)
polys = st.dictionaries(exps, st.integers(-10**20, 10**20), max_size=6).map(lambda d: IntPoly(V, d))


def to_sympy(p: IntPoly):
    return sum((c * X**a * Y**b * Z**e for (a, b, e), c in p.items()), sympy.Integer(0))


def from_sympy(expr) -> IntPoly:
    poly = sympy.Poly(sympy.expand(expr), X, Y, Z)
    return IntPoly(V, {m: int(c) for m, c in poly.terms()})


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == 0


@given(polys, polys)
@settings(max_examples=60)
def test_product_matches_sympy(a, b):
    assert a * b == from_sympy(to_sympy(a) * to_sympy(b))
    assert a + b == from_sympy(to_sympy(a) + to_sympy(b))


@given(polys, st.integers(0, 3))
@settings(max_examples=40)
def test_power_matches_sympy(a, k):
    assert a ** k == from_sympy(to_sympy(a) ** k)


@given(polys, st.integers(-3, 3))
def test_subs_matches_sympy(a, v):
    assert a.subs("y", v) == from_sympy(to_sympy(a).subs(Y, v))


def test_no_stored_zeros_and_big_integers():
    x, y, _ = IntPoly.gens(V)
    p = (x + y) * (x - y) - x**2
    assert p.terms == {(0, 2, 0): -1}
    big = IntPoly.const(V, 10**40) * IntPoly.const(V, 10**40)
    assert big.coeff((0, 0, 0)) == 10**80


def test_rejects_non_integer_and_negative_exponents():
    with pytest.raises((TypeError, ValueError)):
        IntPoly(V, {(0, 0, 0): 1.5})
    with pytest.raises(ValueError):
        IntPoly(V, {(-1, 0, 0): 1})


def test_helpers():
    x, y, z = IntPoly.gens(V)
    p = 3 * x**2 * z + y - 4 * z**3
    assert p.coefficient_of("z", 1) == 3 * x**2
    assert p.truncate("z", 2) == 3 * x**2 * z + y
    assert p.swap("x", "y") == 3 * y**2 * z + x - 4 * z**3
    assert p.homogeneous_part(3) == 3 * x**2 * z - 4 * z**3
    assert p.degree() == 3 and p.degree_in("x") == 2
    assert not p.is_homogeneous() and (x * y + z**2).is_homogeneous()


def test_lexicographic_rendering():
    h, xi = IntPoly.gens(("h", "xi"))
    p = 3 * h * xi - 2 * h**2 + xi**2 - 1
    assert format_terms(p.items(), ("h", "ξ")) == "-1 + ξ^2 + 3·h·ξ - 2·h^2"
    assert format_terms([], ("h", "ξ")) == "0"


@pytest.mark.parametrize("a,k,want", [(5, 2, 10), (7, 0, 1), (-3, 0, 1), (-2, 3, -4), (3, 5, 0),
                                      (-1, 4, 1)])
def test_binom(a, k, want):
    assert binom(a, k) == want


def test_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        binom(4, -1)


@given(st.integers(-30, 30), st.integers(0, 12))
def test_binom_matches_falling_factorial(a, k):
    assert binom(a, k) == int(sympy.ff(a, k) / sympy.factorial(k))


@pytest.mark.parametrize("factors,order,want", [
    ([(1, -2)], 2, [1, 2, 3]),
    ([(2, 1)], 1, [1, -2]),
    ([(3, 1), (1, -1)], 2, [1, -2, -2]),
])
def test_series_examples(factors, order, want):
    assert series_expand(factors, order).ints() == want


factor_lists = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), max_size=4)


@given(factor_lists, st.integers(0, 8), st.integers(0, 8))
def test_series_truncation_is_consistent(factors, n, m):
    lo, hi = sorted((n, m))
    assert series_expand(factors, hi).truncate(lo) == series_expand(factors, lo)


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(0, 4)), max_size=4))
def test_series_matches_polynomial_expansion(factors):
    t = sympy.Symbol("t")
    expr = sympy.Integer(1)
    for m, e in factors:
        expr *= (1 - m * t) ** e
    poly = sympy.Poly(sympy.expand(expr), t)
    deg = max(poly.degree(), 0)
    want = [int(poly.coeff_monomial(t**i)) for i in range(deg + 1)]
    assert series_expand(factors, deg).ints() == want


@given(factor_lists, st.integers(0, 8))
def test_series_matches_sympy_series(factors, order):
    t = sympy.Symbol("t")
    expr = sympy.Integer(1)
    for m, e in factors:
        expr *= (1 - m * t) ** e
    ser = sympy.series(expr, t, 0, order + 1).removeO()
    want = [int(sympy.Poly(ser, t).coeff_monomial(t**i)) if ser != 0 else 0 for i in range(order + 1)]
    assert series_expand(factors, order).ints() == want


def test_integral_flag_asserts():
    with pytest.raises(AssertionError):
        TruncSeries([1, Fraction(1, 2)], integral=True)
    assert TruncSeries([1, Fraction(1, 2)]).coeff(1) == Fraction(1, 2)
