import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uefg import cyclo
from uefg.cyclo import (
    CycNum, CyclotomicOrderError, I, cyclotomic_polynomial, cyclotomic_polynomial_quotient,
    exp_sum, root_of_unity,
)
from uefg.expsums import gauss_sum_direct
from uefg.nt_kernel import euler_phi


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    # first order with a coefficient outside {-1, 0, 1}
    assert 2 in [abs(c) for c in cyclotomic_polynomial(105)]
    for m in range(1, 60):
        assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_mobius_product_matches_quotient_recursion():
    for m in range(1, 400):
        assert cyclotomic_polynomial(m) == cyclotomic_polynomial_quotient(m), m


def test_root_of_unity_examples():
    assert root_of_unity(4, 1).coeffs == (0, 1)
    assert root_of_unity(4, 1) == I
    assert root_of_unity(7, 0) == 1
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == -1
    assert root_of_unity(6, 9) == root_of_unity(6, 3)


def test_arithmetic_examples():
    x = root_of_unity(7, 2) + 3
    assert x + 0 == x
    assert root_of_unity(5, 1) * root_of_unity(5, 4) == 1
    assert (1 + I) ** 2 == 2 * I
    assert -x + x == 0
    assert (x / 3) * 3 == x
    assert x.scalar_mul(Fraction(1, 2)) == x / 2
    with pytest.raises(ZeroDivisionError):
        x / 0


def test_as_integer():
    assert cyclo.as_integer(CycNum.from_rational(7)) == 7
    assert cyclo.as_integer(root_of_unity(3, 1)) is None
    assert cyclo.as_integer(CycNum.from_rational(Fraction(1, 2))) is None
    assert gauss_sum_direct(3, 1) ** 2 == -3
    assert (gauss_sum_direct(3, 1) ** 2).as_integer() == -3


def test_approx_complex():
    assert cyclo.approx_complex(CycNum.from_rational(1)) == 1
    assert abs(root_of_unity(4, 1).approx_complex() - 1j) < 1e-12
    assert abs(gauss_sum_direct(5, 1).approx_complex() - 5 ** 0.5) < 1e-9


def test_sum_of_all_roots():
    assert exp_sum(1, [0]) == 1
    for m in range(2, 80):
        assert sum((root_of_unity(m, j) for j in range(m)), CycNum.zero(m)) == 0
        assert exp_sum(m, range(m)) == 0


def cycnums(order):
    return st.lists(st.integers(-5, 5), min_size=order, max_size=order).map(
        lambda cs: CycNum.from_counts(order, cs))


@st.composite
def triples(draw):
    m = draw(st.sampled_from([3, 4, 5, 8, 9, 12, 15]))
    orders = [draw(st.sampled_from([m, m, 2 * m, 1])) for _ in range(3)]
    return tuple(draw(cycnums(o)) for o in orders)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(cycnums(12))
def test_exact_and_numeric_views_agree(x):
    z = x.approx_complex()
    direct = sum(c * cmath.exp(2j * cmath.pi * k / 12) for k, c in enumerate(x.coeffs))
    assert abs(z - direct) < 1e-9
    n = x.as_integer()
    if n is not None:
        assert abs(z - n) < 1e-9


@settings(max_examples=40, deadline=None)
@given(cycnums(6), cycnums(10))
def test_embedding_does_not_change_values(a, b):
    s = a + b
    assert s.order == 30
    assert a.embed(60) + b.embed(60) == s
    assert (a.embed(60) + b.embed(60)).restrict(30).coeffs == s.coeffs
    assert hash(a.embed(60)) == hash(a)


def test_restrict_rejects_values_outside_subfield():
    with pytest.raises(ValueError):
        root_of_unity(8, 1).restrict(4)
    assert (root_of_unity(8, 1) ** 2).restrict(4) == I


def test_galois_conjugation():
    z = root_of_unity(7, 1)
    assert z.conjugate() == root_of_unity(7, 6)
    assert (z * z.conjugate()) == 1
    assert z.galois(3) == root_of_unity(7, 3)


def test_json_round_trip():
    x = (root_of_unity(9, 2) * 3 - root_of_unity(9, 4)) / 7
    assert CycNum.from_json(x.to_json()) == x
    assert str(CycNum.from_rational(5)) == "5"


def test_order_cap():
    old = cyclo.max_order()
    try:
        cyclo.set_max_order(10)
        with pytest.raises(CyclotomicOrderError):
            root_of_unity(11, 1)
    finally:
        cyclo.set_max_order(old)
