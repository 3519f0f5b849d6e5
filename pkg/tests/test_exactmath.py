"""Exact-arithmetic substrate: cyclotomic polynomials, factorization over
F_ell, cyclotomic norms, number-field characteristic polynomials."""

import random

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from redprimes import poly
from redprimes.cyclo import CycNum, cyc_norm, cyclotomic_poly
from redprimes.intmath import euler_phi
from redprimes.nfield import NFElem, NumberField, nf_charpoly
from redprimes.poly import QQ, pdivmod, pmul, poly_factor_mod, ptrim


def test_cyclotomic_small_values():
    assert cyclotomic_poly(1) == (mpq(-1), mpq(1))
    assert cyclotomic_poly(6) == (mpq(1), mpq(-1), mpq(1))
    assert cyclotomic_poly(4) == (mpq(1), mpq(0), mpq(1))


def test_cyclotomic_product_identity():
    for n in range(1, 61):
        prod = (mpq(1),)
        from redprimes.intmath import divisors
        for d in divisors(n):
            prod = pmul(QQ, prod, cyclotomic_poly(d))
        xn1 = tuple([mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)])
        assert prod == xn1
        assert len(cyclotomic_poly(n)) == euler_phi(n) + 1


def test_factor_mod_paper_cases():
    # the quartic field's splitting at 7, and inertia of t^2-t+1 at 2
    facs = poly_factor_mod([4, 0, 2, 0, 1], 7)
    assert sorted(f for f, _ in facs) == [(1, 1), (2, 1), (5, 1), (6, 1)]
    facs = poly_factor_mod([1, -1, 1], 2)
    assert facs == [((1, 1, 1), 1)]
    assert poly_factor_mod([-1, 1], 5) == [((4, 1), 1)]


def test_factor_mod_nonunit_leading():
    import pytest

    with pytest.raises(ValueError):
        poly_factor_mod([1, 5], 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.lists(st.integers(-6, 6), min_size=2, max_size=13))
def test_factor_mod_remultiplies(seed, coeffs):
    ell = [2, 3, 5, 7, 13][seed]
    a = ptrim([c % ell for c in coeffs])
    if len(a) < 2:
        return
    F = poly.PrimeField(ell)
    prod = (a[-1] % ell,)
    for fac, mult in poly.factor_poly(F, a):
        assert poly.is_irreducible(F, fac)
        for _ in range(mult):
            prod = pmul(F, prod, fac)
    assert prod == a


def test_cyc_norm_root_of_unity_cases():
    one9 = CycNum.from_rat(1).lift(9)
    assert cyc_norm(one9 - CycNum.zeta(9)) == 3
    one6 = CycNum.from_rat(1).lift(6)
    assert cyc_norm(one6 - CycNum.zeta(6)) == 1
    assert cyc_norm(CycNum.from_rat(0).lift(12)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 20),
       st.lists(st.integers(-4, 4), min_size=1, max_size=8),
       st.lists(st.integers(-4, 4), min_size=1, max_size=8))
def test_cyc_norm_multiplicative(n, ca, cb):
    phi = euler_phi(n)
    x = CycNum(n, (ca * phi)[:phi])
    y = CycNum(n, (cb * phi)[:phi])
    assert cyc_norm(x * y) == cyc_norm(x) * cyc_norm(y)


def test_nf_charpoly_examples():
    K = NumberField([1, -1, 1], var="t")
    theta = K.gen()
    assert nf_charpoly(theta) == (mpq(1), mpq(-1), mpq(1))
    cp = nf_charpoly(theta * 12)
    assert cp == (mpq(144), mpq(-12), mpq(1))
    assert (theta * 12).norm() == 144
    cp = nf_charpoly(K(mpq(5, 2)))
    expect = pmul(QQ, (mpq(-5, 2), mpq(1)), (mpq(-5, 2), mpq(1)))
    assert cp == expect


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_charpoly_cayley_hamilton(which, co):
    K = [NumberField([1, -1, 1], var="t"),
         NumberField([4, 0, 2, 0, 1],
                     [[1, 0, 0, 0], [0, 1, 0, 0],
                      [0, 0, mpq(1, 2), 0], [0, 0, 0, mpq(1, 2)]], var="x"),
         NumberField([2, 0, -1, 0, 0, 0, 1], var="u")][which]
    x = K((co * K.degree)[:K.degree])
    cp = nf_charpoly(x)
    acc = K(0)
    power = K(1)
    for c in cp:
        acc = acc + power * c
        power = power * x
    assert acc.is_zero()


def test_rationals_normalized_on_construction():
    q = mpq(6, -4)
    assert q.denominator == 2 and q.numerator == -3


def test_inverse_roundtrip():
    x = CycNum(12, [1, 2, 0, -1])
    assert (x * x.inv()) == CycNum.from_rat(1).lift(12)
    K = NumberField([4, 0, 2, 0, 1],
                    [[1, 0, 0, 0], [0, 1, 0, 0],
                     [0, 0, mpq(1, 2), 0], [0, 0, 0, mpq(1, 2)]], var="x")
    y = K([mpq(1, 2), 3, 0, -2])
    assert y * y.inv() == K(1)
