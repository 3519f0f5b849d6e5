"""Dirichlet characters: values, conductors, Conrey labels, CRT parts,
Teichmueller components, enumeration."""

from math import gcd

import pytest
from gmpy2 import mpq

from redprimes.characters import (DirichletChar, enumerate_chars,
                                  enumerate_primitive_pairs,
                                  teichmueller_component, unit_dlog,
                                  unit_group_structure)
from redprimes.cyclo import CycNum


def test_value_examples():
    e73 = DirichletChar.from_conrey(7, 3)
    assert e73(-1) == CycNum.from_rat(-1)
    assert e73.is_odd()
    triv = DirichletChar.trivial(1)
    for n in (-5, 0, 1, 17):
        assert triv(n) == CycNum.from_rat(1)
    chi4 = DirichletChar.from_conrey(4, 3)
    assert chi4(3) == CycNum.from_rat(-1)


def test_conductor_examples():
    assert DirichletChar.trivial(12).conductor() == 1
    assert DirichletChar.from_conrey(7, 3).conductor() == 7
    # a character mod 9 of order 3 is primitive
    chars9 = [c for c in enumerate_chars(9) if c.order() == 3]
    assert chars9 and all(c.conductor() == 9 for c in chars9)
    # brute-force check: the conductor is the minimal inducing modulus
    for q in (8, 9, 12, 15):
        for chi in enumerate_chars(q):
            c = chi.conductor()
            prim = chi.primitive_part()
            assert prim.modulus == c
            for n in range(q):
                if gcd(n, q) == 1:
                    assert chi.value_exponent(n) == prim.value_exponent(n % c if c > 1 else 1)


def test_p_part_examples():
    c12 = DirichletChar.from_conrey(12, 11)
    assert c12.p_part(2).modulus == 4 and not c12.p_part(2).is_trivial()
    e73 = DirichletChar.from_conrey(7, 3)
    assert e73.p_part(2).modulus == 1
    assert DirichletChar.trivial(45).p_part(3).is_trivial()


def test_p_part_reconstruction():
    for q in range(2, 101):
        for chi in enumerate_chars(q):
            prod = None
            for p in {p for p in range(2, q + 1) if q % p == 0 and all(p % r for r in range(2, p))}:
                part = chi.p_part(p)
                prod = part if prod is None else prod * part
            if prod is None:
                assert q == 1
            else:
                assert prod.induce(q) == chi


def test_multiplicativity_random():
    import random

    rng = random.Random(7)
    for q in (5, 8, 9, 35, 72, 100):
        for chi in enumerate_chars(q)[:6]:
            for _ in range(10):
                m, n = rng.randrange(1, 300), rng.randrange(1, 300)
                if gcd(m * n, q) != 1:
                    continue
                assert chi(m * n) == chi(m) * chi(n)


def test_orthogonality():
    for q in range(1, 61):
        for chi in enumerate_chars(q):
            s = CycNum.from_rat(0)
            for n in range(q if q > 1 else 1):
                s = s + chi(n)
            if chi.is_trivial():
                assert not s.is_zero()
            else:
                assert s.is_zero()


def test_teichmueller_examples():
    e73 = DirichletChar.from_conrey(7, 3)
    for ell, expect_label, expect_order in ((2, "7.4", 3), (3, "7.6", 2), (5, "7.3", 6)):
        chi2, chipow = teichmueller_component(e73, ell)
        assert chi2.label() == expect_label
        assert chi2.order() == expect_order
        ordp = chipow.order()
        while ordp % ell == 0:
            ordp //= ell
        assert ordp == 1
        assert chi2 * chipow == e73


def test_teichmueller_exactness_grid():
    for q in range(1, 61):
        for chi in enumerate_chars(q):
            for ell in (2, 3, 5, 7):
                chi2, chipow = teichmueller_component(chi, ell)
                assert gcd(chi2.order(), ell) == 1
                o = chipow.order()
                while o % ell == 0:
                    o //= ell
                assert o == 1
                assert chi2 * chipow == chi


def test_conrey_roundtrip():
    for q in (1, 2, 3, 4, 8, 9, 16, 24, 35, 40, 49):
        for chi in enumerate_chars(q):
            a = chi.conrey_index()
            assert gcd(a, q) == 1 or q == 1
            assert DirichletChar.from_conrey(q, a) == chi


def test_pair_enumeration_examples():
    e73 = DirichletChar.from_conrey(7, 3)
    pairs = enumerate_primitive_pairs(7, e73)
    assert [(a.label(), b.label()) for a, b in pairs] == [("1.1", "7.3"), ("7.3", "1.1")]
    t35 = DirichletChar.trivial(35)
    assert [(a.label(), b.label()) for a, b in enumerate_primitive_pairs(35, t35)] \
        == [("1.1", "1.1")]
    t1 = DirichletChar.trivial(1)
    assert [(a.label(), b.label()) for a, b in enumerate_primitive_pairs(1, t1)] \
        == [("1.1", "1.1")]


def test_pair_enumeration_swap_symmetry():
    for q, a in ((7, 3), (5, 2), (12, 11)):
        tgt = DirichletChar.from_conrey(q, a)
        for N in (q, 4 * q):
            pairs = {(x.label(), y.label())
                     for x, y in enumerate_primitive_pairs(N, tgt)}
            assert {(b, a) for a, b in pairs} == pairs


def test_unit_dlog_consistency():
    for q in (7, 8, 9, 35, 48):
        gens = unit_group_structure(q)
        for n in range(1, q):
            if gcd(n, q) != 1:
                continue
            exps = unit_dlog(q, n)
            acc = 1
            for (g, _), e in zip(gens, exps):
                acc = acc * pow(g, e, q) % q
            assert acc == n % q
