"""Operator algebra on truncated q-expansions."""

import pytest
from gmpy2 import mpq

from redprimes.characters import DirichletChar, enumerate_chars, primitive_chars
from redprimes.cyclo import CycNum
from redprimes.qexp import (PrecisionError, QExp, e2, eisenstein, eq_to_prec,
                            hecke_tp, modified_constant, modify, mul,
                            rankin_cohen, s_op, scale, sub, theta_naive, u_op,
                            v_op)

TRIV = DirichletChar.trivial(1)


def test_eisenstein_constants_and_coefficients():
    E4 = eisenstein(4, TRIV, TRIV, 20)
    assert E4.co[0].as_rat() == mpq(1, 240)
    assert E4.co[2].as_rat() == 9
    t5 = DirichletChar.trivial(5)
    E = eisenstein(2, TRIV, t5, 20)
    assert E.co[0].as_rat() == mpq(1, 6)
    assert E.level == 5
    e73 = DirichletChar.from_conrey(7, 3)
    E = eisenstein(3, TRIV, e73, 30)
    for p in (2, 3, 5, 11):
        expect = CycNum.from_rat(1) + e73(p) * p ** 2
        assert E.co[p] == expect


def test_eisenstein_preconditions():
    with pytest.raises(ValueError):
        eisenstein(3, TRIV, TRIV, 10)  # parity violation
    with pytest.raises(ValueError):
        eisenstein(2, TRIV, TRIV, 10)  # the quasi-modular case: use e2()
    with pytest.raises(ValueError):
        eisenstein(2, TRIV, DirichletChar.trivial(6), 10)  # modulus not prime
    with pytest.raises(ValueError):
        eisenstein(4, TRIV, DirichletChar.trivial(9), 10)  # non-primitive


def test_e2_values():
    g = e2(10)
    assert g.co[0].as_rat() == mpq(-1, 24)
    assert g.co[1].as_rat() == 1
    assert g.co[6].as_rat() == 12
    assert g.quasi and not g.modular


def test_theta():
    one = QExp(0, 1, TRIV, [CycNum.from_rat(1)] + [CycNum.from_rat(0)] * 9, 10)
    assert all(c.is_zero() for c in theta_naive(one).co)
    tg = theta_naive(e2(10))
    assert tg.co[1].as_rat() == 1 and tg.co[2].as_rat() == 6
    # theta(V_2 g) = 2 V_2(theta g)
    g = eisenstein(4, TRIV, TRIV, 30)
    lhs = theta_naive(v_op(2, g))
    rhs = scale(v_op(2, theta_naive(g)), 2)
    assert eq_to_prec(lhs, rhs, 50)


def test_u_v_s_ops():
    e73 = DirichletChar.from_conrey(7, 3)
    g = eisenstein(3, TRIV, e73, 40)
    for p in (2, 3, 5):
        assert eq_to_prec(u_op(p, v_op(p, g)), g, 35)
    assert s_op(3, 0, g) is g
    b = CycNum.from_rat(5)
    sg = s_op(3, b, g)
    assert sg.level == g.level * 3
    assert sg.co[3] == g.co[3] - b * g.co[1]
    # a_p(S_p(b) g) = a_p(g) - b
    assert sg.co[3] == g.co[3] - b


def test_hecke_eigen_identity_grid():
    conductors = [1, 3, 4, 5, 7, 8, 9, 11, 12]
    prec = 100
    count = 0
    for c1 in conductors:
        for chi1 in primitive_chars(c1):
            for c2 in conductors:
                if c1 * c2 > 30:
                    continue
                for chi2 in primitive_chars(c2):
                    for k in range(1, 9):
                        if chi1.parity() * chi2.parity() != (-1) ** k:
                            continue
                        if k == 2 and chi1.is_trivial() and chi2.is_trivial():
                            continue
                        E = eisenstein(k, chi1, chi2, prec)
                        for p in (2, 3, 5, 7, 11, 13):
                            lam = chi1(p) + chi2(p) * p ** (k - 1)
                            TE = hecke_tp(p, E)
                            assert all(TE.co[n] == lam * E.co[n]
                                       for n in range(TE.prec)), (c1, c2, k, p)
                        count += 1
                        break  # one weight per character pair keeps this quick
    assert count > 20


def test_hecke_tp_on_vp():
    e73 = DirichletChar.from_conrey(7, 3)
    g = eisenstein(3, TRIV, e73, 100)
    p = 5
    lhs = hecke_tp(p, v_op(p, g))
    epsp = lhs.char(p)
    rhs_terms = sub(lhs, g if lhs.level == g.level else
                    QExp(g.weight, lhs.level, lhs.char, g.co, g.prec))
    # T_p V_p g = g + p^{k-1} eps(p) V_p^2 g
    vpp = v_op(p, v_op(p, g))
    expect = scale(QExp(g.weight, lhs.level, lhs.char,
                        vpp.co[: lhs.prec], lhs.prec), epsp * p ** (g.weight - 1))
    for n in range(min(lhs.prec, 50)):
        want = g.co[n] + expect.co[n]
        assert lhs.co[n] == want


def test_hecke_zero():
    z = QExp(4, 1, TRIV, [CycNum.from_rat(0)] * 20, 20)
    assert all(c.is_zero() for c in hecke_tp(3, z).co)


def test_rankin_cohen():
    E4 = eisenstein(4, TRIV, TRIV, 12)
    E6 = eisenstein(6, TRIV, TRIV, 12)
    assert all(c.is_zero() for c in rankin_cohen(E4, E4).co)
    rc = rankin_cohen(E4, E6)
    assert rc.weight == 12
    assert rc.co[1].as_rat() == mpq(1, 35)
    # antisymmetry at equal weights, bilinearity
    f, g = E4, eisenstein(4, TRIV, TRIV, 12)
    ab = rankin_cohen(f, scale(g, 3))
    ba = rankin_cohen(scale(g, 3), f)
    assert all((ab.co[n] + ba.co[n]).is_zero() for n in range(ab.prec))
    lhs = rankin_cohen(E4, sub(scale(E6, 2), E6))
    rhs = rankin_cohen(E4, E6)
    assert eq_to_prec(lhs, rhs, 10)


def test_modify_e2():
    m1 = modify(e2(60), [3], {3: 1})
    assert m1.co[3].as_rat() == 1
    assert m1.co[5].as_rat() == 6
    assert not m1.quasi and m1.modular
    m0 = modify(e2(60), [3], {3: 0})
    assert m0.co[3].as_rat() == 0 and m0.level == 9
    assert modify(e2(30), [], {}).quasi  # empty P leaves E_2 untouched
    with pytest.raises(ValueError):
        modify(e2(30), [3], {3: 7})


def test_modify_menu_and_recomposition():
    e73 = DirichletChar.from_conrey(7, 3)
    g = eisenstein(3, TRIV, e73, 200)
    # b_p = a_p: identity; b_p a Hecke root: S_p; b_p = 0: quadratic
    p = 2
    ap = g.co[p]
    assert modify(g, [p], {p: ap}) is g
    root = CycNum.from_rat(1)  # chi1(2) = 1 is a root of X^2 - a_2 X + 2^2 e73(2)
    assert (root * root - ap * root + e73(2) * 4).is_zero()
    m = modify(g, [p], {p: root})
    assert m.co[p] == root
    assert m.co[3] == g.co[3]
    mz = modify(g, [p], {p: CycNum.from_rat(0)})
    assert mz.co[p].is_zero()
    # brute recomposition: (1 - a_p V_p + p^{k-1} eps(p) V_p^2) g
    vp = v_op(p, g)
    vpp = v_op(p, vp)
    brute = sub(g, scale(QExp(g.weight, g.level * 4, g.char.induce(g.level * 4),
                              vp.co, vp.prec), ap))
    add_term = scale(QExp(g.weight, g.level * 4, g.char.induce(g.level * 4),
                          vpp.co[: g.prec], g.prec), e73(2) * 4)
    for n in range(200):
        want = g.co[n] - (ap * vp.co[n] if n % p == 0 else ap * vp.co[n])
        want = g.co[n] - ap * vp.co[n] + add_term.co[n]
        assert mz.co[n] == want


def test_modified_constant_vs_series():
    # sizes <= 2, conductors <= 8
    t5 = DirichletChar.trivial(5)
    cases = [
        (2, TRIV, DirichletChar.from_conrey(5, 2) ** 2),  # quadratic mod 5
        (3, TRIV, DirichletChar.from_conrey(7, 6)),
        (4, TRIV, TRIV),
    ]
    for k, c1, c2 in cases:
        c2 = c2.primitive_part()
        if c1.parity() * c2.parity() != (-1) ** k:
            continue
        E = eisenstein(k, c1, c2, 220)
        for P, b in ([(3,), {3: None}], [(2, 3), {2: None, 3: None}]):
            bb = {}
            ok = True
            for p in P:
                val = c1(p)
                bb[p] = val
                if val.is_zero():
                    ok = False
            if not ok:
                continue
            m = modify(E, list(P), bb)
            const = modified_constant(k, c1, c2, list(P), bb)
            assert m.co[0] == const, (k, P)
    # zero branches
    assert modified_constant(5, DirichletChar.from_conrey(7, 3), TRIV, [], {}).is_zero()
    assert modified_constant(4, TRIV, TRIV, [3], {3: 0}).is_zero()
    with pytest.raises(ValueError):
        modified_constant(2, TRIV, TRIV, [3], {3: 1})


def test_modified_constant_e2_branch():
    # S_p(p) E_2 = E_2^{triv, triv mod p}: constant (p-1)/24 via the formula
    for p in (3, 5, 7):
        m = modify(e2(50), [p], {p: 1})
        t_p = DirichletChar.trivial(p)
        direct = eisenstein(2, TRIV, t_p, 50)
        assert eq_to_prec(m, direct, 45)
        assert m.co[0].as_rat() == mpq(p - 1, 24)


def test_precision_is_hard_error():
    g = eisenstein(4, TRIV, TRIV, 10)
    with pytest.raises(PrecisionError):
        g.coeff(10)
    with pytest.raises(PrecisionError):
        u_op(11, g)
    with pytest.raises(PrecisionError):
        eq_to_prec(g, g, 11)
