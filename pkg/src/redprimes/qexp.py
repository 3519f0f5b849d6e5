"""Truncated q-expansions with weight/level/character metadata.

Coefficients are exact cyclotomic numbers in Q(zeta_L) where L is the lcm
of the character orders involved, fixed per series. Every operator records
its output precision; reading past the stored precision raises
PrecisionError rather than zero-filling.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from .characters import DirichletChar
from .cyclo import CycNum, _power_table
from .intmath import euler_phi
from .specialvals import gen_bernoulli


class PrecisionError(Exception):
    """A coefficient past the stored precision was requested."""


class QExp:
    __slots__ = ("weight", "level", "char", "co", "prec", "quasi", "modular")

    def __init__(self, weight, level, char: DirichletChar, co, prec: int,
                 quasi: bool = False, modular: bool = True):
        if char.modulus != level:
            char = char.induce(level)
        self.weight = weight
        self.level = level
        self.char = char
        self.co = list(co)
        self.prec = prec
        self.quasi = quasi
        self.modular = modular

    def coeff(self, n: int) -> CycNum:
        if n >= self.prec:
            raise PrecisionError(f"coefficient {n} beyond stored precision {self.prec}")
        return self.co[n]

    def zorder(self) -> int:
        for c in self.co:
            if isinstance(c, CycNum):
                return c.n
        return 1

    def __repr__(self):
        head = ", ".join(f"a{i}={c!r}" for i, c in enumerate(self.co[:4]))
        return (f"QExp(k={self.weight}, N={self.level}, chi={self.char.label()}, "
                f"prec={self.prec}, {head}...)")


@lru_cache(maxsize=None)
def _zeta_coord_rows(L: int) -> tuple:
    """Integer coordinate rows of zeta_L^e for 0 <= e < L."""
    phi = euler_phi(L)
    rows = []
    for e in range(L):
        rows.append(tuple(CycNum.zeta_power(L, e).co))
    return tuple(rows)


def _char_exp_table(chi: DirichletChar) -> list:
    q = chi.modulus
    o = chi.order()
    out = [None] * max(q, 1)
    for r in range(max(q, 1)):
        x = chi.value_exponent(r) if q > 1 else mpq(0)
        out[r] = None if x is None else int(x * o)
    return out


def eisenstein(k: int, chi1: DirichletChar, chi2: DirichletChar, prec: int) -> QExp:
    """E_k^{chi1,chi2}: a_n = sum_{0<d|n} d^{k-1} chi1(n/d) chi2(d), constant
    term by the classical case split."""
    if k < 1:
        raise ValueError("weight must be positive")
    parity = chi1.parity() * chi2.parity()
    if parity != (-1) ** k:
        raise ValueError("character parity does not match the weight")
    both_trivial = chi1.is_trivial() and chi2.is_trivial()
    if k == 2 and both_trivial:
        from .intmath import is_prime

        if not (chi1.modulus == 1 and is_prime(chi2.modulus)):
            raise ValueError(
                "k = 2 with both characters trivial requires modulus(chi1) = 1 "
                "and prime modulus(chi2); use e2() for the quasi-modular series")
    elif not (chi1.is_primitive() and chi2.is_primitive()):
        raise ValueError("characters must be primitive outside the k = 2 trivial branch")

    q1, q2 = chi1.modulus, chi2.modulus
    o1, o2 = chi1.order(), chi2.order()
    L = o1 * o2 // gcd(o1, o2)
    phi = euler_phi(L)
    t1 = _char_exp_table(chi1)
    t2 = _char_exp_table(chi2)
    rows = _zeta_coord_rows(L)
    buckets = [[0] * L for _ in range(prec)]
    for d in range(1, prec):
        e2 = t2[d % q2] if q2 > 1 else 0
        if e2 is None:
            continue
        dk = d ** (k - 1)
        mult1 = L // o1
        mult2 = L // o2
        for n in range(d, prec, d):
            m = n // d
            e1 = t1[m % q1] if q1 > 1 else 0
            if e1 is None:
                continue
            buckets[n][(e1 * mult1 + e2 * mult2) % L] += dk
    co = []
    for n in range(prec):
        acc = [mpq(0)] * phi
        for e, w in enumerate(buckets[n]):
            if w:
                row = rows[e]
                for i in range(phi):
                    acc[i] += w * row[i]
        co.append(CycNum(L, acc))
    # constant term per the classical case split
    if (k >= 2 and not chi1.is_trivial()) or (k == 1 and not chi1.is_trivial() and not chi2.is_trivial()):
        c0 = CycNum.from_rat(0).lift(L)
    elif k == 2 and both_trivial:
        c0 = CycNum.from_rat(mpq(q2 - 1, 24)).lift(L)
    else:
        prod = (chi1 * chi2).primitive_part()
        c0 = (gen_bernoulli(k, prod) * mpq(-1, 2 * k)).lift(L)
    if prec > 0:
        co[0] = c0
    return QExp(k, q1 * q2, (chi1 * chi2).primitive_part().induce(q1 * q2), co, prec)


def e2(prec: int) -> QExp:
    """The quasi-modular E_2 = -1/24 + sum sigma_1(n) q^n."""
    co = [CycNum.from_rat(0)] * prec
    if prec > 0:
        co[0] = CycNum.from_rat(mpq(-1, 24))
    for d in range(1, prec):
        for n in range(d, prec, d):
            co[n] = co[n] + d
    return QExp(2, 1, DirichletChar.trivial(1), co, prec, quasi=True, modular=False)


def classical_eisenstein(k: int, prec: int) -> QExp:
    """E_k for even k >= 4 (constant -B_k/2k, level 1)."""
    if k < 4 or k % 2:
        raise ValueError("classical Eisenstein series needs even k >= 4")
    triv = DirichletChar.trivial(1)
    return eisenstein(k, triv, triv, prec)


def scale(g: QExp, c) -> QExp:
    return QExp(g.weight, g.level, g.char, [x * c for x in g.co], g.prec,
                quasi=g.quasi, modular=g.modular)


def _combine(a: QExp, b: QExp, sign: int) -> QExp:
    if a.weight != b.weight:
        raise ValueError("weights differ")
    level = a.level * b.level // gcd(a.level, b.level)
    ca, cb = a.char.induce(level), b.char.induce(level)
    if ca != cb:
        raise ValueError("characters differ")
    prec = min(a.prec, b.prec)
    co = [a.co[n] + b.co[n] if sign > 0 else a.co[n] - b.co[n] for n in range(prec)]
    return QExp(a.weight, level, ca, co, prec,
                quasi=a.quasi or b.quasi, modular=a.modular and b.modular)


def add(a: QExp, b: QExp) -> QExp:
    return _combine(a, b, +1)


def sub(a: QExp, b: QExp) -> QExp:
    return _combine(a, b, -1)


def mul(a: QExp, b: QExp) -> QExp:
    """Series product; weight adds, level is the lcm, characters multiply."""
    prec = min(a.prec, b.prec)
    co = [CycNum.from_rat(0)] * prec
    for i in range(prec):
        x = a.co[i]
        if isinstance(x, CycNum) and x.is_zero():
            continue
        for j in range(prec - i):
            y = b.co[j]
            if isinstance(y, CycNum) and y.is_zero():
                continue
            co[i + j] = co[i + j] + x * y
    level = a.level * b.level // gcd(a.level, b.level)
    char = (a.char * b.char).primitive_part().induce(level)
    return QExp(a.weight + b.weight, level, char, co, prec,
                quasi=a.quasi or b.quasi, modular=a.modular and b.modular)


def theta_naive(g: QExp) -> QExp:
    """q d/dq: multiply a_n by n. The output is not modular."""
    co = [g.co[n] * n for n in range(g.prec)]
    return QExp(g.weight + 2, g.level, g.char, co, g.prec, quasi=g.quasi, modular=False)


def v_op(n: int, g: QExp) -> QExp:
    """V_n: a_m -> a_{m/n}; level multiplied by n."""
    if n < 1:
        raise ValueError("n must be positive")
    prec = g.prec * n
    co = [CycNum.from_rat(0)] * prec
    for m in range(g.prec):
        co[m * n] = g.co[m]
    return QExp(g.weight, g.level * n, g.char.induce(g.level * n), co, prec,
                quasi=g.quasi, modular=g.modular)


def u_op(p: int, g: QExp) -> QExp:
    """U_p: a_m -> a_{mp}; precision divides by p (rounding down)."""
    prec = g.prec // p
    if prec < 1:
        raise PrecisionError(f"U_{p} needs precision at least {p}")
    co = [g.co[m * p] for m in range(prec)]
    return QExp(g.weight, g.level, g.char, co, prec, quasi=g.quasi, modular=g.modular)


def s_op(p: int, b, g: QExp) -> QExp:
    """S_p(b) = Id - b V_p; level gains a factor p exactly when b != 0."""
    if isinstance(b, (int, type(mpq(0)))):
        b = CycNum.from_rat(mpq(b))
    if b.is_zero():
        return g
    co = list(g.co)
    for m in range(0, g.prec, p):
        co[m] = co[m] - b * g.co[m // p]
    level = g.level * p
    return QExp(g.weight, level, g.char.induce(level), co, g.prec,
                quasi=g.quasi, modular=g.modular)


def hecke_tp(p: int, g: QExp) -> QExp:
    """T_p = U_p + p^{k-1} eps(p) V_p on the space of level g.level."""
    up = u_op(p, g)
    epsp = g.char(p)
    if epsp.is_zero():
        return up
    factor = epsp * (p ** (g.weight - 1))
    prec = up.prec
    co = list(up.co)
    for m in range(0, prec, p):
        co[m] = co[m] + factor * g.co[m // p]
    return QExp(g.weight, g.level, g.char, co, prec, quasi=g.quasi, modular=g.modular)


def rankin_cohen(g: QExp, h: QExp) -> QExp:
    """[g, h] = k_g g theta(h) - k_h h theta(g); weight k_g + k_h + 2."""
    left = scale(mul(g, theta_naive(h)), g.weight)
    right = scale(mul(h, theta_naive(g)), h.weight)
    out = sub(left, right)
    out.modular = g.modular and h.modular
    out.weight = g.weight + h.weight + 2
    return out


def modify(g: QExp, P, b: dict) -> QExp:
    """g_P^b: for each p in P force a_p = b_p per the eigenform surgery menu.

    For ordinary eigenforms b_p must be a_p(g), a Hecke root, or 0; for the
    quasi-modular E_2 the menu is b_p in {1, 0} (S_p(p), then S_p(1))."""
    out = g
    for p in sorted(P):
        bp = b[p]
        if isinstance(bp, (int, type(mpq(0)))):
            bp = CycNum.from_rat(mpq(bp))
        if out.quasi:
            r = bp.as_rat()
            if r == 1:
                out = s_op(p, p, out)
            elif r == 0:
                out = s_op(p, 1, s_op(p, p, out))
            else:
                raise ValueError(f"E_2 surgery allows b_p in {{0, 1}}, got {bp!r}")
            out.quasi = False
            out.modular = True
            continue
        ap = out.coeff(p)
        epsp = out.char(p)
        pk = p ** (out.weight - 1)
        if bp == ap:
            continue
        # root of X^2 - a_p X + p^{k-1} eps(p)?
        if (bp * bp - ap * bp + epsp * pk).is_zero():
            out = s_op(p, ap - bp, out)
        elif bp.is_zero():
            # S_p(alpha) o S_p(beta) = Id - a_p V_p + p^{k-1} eps(p) V_p^2
            vp = v_op(p, out)
            vpp = v_op(p, vp)
            t = sub(out, scale(vp, ap))
            factor = epsp * pk
            if not factor.is_zero():
                t = add(t, scale(vpp, factor))
            out = t
        else:
            raise ValueError(
                f"b_{p} = {bp!r} is neither a_p, a Hecke root, nor 0 (contract violation)")
    return out


def modified_constant(k: int, eps1: DirichletChar, eps2: DirichletChar, P, b: dict) -> CycNum:
    """Constant coefficient of (E_k^{eps1,eps2})_P^b in closed form."""
    if not eps1.is_trivial():
        return CycNum.from_rat(0)
    if k == 2 and eps2.is_trivial() and all(
            (bp == 1 if isinstance(bp, int) else CycNum.from_rat(1) == bp)
            for bp in b.values()):
        raise ValueError("all-ones surgery is excluded for (2, triv, triv)")
    out = gen_bernoulli(k, eps2.primitive_part()) * mpq(-1, 2 * k)
    for p in sorted(P):
        bp = b[p]
        if isinstance(bp, (int, type(mpq(0)))):
            bp = CycNum.from_rat(mpq(bp))
        out = out * (bp * (bp - eps2(p) * p ** (k - 1)))
    return out


def eq_to_prec(a: QExp, b: QExp, prec: int) -> bool:
    if a.prec < prec or b.prec < prec:
        raise PrecisionError("comparison beyond stored precision")
    return all(a.co[n] == b.co[n] for n in range(prec))
