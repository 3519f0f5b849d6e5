"""Dirichlet characters with exact root-of-unity values and Conrey labels.

A character mod q is stored by its exponents on a canonical generating set
of (Z/qZ)^x: one generator per odd prime power (the least primitive root
that stays primitive mod p^2), the class of 3 for 2^2, and the classes of
-1 and 5 for 2^a with a >= 3. The exponent at a generator is an exact
rational x in [0,1) with value e^{2 pi i x}; all derived data (order,
conductor, parity, Conrey index, products, powers, CRT parts) is computed
from these exponents, and comparisons are exact.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from .cyclo import CycNum
from .intmath import crt, euler_phi, factorint, primitive_root, valuation


@lru_cache(maxsize=None)
def _dlog_table(p: int, a: int) -> dict:
    """Discrete logs base the canonical generator of (Z/p^a)^x (p odd or p^a=4)."""
    q = p ** a
    g = 3 if q == 4 else primitive_root(p, a)
    table = {}
    x = 1
    for i in range(euler_phi(q)):
        table[x] = i
        x = x * g % q
    return table


@lru_cache(maxsize=None)
def _dlog2_table(a: int) -> dict:
    """n -> (e0, e1) with n = (-1)^e0 5^e1 mod 2^a, a >= 3."""
    q = 2 ** a
    table = {}
    half = 2 ** (a - 2)
    x = 1
    for j in range(half):
        table[x] = (0, j)
        table[q - x] = (1, j)
        x = x * 5 % q
    return table


@lru_cache(maxsize=None)
def unit_group_structure(q: int):
    """Canonical generators of (Z/qZ)^x as (lifted generator, order) pairs."""
    gens = []
    for p, a in sorted(factorint(q).items()):
        pa = p ** a
        rest = q // pa
        if p == 2:
            if a == 1:
                continue
            if a == 2:
                g = crt([3, 1], [pa, rest]) if rest > 1 else 3
                gens.append((g, 2))
            else:
                gm1 = crt([pa - 1, 1], [pa, rest]) if rest > 1 else pa - 1
                g5 = crt([5, 1], [pa, rest]) if rest > 1 else 5
                gens.append((gm1, 2))
                gens.append((g5, 2 ** (a - 2)))
        else:
            g = primitive_root(p, a)
            g = crt([g, 1], [pa, rest]) if rest > 1 else g
            gens.append((g, euler_phi(pa)))
    return tuple(gens)


def unit_dlog(q: int, n: int) -> tuple[int, ...]:
    """Exponents of n over the canonical generators of (Z/qZ)^x."""
    if q == 1:
        return ()
    n %= q
    if gcd(n, q) != 1:
        raise ValueError(f"{n} is not a unit mod {q}")
    out = []
    for p, e in sorted(factorint(q).items()):
        pa = p ** e
        nm = n % pa
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                out.append(_dlog_table(2, 2)[nm])
            else:
                e0, e1 = _dlog2_table(e)[nm]
                out.append(e0)
                out.append(e1)
        else:
            out.append(_dlog_table(p, e)[nm])
    return tuple(out)


def _local_exponent(x: mpq) -> mpq:
    x = mpq(x)
    x -= x.numerator // x.denominator  # reduce mod 1 toward [0,1)
    if x < 0:
        x += 1
    return x


class DirichletChar:
    """A Dirichlet character mod q with exact values."""

    __slots__ = ("modulus", "exps", "_order", "_conductor", "_index")

    def __init__(self, modulus: int, exps):
        self.modulus = modulus
        gens = unit_group_structure(modulus)
        exps = tuple(_local_exponent(x) for x in exps)
        if len(exps) != len(gens):
            raise ValueError(f"need {len(gens)} exponents for modulus {modulus}")
        for x, (_, o) in zip(exps, gens):
            if (x * o).denominator != 1:
                raise ValueError(f"exponent {x} incompatible with generator order {o}")
        self.exps = exps
        self._order = None
        self._conductor = None
        self._index = None

    # -- constructors ---------------------------------------------------
    @staticmethod
    def trivial(q: int = 1) -> "DirichletChar":
        return DirichletChar(q, (mpq(0),) * len(unit_group_structure(q)))

    @staticmethod
    def from_conrey(q: int, a: int) -> "DirichletChar":
        if gcd(a, q) != 1:
            raise ValueError(f"Conrey index {a} not coprime to {q}")
        exps = []
        for p, e in sorted(factorint(q).items()):
            pa = p ** e
            am = a % pa
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    exps.append(mpq(_dlog_table(2, 2)[am], 2))
                else:
                    e0, e1 = _dlog2_table(e)[am]
                    exps.append(mpq(e0, 2))
                    exps.append(mpq(e1, 2 ** (e - 2)))
            else:
                exps.append(mpq(_dlog_table(p, e)[am], euler_phi(pa)))
        return DirichletChar(q, exps)

    @staticmethod
    def from_label(label: str) -> "DirichletChar":
        q, a = label.split(".")
        return DirichletChar.from_conrey(int(q), int(a))

    # -- values -----------------------------------------------------------
    def value_exponent(self, n: int):
        """x in [0,1) with chi(n) = e^{2 pi i x}, or None if gcd(n, q) > 1."""
        q = self.modulus
        if q == 1:
            return mpq(0)
        n %= q
        if gcd(n, q) != 1:
            return None
        total = mpq(0)
        i = 0
        for p, e in sorted(factorint(q).items()):
            pa = p ** e
            nm = n % pa
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    total += self.exps[i] * _dlog_table(2, 2)[nm]
                    i += 1
                else:
                    e0, e1 = _dlog2_table(e)[nm]
                    total += self.exps[i] * e0 + self.exps[i + 1] * e1
                    i += 2
            else:
                total += self.exps[i] * _dlog_table(p, e)[nm]
                i += 1
        return _local_exponent(total)

    def __call__(self, n: int) -> CycNum:
        """chi(n) as an exact CycNum in Q(zeta_ord), 0 on non-units."""
        x = self.value_exponent(n)
        if x is None:
            return CycNum.from_rat(0, 1)
        o = self.order()
        t = int(x * o)
        return CycNum.zeta_power(o, t)

    # -- invariants -------------------------------------------------------
    def order(self) -> int:
        if self._order is None:
            o = 1
            for x in self.exps:
                d = int(x.denominator)
                o = o * d // gcd(o, d)
            self._order = o
        return self._order

    def is_trivial(self) -> bool:
        return all(not x for x in self.exps)

    def is_odd(self) -> bool:
        x = self.value_exponent(self.modulus - 1 if self.modulus > 1 else 1)
        return x == mpq(1, 2)

    def parity(self) -> int:
        return -1 if self.is_odd() else 1

    def conductor(self) -> int:
        if self._conductor is not None:
            return self._conductor
        cond = 1
        i = 0
        for p, e in sorted(factorint(self.modulus).items()):
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    if self.exps[i]:
                        cond *= 4
                    i += 1
                else:
                    e0, e1 = self.exps[i], self.exps[i + 1]
                    i += 2
                    o1 = int(e1.denominator)
                    if o1 > 1:
                        cond *= 4 * o1
                    elif e0:
                        cond *= 4
            else:
                x = self.exps[i]
                i += 1
                o = int(x.denominator)
                if o > 1:
                    cond *= p ** (1 + valuation(o, p) if o % p == 0 else 1)
        self._conductor = cond
        return cond

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    # -- derived characters -------------------------------------------------
    def _eval_on_group_of(self, q: int) -> "DirichletChar":
        """The character induced on modulus q (valid when values agree on units)."""
        exps = []
        for g, _ in unit_group_structure(q):
            x = self.value_exponent(_unit_lift(g, q, self.modulus))
            exps.append(x)
        return DirichletChar(q, exps)

    def induce(self, m: int) -> "DirichletChar":
        """Lift to a multiple modulus m (conductor must divide m)."""
        if m % self.conductor():
            raise ValueError("conductor does not divide the target modulus")
        prim = self.primitive_part()
        exps = [prim.value_exponent(g % prim.modulus if prim.modulus > 1 else 1)
                for g, _ in unit_group_structure(m)]
        return DirichletChar(m, exps)

    def primitive_part(self) -> "DirichletChar":
        c = self.conductor()
        if c == self.modulus:
            return self
        exps = []
        for g, _ in unit_group_structure(c):
            x = self.value_exponent(_unit_lift(g, c, self.modulus))
            exps.append(x)
        return DirichletChar(c, exps)

    def p_part(self, p: int) -> "DirichletChar":
        a = valuation(self.modulus, p) if self.modulus % p == 0 else 0
        if a == 0:
            return DirichletChar.trivial(1)
        pa = p ** a
        exps = []
        for g, _ in unit_group_structure(pa):
            lifted = crt([g % pa, 1], [pa, self.modulus // pa]) if self.modulus > pa else g
            exps.append(self.value_exponent(lifted))
        return DirichletChar(pa, exps)

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        m = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        a, b = self.induce(m), other.induce(m)
        return DirichletChar(m, [x + y for x, y in zip(a.exps, b.exps)])

    def __pow__(self, j: int) -> "DirichletChar":
        return DirichletChar(self.modulus, [x * j for x in self.exps])

    def inverse(self) -> "DirichletChar":
        return self ** (-1)

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return self.modulus == other.modulus and self.exps == other.exps

    def __hash__(self):
        return hash((self.modulus, self.exps))

    # -- Conrey -----------------------------------------------------------
    def conrey_index(self) -> int:
        if self._index is not None:
            return self._index
        q = self.modulus
        if q == 1:
            self._index = 1
            return 1
        residues, moduli = [], []
        i = 0
        for p, e in sorted(factorint(q).items()):
            pa = p ** e
            if p == 2:
                if e == 1:
                    residues.append(1)
                elif e == 2:
                    residues.append(pow(3, int(self.exps[i] * 2), pa))
                    i += 1
                else:
                    e0 = int(self.exps[i] * 2)
                    e1 = int(self.exps[i + 1] * 2 ** (e - 2))
                    i += 2
                    residues.append(pow(-1, e0, pa) * pow(5, e1, pa) % pa)
            else:
                phi = euler_phi(pa)
                g = primitive_root(p, e)
                residues.append(pow(g, int(self.exps[i] * phi), pa))
                i += 1
            moduli.append(pa)
        self._index = crt(residues, moduli)
        return self._index

    def label(self) -> str:
        return f"{self.modulus}.{self.conrey_index()}"

    def __repr__(self):
        return f"chi({self.label()})"


def _unit_lift(g: int, c: int, q: int) -> int:
    """A unit mod q congruent to g mod c (c | q), 1 at the primes missing from c."""
    if q == c:
        return g
    residues, moduli = [], []
    for p, e in factorint(q).items():
        pa = p ** e
        residues.append(g % pa if c % p == 0 else 1)
        moduli.append(pa)
    return crt(residues, moduli)


def teichmueller_component(chi: DirichletChar, ell: int):
    """Split chi = chi'' * chi_ellpow with ord(chi'') prime to ell and
    ord(chi_ellpow) an ell-power; chi'' = chi^s for the CRT exponent s."""
    o = chi.order()
    ell_part = 1
    while o % ell == 0:
        ell_part *= ell
        o //= ell
    prime_part = chi.order() // ell_part
    if prime_part == 1:
        s = 0
    elif ell_part == 1:
        s = 1
    else:
        s = crt([1, 0], [prime_part, ell_part])
    chi2 = chi ** s
    return chi2, chi * (chi2 ** (-1))


def enumerate_chars(q: int) -> list[DirichletChar]:
    """All characters mod q, ordered by Conrey index."""
    gens = unit_group_structure(q)
    out = [DirichletChar(q, ())] if not gens else []
    if gens:
        def rec(i, acc):
            if i == len(gens):
                out.append(DirichletChar(q, acc))
                return
            o = gens[i][1]
            for k in range(o):
                rec(i + 1, acc + [mpq(k, o)])
        rec(0, [])
    out.sort(key=lambda c: c.conrey_index())
    return out


@lru_cache(maxsize=None)
def primitive_chars(c: int) -> tuple:
    return tuple(ch for ch in enumerate_chars(c) if ch.conductor() == c)


def enumerate_primitive_pairs(
    N: int,
    target: DirichletChar | None = None,
    *,
    skip_p: int | None = None,
    order_coprime_to: int | None = None,
    unramified_at: int | None = None,
):
    """Primitive pairs (eps1, eps2) with v_p(N / c1 c2) in {0, 1, 2} for every
    prime p (p != skip_p), optionally filtered by product, order, ramification.

    The product condition compares primitive parts: eps1*eps2 ~ target.
    Output is ordered by (c1, Conrey index of eps1, c2, index of eps2).
    """
    body = N
    if unramified_at:
        while body % unramified_at == 0:
            body //= unramified_at
    from .intmath import divisors

    def cond_ok(c1c2: int) -> bool:
        for p in factorint(N):
            if p == skip_p:
                continue
            vn, vc = valuation(N, p), valuation(c1c2, p) if c1c2 % p == 0 else 0
            if vn - vc not in (0, 1, 2) or vc > vn:
                return False
        return True

    tgt = target.primitive_part() if target is not None else None
    out = []
    divs = divisors(body)
    for c1 in divs:
        for c2 in divs:
            if not cond_ok(c1 * c2):
                continue
            for e1 in primitive_chars(c1):
                if order_coprime_to and gcd(e1.order(), order_coprime_to) > 1:
                    continue
                for e2 in primitive_chars(c2):
                    if order_coprime_to and gcd(e2.order(), order_coprime_to) > 1:
                        continue
                    if tgt is not None and (e1 * e2).primitive_part() != tgt:
                        continue
                    out.append((e1, e2))
    out.sort(key=lambda pr: (
        pr[0].conductor(), pr[0].conrey_index(), pr[1].conductor(), pr[1].conrey_index()))
    return out
