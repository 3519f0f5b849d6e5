"""Dense univariate polynomials over an exact coefficient field.

Polynomials are plain tuples of coefficients, lowest degree first, with no
trailing zero (the zero polynomial is the empty tuple). The coefficient
field is passed explicitly as a small object exposing zero/one/add/sub/mul/
neg/inv/from_int; gmpy2 rationals and the finite fields of ffield.py both
fit this protocol.

Factorization over F_ell is the classical chain square-free decomposition,
distinct-degree splitting, equal-degree splitting; the equal-degree stage
draws its splitting elements from a fixed linear-congruential stream seeded
by the input so runs are reproducible.
"""

from __future__ import annotations

from gmpy2 import mpq


class RatField:
    """The field of exact rationals (gmpy2.mpq elements)."""

    zero = mpq(0)
    one = mpq(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def from_int(n):
        return mpq(n)


QQ = RatField()


class PrimeField:
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        self.p = p
        self.card = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def ptrim(c) -> tuple:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def pdeg(a) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return ptrim(out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return ptrim(out)


def pscale(F, c, a):
    return ptrim([F.mul(c, x) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b) and ptrim(a):
        a = list(ptrim(a))
        if len(a) < len(b):
            break
        c = F.mul(a[-1], inv_lead)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = F.sub(a[k + i], F.mul(c, y))
    return ptrim(q), ptrim(a)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return a
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F, a, b):
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def ppow_mod(F, a, n: int, m):
    out = (F.one,)
    a = pmod(F, a, m)
    while n:
        if n & 1:
            out = pmod(F, pmul(F, out, a), m)
        a = pmod(F, pmul(F, a, a), m)
        n >>= 1
    return out


def pdiff(F, a):
    return ptrim([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def peval(F, a, x):
    out = F.zero
    for c in reversed(a):
        out = F.add(F.mul(out, x), c)
    return out


def pcompose_shift(F, a, c):
    """a(x + c)."""
    out = ()
    for coef in reversed(a):
        out = padd(F, pmul(F, out, (c, F.one)), (coef,))
    return out


def presultant(F, a, b):
    """Res(a, b) via the Euclidean remainder sequence.

    Uses Res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r)
    for a = q*b + r.
    """
    if not a or not b:
        return F.zero
    res = F.one
    while True:
        if pdeg(b) == 0:
            return F.mul(res, _fpow(F, b[0], pdeg(a)))
        r = pmod(F, a, b)
        if not r:
            return F.zero
        if (pdeg(a) * pdeg(b)) % 2 == 1:
            res = F.neg(res)
        res = F.mul(res, _fpow(F, b[-1], pdeg(a) - pdeg(r)))
        a, b = b, r


def _fpow(F, a, n: int):
    out = F.one
    for _ in range(n):
        out = F.mul(out, a)
    return out


def p_from_int_coeffs(F, coeffs) -> tuple:
    return ptrim([F.from_int(c) for c in coeffs])


def rat_poly_to_mod(coeffs, ell: int) -> tuple:
    """Reduce a rational-coefficient polynomial mod ell.

    Denominators must be units mod ell.
    """
    out = []
    for c in coeffs:
        c = mpq(c)
        den = int(c.denominator) % ell
        if den == 0:
            raise ValueError(f"coefficient denominator not a unit mod {ell}")
        out.append(int(c.numerator) % ell * pow(den, -1, ell) % ell)
    return ptrim(out)


# ---------------------------------------------------------------------------
# factorization over finite fields

class _DetStream:
    """Reproducible pseudo-random stream seeded from the input polynomial."""

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & (2 ** 64 - 1) or 1

    def next(self, bound: int) -> int:
        self.state = (6364136223846793005 * self.state + 1442695040888963407) % 2 ** 64
        return (self.state >> 16) % bound


def _seed_from(F, a) -> int:
    s = getattr(F, "card", 0)
    for c in a:
        s = (s * 1099511628211 + hash(repr(c))) & (2 ** 64 - 1)
    return s


def squarefree_decomposition(F, a):
    """Yield (factor, multiplicity) with factors squarefree and coprime (char p)."""
    p = F.p
    out = []

    def sqf(a, mult):
        d = pdiff(F, a)
        if not d:
            # a is a p-th power: a(x) = b(x^p)
            b = ptrim([_field_pth_root(F, a[i]) for i in range(0, len(a), p)])
            sqf(b, mult * p)
            return
        g = pgcd(F, a, d)
        w = pdivmod(F, a, g)[0]
        m = 1
        while pdeg(w) > 0:
            y = pgcd(F, w, g)
            z = pdivmod(F, w, y)[0]
            if pdeg(z) > 0:
                out.append((pmonic(F, z), m * mult))
            w = y
            g = pdivmod(F, g, y)[0]
            m += 1
        # the leftover is the p-th-power part; its derivative vanishes, so the
        # recursion lands in the p-th-root branch which applies the factor p
        if pdeg(g) > 0:
            sqf(g, mult)

    sqf(pmonic(F, a), 1)
    return out


def _field_pth_root(F, c):
    # in F_{p^m} the p-th root is c^{p^{m-1}}; in F_p it is c itself
    card = F.card
    if card == F.p:
        return c
    return _field_pow(F, c, card // F.p)


def _field_pow(F, c, n):
    out = F.one
    while n:
        if n & 1:
            out = F.mul(out, c)
        c = F.mul(c, c)
        n >>= 1
    return out


def distinct_degree_split(F, a):
    """Split squarefree monic a into products of factors of equal degree."""
    q = F.card
    out = []
    x = (F.zero, F.one)
    h = x
    d = 0
    while pdeg(a) > 0:
        d += 1
        if 2 * d > pdeg(a):
            out.append((a, pdeg(a)))
            break
        h = ppow_mod(F, h, q, a)
        g = pgcd(F, psub(F, h, x), a)
        if pdeg(g) > 0:
            out.append((g, d))
            a = pdivmod(F, a, g)[0]
            h = pmod(F, h, a)
    return out


def equal_degree_split(F, a, d, stream=None):
    """Factor squarefree monic a whose irreducible factors all have degree d."""
    if pdeg(a) == d:
        return [a]
    if stream is None:
        stream = _DetStream(_seed_from(F, a))
    q = F.card
    n = pdeg(a)
    while True:
        h = ptrim([_rand_elem(F, stream) for _ in range(n)])
        if pdeg(h) < 1:
            continue
        g = pgcd(F, h, a)
        if 0 < pdeg(g) < pdeg(a):
            pass
        elif F.p == 2:
            # trace map over F_2: T = h + h^2 + h^4 + ... (q^d / 2 terms of squaring)
            k = (q ** d).bit_length() - 1
            t = h
            acc = h
            for _ in range(k - 1):
                t = pmod(F, pmul(F, t, t), a)
                acc = padd(F, acc, t)
            g = pgcd(F, acc, a)
        else:
            e = (q ** d - 1) // 2
            t = ppow_mod(F, h, e, a)
            g = pgcd(F, psub(F, t, (F.one,)), a)
        if 0 < pdeg(g) < pdeg(a):
            rest = pdivmod(F, a, g)[0]
            return equal_degree_split(F, g, d, stream) + equal_degree_split(F, rest, d, stream)


def _rand_elem(F, stream):
    if F.card == F.p:
        return stream.next(F.p)
    return F.from_coeffs([stream.next(F.p) for _ in range(F.degree)])


def factor_poly(F, a):
    """Full factorization over a finite field: list of (monic irreducible, mult)."""
    out = []
    for sqf, mult in squarefree_decomposition(F, a):
        for part, d in distinct_degree_split(F, sqf):
            for irr in equal_degree_split(F, part, d):
                out.append((irr, mult))
    out.sort(key=lambda t: (pdeg(t[0]), repr(t[0])))
    return out


def poly_factor_mod(coeffs, ell: int):
    """Factor a rational polynomial with ell-integral coefficients over F_ell.

    Returns (monic irreducible tuple over F_ell, multiplicity) pairs. Raises
    ValueError when the leading coefficient is not a unit mod ell.
    """
    F = PrimeField(ell)
    a = rat_poly_to_mod(coeffs, ell)
    if len(a) != len(ptrim(coeffs)):
        raise ValueError(f"leading coefficient vanishes mod {ell}: non-monic reduction")
    return factor_poly(F, a)


def is_irreducible(F, a) -> bool:
    """Irreducibility over a finite field via the distinct-degree criterion."""
    n = pdeg(a)
    if n <= 0:
        return False
    if n == 1:
        return True
    a = pmonic(F, a)
    q = F.card
    x = (F.zero, F.one)
    h = ppow_mod(F, x, q ** n, a)
    if psub(F, h, x):
        return False
    for r in {p for p in factorint_small(n)}:
        h = ppow_mod(F, x, q ** (n // r), a)
        if pdeg(pgcd(F, psub(F, h, x), a)) > 0:
            return False
    return True


def factorint_small(n: int):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def roots_in_field(F, a):
    """All roots in F of a nonzero polynomial over F (without multiplicity)."""
    x_q_minus_x = psub(F, ppow_mod(F, (F.zero, F.one), F.card, a), (F.zero, F.one))
    g = pgcd(F, a, x_q_minus_x)
    if pdeg(g) <= 0:
        return []
    return [F.neg(lin[0]) for lin in equal_degree_split(F, g, 1)]
