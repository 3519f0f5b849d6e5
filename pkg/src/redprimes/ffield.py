"""Finite fields F_{p^d} as F_p[z]/(h) with an explicit modulus polynomial.

Elements are immutable coefficient tuples over F_p. The field object itself
implements the coefficient-field protocol of poly.py, so polynomials over
extension fields (needed for root finding during residue-field embeddings)
reuse the generic machinery.
"""

from __future__ import annotations

from . import poly
from .intmath import factorint


class FFElem:
    __slots__ = ("field", "co")

    def __init__(self, field: "FiniteField", co: tuple[int, ...]):
        self.field = field
        self.co = co

    def __add__(self, other):
        return self.field.add(self, self.field.coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.sub(self.field.coerce(other), self)

    def __mul__(self, other):
        return self.field.mul(self, self.field.coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field.neg(self)

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(self.field.coerce(other)))

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = self.field.mul(out, base)
            base = self.field.mul(base, base)
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field == other.field and self.co == other.co

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.co))

    def __bool__(self):
        return any(self.co)

    def is_zero(self) -> bool:
        return not any(self.co)

    def order(self) -> int:
        """Multiplicative order; raises on zero."""
        if self.is_zero():
            raise ZeroDivisionError("order of zero")
        n = self.field.card - 1
        for q in factorint(n):
            while n % q == 0 and (self ** (n // q)) == self.field.one:
                n //= q
        return n

    def frobenius(self):
        return self ** self.field.p

    def in_prime_field(self) -> int | None:
        """The value as an int if the element lies in F_p, else None."""
        if any(self.co[1:]):
            return None
        return self.co[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.co):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c if c != 1 else ''}z")
            else:
                terms.append(f"{c if c != 1 else ''}z^{i}")
        return "+".join(terms) if terms else "0"


class FiniteField:
    """F_{p^d} with modulus h (int coefficient tuple, low first, monic)."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.degree = len(self.modulus) - 1
        self.card = p ** self.degree
        d = self.degree
        # reduction rows for z^d .. z^{2d-2}
        rows = []
        cur = [(-c) % p for c in self.modulus[:-1]]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            cur = [0] + cur
            top = cur.pop()
            if top:
                cur = [(cur[i] + top * rows[0][i]) % p for i in range(d)]
            rows.append(tuple(cur))
        self._red = rows
        self.zero = FFElem(self, (0,) * d)
        self.one = FFElem(self, tuple([1 % p] + [0] * (d - 1)))

    # -- field protocol ------------------------------------------------
    def add(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple((x + y) % p for x, y in zip(a.co, b.co)))

    def sub(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple((x - y) % p for x, y in zip(a.co, b.co)))

    def neg(self, a: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple(-x % p for x in a.co))

    def mul(self, a: FFElem, b: FFElem) -> FFElem:
        p, d = self.p, self.degree
        if d == 1:
            return FFElem(self, (a.co[0] * b.co[0] % p,))
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a.co):
            if x:
                for j, y in enumerate(b.co):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:d]]
        for i in range(d, 2 * d - 1):
            c = conv[i] % p
            if c:
                row = self._red[i - d]
                for k in range(d):
                    out[k] = (out[k] + c * row[k]) % p
        return FFElem(self, tuple(out))

    def inv(self, a: FFElem) -> FFElem:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return FFElem(self, (pow(a.co[0], -1, self.p),))
        Fp = poly.PrimeField(self.p)
        # extended euclid on (a, modulus) over F_p
        r0, r1 = poly.ptrim(a.co), poly.ptrim(self.modulus)
        s0, s1 = (1,), ()
        while r1:
            q, r = poly.pdivmod(Fp, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly.psub(Fp, s0, poly.pmul(Fp, q, s1))
        c = Fp.inv(r0[-1] if r0 else 1)
        s0 = poly.pscale(Fp, c, s0)
        return self.from_coeffs(list(s0))

    def from_int(self, n: int) -> FFElem:
        return FFElem(self, tuple([n % self.p] + [0] * (self.degree - 1)))

    def from_coeffs(self, co) -> FFElem:
        co = [c % self.p for c in co]
        if len(co) > self.degree:
            Fp = poly.PrimeField(self.p)
            co = list(poly.pmod(Fp, poly.ptrim(co), poly.ptrim(self.modulus)))
        co = co + [0] * (self.degree - len(co))
        return FFElem(self, tuple(co[: self.degree]))

    def coerce(self, x) -> FFElem:
        if isinstance(x, FFElem):
            if x.field is self:
                return x
            if x.field == self:
                return FFElem(self, x.co)
            raise TypeError("element of a different field")
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r}")

    def gen(self) -> FFElem:
        if self.degree == 1:
            return self.from_int(-self.modulus[0])
        return FFElem(self, tuple([0, 1] + [0] * (self.degree - 2)))

    def elements(self):
        """Iterate all field elements in a fixed order (small fields only)."""
        from itertools import product

        for co in product(range(self.p), repeat=self.degree):
            yield FFElem(self, co)

    def multiplicative_generator(self) -> FFElem:
        n = self.card - 1
        qs = list(factorint(n))
        for x in self.elements():
            if x.is_zero():
                continue
            if all((x ** (n // q)) != self.one for q in qs):
                return x
        raise RuntimeError("unreachable: no generator found")

    def element_of_order(self, m: int) -> FFElem:
        """Deterministic element of exact multiplicative order m | card-1."""
        n = self.card - 1
        if n % m:
            raise ValueError(f"no element of order {m} in F_{self.p}^{self.degree}")
        if m == 1:
            return self.one
        qs = list(factorint(m))
        for x in self.elements():
            if x.is_zero():
                continue
            y = x ** (n // m)
            if all((y ** (m // q)) != self.one for q in qs):
                return y
        raise RuntimeError("unreachable")

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.degree}"


def find_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Deterministic least irreducible monic polynomial of degree d over F_p."""
    if d == 1:
        return (0, 1)
    Fp = poly.PrimeField(p)
    k = 0
    while True:
        digits = []
        kk = k
        for _ in range(d):
            digits.append(kk % p)
            kk //= p
        cand = tuple(digits) + (1,)
        if poly.is_irreducible(Fp, cand):
            return cand
        k += 1


def GF(p: int, d: int = 1) -> FiniteField:
    return FiniteField(p, find_irreducible(p, d))
