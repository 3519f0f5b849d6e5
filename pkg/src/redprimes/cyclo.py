"""Exact cyclotomic arithmetic: Phi_n and elements of Q(zeta_n).

A CycNum stores its order n and coordinates over the power basis
1, zeta, ..., zeta^{phi(n)-1}; arithmetic reduces modulo Phi_n through a
cached table of the high powers zeta^{phi(n)} .. zeta^{2 phi(n)-2}.
Coercion between orders happens only along divisibility, lifting both
operands to the lcm.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from . import poly
from .intmath import Rat, divisors, euler_phi
from .poly import QQ


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Phi_n as a tuple of integer mpq coefficients, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = tuple([mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)])  # x^n - 1
    for d in divisors(n):
        if d == n:
            continue
        num, rem = poly.pdivmod(QQ, num, cyclotomic_poly(d))
        if rem:
            raise AssertionError("cyclotomic division left a remainder")
    return num


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Coordinates of zeta_n^i for 0 <= i <= 2 phi(n) - 2 (integers)."""
    phi = euler_phi(n)
    phin = cyclotomic_poly(n)
    rows: list[tuple] = []
    for i in range(phi):
        rows.append(tuple(mpq(1) if j == i else mpq(0) for j in range(phi)))
    for i in range(phi, 2 * phi - 1):
        prev = rows[i - 1]
        shifted = [mpq(0)] + list(prev)
        top = shifted.pop()
        if top:
            for k in range(phi):
                shifted[k] -= top * phin[k]
        rows.append(tuple(shifted))
    return tuple(rows)


class CycNum:
    """An element of Q(zeta_n) in the power basis of zeta_n."""

    __slots__ = ("n", "co")

    def __init__(self, n: int, co):
        phi = euler_phi(n)
        co = tuple(mpq(c) for c in co)
        if len(co) != phi:
            raise ValueError(f"need {phi} coordinates for order {n}")
        self.n = n
        self.co = co

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_rat(q, n: int = 1) -> "CycNum":
        phi = euler_phi(n)
        return CycNum(n, [mpq(q)] + [mpq(0)] * (phi - 1))

    @staticmethod
    def zeta(n: int) -> "CycNum":
        """A fixed primitive n-th root of unity (the power-basis generator)."""
        phi = euler_phi(n)
        if phi == 1:
            # n in {1, 2}: zeta is rational
            return CycNum(n, [mpq(1 if n == 1 else -1)])
        return CycNum(n, [mpq(0), mpq(1)] + [mpq(0)] * (phi - 2))

    @staticmethod
    def zeta_power(n: int, t: int) -> "CycNum":
        table = _power_table(n)
        phi = euler_phi(n)
        t %= n
        if t < len(table):
            return CycNum(n, table[t])
        return CycNum.zeta(n) ** t

    # -- structure -------------------------------------------------------
    def lift(self, m: int) -> "CycNum":
        """Rewrite in Q(zeta_m) for n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"no coercion from order {self.n} to {m}")
        step = m // self.n
        phi_m = euler_phi(m)
        out = [mpq(0)] * phi_m
        table = _power_table(m)
        for i, c in enumerate(self.co):
            if not c:
                continue
            row = _zeta_power_coords(m, i * step)
            for k in range(phi_m):
                out[k] += c * row[k]
        return CycNum(m, out)

    def as_rat(self):
        """The element as a rational if it lies in Q, else None."""
        if any(self.co[1:]):
            return None
        if self.n == 2:
            return self.co[0]
        return self.co[0]

    def is_zero(self) -> bool:
        return not any(self.co)

    # -- arithmetic --------------------------------------------------------
    def _pair(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other)
        if other.n == self.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other).lift(self.n)
        a, b = self._pair(other)
        return CycNum(a.n, [x + y for x, y in zip(a.co, b.co)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other).lift(self.n)
        a, b = self._pair(other)
        return CycNum(a.n, [x - y for x, y in zip(a.co, b.co)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycNum(self.n, [-x for x in self.co])

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            return CycNum(self.n, [mpq(other) * x for x in self.co])
        a, b = self._pair(other)
        phi = len(a.co)
        if phi == 1:
            return CycNum(a.n, (a.co[0] * b.co[0],))
        conv = [mpq(0)] * (2 * phi - 1)
        for i, x in enumerate(a.co):
            if not x:
                continue
            for j, y in enumerate(b.co):
                if y:
                    conv[i + j] += x * y
        table = _power_table(a.n)
        out = conv[:phi]
        for i in range(phi, 2 * phi - 1):
            c = conv[i]
            if c:
                row = table[i]
                for k in range(phi):
                    out[k] += c * row[k]
        return CycNum(a.n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycNum):
            r = other.as_rat()
            if r is None:
                raise TypeError("division only by rational values")
            other = r
        q = mpq(other)
        return CycNum(self.n, [x / q for x in self.co])

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = CycNum.from_rat(1).lift(self.n) if self.n > 1 else CycNum.from_rat(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other)
        a, b = self._pair(other)
        return a.co == b.co

    def __hash__(self):
        return hash((self.n, self.co))

    def inv(self) -> "CycNum":
        """Multiplicative inverse, by solving against the multiplication matrix."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        phi = len(self.co)
        if phi == 1:
            return CycNum(self.n, (1 / self.co[0],))
        from .linalg import mat_inv

        rows = [(self * CycNum.zeta_power(self.n, i)).co for i in range(phi)]
        return CycNum(self.n, mat_inv(rows)[0])

    def galois(self, j: int) -> "CycNum":
        """Image under zeta -> zeta^j, gcd(j, n) = 1."""
        if gcd(j, self.n) != 1:
            raise ValueError("galois exponent must be coprime to the order")
        out = [mpq(0)] * len(self.co)
        for i, c in enumerate(self.co):
            if not c:
                continue
            row = _zeta_power_coords(self.n, i * j % self.n)
            for k in range(len(out)):
                out[k] += c * row[k]
        return CycNum(self.n, out)

    def conj(self) -> "CycNum":
        return self.galois(self.n - 1) if self.n > 2 else self

    def denominator_lcm(self) -> int:
        out = 1
        for c in self.co:
            d = int(mpq(c).denominator)
            out = out * d // gcd(out, d)
        return out

    def __repr__(self):
        return f"CycNum({self.n}, {[str(c) for c in self.co]})"


@lru_cache(maxsize=None)
def _full_power_table(n: int) -> tuple:
    """Coordinates of zeta_n^t for every 0 <= t < n (shift-and-reduce)."""
    phi = euler_phi(n)
    phin = cyclotomic_poly(n)
    rows = list(_power_table(n))
    while len(rows) < n:
        prev = rows[-1]
        shifted = [mpq(0)] + list(prev)
        top = shifted.pop()
        if top:
            for k in range(phi):
                shifted[k] -= top * phin[k]
        rows.append(tuple(shifted))
    return tuple(rows[:n])


def _zeta_power_coords(n: int, t: int) -> tuple:
    t %= n
    table = _power_table(n)
    if t < len(table):
        return table[t]
    return _full_power_table(n)[t]


def cyc_norm(x: CycNum):
    """Norm from Q(zeta_n) down to Q, as the resultant Res(Phi_n, P_x)."""
    if x.is_zero():
        return mpq(0)
    coeffs = poly.ptrim(x.co)
    return poly.presultant(QQ, cyclotomic_poly(x.n), coeffs)
