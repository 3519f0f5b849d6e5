"""Integer and exact-interval utilities shared by the whole package.

Everything here is deterministic: factorization uses trial division up to
10^6 followed by Brent's rho with a fixed parameter schedule, and the
logarithm bounds are exact rational enclosures (no floating point on any
accept/reject path).
"""

from __future__ import annotations

import math
from functools import lru_cache

from gmpy2 import mpq

Rat = mpq

TRIAL_BOUND = 10 ** 6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FactorizationError(Exception):
    """A composite survived the deterministic rho stage (beyond 2^64 scale)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit (plain sieve)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def _brent_rho(n: int) -> int:
    # deterministic schedule of increment constants; n is odd, composite, not a prime power issue
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationError(f"deterministic rho failed on {n}")


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: multiplicity}.

    Raises FactorizationError if a huge composite defeats the rho stage.
    """
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= TRIAL_BOUND:
        if n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        else:
            d += wheel[i]
            i = (i + 1) % 8
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        if m > 2 ** 128:
            raise FactorizationError(
                f"refusing to factor composite of size {m.bit_length()} bits: {m}"
            )
        g = _brent_rho(m)
        stack.append(g)
        stack.append(m // g)
    return out


def divisors(n: int) -> list[int]:
    fac = factorint(n)
    out = [1]
    for p, a in fac.items():
        out = [d * p ** i for d in out for i in range(a + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    out = 1
    for p, a in factorint(n).items():
        out *= p ** (a - 1) * (p - 1)
    return out


def radical(n: int) -> int:
    out = 1
    for p in factorint(n):
        out *= p
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_to_part(n: int, p: int) -> int:
    """The largest divisor of n coprime to p."""
    while n % p == 0:
        n //= p
    return n


def crt(residues: list[int], moduli: list[int]) -> int:
    """Chinese remainder for pairwise coprime moduli."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        if q > 1:
            x += m * ((r - x) * pow(m, -1, q) % q)
        m *= q
    return x % m if m > 1 else 0


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    order = euler_phi(n)
    for p in factorint(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


@lru_cache(maxsize=None)
def primitive_root(p: int, a: int = 1) -> int:
    """The least g that generates (Z/p^a)^x for every exponent up to a.

    For odd p this is the least primitive root mod p that stays primitive
    mod p^2 (then automatically mod all p^a). Matches the generator used in
    the Conrey indexing of Dirichlet characters.
    """
    if p == 2:
        if a <= 2:
            return 3 if a == 2 else 1
        raise ValueError("no single generator for 2^a, a >= 3")
    q = p ** a
    phi1 = p - 1
    g = 2
    while True:
        if all(pow(g, phi1 // r, p) != 1 for r in factorint(phi1)):
            if a == 1 or pow(g, phi1, p * p) != 1:
                # primitive mod p^2 implies primitive mod every p^a
                return g
        g += 1


def balanced_residue(c: int, m: int) -> int:
    """Representative of c mod m in (-m/2, m/2]."""
    c %= m
    return c - m if 2 * c > m else c


# ---------------------------------------------------------------------------
# exact logarithm enclosures (dyadic-rational intervals, outward rounding)

_LOG2_CACHE: dict[int, tuple[Rat, Rat]] = {}


def _atanh_series(u: Rat, terms: int) -> tuple[Rat, Rat]:
    # 2*atanh(u) with exact tail bound, |u| < 1/2
    s = mpq(0)
    upow = u
    u2 = u * u
    for j in range(terms):
        s += upow / (2 * j + 1)
        upow *= u2
    tail = abs(upow) / ((2 * terms + 1) * (1 - u2))
    return 2 * (s - tail), 2 * (s + tail)


def log2_bounds(bits: int = 96) -> tuple[Rat, Rat]:
    if bits not in _LOG2_CACHE:
        terms = bits // 3 + 4  # u = 1/3: each term gains log2(9) ~ 3.17 bits
        _LOG2_CACHE[bits] = _atanh_series(mpq(1, 3), terms)
    return _LOG2_CACHE[bits]


def log_bounds(x: Rat, bits: int = 96) -> tuple[Rat, Rat]:
    """Exact rational enclosure of log(x), x > 0."""
    x = mpq(x)
    if x <= 0:
        raise ValueError("log of non-positive value")
    if x == 1:
        return mpq(0), mpq(0)
    if x < 1:
        lo, hi = log_bounds(1 / x, bits)
        return -hi, -lo
    m = 0
    while x > mpq(3, 2):
        x /= 2
        m += 1
    # x in (3/4, 3/2], u = (x-1)/(x+1) in (-1/7, 1/5]
    u = (x - 1) / (x + 1)
    terms = bits // 4 + 6
    lo, hi = _atanh_series(u, terms)
    l2lo, l2hi = log2_bounds(bits)
    return lo + m * l2lo, hi + m * l2hi


def loglog_bounds(n: int, bits: int = 96) -> tuple[Rat, Rat]:
    """Exact enclosure of log(log(n)) for n >= 2."""
    if n < 2:
        raise ValueError("need n >= 2")
    llo, lhi = log_bounds(mpq(n), bits)
    if llo <= 0:
        raise ValueError("insufficient precision: log lower bound not positive")
    lo, _ = log_bounds(llo, bits)
    _, hi = log_bounds(lhi, bits)
    return lo, hi


def sqrt_upper(x: Rat) -> Rat:
    """Rational upper bound on sqrt(x), x >= 0."""
    x = mpq(x)
    if x < 0:
        raise ValueError("sqrt of negative value")
    a, b = x.numerator, x.denominator
    # sqrt(a/b) = sqrt(a*b)/b <= (isqrt(a*b)+1)/b
    return mpq(math.isqrt(a * b) + 1, b)


def half_power_upper(x: Rat, num: int) -> Rat:
    """Rational upper bound on x**(num/2) for x >= 0 and num >= 0."""
    x = mpq(x)
    if num % 2 == 0:
        return x ** (num // 2)
    return sqrt_upper(x ** num)
