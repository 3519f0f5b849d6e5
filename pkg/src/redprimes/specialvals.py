"""Generalized Bernoulli numbers, von Staudt-Clausen denominators, Gauss sums.

The production path for B_{m,chi} is the Bernoulli-polynomial closed form
c^{m-1} sum_{a=1..c} chi(a) B_m(a/c) taken literally on the stored modulus
of chi; the generating-series definition is kept as a test oracle only.
With the trivial character mod 1 this evaluates to B_m(1), which gives the
sign convention B_{1,triv} = +1/2 without a special case.
"""

from __future__ import annotations

import threading
from math import comb

from gmpy2 import mpq

from .characters import DirichletChar
from .cyclo import CycNum, cyc_norm
from .intmath import euler_phi, primes_up_to

_bern_lock = threading.Lock()
_bern_cache: list[mpq] = [mpq(1)]


def bernoulli_number(m: int) -> mpq:
    """Classical B_m with the B_1 = -1/2 normalization (used inside B_m(x))."""
    with _bern_lock:
        while len(_bern_cache) <= m:
            n = len(_bern_cache)
            s = mpq(0)
            for j in range(n):
                s += comb(n + 1, j) * _bern_cache[j]
            _bern_cache.append(-s / (n + 1))
        return _bern_cache[m]


def bernoulli_polynomial(m: int) -> tuple[mpq, ...]:
    """Coefficients of B_m(x), lowest degree first."""
    return tuple(comb(m, j) * bernoulli_number(m - j) for j in range(m + 1))


def _eval_poly(coeffs, x: mpq) -> mpq:
    out = mpq(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def gen_bernoulli(m: int, chi: DirichletChar) -> CycNum:
    """B_{m,chi} on the stored modulus of chi, exact in Q(zeta_ord(chi))."""
    if m < 0:
        raise ValueError("m must be non-negative")
    c = chi.modulus
    o = chi.order()
    poly_m = bernoulli_polynomial(m)
    total = CycNum.from_rat(0).lift(o)
    for a in range(1, c + 1):
        x = chi.value_exponent(a)
        if x is None:
            continue
        t = int(x * o)
        total = total + CycNum.zeta_power(o, t) * _eval_poly(poly_m, mpq(a, c))
    return total * (mpq(c) ** (m - 1))


def von_staudt_denominator(m: int) -> int:
    """Denominator of B_m for even m: the product of primes ell with ell-1 | m."""
    if m <= 0 or m % 2:
        raise ValueError("von Staudt-Clausen applies to positive even m")
    out = 1
    for ell in primes_up_to(m + 1):
        if m % (ell - 1) == 0:
            out *= ell
    return out


def gauss_sum(chi: DirichletChar) -> CycNum:
    """W(chi) = sum chi(n) zeta_c^n for primitive chi of conductor c.

    Assembled by accumulating exponents of zeta_{lcm(c, ord)}, so the cost is
    one table lookup per term even in large cyclotomic fields."""
    if not chi.is_primitive():
        raise ValueError("gauss_sum requires a primitive character")
    from math import gcd

    from .cyclo import _full_power_table

    c = chi.modulus
    if c == 1:
        return CycNum.from_rat(1)
    o = chi.order()
    L = c * o // gcd(c, o)
    phi = euler_phi(L)
    counts = [0] * L
    for n in range(1, c + 1):
        x = chi.value_exponent(n)
        if x is None:
            continue
        e = (int(x * o) * (L // o) + n * (L // c)) % L
        counts[e] += 1
    rows = _full_power_table(L)
    coords = [mpq(0)] * phi
    for e, w in enumerate(counts):
        if w:
            row = rows[e]
            for k in range(phi):
                coords[k] += w * row[k]
    return CycNum(L, coords)


def gauss_norm_abs(chi: DirichletChar):
    """|algebraic norm of W(chi)| as an exact integer.

    Small fields go through cyc_norm directly. Large composita are normed in
    Q(zeta_c) tensor Q(zeta_ord) (same prime support as the field norm) via
    bivariate resultants computed modulo word-size primes and recombined by
    CRT against the rigorous bound |N| <= c^{phi(c) phi(o)} (each embedding
    of the sum has at most c unit-modulus terms)."""
    from math import gcd

    from .cyclo import _full_power_table, _zeta_power_coords, cyclotomic_poly

    c = chi.modulus
    if c == 1:
        return 1
    o = chi.order()
    L = c * o // gcd(c, o)
    if euler_phi(L) <= 24:
        nrm = cyc_norm(gauss_sum(chi))
        q = mpq(nrm)
        assert q.denominator == 1
        return abs(int(q))
    phic, phio = euler_phi(c), euler_phi(o)
    mat = [[0] * phio for _ in range(phic)]
    rows = _full_power_table(c)
    for n in range(1, c + 1):
        x = chi.value_exponent(n)
        if x is None:
            continue
        zrow = _zeta_power_coords(o, int(x * o) % o)
        xrow = rows[n % c]
        for i in range(phic):
            xc = int(xrow[i])
            if xc:
                for j in range(phio):
                    if zrow[j]:
                        mat[i][j] += xc * int(zrow[j])
    phic_poly = [int(v) for v in cyclotomic_poly(c)]
    phio_poly = [int(v) for v in cyclotomic_poly(o)]
    bound = c ** (phic * phio)
    return abs(_bivariate_resultant_crt(phic_poly, phio_poly, mat, bound))


def _bivariate_resultant_crt(px, py, mat, bound: int) -> int:
    """Res_y(py, Res_x(px, Q)) for integer data, by CRT over 62-bit primes."""
    from .intmath import is_prime
    from .poly import PrimeField, presultant, ptrim

    degx, degy = len(px) - 1, len(py) - 1
    dQy = max((j for row in mat for j, v in enumerate(row) if v), default=0)
    D = dQy * degx  # degree bound for Res_x(px, Q)(y)
    residues, moduli = [], []
    M = 1
    p = 2 ** 62
    while M <= 2 * bound:
        p += 1
        while not is_prime(p):
            p += 1
        F = PrimeField(p)
        pxm = ptrim([v % p for v in px])
        pym = ptrim([v % p for v in py])
        hvals = []
        for a in range(D + 1):
            apow = [pow(a, j, p) for j in range(dQy + 1)]
            qa = ptrim([sum(mat[i][j] * apow[j] for j in range(min(dQy + 1, len(mat[i]))))
                        % p for i in range(len(mat))])
            hvals.append(presultant(F, pxm, qa) if qa else 0)
        h = _lagrange_mod(list(range(D + 1)), hvals, p)
        res = presultant(F, pym, ptrim(h)) if ptrim(h) else 0
        residues.append(res)
        moduli.append(p)
        M *= p
    from .intmath import crt

    r = crt(residues, moduli)
    if r > M // 2:
        r -= M
    return r


def _lagrange_mod(xs, ys, p):
    """Interpolation mod p in O(n^2): shared master product, synthetic division."""
    n = len(xs)
    full = [1]
    for xj in xs:
        new = [0] * (len(full) + 1)
        mj = -xj % p
        for k, v in enumerate(full):
            if v:
                new[k] = (new[k] + v * mj) % p
                new[k + 1] = (new[k + 1] + v) % p
        full = new
    out = [0] * n
    for i in range(n):
        if not ys[i]:
            continue
        # num_i = full / (x - x_i) by synthetic division
        num = [0] * n
        carry = 0
        for k in range(n, 0, -1):
            carry = (full[k] + carry * xs[i]) % p
            num[k - 1] = carry
        # den = product_{j != i} (x_i - x_j) = (d/dx full)(x_i)
        den = 0
        power = 1
        for k in range(1, n + 1):
            den = (den + k * full[k] * power) % p
            power = power * xs[i] % p
        scale = ys[i] * pow(den, -1, p) % p
        for k in range(n):
            out[k] = (out[k] + scale * num[k]) % p
    return out


def gauss_norm_support(chi: DirichletChar) -> set[int]:
    """Primes dividing the norm of W(chi); contained in the conductor primes."""
    from .intmath import factorint

    n = gauss_norm_abs(chi)
    out = set()
    for p in factorint(chi.modulus):
        while n % p == 0:
            out.add(p)
            n //= p
    if n > 1:
        out |= set(factorint(n))
    return out
