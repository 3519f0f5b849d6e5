"""Prime ideals above a rational prime, residue fields, and reduction places.

factor_rational_prime decomposes O/ell O from the integral-basis
multiplication table: the nilradical is the kernel of the iterated
Frobenius (which is F_ell-linear), the semisimple quotient splits into
fields through its Frobenius-fixed subalgebra, and primary-component
dimensions come from lifted idempotents. This stays correct when ell
divides the index of the power basis.

A ResidueContext packages a prime together with a big enough field
F_{ell^L} and the full list of images of the required prime-to-ell root of
unity; each choice of image is one (restriction of a) place of Qbar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from . import poly
from .cyclo import CycNum
from .errors import DataError, IntegralityError, InternalError
from .ffield import FFElem, FiniteField, find_irreducible
from .intmath import (balanced_residue, multiplicative_order, prime_to_part,
                      valuation)
from .nfield import NFElem, NumberField
from .poly import PrimeField


# ---------------------------------------------------------------------------
# linear algebra mod p (row vectors; maps act as v -> v @ M)

def _rref(rows, p):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r]], pivots


def _nullspace(M, p):
    """Basis of {v : v @ M = 0} (v row vector of len(M))."""
    n = len(M)
    if n == 0:
        return []
    m = len(M[0])
    # transpose: columns of M^T are the rows of M; solve M^T x = 0 with x len n
    Mt = [[M[i][j] % p for i in range(n)] for j in range(m)]
    R, pivots = _rref(Mt, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[fcol] % p
        basis.append(tuple(v))
    return basis


def _solve_in_span(basis_rows, v, p):
    """Coordinates of v in the span of basis_rows, or None."""
    if not basis_rows:
        return None if any(x % p for x in v) else ()
    R, pivots = _rref(basis_rows, p)
    # track transformation: redo elimination on the augmented system
    aug = [list(b) + [1 if i == j else 0 for j in range(len(basis_rows))]
           for i, b in enumerate(basis_rows)]
    n = len(basis_rows[0])
    r = 0
    pivcols = []
    for c in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivcols.append(c)
        r += 1
    coeffs = [0] * len(basis_rows)
    v = [x % p for x in v]
    for row, pc in zip(aug[:r], pivcols):
        c = v[pc]
        if c:
            for k in range(len(basis_rows)):
                coeffs[k] = (coeffs[k] + c * row[n + k]) % p
            for j in range(n):
                v[j] = (v[j] - c * row[j]) % p
    if any(v):
        return None
    return tuple(coeffs)


# ---------------------------------------------------------------------------

@dataclass
class PrimeIdealData:
    """A prime of O_K above ell with its residue machinery."""

    nf: NumberField
    ell: int
    e: int
    f: int
    resfield: FiniteField
    basis_images: tuple  # FFElem image of each integral basis element
    display: str
    display_poly: tuple | None  # balanced integer coeffs of h with ideal (ell, h(theta))

    def __repr__(self):
        return self.display

    def theta_image(self) -> FFElem:
        co = self.nf.to_integral_coords(self.nf.gen())
        return self._combine(co)

    def _combine(self, integral_coords) -> FFElem:
        out = self.resfield.zero
        for c, img in zip(integral_coords, self.basis_images):
            c = mpq(c)
            den = int(c.denominator)
            if den % self.ell == 0:
                raise IntegralityError(
                    f"element has denominator divisible by {self.ell}")
            val = int(c.numerator) * pow(den, -1, self.ell) % self.ell
            if val:
                out = out + img * val
        return out


def reduce_nf(x: NFElem, P: PrimeIdealData) -> FFElem:
    """Ring-morphism image of a P-integral element in the residue field."""
    return P._combine(P.nf.to_integral_coords(x))


@lru_cache(maxsize=None)
def _mult_table(K: NumberField):
    d = K.degree
    table = []
    for i in range(d):
        wi = K.from_integral_coords([1 if t == i else 0 for t in range(d)])
        row = []
        for j in range(d):
            wj = K.from_integral_coords([1 if t == j else 0 for t in range(d)])
            co = K.to_integral_coords(wi * wj)
            ints = []
            for c in co:
                c = mpq(c)
                if c.denominator != 1:
                    raise DataError(
                        "integral basis is not multiplicatively closed "
                        f"(omega_{i+1} * omega_{j+1} leaves the lattice)")
                ints.append(int(c))
            row.append(tuple(ints))
        table.append(row)
    return table


class _Alg:
    """A finite commutative F_ell-algebra carried through the splitting."""

    def __init__(self, ell, table, unit, basis_in_A, aimages):
        self.ell = ell
        self.dim = len(table)
        self.table = table          # table[i][j] = coords of b_i b_j
        self.unit = unit            # coords of 1
        self.basis_in_A = basis_in_A  # rows: basis elements as A-coordinates
        self.aimages = aimages      # images of the original A-basis, as coords here

    def mul(self, u, v):
        p = self.ell
        out = [0] * self.dim
        for i, x in enumerate(u):
            if x % p:
                for j, y in enumerate(v):
                    if y % p:
                        w = x * y % p
                        row = self.table[i][j]
                        for k in range(self.dim):
                            out[k] = (out[k] + w * row[k]) % p
        return tuple(out)

    def power(self, v, n):
        out = tuple(self.unit)
        base = v
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frob_matrix(self):
        basis = [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]
        return [list(self.power(b, self.ell)) for b in basis]

    def minpoly(self, v):
        """Monic minimal polynomial of v over F_ell."""
        p = self.ell
        rows = [tuple(self.unit)]
        cur = tuple(self.unit)
        while True:
            cur = self.mul(cur, v)
            sol = _solve_in_span(rows, cur, p)
            if sol is not None:
                co = [(-c) % p for c in sol] + [1]
                return tuple(co)
            rows.append(cur)

    def subalgebra(self, rows):
        """The (unital) subalgebra spanned by rows (must be closed)."""
        p = self.ell
        table = []
        for i, bi in enumerate(rows):
            trow = []
            for j, bj in enumerate(rows):
                prod = self.mul(bi, bj)
                co = _solve_in_span(rows, prod, p)
                if co is None:
                    raise InternalError("subalgebra is not closed under multiplication")
                trow.append(co)
            table.append(trow)
        return table


def _matrix_rank(rows, p):
    return len(_rref([list(r) for r in rows], p)[0])


def factor_rational_prime(K: NumberField, ell: int) -> list[PrimeIdealData]:
    """All primes of O_K above ell, with residue fields and reduction maps."""
    d = K.degree
    table = _mult_table(K)
    A = _Alg(ell, table,
             tuple(int(c) % ell for c in K.to_integral_coords(K.one())),
             [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)],
             [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)])

    # nilradical: kernel of iterated Frobenius
    frob = A.frob_matrix()
    m = 1
    while ell ** m < d:
        m += 1
    fm = frob
    for _ in range(m - 1):
        fm = [[sum(fm[i][k] * frob[k][j] for k in range(d)) % ell for j in range(d)]
              for i in range(d)]
    nil_basis = _nullspace(fm, ell)

    # semisimple quotient: complement coordinates
    R, pivots = _rref(nil_basis, ell) if nil_basis else ([], [])
    free = [c for c in range(d) if c not in pivots]

    def project(v):
        v = [x % ell for x in v]
        for row, pc in zip(R, pivots):
            c = v[pc]
            if c:
                for j in range(d):
                    v[j] = (v[j] - c * row[j]) % ell
        return tuple(v[c] for c in free)

    s_dim = len(free)
    sec_rows = [tuple(1 if j == c else 0 for j in range(d)) for c in free]
    s_table = []
    for i, c1 in enumerate(free):
        trow = []
        for j, c2 in enumerate(free):
            prod = A.mul(sec_rows[i], sec_rows[j])
            trow.append(project(prod))
        s_table.append(trow)
    S = _Alg(ell, s_table, project(A.unit), sec_rows,
             [project(b) for b in A.aimages])

    fields = []
    _split_fields(S, fields)

    # primary component dimensions via idempotent lifting
    out = []
    for comp in fields:
        f_deg = comp.dim
        e_hat = [0] * d
        for c, row in zip(comp.unit, comp.basis_in_A):
            if c:
                for j in range(d):
                    e_hat[j] = (e_hat[j] + c * row[j]) % ell
        e_elt = tuple(e_hat)
        for _ in range(d.bit_length() + 2):
            sq = A.mul(e_elt, e_elt)
            if sq == e_elt:
                break
            cube = A.mul(sq, e_elt)
            e_elt = tuple((3 * a - 2 * b) % ell for a, b in zip(sq, cube))
        else:
            raise InternalError("idempotent lifting did not converge")
        mult_e = [A.mul(tuple(1 if j == i else 0 for j in range(d)), e_elt)
                  for i in range(d)]
        dim_primary = _matrix_rank(mult_e, ell)
        if dim_primary % f_deg:
            raise InternalError("primary component dimension inconsistent")
        out.append((dim_primary // f_deg, comp))
    if sum(e * comp.dim for e, comp in out) != d:
        raise InternalError("sum of e_i f_i does not match the field degree")

    primes = []
    for e_mult, comp in out:
        resfield, images = _realize_field(comp)
        P = PrimeIdealData(K, ell, e_mult, comp.dim, resfield, tuple(images), "", None)
        primes.append(P)
    _attach_displays(K, ell, primes)
    primes.sort(key=lambda P: (P.f, P.display))

    if K.index_denominator() % ell:
        _dedekind_crosscheck(K, ell, primes)
    return primes


def _split_fields(S: _Alg, sink: list):
    ell = S.ell
    frob = S.frob_matrix()
    eye = [[1 if i == j else 0 for j in range(S.dim)] for i in range(S.dim)]
    fm = [[(frob[i][j] - eye[i][j]) % ell for j in range(S.dim)] for i in range(S.dim)]
    fixed = _nullspace(fm, ell)
    if len(fixed) == 1:
        sink.append(S)
        return
    # pick a fixed element not in the span of the unit
    b = None
    for cand in fixed:
        if _solve_in_span([S.unit], cand, ell) is None:
            b = cand
            break
    if b is None:
        raise InternalError("Frobenius-fixed algebra has no splitting element")
    mp = S.minpoly(b)
    Fp = PrimeField(ell)
    roots = sorted(poly.roots_in_field(Fp, poly.ptrim(mp)))
    if len(roots) < 2:
        raise InternalError("splitting element has too few eigenvalues")
    mult_b = [S.mul(tuple(1 if j == i else 0 for j in range(S.dim)), b)
              for i in range(S.dim)]
    kern_bases = []
    for c in roots:
        shifted = [[(mult_b[i][j] - (c if i == j else 0)) % ell for j in range(S.dim)]
                   for i in range(S.dim)]
        kern_bases.append(_nullspace(shifted, ell))
    all_rows = [v for kb in kern_bases for v in kb]
    if len(all_rows) != S.dim:
        raise InternalError("eigenspace decomposition does not fill the algebra")
    unit_coords = _solve_in_span(all_rows, S.unit, ell)
    if unit_coords is None:
        raise InternalError("unit is outside the eigenspace sum")
    offset = 0
    for kb in kern_bases:
        k = len(kb)
        comp_table = []
        for i in range(k):
            row = []
            for j in range(k):
                prod = S.mul(kb[i], kb[j])
                co = _solve_in_span(kb, prod, ell)
                if co is None:
                    raise InternalError("eigenspace is not multiplicatively closed")
                row.append(co)
            comp_table.append(row)
        unit_c = tuple(unit_coords[offset + t] for t in range(k))
        basis_in_A = []
        for v in kb:
            row = [0] * len(S.basis_in_A[0])
            for c, srow in zip(v, S.basis_in_A):
                if c:
                    for j in range(len(row)):
                        row[j] = (row[j] + c * srow[j]) % ell
            basis_in_A.append(tuple(row))
        aimages = []
        for img in S.aimages:
            co = _project_on(kb, kern_bases, offset, img, all_rows, ell)
            aimages.append(co)
        comp = _Alg(ell, comp_table, unit_c, basis_in_A, aimages)
        _split_fields(comp, sink)
        offset += k


def _project_on(kb, kern_bases, offset, v, all_rows, ell):
    co = _solve_in_span(all_rows, v, ell)
    if co is None:
        raise InternalError("projection outside the eigenspace sum")
    return tuple(co[offset + t] for t in range(len(kb)))


def _realize_field(comp: _Alg):
    """Concretize a field component as F_ell[z]/(h) and map the A-basis."""
    ell, k = comp.ell, comp.dim
    gen = h = None
    # deterministic generator search: basis vectors, pairwise sums, then a
    # reproducible pseudorandom stream (a field of size ell^k has few
    # non-generators, so this terminates almost immediately)
    candidates = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    candidates += [tuple((a + b) % ell for a, b in zip(u, v))
                   for i, u in enumerate(candidates) for v in candidates[i + 1:]]
    stream = poly._DetStream(ell * 1000003 + k)
    for trial in range(10000):
        cand = candidates[trial] if trial < len(candidates) else tuple(
            stream.next(ell) for _ in range(k))
        mp = comp.minpoly(cand)
        if len(mp) - 1 == k:
            gen, h = cand, mp
            break
    if gen is None:
        raise InternalError("could not find a primitive element")
    resfield = FiniteField(ell, h)
    powers = [tuple(comp.unit)]
    for _ in range(k - 1):
        powers.append(comp.mul(powers[-1], gen))
    images = []
    for img in comp.aimages:
        co = _solve_in_span(powers, img, ell)
        if co is None:
            raise InternalError("A-basis image outside the power basis")
        images.append(resfield.from_coeffs(list(co)))
    return resfield, images


def _attach_displays(K: NumberField, ell: int, primes: list[PrimeIdealData]):
    d = K.degree
    if len(primes) == 1 and primes[0].e == 1 and primes[0].f == d:
        primes[0].display = f"({ell})"
        primes[0].display_poly = None
        return
    polys = []
    for P in primes:
        th = P.theta_image()
        co = _ff_minpoly(th)
        lifted = tuple(balanced_residue(c, ell) for c in co)
        polys.append(lifted)
    if len(set(polys)) == len(polys):
        for P, h in zip(primes, polys):
            P.display = f"({ell},{_int_poly_str(h, K.var)})"
            P.display_poly = h
    else:
        for i, P in enumerate(primes):
            P.display = f"({ell};component {i+1})"
            P.display_poly = None


def _ff_minpoly(x: FFElem) -> tuple[int, ...]:
    """Minimal polynomial of x over the prime field."""
    F = x.field
    p = F.p
    rows = [tuple(F.one.co)]
    cur = F.one
    while True:
        cur = cur * x
        sol = _solve_in_span(rows, cur.co, p)
        if sol is not None:
            return tuple([(-c) % p for c in sol] + [1])
        rows.append(tuple(cur.co))


def _int_poly_str(coeffs, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else str(mag)
            body = f"{coef}{var}" if i == 1 else f"{coef}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(terms) if terms else "0"


def _dedekind_crosscheck(K: NumberField, ell: int, primes: list[PrimeIdealData]):
    """When ell does not divide the power-basis index, the factorization of g
    mod ell must reproduce the (e, f) profile."""
    from .poly import poly_factor_mod

    factors = poly_factor_mod(K.g, ell)
    profile1 = sorted((len(h) - 1, mult) for h, mult in factors)
    profile2 = sorted((P.f, P.e) for P in primes)
    if profile1 != profile2:
        raise InternalError(
            f"Dedekind cross-check failed at {ell}: {profile1} vs {profile2}")


# ---------------------------------------------------------------------------
# residue contexts and places

class Place:
    """One embedding choice: reduction of K and of prime-to-ell roots of unity."""

    def __init__(self, ctx: "ResidueContext", w: FFElem, index: int):
        self.ctx = ctx
        self.w = w
        self.index = index
        self._root_cache: dict[int, FFElem] = {}

    @property
    def ell(self) -> int:
        return self.ctx.ell

    @property
    def field(self) -> FiniteField:
        return self.ctx.bigfield

    def root_image(self, n: int, t: int = 1) -> FFElem:
        """Image of zeta_n^t: the ell-power part of n collapses to 1."""
        base = self._root_cache.get(n)
        if base is None:
            ell = self.ctx.ell
            a = 1
            nn = n
            while nn % ell == 0:
                nn //= ell
                a *= ell
            if self.ctx.mprime % nn:
                raise InternalError(f"context only embeds orders dividing {self.ctx.mprime}")
            exp = self.ctx.mprime // nn
            if nn > 1 and a > 1:
                exp = exp * pow(a, -1, nn) % self.ctx.mprime
            base = self.w ** exp if nn > 1 else self.ctx.bigfield.one
            self._root_cache[n] = base
        return base ** (t % n) if t % n else self.ctx.bigfield.one

    def red_int(self, n: int) -> FFElem:
        return self.ctx.bigfield.from_int(n)

    def red_rat(self, q) -> FFElem:
        q = mpq(q)
        den = int(q.denominator)
        if den % self.ctx.ell == 0:
            raise IntegralityError(f"denominator divisible by {self.ctx.ell}")
        return self.ctx.bigfield.from_int(int(q.numerator) * pow(den, -1, self.ctx.ell))

    def red_cyc(self, x: CycNum) -> FFElem:
        img = self.root_image(x.n)
        out = self.ctx.bigfield.zero
        power = self.ctx.bigfield.one
        for c in x.co:
            if c:
                out = out + power * self.red_rat(c)
            power = power * img
        return out

    def red_nf(self, x: NFElem) -> FFElem:
        if self.ctx.prime is None:
            raise InternalError("context has no number-field component")
        co = self.ctx.prime.nf.to_integral_coords(x)
        out = self.ctx.bigfield.zero
        for c, img in zip(co, self.ctx.omega_images):
            c = mpq(c)
            den = int(c.denominator)
            if den % self.ctx.ell == 0:
                raise IntegralityError(
                    f"element has denominator divisible by {self.ctx.ell}")
            val = int(c.numerator) * pow(den, -1, self.ctx.ell) % self.ctx.ell
            if val:
                out = out + img * val
        return out


class ResidueContext:
    """A prime (optional) plus all embeddings of the needed roots of unity."""

    def __init__(self, ell: int, m: int, prime: PrimeIdealData | None = None):
        self.ell = ell
        self.m = m
        self.prime = prime
        self.mprime = prime_to_part(m, ell)
        dz = multiplicative_order(ell, self.mprime) if self.mprime > 1 else 1
        f = prime.f if prime is not None else 1
        L = f * dz // gcd(f, dz)
        if prime is not None and L == prime.f:
            self.bigfield = prime.resfield
            self.omega_images = prime.basis_images
        else:
            self.bigfield = FiniteField(ell, find_irreducible(ell, L))
            if prime is not None:
                root = _embed_root(prime.resfield, self.bigfield)
                self.omega_images = tuple(
                    _eval_ff_poly(img, root, self.bigfield) for img in prime.basis_images)
            else:
                self.omega_images = None
        if self.mprime == 1:
            self.zeta_images = (self.bigfield.one,)
        else:
            w0 = self.bigfield.element_of_order(self.mprime)
            self.zeta_images = tuple(
                w0 ** j for j in range(1, self.mprime) if gcd(j, self.mprime) == 1)

    def places(self) -> list[Place]:
        return [Place(self, w, i) for i, w in enumerate(self.zeta_images)]


def _embed_root(small: FiniteField, big: FiniteField) -> FFElem:
    """A root in `big` of the modulus of `small` (deterministic choice)."""
    Fbig = big
    h = [big.from_int(c) for c in small.modulus]
    roots = poly.roots_in_field(Fbig, poly.ptrim(tuple(h)))
    if not roots:
        raise InternalError("modulus has no root in the extension")
    roots.sort(key=lambda r: r.co)
    return roots[0]


def _eval_ff_poly(x_small: FFElem, root: FFElem, big: FiniteField) -> FFElem:
    out = big.zero
    power = big.one
    for c in x_small.co:
        if c:
            out = out + power * c
        power = power * root
    return out


def embed_roots(m: int, P: PrimeIdealData) -> ResidueContext:
    """All images of zeta_m (ell-power part stripped) compatible with P."""
    return ResidueContext(P.ell, m, P)


def cyclotomic_context(ell: int, m: int) -> ResidueContext:
    """A context for reducing Q(zeta_m) mod ell without a number field."""
    return ResidueContext(ell, m, None)


# ---------------------------------------------------------------------------
# ideal display parsing

def parse_poly(s: str, var: str):
    """Parse an integer polynomial like 'x^2-2x-2' into a coeff list."""
    s = s.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise DataError("empty polynomial")
    tokens = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
    tokens.append(cur)
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        elif tok.startswith("+"):
            tok = tok[1:]
        if var in tok:
            head, _, tail = tok.partition(var)
            coef = int(head) if head else 1
            exp = int(tail[1:]) if tail.startswith("^") else 1
        else:
            coef = int(tok)
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]


def parse_ideal(K: NumberField, primes: list[PrimeIdealData], s: str) -> PrimeIdealData:
    """Match a user-supplied '(ell)' or '(ell, h(theta))' against known primes."""
    body = s.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = body.split(",", 1)
    try:
        ell = int(parts[0].strip())
    except ValueError as exc:
        raise DataError(f"cannot parse ideal {s!r}") from exc
    cands = [P for P in primes if P.ell == ell]
    if not cands:
        raise DataError(f"no prime above {ell} among the given primes")
    if len(parts) == 1:
        if len(cands) == 1:
            return cands[0]
        raise DataError(f"({ell}) is ambiguous: {[P.display for P in cands]}")
    co = parse_poly(parts[1], K.var)
    elem = K(co)
    matches = [P for P in cands if reduce_nf(elem, P).is_zero()]
    if len(matches) == 1:
        return matches[0]
    if not matches:
        raise DataError(f"{s} does not vanish at any prime above {ell}")
    raise DataError(f"{s} does not determine a unique prime above {ell}")
