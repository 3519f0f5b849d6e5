"""Auxiliary weight-raising forms, Sturm-bound parameters, and the log-log
bound on the index product.

select_A picks, per (ell, N), the smallest-weight Eisenstein combination
that is congruent to 1 at every place above ell; verify_A_congruence checks
that congruence on an initial segment of the q-expansion. The comparisons
inside loglog_upper use exact rational enclosures of log, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .characters import DirichletChar
from .cyclo import CycNum
from .errors import IntegralityError
from .intmath import factorint, log_bounds, loglog_bounds, primitive_root
from .qexp import QExp, e2, eisenstein, scale, sub
from .residues import Place, cyclotomic_context


@dataclass
class ThetaLiftForm:
    """A form congruent to 1 mod every place above ell, with its provenance."""

    qexp: QExp
    weight: int
    char: DirichletChar
    row: str


@dataclass
class SturmParams:
    a: int
    b: int
    ktilde: int
    bound: mpq | None = None


def is_bad(ell: int, N: int) -> bool:
    """(2,1), or ell = 3 with every prime factor of N congruent to 1 mod 9."""
    if ell == 2:
        return N == 1
    if ell == 3:
        return N % 3 != 0 and all(p % 9 == 1 for p in factorint(N))
    return False


def _least_prime_factor_with(N: int, pred) -> int | None:
    ps = sorted(p for p in factorint(N) if pred(p))
    return ps[0] if ps else None


def _order_2m_char(p: int) -> tuple[DirichletChar, int]:
    """The character mod p sending the least primitive root to zeta_{2^m},
    2^m the largest power of 2 dividing p - 1."""
    m = 0
    t = p - 1
    while t % 2 == 0:
        t //= 2
        m += 1
    order = 2 ** m
    g = primitive_root(p)
    # canonical generator of (Z/p)^x is g itself; exponent 1/order
    return DirichletChar(p, (mpq(1, order),)), order


def _order3_char(p: int) -> DirichletChar:
    return DirichletChar(p, (mpq(1, 3),))


def teichmueller_char(ell: int, place: Place) -> DirichletChar:
    """The Dirichlet character mod ell lifting the cyclotomic character mod ell
    at the given place: its value at the least primitive root g reduces to g."""
    g = primitive_root(ell)
    gbar = place.field.from_int(g)
    for j in range(ell - 1):
        if place.root_image(ell - 1, j) == gbar:
            return DirichletChar(ell, (mpq(j, ell - 1),))
    raise IntegralityError("no Teichmueller exponent matches the place")


def select_A(ell: int, N: int, place: Place | None = None, prec: int = 60) -> ThetaLiftForm:
    """The table row for (ell, N): a form A with A = 1 mod every place above ell."""
    triv1 = DirichletChar.trivial(1)
    if ell >= 5:
        if N % ell == 0:
            if place is None:
                raise ValueError("the ell | N row needs a residue place to fix the lift")
            chi = teichmueller_char(ell, place)
            E = eisenstein(1, triv1, chi.inverse().primitive_part(), prec)
            return ThetaLiftForm(scale(E, 2 * ell), 1, E.char, "ell5_level")
        E = eisenstein(ell - 1, triv1, triv1, prec)
        return ThetaLiftForm(scale(E, -2 * ell), ell - 1, E.char, "ell5_coprime")
    if ell == 2:
        if N % 4 == 0:
            chi4 = DirichletChar.from_conrey(4, 3)
            E = eisenstein(1, triv1, chi4, prec)
            return ThetaLiftForm(scale(E, 4), 1, E.char, "ell2_4divN")
        if N >= 3:
            p = _least_prime_factor_with(N, lambda q: q % 2 == 1)
            chi, order = _order_2m_char(p)
            E = eisenstein(1, triv1, chi, prec)
            zeta = CycNum.zeta(order)
            return ThetaLiftForm(scale(E, zeta - 1), 1, E.char, "ell2_odd")
        if N == 2:
            E = eisenstein(2, triv1, DirichletChar.trivial(2), prec)
            return ThetaLiftForm(scale(E, 24), 2, E.char, "ell2_level2")
        E = eisenstein(4, triv1, triv1, prec)
        return ThetaLiftForm(scale(E, 240), 4, E.char, "ell2_level1")
    if ell == 3:
        if N % 3 == 0:
            chi3 = _order_2m_char(3)[0]  # the quadratic character mod 3
            E = eisenstein(1, triv1, chi3, prec)
            return ThetaLiftForm(scale(E, 6), 1, E.char, "ell3_level")
        p = _least_prime_factor_with(N, lambda q: q % 3 == 2)
        if p is not None:
            E = eisenstein(2, triv1, DirichletChar.trivial(p), prec)
            return ThetaLiftForm(scale(E, mpq(24, p - 1)), 2, E.char, "ell3_2mod3")
        # all prime factors are 1 mod 3 here; 3 | p-1 exactly once means p != 1 mod 9
        p = _least_prime_factor_with(N, lambda q: q % 3 == 1 and q % 9 != 1)
        if p is not None:
            chi = _order3_char(p)
            diff = sub(eisenstein(2, triv1, chi, prec), eisenstein(2, chi, triv1, prec))
            return ThetaLiftForm(scale(diff, mpq(3, p - 1)), 2, diff.char, "ell3_4mod9")
        E = eisenstein(4, triv1, triv1, prec)
        return ThetaLiftForm(scale(E, 240), 4, E.char, "ell3_bad")
    raise ValueError("ell must be prime")


def alternate_bad_form(prec: int = 60) -> ThetaLiftForm:
    """-504 E_6, also congruent to 1 at the bad pairs."""
    triv1 = DirichletChar.trivial(1)
    E = eisenstein(6, triv1, triv1, prec)
    return ThetaLiftForm(scale(E, -504), 6, E.char, "bad_alternate")


def verify_A_congruence(A: ThetaLiftForm, place: Place, prec: int) -> bool:
    """a_0(A) = 1 and a_n(A) = 0 mod the place for 1 <= n < prec."""
    if prec > A.qexp.prec:
        prec = A.qexp.prec
    one = place.field.one
    for n in range(prec):
        img = place.red_cyc(A.qexp.co[n])
        if n == 0:
            if img != one:
                return False
        elif not img.is_zero():
            return False
    return True


def sturm_bound(N: int, k) -> mpq:
    """B(N, k) = N k / 12 * prod_{p | N} (1 + 1/p), exact."""
    out = mpq(N) * mpq(k) / 12
    for p in factorint(N):
        out *= mpq(p + 1, p)
    return out


def sturm_params(kf: int, mf: int, kg: int, mg: int, ell: int, N: int) -> SturmParams:
    """(a, b, ktilde) of the equal-character Sturm comparison at level N."""
    bad = is_bad(ell, N)
    if ell == 2 and N == 2:
        b = 4
    elif N % ell == 0:
        b = 3
    elif bad:
        b = 6
    else:
        b = ell + 1
    a = 4 if bad and (kf + 2 * mf - kg - 2 * mg - 2) % 4 == 0 else 0
    ktilde = a + max(kf + b * mf, kg + b * mg)
    return SturmParams(a, b, ktilde, sturm_bound(N, ktilde))


# ---------------------------------------------------------------------------

_LOG3_GT_1_CHECKED = False


def _index_product(n: int, factors=None) -> mpq:
    out = mpq(1)
    for p in (factors if factors is not None else factorint(n)):
        out *= mpq(p + 1, p)
    return out


def loglog_upper(n: int, factors=None) -> bool:
    """Certified check of prod_{p|n}(1 + 1/p) <= 2 log log n + 2.4.

    The right side is lower-bounded by an exact rational enclosure with
    outward rounding, so True is a proof; the cheap 2.4 path applies once
    log log n >= 0 is certified (n >= 3 suffices since log 3 > 1).
    """
    global _LOG3_GT_1_CHECKED
    if n < 2:
        raise ValueError("need n >= 2")
    s = _index_product(n, factors)
    if n >= 3 and s <= mpq(12, 5):
        if not _LOG3_GT_1_CHECKED:
            lo, _ = log_bounds(mpq(3))
            if lo <= 1:
                raise AssertionError("log(3) lower bound unexpectedly <= 1")
            _LOG3_GT_1_CHECKED = True
        return True
    for bits in (96, 256, 1024):
        lo, _ = loglog_bounds(n, bits)
        rhs_lo = 2 * lo + mpq(12, 5)
        if s <= rhs_lo:
            return True
        _, hi = loglog_bounds(n, bits)
        if s > 2 * hi + mpq(12, 5):
            return False
    return False
