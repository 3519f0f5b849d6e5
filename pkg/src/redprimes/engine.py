"""The reducibility engine: R-sets, congruence pipelines, candidate primes,
and the dihedral / exotic-image bounds.

Two pipelines cover every prime: the "small" one (ell <= k+1 or
ell | N phi(N)) enumerates quadruples (eps1, eps2, m1, m2) per prime ideal
and checks a_p against p^{m1} eps1(p) + p^{m2} eps2(p) up to a Sturm bound;
the "big" one first bounds the possible residue characteristics through
resultant norms and then verifies the same congruences with
(m1, m2) = (0, k-1). A full pass at every prime p <= B proves reducibility
with the recorded decomposition; the first failing prime is recorded as the
elimination witness and proves irreducibility for that quadruple.

Congruences are checked at every admissible place above lambda: the context
enumerates all images of the needed prime-to-ell root of unity, filtered by
consistency with the declared K_f-values of the nebentypus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from gmpy2 import mpq

from .characters import (DirichletChar, enumerate_primitive_pairs,
                         teichmueller_component, unit_group_structure)
from .cyclo import CycNum, cyc_norm
from .errors import CoefficientBudgetError, DataError, InternalError
from .intmath import (euler_phi, factorint, half_power_upper, loglog_bounds,
                      primes_up_to, valuation)
from .newforms import NewformData
from .nfield import NFElem, NumberField, TensorElem
from .residues import (Place, PrimeIdealData, ResidueContext,
                       factor_rational_prime, reduce_nf)
from .specialvals import gen_bernoulli
from .thetasturm import sturm_bound, sturm_params


@dataclass(frozen=True)
class Quadruple:
    eps1: DirichletChar
    eps2: DirichletChar
    m1: int
    m2: int

    def label(self) -> str:
        return f"({self.eps1.label()},{self.eps2.label()},{self.m1},{self.m2})"

    def decomposition(self):
        """Canonical unordered decomposition [(m, char label), (m, char label)]."""
        parts = [
            (self.m1, self.eps1.conductor(), self.eps1.label()),
            (self.m2, self.eps2.conductor(), self.eps2.label()),
        ]
        parts.sort()
        return tuple((m, lab) for m, _, lab in parts)


@dataclass
class ReducibleWitness:
    prime: PrimeIdealData
    quad: Quadruple
    place_index: int
    bound: mpq
    bp: dict
    pipeline: str
    all_places: list[int] = field(default_factory=list)

    def decomposition(self):
        return self.quad.decomposition()

    def ell(self) -> int:
        return self.prime.ell


@dataclass
class Elimination:
    ideal: str
    ell: int
    quad: Quadruple
    p: int
    lhs: str
    rhs: str

    def __repr__(self):
        return (f"a_{self.p} = {self.lhs} mod {self.ideal}, "
                f"needs {self.rhs} for {self.quad.label()}")


def validate_rl(quad: Quadruple, ell: int) -> bool:
    """Membership of the quadruple in the abstract set of Definition R(ell)."""
    e1, e2, m1, m2 = quad.eps1, quad.eps2, quad.m1, quad.m2
    if not (0 <= m1 <= m2 < ell - 1 or (ell == 2 and m1 == m2 == 0)):
        return False
    if not (e1.is_primitive() and e2.is_primitive()):
        return False
    if gcd(e1.order(), ell) > 1 or gcd(e2.order(), ell) > 1:
        return False
    if e1.conductor() % ell == 0 or e2.conductor() % ell == 0:
        return False
    if ell > 2:
        sign = (e1 * e2).parity()
        if sign != (-1) ** (m1 + m2 + 1):
            return False
    return True


# ---------------------------------------------------------------------------
# Algorithm: the R-set attached to (N, k, eps, lambda)

def _k_ell(f_eps, ell: int, lam: PrimeIdealData, N: int, k: int) -> int:
    """The exponent with (ell-part of eps) = chibar_ell^{k_ell} mod lambda."""
    if ell == 2:
        return 0
    a = valuation(N, ell) if N % ell == 0 else 0
    if a == 0:
        return 0
    la = ell ** a
    gens = unit_group_structure(la)
    k_ell = None
    for g, _ in gens:
        v = f_eps.nf_value_at_part(g, ell)
        img = reduce_nf(v, lam).in_prime_field()
        if img is None:
            raise DataError("ell-part of the character does not reduce into F_ell")
        gbar = g % ell
        cand = None
        for t in range(ell - 1):
            if pow(gbar, t, ell) == img:
                cand = t
                break
        if cand is None:
            raise DataError("character data inconsistent: no exponent matches mod lambda")
        if k_ell is None:
            k_ell = cand
        elif k_ell != cand:
            raise DataError("character data inconsistent across generators")
    return k_ell or 0


def r_nkeps(N: int, k: int, eps, lam: PrimeIdealData) -> list[Quadruple]:
    """Quadruples (eps1, eps2, m1, m2) compatible with (N, k, eps) at lambda."""
    ell = lam.ell
    chi_prime = _prime_to_ell_char(eps.char, ell)
    chi2, _ = teichmueller_component(chi_prime, ell)
    k_ell = _k_ell(eps, ell, lam, N, k)
    if ell == 2:
        mpairs = [(0, 0)]
    else:
        target = (k + k_ell - 1) % (ell - 1)
        mpairs = [(m1, m2)
                  for m1 in range(ell - 1) for m2 in range(m1, ell - 1)
                  if (m1 + m2) % (ell - 1) == target]
    epairs = enumerate_primitive_pairs(
        N, target=chi2, skip_p=ell, order_coprime_to=ell, unramified_at=ell)
    out = []
    for e1, e2 in epairs:
        for m1, m2 in mpairs:
            q = Quadruple(e1, e2, m1, m2)
            if validate_rl(q, ell):
                out.append(q)
    return out


def _prime_to_ell_char(chi: DirichletChar, ell: int) -> DirichletChar:
    """The prime-to-ell conductor part of chi (at its own modulus)."""
    out = None
    for p in factorint(chi.modulus):
        if p == ell:
            continue
        part = chi.p_part(p)
        out = part if out is None else out * part
    return out if out is not None else DirichletChar.trivial(1)


# ---------------------------------------------------------------------------
# Eisenstein bookkeeping: k', r, N'

@dataclass
class EisSetup:
    kprime: int
    r: int
    level: int  # lcm(c1 c2, r)
    descriptor: str


def eisenstein_setup(quad: Quadruple, ell: int) -> EisSetup:
    e1, e2, m1, m2 = quad.eps1, quad.eps2, quad.m1, quad.m2
    kprime = 2 if ell == 2 else m2 - m1 + 1
    exceptional = (
        (ell == 2 and e1.is_trivial() and not e2.is_trivial())
        or (ell >= 5 and e1.is_trivial() and e2.is_trivial() and (m1, m2) == (0, ell - 2))
        or (kprime == 2 and e1.is_trivial() and e2.is_trivial())
    )
    r = 4 if exceptional else 1
    c1c2 = e1.conductor() * e2.conductor()
    level = c1c2 * r // gcd(c1c2, r)
    return EisSetup(kprime, r, level, "(E0)_2^0" if r == 4 else "E0")


def n_prime(f: NewformData, r: int) -> int:
    """The working level N': N, 2N or 4N according to r and a_2(f)."""
    if r == 1:
        return f.level
    if r != 4:
        raise ValueError("r must be 1 or 4")
    if f.level % 2 == 0:
        return f.level if f.a(2).is_zero() else 2 * f.level
    return 4 * f.level


# ---------------------------------------------------------------------------
# place enumeration with nebentypus-consistency pins

def _pins(f: NewformData, ell: int):
    """(value in K_f, exponent x, order o) pins: the reduction of the declared
    prime-to-ell part of eps must match the abstract Teichmueller component."""
    chi_prime = _prime_to_ell_char(f.eps.char, ell)
    chi2, _ = teichmueller_component(chi_prime, ell)
    o = chi2.order()
    pins = []
    for g, _ in unit_group_structure(f.level):
        v = f.eps.nf_value_prime_to(g, ell)
        x = chi2.value_exponent(g % chi2.modulus if chi2.modulus > 1 else 1)
        pins.append((v, int(x * o), o))
    return pins


def _admissible_places(f: NewformData, lam: PrimeIdealData, m: int) -> list[Place]:
    pins = _pins(f, lam.ell)
    o_all = 1
    for _, _, o in pins:
        o_all = o_all * o // gcd(o_all, o)
    m = m * o_all // gcd(m, o_all)
    ctx = ResidueContext(lam.ell, m, lam)
    out = []
    for pl in ctx.places():
        ok = True
        for v, t, o in pins:
            if pl.red_nf(v) != pl.root_image(o, t):
                ok = False
                break
        if ok:
            out.append(pl)
    if not out:
        raise DataError(
            f"no residue place above {lam.display} is consistent with the "
            "declared character values")
    return out


def _char_image(pl: Place, chi: DirichletChar, p: int):
    """Image of chi(p) at the place, or None when p divides the conductor."""
    x = chi.value_exponent(p)
    if x is None:
        return None
    o = chi.order()
    return pl.root_image(o, int(x * o))


# ---------------------------------------------------------------------------
# the small pipeline (ell <= k+1 or ell | N phi(N))

def check_reducible_small(f: NewformData, lam: PrimeIdealData, quad: Quadruple,
                          conservative: bool = False, places_mode: str = "first",
                          bound_scale: int = 1):
    """Run the congruence suite for one quadruple at one prime ideal.

    Returns (witness, elimination); exactly one is not None unless the data
    runs out (CoefficientBudgetError).
    """
    ell = lam.ell
    setup = eisenstein_setup(quad, ell)
    Np = n_prime(f, setup.r)
    if ell == 2 and Np < 3:
        raise InternalError("N' < 3 at ell = 2 contradicts the level bookkeeping")
    m_eff = quad.m2 if conservative else quad.m1
    params = sturm_params(f.weight, 1, setup.kprime, m_eff + 1, ell, Np)
    B = params.bound * bound_scale
    m = quad.eps1.order() * quad.eps2.order() // gcd(quad.eps1.order(), quad.eps2.order())
    places = _admissible_places(f, lam, m)
    # the theorem only needs p coprime to r*ell, but the congruence is necessary
    # at every p != ell, so primes dividing r are kept: they sharpen the
    # elimination trace and can never reject a genuinely reducible quadruple
    checks = [p for p in primes_up_to(int(B)) if p != ell]
    first_elim = None
    passing = []
    witness = None
    for pl in places:
        elim = _small_suite(f, lam, quad, pl, checks, B)
        if elim is None:
            if witness is None:
                witness = ReducibleWitness(lam, quad, pl.index, B,
                                           _small_bp(f, lam, quad, pl, checks), "small")
            passing.append(pl.index)
            if places_mode == "first":
                break
        elif first_elim is None:
            first_elim = elim
    if witness is not None:
        witness.all_places = passing
        return witness, None
    return None, first_elim


def _small_suite(f: NewformData, lam: PrimeIdealData, quad: Quadruple, pl: Place,
                 checks, B):
    ell = lam.ell
    N = f.level
    for p in checks:
        if p > f.nmax:
            raise CoefficientBudgetError(B, f.nmax,
                                         context=f"{f.label} at {lam.display}, "
                                                 f"quadruple {quad.label()}")
        ap = pl.red_nf(f.a(p, bound=B))
        if N % p:
            i1 = _char_image(pl, quad.eps1, p)
            i2 = _char_image(pl, quad.eps2, p)
            rhs = i1 * pow(p, quad.m1, ell) + i2 * pow(p, quad.m2, ell)
            if ap != rhs:
                return Elimination(lam.display, ell, quad, p, repr(ap), repr(rhs))
        else:
            ok = False
            for _, val in _bp_menu(pl, quad, p, ell):
                if ap == val * pow(p, quad.m1, ell):
                    ok = True
                    break
            if not ok:
                menu = " or ".join(
                    repr(v * pow(p, quad.m1, ell)) for _, v in _bp_menu(pl, quad, p, ell))
                return Elimination(lam.display, ell, quad, p, repr(ap), menu)
    return None


def _bp_menu(pl: Place, quad: Quadruple, p: int, ell: int):
    """The b_p menu at p | N in the fixed search order."""
    zero = pl.field.zero
    i1 = _char_image(pl, quad.eps1, p)
    i2 = _char_image(pl, quad.eps2, p)
    menu = [("0", zero)]
    menu.append(("eps1(p)", i1 if i1 is not None else zero))
    v2 = (i2 if i2 is not None else zero) * pow(p, quad.m2 - quad.m1, ell)
    menu.append(("p^(m2-m1)*eps2(p)", v2))
    return menu


def _small_bp(f, lam, quad, pl, checks):
    out = {}
    ell = lam.ell
    for p in checks:
        if f.level % p == 0:
            ap = pl.red_nf(f.a(p))
            for code, val in _bp_menu(pl, quad, p, ell):
                if ap == val * pow(p, quad.m1, ell):
                    out[p] = code
                    break
    return out


# ---------------------------------------------------------------------------
# the big pipeline (ell > k+1, ell coprime to N phi(N))

def _tensor_order(f: NewformData, e1: DirichletChar, e2: DirichletChar) -> int:
    m = 1
    for o in (e1.order(), e2.order(), f.eps.char.order()):
        m = m * o // gcd(m, o)
    return m


def candidate_primes_big(f: NewformData, e1: DirichletChar, e2: DirichletChar,
                         bound_scale: int = 1) -> set[int]:
    """Primes > k+1, coprime to N phi(N), dividing the gcd of the norms of the
    congruence quantities for the pair (eps1, eps2)."""
    k, N = f.weight, f.level
    quad = Quadruple(e1, e2, 0, k - 1)
    setup = eisenstein_setup(quad, 10 ** 9 + 7)  # ell only matters through ell==2 branches
    Np = n_prime(f, setup.r)
    B = sturm_bound(Np, k) * bound_scale
    m = _tensor_order(f, e1, e2)
    K = f.field
    quantities = []
    if setup.r == 1 and e1.is_trivial():
        eps0 = f.eps.char.primitive_part()
        c = TensorElem.from_cyc(K, gen_bernoulli(k, eps0) * mpq(-1, 2 * k), m)
        for p in sorted(factorint(N)):
            ap = TensorElem.from_nf(f.a(p, bound=B), m)
            term = ap * (ap - TensorElem.from_cyc(K, eps0(p) * p ** (k - 1), m))
            c = c * term
        quantities.append(c)
    for p in primes_up_to(int(B)):
        if N % p == 0 or setup.r % p == 0:
            continue
        q = (TensorElem.from_nf(f.a(p, bound=B), m)
             - TensorElem.from_cyc(K, e1(p), m)
             - TensorElem.from_cyc(K, e2(p) * p ** (k - 1), m))
        quantities.append(q)
    for p in sorted(factorint(N)):
        if setup.r % p == 0 or p > B:
            continue
        ap = TensorElem.from_nf(f.a(p, bound=B), m)
        q = ap * (ap - TensorElem.from_cyc(K, e1(p), m)) \
               * (ap - TensorElem.from_cyc(K, e2(p) * p ** (k - 1), m))
        quantities.append(q)
    g = 0
    nonzero = False
    for q in quantities:
        if q.is_zero():
            continue
        nonzero = True
        nrm = abs(mpq(q.norm()).numerator)
        g = gcd(g, int(nrm))
        if g == 1:
            return set()
    if not nonzero:
        raise DataError("degenerate: every congruence quantity vanishes; "
                        "the candidate set is unbounded, supply more coefficients")
    nphin = N * euler_phi(N)
    return {p for p in factorint(g)
            if p > k + 1 and nphin % p != 0}


def check_reducible_big(f: NewformData, lam: PrimeIdealData,
                        e1: DirichletChar, e2: DirichletChar,
                        places_mode: str = "first", bound_scale: int = 1):
    """bigred congruence suite at lambda for the pair (eps1, eps2)."""
    ell = lam.ell
    k, N = f.weight, f.level
    if ell <= k + 1 or (N * euler_phi(N)) % ell == 0:
        raise ValueError("the big pipeline needs ell > k+1 and ell coprime to N phi(N)")
    quad = Quadruple(e1, e2, 0, k - 1)
    setup = eisenstein_setup(quad, ell)
    Np = n_prime(f, setup.r)
    B = sturm_bound(Np, k) * bound_scale
    m = _tensor_order(f, e1, e2)
    places = _admissible_places(f, lam, m)
    checks = list(primes_up_to(int(B)))  # p = ell handled inside the suite
    first_elim = None
    witness = None
    passing = []
    for pl in places:
        elim = _big_suite(f, lam, e1, e2, setup, pl, checks, B)
        if elim is None:
            if witness is None:
                witness = ReducibleWitness(lam, quad, pl.index, B,
                                           _big_bp(f, lam, e1, e2, pl, checks), "big")
            passing.append(pl.index)
            if places_mode == "first":
                break
        elif first_elim is None:
            first_elim = elim
    if witness is not None:
        witness.all_places = passing
        return witness, None
    return None, first_elim


def _big_suite(f, lam, e1, e2, setup, pl: Place, checks, B):
    ell = lam.ell
    k, N = f.weight, f.level
    quad = Quadruple(e1, e2, 0, k - 1)
    # constant-term obstruction
    if setup.r == 1 and e1.is_trivial():
        eps0 = f.eps.char.primitive_part()
        c = pl.red_cyc(gen_bernoulli(k, eps0) * mpq(-1, 2 * k))
        for p in sorted(factorint(N)):
            ap = pl.red_nf(f.a(p, bound=B))
            i0 = _char_image(pl, eps0, p)
            term = ap * (ap - (i0 if i0 is not None else pl.field.zero) * pow(p, k - 1, ell))
            c = c * term
        if not c.is_zero():
            return Elimination(lam.display, ell, quad, 0, repr(c), "0 (constant term)")
    for p in checks:
        if p == ell and p > f.nmax:
            continue  # ordinarity refinement only when the data reaches a_ell
        if p > f.nmax:
            raise CoefficientBudgetError(B, f.nmax,
                                         context=f"{f.label} at {lam.display}, "
                                                 f"pair ({e1.label()},{e2.label()})")
        ap = pl.red_nf(f.a(p, bound=B))
        if N % p:
            i1 = _char_image(pl, e1, p)
            i2 = _char_image(pl, e2, p)
            rhs = i1 + i2 * pow(p, k - 1, ell)
            if ap != rhs:
                return Elimination(lam.display, ell, quad, p, repr(ap), repr(rhs))
        else:
            ok = False
            for _, val in _bp_menu(pl, quad, p, ell):
                if ap == val:
                    ok = True
                    break
            if not ok:
                menu = " or ".join(repr(v) for _, v in _bp_menu(pl, quad, p, ell))
                return Elimination(lam.display, ell, quad, p, repr(ap), menu)
    return None


def _big_bp(f, lam, e1, e2, pl, checks):
    out = {}
    ell = lam.ell
    quad = Quadruple(e1, e2, 0, f.weight - 1)
    for p in checks:
        if f.level % p == 0:
            ap = pl.red_nf(f.a(p))
            for code, val in _bp_menu(pl, quad, p, ell):
                if ap == val:
                    out[p] = code
                    break
    return out


# ---------------------------------------------------------------------------
# the composed pipeline

@dataclass
class EngineResult:
    witnesses: list
    eliminations: list
    candidates_big: dict
    plan_max_bound: mpq


def small_prime_set(f: NewformData) -> list[int]:
    k, N = f.weight, f.level
    nphin = N * euler_phi(N)
    out = set(primes_up_to(k + 1))
    out.update(factorint(nphin))
    return sorted(out)


def r_n_eps_pairs(f: NewformData):
    """The coefficient-free pair set R_{N,eps} (product condition = eps)."""
    return enumerate_primitive_pairs(f.level, target=f.eps.char)


def plan_requirements(f: NewformData, conservative: bool = False):
    """Dry-run: the worst Sturm bound over every branch, without congruences."""
    worst = mpq(0)
    branches = []
    for ell in small_prime_set(f):
        for lam in factor_rational_prime(f.field, ell):
            for quad in r_nkeps(f.level, f.weight, f.eps, lam):
                setup = eisenstein_setup(quad, ell)
                Np = n_prime(f, setup.r)
                m_eff = quad.m2 if conservative else quad.m1
                params = sturm_params(f.weight, 1, setup.kprime, m_eff + 1, ell, Np)
                branches.append((ell, lam.display, quad.label(), params.bound))
                worst = max(worst, params.bound)
    for e1, e2 in r_n_eps_pairs(f):
        quad = Quadruple(e1, e2, 0, f.weight - 1)
        setup = eisenstein_setup(quad, 10 ** 9 + 7)
        Np = n_prime(f, setup.r)
        b = sturm_bound(Np, f.weight)
        branches.append(("big", f"({e1.label()},{e2.label()})", "", b))
        worst = max(worst, b)
    return worst, branches


def _small_unit(f: NewformData, ell: int, conservative: bool, places_mode: str):
    """Ordered raw results for one small-pipeline prime."""
    out = []
    for lam in factor_rational_prime(f.field, ell):
        for quad in r_nkeps(f.level, f.weight, f.eps, lam):
            w, elim = check_reducible_small(
                f, lam, quad, conservative=conservative, places_mode=places_mode)
            out.append((lam.display, w, elim))
    return out


def _big_unit(f: NewformData, e1: DirichletChar, e2: DirichletChar, ell: int,
              places_mode: str):
    out = []
    for lam in factor_rational_prime(f.field, ell):
        w, elim = check_reducible_big(f, lam, e1, e2, places_mode=places_mode)
        out.append((lam.display, w, elim))
    return out


def _run_unit(payload):
    """Process-pool entry point: payload is picklable plain data."""
    import json as _json

    from .newforms import load_newform

    doc, kind, params, conservative, places_mode = payload
    f = load_newform(_json.loads(doc))
    if kind == "small":
        return _small_unit(f, params, conservative, places_mode)
    e1 = DirichletChar.from_label(params[0]).primitive_part()
    e2 = DirichletChar.from_label(params[1]).primitive_part()
    return _big_unit(f, e1, e2, params[2], places_mode)


def reducible_set(f: NewformData, conservative: bool = False,
                  places_mode: str = "first", max_ell: int | None = None,
                  jobs: int = 1) -> EngineResult:
    """All prime ideals lambda with rhobar_{f,lambda} reducible, with proofs.

    With jobs > 1 the (ell, lambda) units run on a process pool; the merge is
    ordered so the result is identical to the sequential run.
    """
    k, N = f.weight, f.level
    plan_max, _ = plan_requirements(f, conservative)
    nphin = N * euler_phi(N)
    small_ells = [ell for ell in small_prime_set(f)
                  if max_ell is None or ell <= max_ell]
    cands_by_pair = {}
    big_units = []
    for e1, e2 in r_n_eps_pairs(f):
        cands = candidate_primes_big(f, e1, e2)
        cands_by_pair[(e1.label(), e2.label())] = sorted(cands)
        for ell in sorted(cands):
            if ell <= k + 1 or nphin % ell == 0:
                continue
            if max_ell is not None and ell > max_ell:
                continue
            big_units.append((e1, e2, ell))

    if jobs > 1:
        import json as _json
        from concurrent.futures import ProcessPoolExecutor

        from .newforms import emit_newform

        doc = emit_newform(f)
        payloads = [(doc, "small", ell, conservative, places_mode) for ell in small_ells]
        payloads += [(doc, "big", (e1.label(), e2.label(), ell), conservative, places_mode)
                     for e1, e2, ell in big_units]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, payloads))
        small_results = results[: len(small_ells)]
        big_results = results[len(small_ells):]
    else:
        small_results = [_small_unit(f, ell, conservative, places_mode)
                         for ell in small_ells]
        big_results = [_big_unit(f, e1, e2, ell, places_mode)
                       for e1, e2, ell in big_units]

    witnesses = []
    eliminations = []
    seen_by_lam: dict[str, set] = {}
    for unit in small_results:
        for display, w, elim in unit:
            if w is not None:
                key = w.decomposition()
                if key not in seen_by_lam.setdefault(display, set()):
                    seen_by_lam[display].add(key)
                    witnesses.append(w)
            elif elim is not None:
                eliminations.append(elim)
    for unit in big_results:
        for display, w, elim in unit:
            if w is not None:
                key = w.decomposition()
                if key not in seen_by_lam.setdefault(display, set()):
                    seen_by_lam[display].add(key)
                    witnesses.append(w)
            elif elim is not None:
                eliminations.append(elim)
    witnesses.sort(key=lambda w: (w.prime.ell, w.prime.display, w.decomposition()))
    eliminations.sort(key=lambda e: (e.ell, e.ideal, e.quad.label(), e.p))
    return EngineResult(witnesses, eliminations, cands_by_pair, plan_max)


# ---------------------------------------------------------------------------
# coefficient-free bounds

def red_bound_candidates(N: int, k: int, eps: DirichletChar):
    """Candidate residue characteristics for reducibility from (N, k, eps) alone."""
    out = set(primes_up_to(k + 1))
    nphin = N * euler_phi(N)
    out.update(factorint(nphin))
    provenance = {p: "small" for p in out}
    for e1, e2 in enumerate_primitive_pairs(N, target=eps):
        eta = (e1.inverse() * e2).primitive_part()
        if eta.parity() == (-1) ** k:
            bk = gen_bernoulli(k, eta)
            if not bk.is_zero():
                nrm = abs(mpq(cyc_norm(bk)).numerator)
                for p in factorint(int(nrm)):
                    out.add(p)
                    provenance.setdefault(p, f"B_{k} at ({e1.label()},{e2.label()})")
        theta = (e1 * e2.inverse()).primitive_part()
        c0 = theta.conductor()
        c1c2 = e1.conductor() * e2.conductor()
        for p in factorint(c1c2):
            if c0 % p == 0:
                continue
            q = CycNum.from_rat(p ** k) - theta(p)
            if not q.is_zero():
                nrm = abs(mpq(cyc_norm(q)).numerator)
                for pp in factorint(int(nrm)):
                    out.add(pp)
                    provenance.setdefault(pp, f"p^k - theta(p) at p={p}")
    return sorted(out), provenance


def exotic_bound(N: int, k: int):
    """{ell : ell | N or ell <= 4k-3} for projective A4/S4/A5 image."""
    return {"threshold": 4 * k - 3, "level_primes": sorted(factorint(N))}


def dihedral_bound(N: int, k: int, degree: int, cm: bool = False):
    """The dihedral-image bound: a finite list for N = 1, an integer for N >= 2."""
    if N == 1:
        out = sorted(set(primes_up_to(k)) | {v for v in (2 * k - 3, 2 * k - 1) if v >= 2})
        return {"kind": "list", "primes": out}
    if cm:
        raise DataError("the dihedral bound assumes a form without complex multiplication")
    _, llhi = loglog_bounds(N)
    base = 2 * half_power_upper(mpq(N), k - 1)
    t1 = half_power_upper(mpq(k, 3) * (2 * llhi + mpq(12, 5)), k - 1)
    t2 = mpq(5, 2) * half_power_upper(mpq(N), k - 1)
    u = (base ** degree) * (max(t1, t2) ** degree)
    num, den = u.numerator, u.denominator
    bound = -((-num) // den)  # ceiling
    return {"kind": "bound", "bound": int(bound)}
