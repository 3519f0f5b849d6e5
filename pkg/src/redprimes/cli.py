"""Command-line surface.

Subcommands: reducible, bounds, check, rset, sturm, bernoulli, gauss,
eisenstein. Output is a human-readable table by default; --emit json prints
a machine-readable document with the same content. Exit codes: 0 success,
2 data error, 3 insufficient coefficients, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from gmpy2 import mpq

from . import engine
from .characters import DirichletChar
from .cyclo import CycNum
from .errors import CoefficientBudgetError, DataError, InternalError
from .intmath import euler_phi, factorint
from .newforms import NewformData, load_newform
from .nfield import NumberField
from .qexp import eisenstein
from .residues import factor_rational_prime, parse_ideal
from .specialvals import gauss_sum, gen_bernoulli
from .thetasturm import sturm_bound, sturm_params

EXIT_DATA = 2
EXIT_COEFFS = 3
EXIT_INTERNAL = 4


def _load(path: str) -> NewformData:
    candidate = resources.files("redprimes").joinpath(f"data/{path}.json")
    try:
        if candidate.is_file():
            return load_newform(json.loads(candidate.read_text()))
    except (AttributeError, OSError):
        pass
    try:
        return load_newform(path)
    except OSError as exc:
        raise DataError(f"cannot read newform file {path!r}: {exc}") from exc


def _decomp_str(decomp, ell: int) -> str:
    parts = []
    for m, lab in decomp:
        factors = []
        if m:
            factors.append(f"chibar_{ell}^{m}" if m > 1 else f"chibar_{ell}")
        if lab != "1.1":
            factors.append(f"epsbar({lab})")
        parts.append("*".join(factors) if factors else "1")
    return " (+) ".join(parts)


def _witness_row(w) -> dict:
    return {
        "ell": w.prime.ell,
        "ideal": w.prime.display,
        "e": w.prime.e,
        "f": w.prime.f,
        "decomposition": [[m, lab] for m, lab in w.decomposition()],
        "quadruple": [w.quad.eps1.label(), w.quad.eps2.label(), w.quad.m1, w.quad.m2],
        "pipeline": w.pipeline,
        "place": w.place_index,
        "places": w.all_places,
        "bound": str(w.bound),
        "bp": {str(p): c for p, c in sorted(w.bp.items())},
    }


def _elim_row(e) -> dict:
    return {
        "ell": e.ell,
        "ideal": e.ideal,
        "quadruple": [e.quad.eps1.label(), e.quad.eps2.label(), e.quad.m1, e.quad.m2],
        "p": e.p,
        "lhs": e.lhs,
        "rhs": e.rhs,
    }


def cmd_reducible(args) -> int:
    f = _load(args.newform)
    res = engine.reducible_set(
        f, conservative=args.conservative, places_mode=args.places,
        max_ell=args.max_ell, jobs=args.jobs)
    doc = {
        "label": f.label,
        "level": f.level,
        "weight": f.weight,
        "character": f.eps.char.label(),
        "witnesses": [_witness_row(w) for w in res.witnesses],
        "eliminations": [_elim_row(e) for e in res.eliminations],
        "candidates_big": {f"{a},{b}": v for (a, b), v in res.candidates_big.items()},
        "plan_max_bound": str(res.plan_max_bound),
    }
    if args.emit == "json":
        print(json.dumps(doc, sort_keys=True, indent=1))
        return 0
    print(f"newform {f.label}: level {f.level}, weight {f.weight}, "
          f"character {f.eps.char.label()}")
    print(f"worst-case Sturm bound across branches: {res.plan_max_bound}")
    if not res.witnesses:
        print("reducible primes: none (all residual representations irreducible)")
    else:
        print("reducible primes:")
        print(f"  {'ideal':<18} {'ell':>6}  decomposition")
        for w in res.witnesses:
            print(f"  {w.prime.display:<18} {w.prime.ell:>6}  "
                  f"{_decomp_str(w.decomposition(), w.prime.ell)}")
    if res.eliminations:
        print(f"eliminations ({len(res.eliminations)} failing congruences recorded):")
        for e in res.eliminations:
            print(f"  {e!r}")
    return 0


def cmd_bounds(args) -> int:
    if args.newform:
        f = _load(args.newform)
        N, k, eps = f.level, f.weight, f.eps.char
        degree, cm = f.field.degree, f.cm
    else:
        N, k = args.level, args.weight
        eps = DirichletChar.from_label(args.char) if args.char else DirichletChar.trivial(N)
        if eps.modulus != N:
            eps = eps.induce(N)
        degree, cm = args.degree, args.cm
    cands, provenance = engine.red_bound_candidates(N, k, eps)
    exo = engine.exotic_bound(N, k)
    dih = engine.dihedral_bound(N, k, degree, cm=cm) if degree else None
    doc = {
        "level": N, "weight": k, "character": eps.label(),
        "reducible_candidates": cands,
        "provenance": {str(p): v for p, v in provenance.items()},
        "exotic": exo,
        "dihedral": dih,
    }
    if args.emit == "json":
        print(json.dumps(doc, sort_keys=True, indent=1))
        return 0
    print(f"(N, k, eps) = ({N}, {k}, {eps.label()})")
    print(f"reducible residue characteristics are contained in {cands}")
    print(f"A4/S4/A5 projective image: ell | {N} or ell <= {exo['threshold']}")
    if dih is not None:
        if dih["kind"] == "list":
            print(f"dihedral projective image (N = 1): ell in {dih['primes']}")
        else:
            print(f"dihedral projective image (non-CM): ell <= {dih['bound']}")
    return 0


def _parse_quad(f: NewformData, s: str) -> engine.Quadruple:
    parts = [t.strip() for t in s.split(",")]
    if len(parts) != 4:
        raise DataError("quadruple syntax: eps1,eps2,m1,m2 (Conrey labels)")
    e1 = DirichletChar.from_label(parts[0])
    e2 = DirichletChar.from_label(parts[1])
    return engine.Quadruple(e1.primitive_part(), e2.primitive_part(),
                            int(parts[2]), int(parts[3]))


def cmd_check(args) -> int:
    f = _load(args.newform)
    primes = []
    quad = _parse_quad(f, args.quad)
    ell = int(args.ideal.strip().lstrip("(").split(",")[0].rstrip(")"))
    primes = factor_rational_prime(f.field, ell)
    lam = parse_ideal(f.field, primes, args.ideal)
    nphin = f.level * euler_phi(f.level)
    if ell > f.weight + 1 and nphin % ell:
        w, elim = engine.check_reducible_big(f, lam, quad.eps1, quad.eps2,
                                             places_mode=args.places)
    else:
        w, elim = engine.check_reducible_small(f, lam, quad,
                                               conservative=args.conservative,
                                               places_mode=args.places)
    if args.emit == "json":
        doc = {"verdict": "REDUCIBLE" if w else "IRREDUCIBLE",
               "witness": _witness_row(w) if w else None,
               "elimination": _elim_row(elim) if elim else None}
        print(json.dumps(doc, sort_keys=True, indent=1))
        return 0
    if w:
        print(f"REDUCIBLE: rhobar at {lam.display} is "
              f"{_decomp_str(w.decomposition(), ell)} (checked p <= {w.bound})")
    else:
        print(f"IRREDUCIBLE for this quadruple: {elim!r}")
    return 0


def cmd_rset(args) -> int:
    if args.newform:
        f = _load(args.newform)
        primes = factor_rational_prime(f.field, args.ell or
                                       int(args.ideal.strip().lstrip("(").split(",")[0].rstrip(")")))
        if args.ideal:
            lams = [parse_ideal(f.field, primes, args.ideal)]
        else:
            lams = primes
        N, k, eps = f.level, f.weight, f.eps
    else:
        N, k = args.level, args.weight
        chi = DirichletChar.from_label(args.char) if args.char else DirichletChar.trivial(N)
        if chi.modulus != N:
            chi = chi.induce(N)
        # realize Q(eps) as a cyclotomic field with its power integral basis
        from .newforms import Nebentypus
        from .characters import unit_group_structure
        from .cyclo import cyclotomic_poly
        o = chi.order()
        Keps = NumberField([c for c in cyclotomic_poly(o)], var="z")
        zeta = Keps.gen() if o > 2 else Keps(-1 if o == 2 else 1)
        values = {}
        for g, _ in unit_group_structure(N):
            x = chi.value_exponent(g)
            values[g] = zeta ** int(x * o) if o > 1 else Keps(1)
        eps = Nebentypus(chi, values)
        lams = factor_rational_prime(Keps, args.ell)
    doc = []
    for lam in lams:
        quads = engine.r_nkeps(N, k, eps, lam)
        doc.append({"ideal": lam.display,
                    "quadruples": [[q.eps1.label(), q.eps2.label(), q.m1, q.m2]
                                   for q in quads]})
    if args.emit == "json":
        print(json.dumps(doc, sort_keys=True, indent=1))
        return 0
    for row in doc:
        print(f"{row['ideal']}:")
        for q in row["quadruples"]:
            print(f"  ({q[0]}, {q[1]}, {q[2]}, {q[3]})")
    return 0


def cmd_sturm(args) -> int:
    if args.kf is not None:
        sp = sturm_params(args.kf, args.mf, args.kg, args.mg, args.ell, args.level)
        doc = {"a": sp.a, "b": sp.b, "ktilde": sp.ktilde, "bound": str(sp.bound)}
    else:
        doc = {"bound": str(sturm_bound(args.level, args.weight))}
    if args.emit == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        for k, v in doc.items():
            print(f"{k} = {v}")
    return 0


def cmd_bernoulli(args) -> int:
    chi = DirichletChar.from_label(args.char) if args.char else DirichletChar.trivial(1)
    val = gen_bernoulli(args.m, chi)
    r = val.as_rat()
    if args.emit == "json":
        print(json.dumps({"m": args.m, "char": chi.label(),
                          "order": val.n, "coords": [str(c) for c in val.co]}))
    elif r is not None:
        print(r)
    else:
        print(f"order {val.n} coordinates: {[str(c) for c in val.co]}")
    return 0


def cmd_gauss(args) -> int:
    chi = DirichletChar.from_label(args.char)
    val = gauss_sum(chi.primitive_part())
    if args.emit == "json":
        print(json.dumps({"char": chi.label(), "order": val.n,
                          "coords": [str(c) for c in val.co]}))
    else:
        print(f"W({chi.label()}) in Q(zeta_{val.n}): {[str(c) for c in val.co]}")
    return 0


def cmd_eisenstein(args) -> int:
    chi1 = DirichletChar.from_label(args.char1) if args.char1 else DirichletChar.trivial(1)
    chi2 = DirichletChar.from_label(args.char2) if args.char2 else DirichletChar.trivial(1)
    E = eisenstein(args.weight, chi1, chi2, args.prec)
    lines = []
    for n in range(E.prec):
        c = E.co[n]
        r = c.as_rat()
        lines.append({"n": n, "value": str(r) if r is not None
                      else [str(x) for x in c.co]})
    if args.emit == "json":
        print(json.dumps({"weight": E.weight, "level": E.level,
                          "character": E.char.label(), "zeta_order": E.zorder(),
                          "coefficients": lines}, indent=1))
    else:
        print(f"# E_{args.weight}^({chi1.label()},{chi2.label()}), level {E.level}, "
              f"character {E.char.label()}, coefficients in Q(zeta_{E.zorder()})")
        for row in lines:
            print(f"{row['n']}: {row['value']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="redprimes",
                                 description="exact reducibility of residual Galois "
                                             "representations of newforms")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--emit", choices=("table", "json"), default="table")

    p = sub.add_parser("reducible", help="the full reducible-prime set of a newform")
    p.add_argument("newform", help="path to a newform file or a vendored label")
    p.add_argument("--conservative", action="store_true",
                   help="use m2 instead of m1 in the Sturm weight (larger bounds)")
    p.add_argument("--places", choices=("first", "all"), default="first")
    p.add_argument("--max-ell", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_reducible)

    p = sub.add_parser("bounds", help="coefficient-free candidate bounds")
    p.add_argument("--file", dest="newform", default=None)
    p.add_argument("--level", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--char", default=None)
    p.add_argument("--degree", type=int, default=None,
                   help="[K_f : Q], enables the dihedral bound")
    p.add_argument("--cm", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="check one quadruple at one prime ideal")
    p.add_argument("newform")
    p.add_argument("--ideal", required=True, help='e.g. "(3,x^2+1)"')
    p.add_argument("--quad", required=True, help='eps1,eps2,m1,m2 e.g. "7.6,1.1,1,1"')
    p.add_argument("--conservative", action="store_true")
    p.add_argument("--places", choices=("first", "all"), default="first")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rset", help="the quadruple set R_{N,k,eps}(lambda)")
    p.add_argument("--file", dest="newform", default=None)
    p.add_argument("--ideal", default=None)
    p.add_argument("--level", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--char", default=None)
    p.add_argument("--ell", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_rset)

    p = sub.add_parser("sturm", help="Sturm bounds and (a, b, ktilde) parameters")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--kf", type=int, default=None)
    p.add_argument("--mf", type=int, default=0)
    p.add_argument("--kg", type=int, default=None)
    p.add_argument("--mg", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("bernoulli", help="generalized Bernoulli numbers")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--char", default=None)
    common(p)
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("gauss", help="Gauss sums of primitive characters")
    p.add_argument("--char", required=True)
    common(p)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("eisenstein", help="dump an Eisenstein q-expansion")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--char1", default=None)
    p.add_argument("--char2", default=None)
    p.add_argument("--prec", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_eisenstein)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CoefficientBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COEFFS
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
