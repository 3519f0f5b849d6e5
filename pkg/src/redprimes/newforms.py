"""Newform ingestion: the on-disk format, validation, and emission.

A newform file is JSON (format version 1) carrying level, weight, the
nebentypus as a Conrey label plus exact values on the canonical generators
of (Z/NZ)^x written in the coefficient field, the defining polynomial and
integral basis of that field, and the Fourier coefficients a_0..a_nmax as
power-basis coordinate vectors. Rationals are strings like "-3/2".

Validation on load: monic integral defining polynomial, omega_1 = 1,
a_0 = 0, a_1 = 1, character parity (-1)^k, declared value orders matching
the Conrey label, and a seeded multiplicativity spot-check on 20 coprime
pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from gmpy2 import mpq

from .characters import DirichletChar, unit_dlog, unit_group_structure
from .errors import CoefficientBudgetError, DataError
from .intmath import crt, factorint, valuation
from .nfield import NFElem, NumberField

FORMAT_VERSION = 1


@dataclass
class Nebentypus:
    """The character of a newform with its exact K_f-realization."""

    char: DirichletChar
    values: dict[int, NFElem]  # canonical generator -> value in K_f

    def nf_value(self, n: int) -> NFElem:
        """epsilon(n) as an element of K_f (n must be a unit)."""
        q = self.char.modulus
        gens = unit_group_structure(q)
        if not gens:
            field = next(iter(self.values.values())).field if self.values else None
            if field is None:
                raise DataError("trivial character needs a field for its values")
            return field.one()
        dlogs = unit_dlog(q, n)
        out = None
        for (g, _), e in zip(gens, dlogs):
            v = self.values[g] ** e
            out = v if out is None else out * v
        return out

    def nf_value_prime_to(self, n: int, ell: int) -> NFElem:
        """(prime-to-ell conductor part of epsilon)(n), in K_f."""
        q = self.char.modulus
        a = valuation(q, ell) if q % ell == 0 else 0
        if a == 0:
            return self.nf_value(n % q if q > 1 else 1)
        la = ell ** a
        rest = q // la
        if rest == 1:
            field = next(iter(self.values.values())).field
            return field.one()
        lift = crt([1, n % rest], [la, rest])
        return self.nf_value(lift)

    def nf_value_at_part(self, n: int, ell: int) -> NFElem:
        """(ell-conductor part of epsilon)(n), in K_f."""
        q = self.char.modulus
        a = valuation(q, ell) if q % ell == 0 else 0
        field = next(iter(self.values.values())).field
        if a == 0:
            return field.one()
        la = ell ** a
        rest = q // la
        lift = crt([n % la, 1], [la, rest]) if rest > 1 else n % la
        return self.nf_value(lift)


@dataclass
class NewformData:
    label: str
    level: int
    weight: int
    eps: Nebentypus
    field: NumberField
    coeffs: list[NFElem]  # a_0 .. a_nmax
    nmax: int
    provenance: str = ""
    cm: bool = False

    def a(self, n: int, bound=None) -> NFElem:
        if n > self.nmax:
            raise CoefficientBudgetError(bound if bound is not None else n, self.nmax,
                                         context=f"a_{n} of {self.label}")
        return self.coeffs[n]


def _rat(s) -> mpq:
    if isinstance(s, str):
        return mpq(s)
    if isinstance(s, int):
        return mpq(s)
    raise DataError(f"expected a rational string, got {s!r}")


def _rat_str(q) -> str:
    return str(mpq(q))


def load_newform(path_or_dict) -> NewformData:
    """Load and validate a newform file."""
    if isinstance(path_or_dict, dict):
        doc = path_or_dict
    else:
        with open(path_or_dict, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    if doc.get("format") != FORMAT_VERSION:
        raise DataError(f"unsupported format version {doc.get('format')!r}")
    try:
        level = int(doc["level"])
        weight = int(doc["weight"])
        fld = doc["field"]
        K = NumberField([_rat(c) for c in fld["poly"]],
                        [[_rat(c) for c in row] for row in fld["integral_basis"]],
                        var=fld.get("var", "t"))
        nmax = int(doc["nmax"])
        coeffs = [K([_rat(c) for c in row]) for row in doc["coefficients"]]
        char_doc = doc["character"]
        char = DirichletChar.from_label(char_doc["label"])
        raw_values = {int(g): K([_rat(c) for c in co]) for g, co in char_doc["values"]}
    except (KeyError, ValueError, TypeError) as exc:
        raise DataError(f"malformed newform file: {exc}") from exc

    if char.modulus != level:
        raise DataError("character modulus must equal the level")
    if char.parity() != (-1) ** weight:
        raise DataError("character parity incompatible with the weight")
    if len(coeffs) != nmax + 1:
        raise DataError("coefficient count does not match nmax")
    if not coeffs[0].is_zero():
        raise DataError("a_0 of a newform must vanish")
    if coeffs[1] != K(1):
        raise DataError("newform must be normalized: a_1 = 1")

    gens = unit_group_structure(level)
    if set(raw_values) != {g for g, _ in gens}:
        raise DataError("character values must cover exactly the canonical generators")
    for g, _ in gens:
        declared = raw_values[g]
        x = char.value_exponent(g)
        order = int(mpq(x).denominator)
        if declared.multiplicative_order() != order:
            raise DataError(
                f"value at generator {g} has wrong multiplicative order "
                f"(expected {order} per the Conrey label)")
    eps = Nebentypus(char, raw_values)

    # multiplicativity spot-check on a deterministic sample of coprime pairs
    seed = sum(ord(c) for c in doc.get("label", "")) + level + weight
    state = seed or 1
    checked = 0
    tries = 0
    while checked < 20 and tries < 400:
        state = (1103515245 * state + 12345) % 2 ** 31
        m = 2 + state % max(2, nmax // 8)
        state = (1103515245 * state + 12345) % 2 ** 31
        n = 2 + state % max(2, nmax // 8)
        tries += 1
        if gcd(m, n) != 1 or m * n > nmax:
            continue
        if coeffs[m] * coeffs[n] != coeffs[m * n]:
            raise DataError(f"multiplicativity fails at ({m},{n}): not a Hecke eigenform")
        checked += 1

    return NewformData(
        label=doc.get("label", ""),
        level=level, weight=weight, eps=eps, field=K,
        coeffs=coeffs, nmax=nmax,
        provenance=doc.get("provenance", ""),
        cm=bool(doc.get("cm", False)),
    )


def emit_newform(f: NewformData) -> str:
    """Canonical JSON emission (byte-stable; round-trips through load)."""
    gens = unit_group_structure(f.level)
    doc = {
        "format": FORMAT_VERSION,
        "label": f.label,
        "provenance": f.provenance,
        "cm": f.cm,
        "level": f.level,
        "weight": f.weight,
        "character": {
            "label": f.eps.char.label(),
            "values": [[g, [_rat_str(c) for c in f.eps.values[g].co]] for g, _ in gens],
        },
        "field": {
            "var": f.field.var,
            "poly": [_rat_str(c) for c in f.field.g],
            "integral_basis": [[_rat_str(c) for c in row] for row in f.field.basis],
        },
        "nmax": f.nmax,
        "coefficients": [[_rat_str(c) for c in a.co] for a in f.coeffs],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
