"""Number fields with an explicit integral basis, and their elements.

The field is Q[t]/(g) for a monic integral g; elements live in the power
basis of the root. The integral basis is ingested data (rows expressing
omega_1..omega_d in powers of the root, omega_1 = 1); no maximal-order
computation happens here.

composite_norm computes the norm from K tensor Q(zeta_m) down to Q through
resultants, without ever constructing the compositum explicitly.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from . import poly
from .cyclo import CycNum, cyclotomic_poly
from .intmath import euler_phi
from .poly import QQ


from .linalg import mat_det, mat_inv  # re-exported for callers of this module


class NumberField:
    """Q[var]/(g) with a designated integral basis."""

    def __init__(self, g, integral_basis=None, var: str = "t"):
        g = tuple(mpq(c) for c in g)
        if g[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        if any(c.denominator != 1 for c in g):
            raise ValueError("defining polynomial must have integer coefficients")
        self.g = g
        self.degree = len(g) - 1
        self.var = var
        d = self.degree
        if integral_basis is None:
            integral_basis = [[mpq(1) if j == i else mpq(0) for j in range(d)] for i in range(d)]
        self.basis = tuple(tuple(mpq(c) for c in row) for row in integral_basis)
        if len(self.basis) != d or any(len(r) != d for r in self.basis):
            raise ValueError("integral basis must be a d x d matrix")
        if self.basis[0] != tuple([mpq(1)] + [mpq(0)] * (d - 1)):
            raise ValueError("first integral basis element must be 1")
        self.basis_inv = mat_inv(self.basis)
        # reduction rows for theta^d .. theta^{2d-2}
        rows = []
        if d >= 2:
            cur = [-c for c in g[:-1]]
            rows.append(tuple(cur))
            for _ in range(d - 2):
                shifted = [mpq(0)] + list(cur)
                top = shifted.pop()
                if top:
                    shifted = [shifted[k] + top * rows[0][k] for k in range(d)]
                cur = shifted
                rows.append(tuple(cur))
        self._red = rows

    def __call__(self, co) -> "NFElem":
        if isinstance(co, NFElem):
            return co
        if isinstance(co, (int, type(mpq(0)))):
            return NFElem(self, [mpq(co)] + [mpq(0)] * (self.degree - 1))
        co = [mpq(c) for c in co]
        if len(co) > self.degree:
            co = list(poly.pmod(QQ, poly.ptrim(tuple(co)), self.g))
        co += [mpq(0)] * (self.degree - len(co))
        return NFElem(self, co)

    def gen(self) -> "NFElem":
        if self.degree == 1:
            return self(-self.g[0])
        return self([0, 1])

    def zero(self) -> "NFElem":
        return self(0)

    def one(self) -> "NFElem":
        return self(1)

    def index_denominator(self) -> int:
        """[O : Z[theta]], read off the integral-basis determinant."""
        det = mat_det(self.basis)
        return int((1 / abs(det)).numerator)

    def to_integral_coords(self, x: "NFElem"):
        return tuple(
            sum(x.co[j] * self.basis_inv[j][i] for j in range(self.degree))
            for i in range(self.degree)
        )

    def from_integral_coords(self, co) -> "NFElem":
        d = self.degree
        out = [mpq(0)] * d
        for i, c in enumerate(co):
            if c:
                for j in range(d):
                    out[j] += mpq(c) * self.basis[i][j]
        return NFElem(self, out)

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and other.g == self.g
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.g, self.basis))

    def __repr__(self):
        return f"Q[{self.var}]/({poly_str(self.g, self.var)})"


class NFElem:
    __slots__ = ("field", "co")

    def __init__(self, field: NumberField, co):
        self.field = field
        self.co = tuple(mpq(c) for c in co)

    def _coerce(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return NFElem(self.field, [a + b for a, b in zip(self.co, o.co)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NFElem(self.field, [a - b for a, b in zip(self.co, o.co)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.co])

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            q = mpq(other)
            return NFElem(self.field, [q * a for a in self.co])
        o = self._coerce(other)
        d = self.field.degree
        if d == 1:
            return NFElem(self.field, (self.co[0] * o.co[0],))
        conv = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(self.co):
            if x:
                for j, y in enumerate(o.co):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for i in range(d, 2 * d - 1):
            c = conv[i]
            if c:
                row = self.field._red[i - d]
                for k in range(d):
                    out[k] += c * row[k]
        return NFElem(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.field.one()
        base = self
        if n < 0:
            raise ValueError("negative powers not supported")
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            other = self.field(other)
        if not isinstance(other, NFElem):
            return NotImplemented
        return self.field == other.field and self.co == other.co

    def __hash__(self):
        return hash((self.field.g, self.co))

    def is_zero(self) -> bool:
        return not any(self.co)

    def is_rational(self):
        if any(self.co[1:]):
            return None
        return self.co[0]

    def inv(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        if d == 1:
            return NFElem(self.field, (1 / self.co[0],))
        theta = self.field.gen()
        rows = []
        cur = self
        for _ in range(d):
            rows.append(cur.co)
            cur = cur * theta
        return NFElem(self.field, mat_inv(rows)[0])

    def __truediv__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            q = mpq(other)
            return NFElem(self.field, [a / q for a in self.co])
        return self * self._coerce(other).inv()

    def charpoly(self):
        """Characteristic polynomial of multiplication by self, over Q."""
        return nf_charpoly(self)

    def norm(self):
        h = poly.ptrim(self.co)
        if not h:
            return mpq(0)
        return poly.presultant(QQ, self.field.g, h)

    def multiplicative_order(self) -> int | None:
        """Exact order if self is a root of unity, else None (search bound 2*d^2+10)."""
        x = self
        one = self.field.one()
        for k in range(1, 2 * self.field.degree ** 2 + 11):
            if x == one:
                return k
            x = x * self
        return None

    def __repr__(self):
        return poly_str(self.co, self.field.var)


def lagrange_interpolate(points):
    """The unique rational polynomial through ((x_i, y_i)), as a coeff tuple."""
    out = ()
    for i, (xi, yi) in enumerate(points):
        num = (mpq(1),)
        den = mpq(1)
        for j, (xj, _) in enumerate(points):
            if i != j:
                num = poly.pmul(QQ, num, (-mpq(xj), mpq(1)))
                den *= mpq(xi) - mpq(xj)
        out = poly.padd(QQ, out, poly.pscale(QQ, mpq(yi) / den, num))
    return out


def nf_charpoly(x: NFElem):
    """char poly of x acting on K by multiplication: prod over roots (X - h(theta))."""
    K = x.field
    d = K.degree
    pts = []
    for a in range(d + 1):
        # Res_t(g, a - h(t)) = prod (a - h(theta_i)) = charpoly(a)
        shifted = poly.psub(QQ, (mpq(a),), poly.ptrim(x.co))
        if not shifted:
            val = mpq(0)
        else:
            val = poly.presultant(QQ, K.g, shifted)
        pts.append((a, val))
    cp = lagrange_interpolate(pts)
    cp = cp + (mpq(1),) * 0
    # pad to degree d (it is monic of degree d by construction)
    cp = tuple(cp) + (mpq(0),) * (d + 1 - len(cp))
    return cp


class TensorElem:
    """An element of K tensor_Q Q(zeta_m), coordinates theta^i * zeta^j."""

    __slots__ = ("field", "m", "mat")

    def __init__(self, field: NumberField, m: int, mat=None):
        self.field = field
        self.m = m
        phi = euler_phi(m)
        if mat is None:
            mat = [[mpq(0)] * phi for _ in range(field.degree)]
        self.mat = [[mpq(c) for c in row] for row in mat]

    @staticmethod
    def from_nf(x: NFElem, m: int) -> "TensorElem":
        t = TensorElem(x.field, m)
        for i, c in enumerate(x.co):
            t.mat[i][0] = mpq(c)
        return t

    @staticmethod
    def from_cyc(field: NumberField, x: CycNum, m: int) -> "TensorElem":
        x = x.lift(m) if x.n != m else x
        t = TensorElem(field, m)
        for j, c in enumerate(x.co):
            t.mat[0][j] = mpq(c)
        return t

    def __add__(self, other):
        out = TensorElem(self.field, self.m)
        for i in range(self.field.degree):
            for j in range(len(self.mat[0])):
                out.mat[i][j] = self.mat[i][j] + other.mat[i][j]
        return out

    def __sub__(self, other):
        out = TensorElem(self.field, self.m)
        for i in range(self.field.degree):
            for j in range(len(self.mat[0])):
                out.mat[i][j] = self.mat[i][j] - other.mat[i][j]
        return out

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            out = TensorElem(self.field, self.m)
            q = mpq(other)
            out.mat = [[q * c for c in row] for row in self.mat]
            return out
        d = self.field.degree
        phi = len(self.mat[0])
        conv = [[mpq(0)] * (2 * phi - 1) for _ in range(2 * d - 1)]
        for i in range(d):
            for j in range(phi):
                c = self.mat[i][j]
                if not c:
                    continue
                for k in range(d):
                    for l in range(phi):
                        u = other.mat[k][l]
                        if u:
                            conv[i + k][j + l] += c * u
        # reduce theta-direction
        from .cyclo import _power_table

        rows = self.field._red
        for i in range(2 * d - 2, d - 1, -1):
            row = conv[i]
            if any(row):
                red = rows[i - d]
                for k in range(d):
                    if red[k]:
                        for l in range(len(row)):
                            conv[k][l] += red[k] * row[l]
            conv[i] = None
        # reduce zeta-direction
        table = _power_table(self.m)
        out = TensorElem(self.field, self.m)
        for i in range(d):
            row = conv[i]
            acc = row[:phi]
            for l in range(phi, 2 * phi - 1):
                c = row[l]
                if c:
                    zrow = table[l]
                    for k in range(phi):
                        acc[k] += c * zrow[k]
            out.mat[i] = acc
        return out

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(not c for row in self.mat for c in row)

    def norm(self):
        """Norm down to Q: Res_y(Phi_m, Res_t(g, Q(t,y))) via interpolation."""
        d = self.field.degree
        phi = len(self.mat[0])
        deg_y = (phi - 1) * d
        pts = []
        for a in range(deg_y + 1):
            apow = [mpq(a) ** j for j in range(phi)]
            qa = poly.ptrim(tuple(sum(self.mat[i][j] * apow[j] for j in range(phi)) for i in range(d)))
            val = poly.presultant(QQ, self.field.g, qa) if qa else mpq(0)
            pts.append((a, val))
        h = lagrange_interpolate(pts)
        if not poly.ptrim(h):
            return mpq(0)
        return poly.presultant(QQ, cyclotomic_poly(self.m), poly.ptrim(h))


def poly_str(coeffs, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = mpq(coeffs[i])
        if not c:
            continue
        if i == 0:
            body = str(c if c > 0 else -c)
        else:
            mag = c if c > 0 else -c
            coef = "" if mag == 1 else str(mag)
            body = f"{coef}{var}" if i == 1 else f"{coef}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(terms) if terms else "0"
