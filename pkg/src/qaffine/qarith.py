"""Exact arithmetic in the field of rational functions of q.

Scalars are ratios of Laurent polynomials in q with exact rational
coefficients.  Also provides the q-combinatorial quantities (q-integers,
q-factorials, q-binomials, the two-flavour exponential factorials) and a
modular-evaluation fast path for probabilistic identity testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class PoleAtPoint(Exception):
    """The denominator vanishes at the requested evaluation point."""


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Laurent polynomial in q: finite map exponent -> exact rational."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # -- constructors

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    @staticmethod
    def q_power(e, c=1):
        return LaurentPoly({e: c})

    # -- predicates / structure

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((e, Fraction(c)) for e, c in self.terms.items()))

    # -- ring operations

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            res = LaurentPoly.__new__(LaurentPoly)
            res.terms = {e: c * other for e, c in self.terms.items()} if other else {}
            return res
        out = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentPoly")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by q^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e + k: c for e, c in self.terms.items()}
        return res

    def mirror(self):
        """Substitute q -> q^-1."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {-e: c for e, c in self.terms.items()}
        return res

    # -- evaluation

    def eval_mod(self, p, t):
        """Value at q = t over Z/p.  Raises PoleAtPoint if a coefficient
        denominator is divisible by p (cannot happen for p large)."""
        tinv = None
        acc = 0
        for e, c in self.terms.items():
            if e >= 0:
                qe = pow(t, e, p)
            else:
                if tinv is None:
                    tinv = pow(t, p - 2, p)
                qe = pow(tinv, -e, p)
            if isinstance(c, Fraction):
                den = c.denominator % p
                if den == 0:
                    raise PoleAtPoint("coefficient denominator divisible by p")
                cv = c.numerator % p * pow(den, p - 2, p) % p
            else:
                cv = c % p
            acc = (acc + cv * qe) % p
        return acc

    # -- serialization: sorted [exponent, numerator, denominator] triples

    def to_triples(self):
        out = []
        for e in sorted(self.terms):
            c = Fraction(self.terms[e])
            out.append([e, c.numerator, c.denominator])
        return out

    @staticmethod
    def from_triples(triples):
        terms = {}
        for e, a, b in triples:
            terms[e] = Fraction(a, b)
        return LaurentPoly(terms)

    # -- display

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                base = str(c)
            else:
                qs = "q" if e == 1 else "q^%d" % e
                if c == 1:
                    base = qs
                elif c == -1:
                    base = "-" + qs
                else:
                    base = "%s*%s" % (c, qs)
            bits.append(base)
        s = " + ".join(bits).replace("+ -", "- ")
        return s

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


# -- integer-coefficient helpers for gcd / exact division (dense lists) ------


def _to_intlist(poly):
    """(shift, lcm, coeff list) with integer coefficients, list[0] != 0."""
    lo = poly.min_exp()
    hi = poly.max_exp()
    lcm = 1
    for c in poly.terms.values():
        if isinstance(c, Fraction):
            d = c.denominator
            lcm = lcm // gcd(lcm, d) * d
    coeffs = [0] * (hi - lo + 1)
    for e, c in poly.terms.items():
        coeffs[e - lo] = int(c * lcm)
    return lo, lcm, coeffs


def _content(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _primitive(coeffs):
    g = _content(coeffs)
    if g == 0:
        return []
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _list_prem(a, b):
    """Pseudo-remainder of integer coefficient lists (ascending order)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        g = gcd(abs(la), abs(lb))
        ma, mb = lb // g, la // g
        a = [c * ma for c in a]
        for i, c in enumerate(b):
            a[shift + i] -= mb * c
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd_lists(a, b):
    a = _primitive(a)
    b = _primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _list_prem(a, b)
        if not any(r):
            return _primitive(b)
        a, b = b, _primitive(r)


def poly_gcd(a, b):
    """Primitive gcd of two Laurent polynomials, as an ordinary polynomial
    with min exponent 0 (q-power factors are stripped first)."""
    if a.is_zero():
        src = b
        out = _primitive(_to_intlist(b)[2]) if not b.is_zero() else []
    elif b.is_zero():
        src = a
        out = _primitive(_to_intlist(a)[2])
    else:
        la = _to_intlist(a)[2]
        lb = _to_intlist(b)[2]
        out = _poly_gcd_lists(la, lb)
    return LaurentPoly({i: c for i, c in enumerate(out) if c})


def poly_divmod(a, b):
    """Exact-arithmetic division a = q*b + r with deg r < deg b.

    Both operands may be Laurent; the quotient/remainder are Laurent too
    (a common q-power is factored out so ordinary division applies).
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return LaurentPoly.zero(), LaurentPoly.zero()
    sa, sb = a.min_exp(), b.min_exp()
    aa = {e - sa: Fraction(c) for e, c in a.terms.items()}
    bb = {e - sb: Fraction(c) for e, c in b.terms.items()}
    db = max(bb)
    lb = bb[db]
    quot = {}
    rem = dict(aa)
    while rem:
        da = max(rem)
        if da < db:
            break
        f = rem[da] / lb
        quot[da - db] = f
        for e, c in bb.items():
            k = da - db + e
            s = rem.get(k, 0) - f * c
            if s:
                rem[k] = s
            elif k in rem:
                del rem[k]
    q = LaurentPoly(quot).shift(sa - sb)
    r = LaurentPoly(rem).shift(sa)
    return q, r


def poly_divexact(a, b):
    q, r = poly_divmod(a, b)
    if not r.is_zero():
        raise ValueError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# The scalar field


class QRat:
    """Rational function of q in canonical form.

    den is a primitive integer polynomial with lowest exponent 0 and positive
    leading coefficient, coprime to num; all q-power and rational ambiguity
    lives in num.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.const(1)
        elif isinstance(den, int):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.const(1)
            return
        # strip q-powers so both sides are ordinary polynomials
        sn, sd = num.min_exp(), den.min_exp()
        num = num.shift(-sn)
        den = den.shift(-sd)
        g = poly_gcd(num, den)
        if g.max_exp() > 0:
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        # den -> primitive integer, positive leading coefficient
        _, lcm, coeffs = _to_intlist(den)
        cont = Fraction(_content(coeffs), lcm)
        if coeffs[-1] < 0:
            cont = -cont
        den = den * (1 / cont)
        num = num * (1 / cont)
        self.num = num.shift(sn - sd)
        self.den = den

    # -- constructors

    @staticmethod
    def from_int(c):
        return QRat(LaurentPoly.const(c))

    @staticmethod
    def q_power(e, c=1):
        return QRat(LaurentPoly.q_power(e, c))

    # -- structure

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den == LaurentPoly.const(1)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = QRat.__new__(QRat)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("QRat division by zero")
        return QRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return QRat.from_int(1) / self ** (-n)
        out = QRat.from_int(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return QRat.from_int(1) / self

    def mirror(self):
        """Image under q -> q^-1 (coefficients are fixed)."""
        return QRat(self.num.mirror(), self.den.mirror())

    # -- serialization

    def to_pair(self):
        return [self.num.to_triples(), self.den.to_triples()]

    @staticmethod
    def from_pair(pair):
        return QRat(LaurentPoly.from_triples(pair[0]),
                    LaurentPoly.from_triples(pair[1]))

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "QRat(%s)" % str(self)


def _coerce(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, int):
        return QRat.from_int(x)
    if isinstance(x, Fraction):
        return QRat(LaurentPoly.const(x))
    if isinstance(x, LaurentPoly):
        return QRat(x)
    return None


ZERO = QRat.from_int(0)
ONE = QRat.from_int(1)


# ---------------------------------------------------------------------------
# q-combinatorics


def q_int(m, r=1):
    """[m]_{q^r}, computed by the closed summation (never by division)."""
    if r == 0:
        raise ValueError("q_int needs r != 0")
    if m == 0:
        return QRat.from_int(0)
    if m < 0:
        return -q_int(-m, r)
    terms = {}
    for j in range(m):
        e = r * (m - 1 - 2 * j)
        terms[e] = terms.get(e, 0) + 1
    return QRat(LaurentPoly(terms))


def q_factorial(m, r=1):
    """[m]_{q^r}! = [1][2]...[m] in base q^r."""
    if m < 0:
        raise ValueError("q_factorial needs m >= 0")
    out = QRat.from_int(1)
    for s in range(1, m + 1):
        out = out * q_int(s, r)
    return out


def q_binom(r, s, m=1):
    """Gaussian binomial [r s]_{q^m}; always a Laurent polynomial."""
    if not 0 <= s <= r:
        raise ValueError("q_binom needs 0 <= s <= r")
    out = q_factorial(r, m) / (q_factorial(s, m) * q_factorial(r - s, m))
    assert out.is_poly(), "q-binomial did not reduce to a Laurent polynomial"
    return out


def exp_factorial(m, d_alpha=None):
    """(m)_alpha! for the root-indexed exponential.

    Real roots (d_alpha = half-norm given): (s)_alpha = 1 + q^{2d} + ... +
    q^{2d(s-1)}, by closed summation.  Imaginary roots (d_alpha None):
    ordinary factorial.
    """
    if m < 0:
        raise ValueError("exp_factorial needs m >= 0")
    if d_alpha is None:
        out = 1
        for s in range(2, m + 1):
            out *= s
        return QRat.from_int(out)
    out = QRat.from_int(1)
    for s in range(1, m + 1):
        out = out * QRat(LaurentPoly({2 * d_alpha * t: 1 for t in range(s)}))
    return out


# ---------------------------------------------------------------------------
# Modular evaluation


@dataclass(frozen=True)
class ModScalar:
    """Residue of a QRat at q = point, modulo the prime p."""
    value: int
    p: int
    point: int


def eval_mod(x, p, t):
    """Substitute q -> t and reduce mod p.  PoleAtPoint if den(x)(t) = 0."""
    t %= p
    if t == 0:
        raise ValueError("evaluation point t must be nonzero mod p")
    dv = x.den.eval_mod(p, t)
    if dv == 0:
        raise PoleAtPoint("denominator vanishes at q=%d mod %d" % (t, p))
    nv = x.num.eval_mod(p, t)
    return ModScalar(nv * pow(dv, p - 2, p) % p, p, t)
