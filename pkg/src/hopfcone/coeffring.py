"""Exact scalar arithmetic: rationals, sparse multivariate polynomials and
fractions of polynomials.

Coefficients throughout the package are "scalars": plain ``int``,
``fractions.Fraction``, :class:`MultiPoly` or :class:`PolyFraction`.  The two
polynomial classes interoperate with numbers through the usual operator
protocol, so formal linear combinations never need to know which kind of
scalar they carry.

Variables are plain names.  The display/canonical order puts the named
parameters ``a, b, q, t, s`` first, then the indexed family ``z1, z2, ...``,
then anything else alphabetically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

_FIXED_VARS = {"a": 0, "b": 1, "q": 2, "t": 3, "s": 4}
_Z_RE = re.compile(r"^z(\d+)$")


class PoleError(ZeroDivisionError):
    """A denominator vanished at the evaluation point."""


def var_sort_key(name):
    if name in _FIXED_VARS:
        return (0, _FIXED_VARS[name], "")
    m = _Z_RE.match(name)
    if m:
        return (1, int(m.group(1)), "")
    return (2, 0, name)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    Monomials are stored as tuples of (variable, exponent) pairs, sorted by
    the canonical variable order, with no zero exponents.  Instances are
    treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name, exp=1):
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def _from_raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        """The value of a constant polynomial, or None if not constant."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self):
        out = set()
        for mono in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def degree_in(self, name):
        d = 0
        for mono in self.terms:
            for v, e in mono:
                if v == name:
                    d = max(d, e)
        return d

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def __add__(self, other):
        if isinstance(other, PolyFraction):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return MultiPoly._from_raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, PolyFraction):
            return NotImplemented
        return self + (-other if isinstance(other, MultiPoly) else MultiPoly.const(-_as_fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PolyFraction):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MultiPoly()
            return MultiPoly._from_raw({m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = terms.get(mono, 0) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return MultiPoly._from_raw(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial; use PolyFraction")
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        return PolyFraction(self, other)

    def __rtruediv__(self, other):
        return PolyFraction(other, self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.const_value() == _as_fraction(other)
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, PolyFraction):
            return other.__eq__(self)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eval(self, point):
        """Evaluate at a mapping variable -> Fraction; all variables must be bound."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for name, e in mono:
                if name not in point:
                    raise KeyError(f"unbound variable {name!r}")
                v *= _as_fraction(point[name]) ** e
            total += v
        return total

    def content(self):
        """gcd of the coefficients, signed by the leading coefficient."""
        if not self.terms:
            return Fraction(0)
        num = reduce(gcd, (abs(c.numerator) for c in self.terms.values()))
        den = reduce(_lcm, (c.denominator for c in self.terms.values()))
        lead = self.terms[self._leading_mono()]
        sign = 1 if lead > 0 else -1
        return Fraction(sign * num, den)

    def _leading_mono(self):
        return min(self.terms, key=_mono_order_key)

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _mono_order_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self._sorted_terms():
            factors = []
            for name, e in sorted(mono, key=lambda p: var_sort_key(p[0])):
                factors.append(name if e == 1 else f"{name}^{e}")
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _lcm(x, y):
    return x * y // gcd(x, y)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda p: var_sort_key(p[0])))


def _mono_order_key(mono):
    # degree-graded, then lex along the canonical variable order (higher
    # exponent on an earlier variable first); ascending sort puts the leading
    # term first
    deg = sum(e for _, e in mono)
    vec = tuple((var_sort_key(v), -e)
                for v, e in sorted(mono, key=lambda p: var_sort_key(p[0])))
    return (-deg, vec)


class PolyFraction:
    """Quotient of two MultiPoly values.

    No multivariate gcd is attempted: equality is decided by cross
    multiplication.  Only the integer content and the sign of the
    denominator's leading term are normalized; a constant denominator is
    folded into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _to_poly(num)
        den = _to_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        c = den.const_value()
        if c is not None:
            num = num * (1 / c)
            den = MultiPoly.const(1)
        else:
            cont = den.content()
            num = num * (1 / cont)
            den = den * (1 / cont)
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def const_value(self):
        if self.den.const_value() == 1:
            return self.num.const_value()
        return None

    def as_poly(self):
        """The numerator if the denominator is 1, else None."""
        if self.den.const_value() == 1:
            return self.num
        return None

    def __add__(self, other):
        other = _to_fraction_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return PolyFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        f = PolyFraction.__new__(PolyFraction)
        f.num = -self.num
        f.den = self.den
        return f

    def __sub__(self, other):
        other = _to_fraction_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _to_fraction_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return PolyFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _to_fraction_operand(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero fraction")
        return PolyFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return PolyFraction(other) / self

    def __pow__(self, n):
        if n < 0:
            return PolyFraction(self.den, self.num) ** (-n)
        out = PolyFraction(MultiPoly.const(1))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _to_fraction_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        c = self.const_value()
        if c is not None:
            return hash(c)
        return hash((hash(self.num), hash(self.den)))

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise PoleError(f"denominator {self.den} vanishes at {point}")
        return self.num.eval(point) / d

    def __str__(self):
        if self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"PolyFraction({self})"


def _to_poly(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    raise TypeError(f"cannot coerce {x!r} to MultiPoly")


def _to_fraction_operand(x):
    if isinstance(x, PolyFraction):
        return x
    if isinstance(x, (int, Fraction, MultiPoly)):
        return PolyFraction(x)
    return NotImplemented


def qvar():
    return MultiPoly.var("q")


@lru_cache(maxsize=None)
def qbinomial(n, k):
    """Gaussian binomial coefficient as a polynomial in q.

    Built from the Pascal recurrence [n,k] = [n-1,k-1] + q^k [n-1,k];
    specializes to binomial(n, k) at q = 1.
    """
    if not (0 <= k <= n):
        raise ValueError(f"qbinomial out of range: ({n}, {k})")
    if k == 0 or k == n:
        return MultiPoly.const(1)
    return qbinomial(n - 1, k - 1) + MultiPoly.var("q", k) * qbinomial(n - 1, k)


def binomial_poly(k, var="t"):
    """binomial(t, k) = t(t-1)...(t-k+1)/k! as a polynomial in ``var``."""
    if k < 0:
        raise ValueError("negative binomial order")
    t = MultiPoly.var(var)
    out = MultiPoly.const(1)
    fact = 1
    for j in range(k):
        out = out * (t - j)
        fact *= j + 1
    return out * Fraction(1, fact)


def eval_scalar(x, point):
    """Evaluate any scalar at a point mapping variable -> Fraction."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x.eval(point)


def scalar_simplify(x):
    """Collapse constant polynomials/fractions to plain Fractions."""
    if isinstance(x, (MultiPoly, PolyFraction)):
        c = x.const_value()
        if c is not None:
            return c
    return x


def scalar_to_json(x):
    """JSON form of a scalar: int, "p/q" string, or {num, den} term lists."""
    x = scalar_simplify(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, MultiPoly):
        x = PolyFraction(x)
    return {
        "num": _poly_terms_json(x.num),
        "den": _poly_terms_json(x.den),
    }


def _poly_terms_json(p):
    out = []
    for mono, c in p._sorted_terms():
        out.append({
            "coeff": f"{c.numerator}/{c.denominator}" if c.denominator != 1 else int(c),
            "exps": {v: e for v, e in mono},
        })
    return out


def parse_rational(text):
    """Parse "3", "-5/7" into a Fraction."""
    return Fraction(text)
