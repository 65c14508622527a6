"""A discrete weight-1 Rota-Baxter algebra under convolution, the tensor
quasi-shuffle algebra over it, and the nested-restriction character with its
summation/evaluation functionals."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .combinat import Composition, compositions
from .freemod import GradedSeries, LinComb
from .ncsf import EMPTY, SymElement, _coproduct_s_label, sym_is_primitive
from .freemod import is_grouplike


class ConvSeq:
    """Finitely supported sequence with the convolution product."""

    __slots__ = ("values", "_hash")

    def __init__(self, values=None):
        vals = {}
        if values:
            for k, v in values.items():
                v = Fraction(v)
                if v:
                    vals[int(k)] = v
        self.values = vals
        self._hash = hash(frozenset(vals.items()))

    @classmethod
    def delta(cls, at=0, value=1):
        return cls({at: value})

    def __call__(self, t):
        return self.values.get(t, Fraction(0))

    def support(self):
        return sorted(self.values)

    def __bool__(self):
        return bool(self.values)

    def __add__(self, other):
        vals = dict(self.values)
        for k, v in other.values.items():
            s = vals.get(k, 0) + v
            if s:
                vals[k] = s
            else:
                vals.pop(k, None)
        return ConvSeq(vals)

    def __neg__(self):
        return ConvSeq({k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Convolution (f*g)(n) = sum_k f(k) g(n-k)."""
        if not isinstance(other, ConvSeq):
            return NotImplemented
        vals = {}
        for k1, v1 in self.values.items():
            for k2, v2 in other.values.items():
                k = k1 + k2
                s = vals.get(k, 0) + v1 * v2
                if s:
                    vals[k] = s
                else:
                    vals.pop(k, None)
        return ConvSeq(vals)

    def conv_power(self, n):
        if n < 1:
            raise ValueError("convolution power needs n >= 1")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, ConvSeq) and self.values == other.values

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ConvSeq({self.values})"


def rb_R(f):
    """Restriction to strictly positive indices (the Rota-Baxter operator).

    Strict positivity makes V(R(a) * R(b)) = 0 exact: two sequences supported
    on >= 1 convolve to support >= 2.
    """
    return ConvSeq({k: v for k, v in f.values.items() if k >= 1})


def rb_minus(f):
    return ConvSeq({k: v for k, v in f.values.items() if k <= 0})


def rb_identity_check(x, y):
    """R(xy) + R(x)R(y) = R(x R(y) + R(x) y), exactly."""
    lhs = rb_R(x * y) + rb_R(x) * rb_R(y)
    rhs = rb_R(x * rb_R(y) + rb_R(x) * y)
    ok = lhs == rhs
    out = {"status": "pass" if ok else "fail"}
    if not ok:
        out["lhs"] = repr(lhs)
        out["rhs"] = repr(rhs)
    return out


# ---------------------------------------------------------------------------
# tensor quasi-shuffle algebra


class Tensor:
    """Ordered list of ConvSeq factors; the empty list is the unit."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors=()):
        factors = tuple(factors)
        if any(not isinstance(f, ConvSeq) for f in factors):
            raise TypeError("tensor factors must be ConvSeq")
        self.factors = factors
        self._hash = hash(("Tensor", factors))

    @property
    def grade(self):
        return len(self.factors)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tensor(len={len(self.factors)})"


UNIT_TENSOR = Tensor(())


def tensor_quasi_shuffle(a, b):
    """Quasi-shuffle with last-factor convolution merge; returns a LinComb."""
    if isinstance(a, Tensor):
        a = LinComb.single(a)
    if isinstance(b, Tensor):
        b = LinComb.single(b)

    def rec(x, y):
        if not x.factors:
            return LinComb.single(y)
        if not y.factors:
            return LinComb.single(x)
        xa, la = Tensor(x.factors[:-1]), x.factors[-1]
        yb, lb = Tensor(y.factors[:-1]), y.factors[-1]
        out = LinComb()
        for t, c in rec(xa, y).items():
            out = out + LinComb.single(Tensor(t.factors + (la,)), c)
        for t, c in rec(x, yb).items():
            out = out + LinComb.single(Tensor(t.factors + (lb,)), c)
        merged = la * lb
        for t, c in rec(xa, yb).items():
            out = out + LinComb.single(Tensor(t.factors + (merged,)), c)
        return out

    return a.bilinear(b, rec)


class Unitarized:
    """Element of K.1 + A: a scalar part plus a ConvSeq part."""

    __slots__ = ("scalar", "seq")

    def __init__(self, scalar=0, seq=None):
        self.scalar = Fraction(scalar)
        self.seq = seq if seq is not None else ConvSeq()

    def __add__(self, other):
        return Unitarized(self.scalar + other.scalar, self.seq + other.seq)

    def scale(self, c):
        return Unitarized(self.scalar * c,
                          ConvSeq({k: v * c for k, v in self.seq.values.items()}))

    def __mul__(self, other):
        seq = (self.seq * other.seq
               + ConvSeq({k: v * other.scalar for k, v in self.seq.values.items()})
               + ConvSeq({k: v * self.scalar for k, v in other.seq.values.items()}))
        return Unitarized(self.scalar * other.scalar, seq)

    def __eq__(self, other):
        return (isinstance(other, Unitarized) and self.scalar == other.scalar
                and self.seq == other.seq)

    def __repr__(self):
        return f"Unitarized({self.scalar}, {self.seq.values})"


def character_C(t):
    """C(1) = 1 and C(a_1 x ... x a_s) = (-1)^s R(R(...R(R(a_1)a_2)...)a_s),
    extended linearly to LinCombs of tensors; valued in the unitarization."""
    if isinstance(t, Tensor):
        t = LinComb.single(t)
    out = Unitarized(0)
    for tensor, c in t.items():
        if not tensor.factors:
            out = out + Unitarized(c)
            continue
        acc = rb_R(tensor.factors[0])
        for f in tensor.factors[1:]:
            acc = rb_R(acc * f)
        sign = (-1) ** len(tensor.factors)
        out = out + Unitarized(0, acc).scale(sign * c)
    return out


def func_I(x):
    """Sum of all values, extended by the scalar part (multiplicative)."""
    if isinstance(x, Unitarized):
        return x.scalar + sum(x.seq.values.values(), Fraction(0))
    return sum(x.values.values(), Fraction(0))


def func_V(x):
    """Evaluation at 0, extended by zero on the adjoined unit
    (infinitesimal)."""
    if isinstance(x, Unitarized):
        return x.seq(0)
    return x(0)


def convolution_mould(a, I):
    """M_I(a) = C(a^{*i_1} x ... x a^{*i_r}) for a composition I."""
    tensor = Tensor(tuple(a.conv_power(i) for i in I.parts))
    return character_C(tensor)


def sym_series(a, cap, functional):
    """The series sum_I functional(C(a^{*i_1} x ...)) S^I in Sym."""
    comps = {0: LinComb.single(EMPTY)}
    for n in range(1, cap + 1):
        comp = LinComb()
        for I in compositions(n):
            c = functional(convolution_mould(a, I))
            if c:
                comp = comp + LinComb.single(I, c)
        if comp:
            comps[n] = comp
    return GradedSeries(comps, cap)


def bridge_grouplike_check(a, cap=4):
    """The I-weighted series is grouplike for the Sym coproduct."""
    series = sym_series(a, cap, func_I)
    ok = is_grouplike(series, _coproduct_s_label, EMPTY)
    return {"status": "pass" if ok else "fail", "cap": cap}


def bridge_primitive_check(a, cap=4):
    """Every homogeneous component of the V-weighted series is primitive."""
    series = sym_series(a, cap, func_V)
    for n in range(1, cap + 1):
        comp = series.component(n)
        if comp and not sym_is_primitive(SymElement("S", comp)):
            return {"status": "fail", "degree": n}
    return {"status": "pass", "cap": cap}


def random_conv_seq(rng, support_bound=4, coeff_bound=5, density=0.6):
    vals = {}
    for k in range(-support_bound, support_bound + 1):
        if rng.random() < density:
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                vals[k] = Fraction(c)
    return ConvSeq(vals)


def rb_random_suite(trials=200, support=4, seed=7):
    """Random-instance suite: the Rota-Baxter identity, closure of the two
    subalgebras, and the character property of C on small tensors."""
    rng = random.Random(seed)
    for i in range(trials):
        x = random_conv_seq(rng, support)
        y = random_conv_seq(rng, support)
        if rb_identity_check(x, y)["status"] != "pass":
            return {"status": "fail", "what": "rb-identity", "trial": i}
        # closure: supports >= 1 convolve to >= 2, supports <= 0 to <= 0
        plus = rb_R(x) * rb_R(y)
        if plus and min(plus.support()) < 2:
            return {"status": "fail", "what": "A+ closure", "trial": i}
        minus = rb_minus(x) * rb_minus(y)
        if minus and max(minus.support()) > 0:
            return {"status": "fail", "what": "A- closure", "trial": i}
        # character property on small random tensors
        u = Tensor(tuple(random_conv_seq(rng, 2, 3) for _ in range(rng.randint(0, 2))))
        v = Tensor(tuple(random_conv_seq(rng, 2, 3) for _ in range(rng.randint(1, 2))))
        lhs = character_C(tensor_quasi_shuffle(u, v))
        rhs = character_C(u) * character_C(v)
        if lhs != rhs:
            return {"status": "fail", "what": "character", "trial": i}
    return {"status": "pass", "trials": trials}
