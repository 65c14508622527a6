"""Rational moulds of packed words, the shifted star product, the discrete
summation-operator realization, the operad of partial compositions, the
tridendriform operators, tree moulds and the induced characters."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

from .coeffring import MultiPoly, PoleError, PolyFraction, binomial_poly
from .combinat import PackedWord, packed_words
from .freemod import LinComb
from .wqsym import WQSymElement, convolution_words, tridendriform_split, wq_convert


class DiscreteSeq:
    """Finitely supported exact-rational function on the integers."""

    __slots__ = ("values",)

    def __init__(self, values=None):
        vals = {}
        if values:
            for k, v in values.items():
                v = Fraction(v)
                if v:
                    vals[int(k)] = v
        self.values = vals

    @classmethod
    def delta(cls, at=0, value=1):
        return cls({at: value})

    def __call__(self, t):
        return self.values.get(t, Fraction(0))

    def support(self):
        return sorted(self.values)

    def min_support(self):
        return min(self.values) if self.values else math.inf

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
        return DiscreteSeq(vals)

    def __neg__(self):
        return DiscreteSeq({k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def pointwise_mul(self, other):
        vals = {}
        small, big = (self, other) if len(self.values) <= len(other.values) else (other, self)
        for k, v in small.values.items():
            w = big.values.get(k)
            if w:
                vals[k] = v * w
        return DiscreteSeq(vals)

    def __eq__(self, other):
        return isinstance(other, DiscreteSeq) and self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __repr__(self):
        return f"DiscreteSeq({self.values})"


def random_seq(rng, support_bound=3, density=0.7, coeff_bound=5):
    vals = {}
    for k in range(-support_bound, support_bound + 1):
        if rng.random() < density:
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                vals[k] = Fraction(c)
    return DiscreteSeq(vals)


# ---------------------------------------------------------------------------
# rational moulds


class RationalMould:
    """An arity plus an exact evaluation procedure (optionally symbolic)."""

    __slots__ = ("arity", "_eval", "fraction")

    def __init__(self, arity, eval_fn, fraction=None):
        self.arity = arity
        self._eval = eval_fn
        self.fraction = fraction

    def eval(self, zs):
        zs = [Fraction(z) for z in zs]
        if len(zs) != self.arity:
            raise ValueError(f"expected {self.arity} variables, got {len(zs)}")
        try:
            return self._eval(zs)
        except ZeroDivisionError as exc:
            raise PoleError(str(exc)) from exc

    def __str__(self):
        return str(self.fraction) if self.fraction is not None else f"<mould/{self.arity}>"


def mould_M(u):
    """M_u(Z) = product over k of 1 / (prod of z_i over the first k blocks - 1)."""
    n = len(u)
    blocks = u.blocks()

    prefixes = []
    acc = []
    for block in blocks:
        acc = acc + list(block)
        prefixes.append(tuple(acc))

    def _eval(zs):
        out = Fraction(1)
        for pref in prefixes:
            prod = Fraction(1)
            for i in pref:
                prod *= zs[i - 1]
            out /= prod - 1
        return out

    den = MultiPoly.const(1)
    for pref in prefixes:
        mono = MultiPoly.const(1)
        for i in pref:
            mono = mono * MultiPoly.var(f"z{i}")
        den = den * (mono - 1)
    return RationalMould(n, _eval, PolyFraction(1, den) if n else PolyFraction(1))


def mould_star(P, Q):
    """Shifted star product: evaluate P and Q on consecutive variable blocks."""
    def _eval(zs):
        return P.eval(zs[:P.arity]) * Q.eval(zs[P.arity:])
    return RationalMould(P.arity + Q.arity, _eval)


def mould_star_check(u, v, trials=20, seed=0):
    """M_u * M_v = sum of M_w over the convolution, at random points with
    all |z| > 1 (integers >= 2, so no denominators vanish)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    star = mould_star(mould_M(u), mould_M(v))
    terms = {}
    for w in convolution_words(u, v):
        terms[w] = terms.get(w, 0) + 1
    moulds = {w: mould_M(w) for w in terms}
    rng = random.Random(seed)
    total = len(u) + len(v)
    for k in range(trials):
        zs = [Fraction(rng.randint(2, 10 ** 4)) for _ in range(total)]
        lhs = star.eval(zs)
        rhs = sum(mult * moulds[w].eval(zs) for w, mult in terms.items())
        if lhs != rhs:
            return {"status": "fail", "points_checked": k,
                    "counterexample": {"point": [str(z) for z in zs]}}
    return {"status": "pass", "points_checked": trials}


# ---------------------------------------------------------------------------
# discrete operators


def op_eval(u, fs, t):
    """g(t) = sum over integer vectors alpha < 0 with pack(alpha) = u of
    prod_j f_j(t + alpha_j); exact and finite for finitely supported f's."""
    if len(fs) != len(u):
        raise ValueError(f"arity mismatch: word of length {len(u)}, {len(fs)} functions")
    if not u.letters:
        return Fraction(1)
    blocks = u.blocks()
    bs = []
    for block in blocks:
        seq = fs[block[0] - 1]
        for pos in block[1:]:
            seq = seq.pointwise_mul(fs[pos - 1])
        bs.append(seq)
    m = len(bs)

    def rec(k, bound):
        # choose c_k < bound (c_k = s - t for s in support), descending k
        if k < 0:
            return Fraction(1)
        total = Fraction(0)
        for s in bs[k].support():
            c = s - t
            if c < bound:
                sub = rec(k - 1, c)
                if sub:
                    total += bs[k].values[s] * sub
        return total

    return rec(m - 1, 0)


class OperatorExpr:
    """Expression tree over M (summation), Delta (finite difference),
    pointwise products, sums, and leaf functions."""

    def eval(self, fs, t, memo=None):
        raise NotImplementedError

    def min_t(self, fs):
        raise NotImplementedError


class LeafExpr(OperatorExpr):
    __slots__ = ("index",)

    def __init__(self, index):
        self.index = index  # 1-based

    def eval(self, fs, t, memo=None):
        return fs[self.index - 1](t)

    def min_t(self, fs):
        return fs[self.index - 1].min_support()

    def __eq__(self, other):
        return isinstance(other, LeafExpr) and self.index == other.index

    def __hash__(self):
        return hash(("leaf", self.index))

    def __str__(self):
        return f"f{self.index}"


def prod_expr(factors):
    """Pointwise product node; collapses a single factor to itself."""
    flat = []
    for f in factors:
        if isinstance(f, ProdExpr):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    return ProdExpr(flat)


class ProdExpr(OperatorExpr):
    """Pointwise product; compared as a multiset of factors."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        flat = []
        for f in factors:
            if isinstance(f, ProdExpr):
                flat.extend(f.factors)
            else:
                flat.append(f)
        self.factors = tuple(sorted(flat, key=str))

    def eval(self, fs, t, memo=None):
        out = Fraction(1)
        for f in self.factors:
            v = f.eval(fs, t, memo)
            if not v:
                return Fraction(0)
            out *= v
        return out

    def min_t(self, fs):
        return max(f.min_t(fs) for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, ProdExpr) and self.factors == other.factors

    def __hash__(self):
        return hash(("prod", self.factors))

    def __str__(self):
        return "".join(str(f) if isinstance(f, (LeafExpr, MExpr)) else f"({f})"
                       for f in self.factors)


class SumExpr(OperatorExpr):
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    def eval(self, fs, t, memo=None):
        return sum((p.eval(fs, t, memo) for p in self.parts), Fraction(0))

    def min_t(self, fs):
        return min((p.min_t(fs) for p in self.parts), default=math.inf)

    def __eq__(self, other):
        return isinstance(other, SumExpr) and sorted(map(str, self.parts)) == \
            sorted(map(str, other.parts))

    def __hash__(self):
        return hash(("sum", tuple(sorted(map(str, self.parts)))))

    def __str__(self):
        return " + ".join(str(p) for p in self.parts)


class MExpr(OperatorExpr):
    """M[g](t) = sum of g(s) over s <= t - 1 (finite: g vanishes far left)."""

    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child

    def eval(self, fs, t, memo=None):
        if memo is None:
            memo = {}
        key = (id(self), t)
        if key in memo:
            return memo[key]
        lo = self.child.min_t(fs)
        total = Fraction(0)
        if lo is not math.inf:
            s = lo
            while s <= t - 1:
                total += self.child.eval(fs, s, memo)
                s += 1
        memo[key] = total
        return total

    def min_t(self, fs):
        lo = self.child.min_t(fs)
        return math.inf if lo is math.inf else lo + 1

    def __eq__(self, other):
        return isinstance(other, MExpr) and self.child == other.child

    def __hash__(self):
        return hash(("M", self.child))

    def __str__(self):
        return f"M[{self.child}]"


class DeltaExpr(OperatorExpr):
    """Delta g(t) = g(t+1) - g(t); a left inverse of M."""

    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child

    def eval(self, fs, t, memo=None):
        return self.child.eval(fs, t + 1, memo) - self.child.eval(fs, t, memo)

    def min_t(self, fs):
        lo = self.child.min_t(fs)
        return math.inf if lo is math.inf else lo - 1

    def __eq__(self, other):
        return isinstance(other, DeltaExpr) and self.child == other.child

    def __hash__(self):
        return hash(("Delta", self.child))

    def __str__(self):
        return f"D[{self.child}]"


class OpExpr(OperatorExpr):
    """M_u applied to a selection of the environment functions."""

    __slots__ = ("word", "indices")

    def __init__(self, word, indices):
        if len(indices) != len(word):
            raise ValueError("index list must match word length")
        self.word = word
        self.indices = tuple(indices)

    def eval(self, fs, t, memo=None):
        return op_eval(self.word, [fs[i - 1] for i in self.indices], t)

    def min_t(self, fs):
        lows = [fs[i - 1].min_support() for i in self.indices]
        if any(lo is math.inf for lo in lows):
            return math.inf
        return max(lows) + 1 if lows else math.inf

    def __eq__(self, other):
        return (isinstance(other, OpExpr) and self.word == other.word
                and self.indices == other.indices)

    def __hash__(self):
        return hash(("op", self.word, self.indices))

    def __str__(self):
        return f"M_{self.word}[{','.join(f'f{i}' for i in self.indices)}]"


def decompose(u):
    """Bracket decomposition: M_u = [...[[b_1] b_2] ... b_m] with b_i the
    pointwise product of the functions in block i."""
    blocks = u.blocks()
    if not blocks:
        raise ValueError("cannot decompose the empty word")
    expr = MExpr(prod_expr([LeafExpr(i) for i in blocks[0]]))
    for block in blocks[1:]:
        expr = MExpr(prod_expr([expr] + [LeafExpr(i) for i in block]))
    return expr


def rb_operator_check(f1, f2, window=(-5, 10)):
    """Weight-1 Rota-Baxter law for M:
    M[f1 M[f2] + M[f1] f2 + f1 f2] = M[f1] M[f2] pointwise on the window."""
    l1, l2 = LeafExpr(1), LeafExpr(2)
    lhs = MExpr(SumExpr([ProdExpr([l1, MExpr(l2)]),
                         ProdExpr([MExpr(l1), l2]),
                         ProdExpr([l1, l2])]))
    rhs = ProdExpr([MExpr(l1), MExpr(l2)])
    fs = [f1, f2]
    memo = {}
    for t in range(window[0], window[1] + 1):
        a, b = lhs.eval(fs, t, memo), rhs.eval(fs, t, memo)
        if a != b:
            return {"status": "fail", "t": t, "lhs": str(a), "rhs": str(b)}
    return {"status": "pass", "points_checked": window[1] - window[0] + 1}


# ---------------------------------------------------------------------------
# operad structure


def operad_compose(u, k, v):
    """k-th partial composition as a multiplicity-free sum of packed words.

    w belongs to u o_k v iff the middle |v| letters pack to v and the outer
    letters, with the middle block represented by its maximum, pack to u.
    """
    m, n = len(u), len(v)
    if not 1 <= k <= m:
        raise ValueError(f"composition position {k} out of range 1..{m}")
    out = {}
    from .combinat import pack as _pack
    for w in packed_words(m + n - 1):
        mid = w.letters[k - 1:k - 1 + n]
        if _pack(mid).letters != v.letters:
            continue
        outer = w.letters[:k - 1] + (max(mid),) + w.letters[k - 1 + n:]
        if _pack(outer).letters != u.letters:
            continue
        out[w] = 1
    return out


def operad_compose_lin(x, k, y):
    """Linear extension of o_k to dicts word -> coefficient."""
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            for w, m in operad_compose(u, k, v).items():
                out[w] = out.get(w, 0) + cu * cv * m
    return {w: c for w, c in out.items() if c}


def operad_compose_rational(P, k, Q):
    """(z_k ... z_{k+n-1} - 1) P(..., z_k...z_{k+n-1}, ...) Q(z_k, ...)."""
    m, n = P.arity, Q.arity
    if not 1 <= k <= m:
        raise ValueError(f"composition position {k} out of range 1..{m}")

    def _eval(zs):
        mid = zs[k - 1:k - 1 + n]
        prod = Fraction(1)
        for z in mid:
            prod *= z
        outer = list(zs[:k - 1]) + [prod] + list(zs[k - 1 + n:])
        return (prod - 1) * P.eval(outer) * Q.eval(mid)

    return RationalMould(m + n - 1, _eval)


def operad_symbolic_vs_rational_check(u, k, v, trials=10, seed=0):
    """The word-level composition agrees with the rational-function one."""
    sym = operad_compose(u, k, v)
    rat = operad_compose_rational(mould_M(u), k, mould_M(v))
    rng = random.Random(seed)
    for i in range(trials):
        zs = [Fraction(rng.randint(2, 10 ** 4)) for _ in range(rat.arity)]
        lhs = rat.eval(zs)
        rhs = sum(c * mould_M(w).eval(zs) for w, c in sym.items())
        if lhs != rhs:
            return {"status": "fail", "points_checked": i}
    return {"status": "pass", "points_checked": trials}


# ---------------------------------------------------------------------------
# tridendriform operators


def tridendriform_op(kind, u, v):
    """Symbolic partial product on basis words; returns dict word -> 1."""
    x = WQSymElement.single("M", u)
    y = WQSymElement.single("M", v)
    left, middle, right = tridendriform_split(x, y)
    chosen = {"left": left, "middle": middle, "right": right}[kind]
    return dict(chosen.comb.items())


def tridendriform_operator_expr(kind, u, v):
    """Operator form: right = M[M_u . Delta M_v], left = M[Delta M_u . M_v],
    middle = M[Delta M_u . Delta M_v]."""
    n, m = len(u), len(v)
    a = OpExpr(u, tuple(range(1, n + 1)))
    b = OpExpr(v, tuple(range(n + 1, n + m + 1)))
    if kind == "right":
        return MExpr(ProdExpr([a, DeltaExpr(b)]))
    if kind == "left":
        return MExpr(ProdExpr([DeltaExpr(a), b]))
    if kind == "middle":
        return MExpr(ProdExpr([DeltaExpr(a), DeltaExpr(b)]))
    raise ValueError(f"unknown tridendriform kind {kind!r}")


def tridendriform_operator_check(kind, u, v, fs, window=(-6, 8)):
    """The operator form matches the symbolic split on given sequences."""
    expr = tridendriform_operator_expr(kind, u, v)
    words = tridendriform_op(kind, u, v)
    memo = {}
    for t in range(window[0], window[1] + 1):
        lhs = expr.eval(fs, t, memo)
        rhs = sum((c * op_eval(w, fs, t) for w, c in words.items()), Fraction(0))
        if lhs != rhs:
            return {"status": "fail", "t": t, "lhs": str(lhs), "rhs": str(rhs)}
    return {"status": "pass", "points_checked": window[1] - window[0] + 1}


# ---------------------------------------------------------------------------
# tree moulds


def tree_mould(tree):
    """Product over internal nodes of 1 / (prod of sector variables - 1)."""
    n = tree.grade
    sectors = tree.internal_sectors()

    def _eval(zs):
        out = Fraction(1)
        for sec in sectors:
            prod = Fraction(1)
            for j in sec:
                prod *= zs[j - 1]
            out /= prod - 1
        return out

    den = MultiPoly.const(1)
    for sec in sectors:
        mono = MultiPoly.const(1)
        for j in sec:
            mono = mono * MultiPoly.var(f"z{j}")
        den = den * (mono - 1)
    return RationalMould(n, _eval, PolyFraction(1, den))


def tree_mould_check(tree, trials=20, seed=0):
    """tree mould = sum of M_u over words with that Schroeder tree."""
    from .combinat import schroeder_tree
    n = tree.grade
    words = [u for u in packed_words(n) if schroeder_tree(u.letters) == tree]
    tm = tree_mould(tree)
    rng = random.Random(seed)
    for i in range(trials):
        zs = [Fraction(rng.randint(2, 10 ** 4)) for _ in range(n)]
        lhs = tm.eval(zs)
        rhs = sum(mould_M(u).eval(zs) for u in words)
        if lhs != rhs:
            return {"status": "fail", "points_checked": i}
    return {"status": "pass", "points_checked": trials, "words": len(words)}


# ---------------------------------------------------------------------------
# characters


def natural_character(x):
    """chi(M_u) = binomial(t, max u), extended linearly; a polynomial in t."""
    m = wq_convert(x, "M")
    out = MultiPoly()
    for u, c in m.comb.items():
        out = out + binomial_poly(u.max_letter) * c
    return out


def qint_character(x, q, t):
    """Specialization of the commutative image at the q-integer alphabet:
    M_u -> M_{ev(u)}([t]_q) for an integer t >= 0."""
    if t < 0:
        raise ValueError("t must be a nonnegative integer")
    m = wq_convert(x, "M")
    total = 0
    for u, c in m.comb.items():
        I = u.evaluation()
        r = I.length
        val = 0
        for ks in itertools.combinations(range(t), r):
            term = q ** sum(k * i for k, i in zip(ks, I.parts)) if ks else 1
            val = val + term
        if r == 0:
            val = 1
        total = total + c * val
    return total
