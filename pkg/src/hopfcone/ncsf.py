"""The Hopf algebra of noncommutative symmetric functions.

Bases: S (complete), L (elementary), R (ribbon), signedR (sign-sequence
relabeling of ribbons).  Conversions route through the S basis.  The internal
product is the descent-algebra product transported through the symmetric
group algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .coeffring import MultiPoly, PoleError, PolyFraction, qbinomial
from .combinat import Composition, SignSeq, compositions
from .freemod import GradedSeries, LinComb, is_primitive, label_grade, tensor

BASES = ("S", "L", "R", "signedR")

EMPTY = Composition(())
UNIT_SIGN = SignSeq((), 0)


class SymElement:
    """A basis tag plus a formal sum of composition (or sign-sequence) labels."""

    __slots__ = ("basis", "comb")

    def __init__(self, basis, comb):
        if basis not in BASES:
            raise ValueError(f"unknown Sym basis {basis!r}")
        if isinstance(comb, dict):
            comb = LinComb(comb)
        self.basis = basis
        self.comb = comb

    @classmethod
    def single(cls, basis, label, coeff=1):
        return cls(basis, LinComb.single(label, coeff))

    @classmethod
    def unit(cls, basis="S"):
        label = UNIT_SIGN if basis == "signedR" else EMPTY
        return cls.single(basis, label)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        if self.basis == other.basis:
            return self.comb == other.comb
        return convert(self, "S").comb == convert(other, "S").comb

    def __add__(self, other):
        if other.basis != self.basis:
            other = convert(other, self.basis)
        return SymElement(self.basis, self.comb + other.comb)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SymElement(self.basis, self.comb.scale(c))

    def __mul__(self, other):
        return multiply(self, other)

    def is_homogeneous(self):
        degs = {label_grade(l) for l in self.comb.labels()}
        return len(degs) <= 1

    def degree(self):
        degs = {label_grade(l) for l in self.comb.labels()}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def __str__(self):
        return f"{self.basis}:{self.comb}"

    def __repr__(self):
        return f"SymElement({self})"

    def to_json(self):
        return {"basis": self.basis, "terms": self.comb.to_json()}


# ---------------------------------------------------------------------------
# conversions (hub basis: S)


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


@lru_cache(maxsize=None)
def _s_to_r(I):
    """S^I = sum of R_J over Des(J) contained in Des(I)."""
    n = I.weight
    out = {}
    for sub in _subsets(sorted(I.descent_set())):
        out[Composition.from_descents(n, frozenset(sub))] = 1
    return LinComb(out)


@lru_cache(maxsize=None)
def _r_to_s(I):
    """Moebius inversion of _s_to_r on the boolean lattice of descent sets."""
    n = I.weight
    des = sorted(I.descent_set())
    out = {}
    for sub in _subsets(des):
        out[Composition.from_descents(n, frozenset(sub))] = (-1) ** (len(des) - len(sub))
    return LinComb(out)


@lru_cache(maxsize=None)
def _lambda_part_in_s(n):
    """Lambda_n = sum over K of n of (-1)^(n - length K) S^K."""
    return LinComb({K: (-1) ** (n - K.length) for K in compositions(n)})


@lru_cache(maxsize=None)
def _s_part_in_lambda(n):
    """S_n = sum over K of n of (-1)^(n - length K) Lambda^K (same formula)."""
    return LinComb({K: (-1) ** (n - K.length) for K in compositions(n)})


def _multiplicative_expand(I, part_expansion):
    """Expand a product basis label through a per-part expansion map."""
    out = LinComb.single(EMPTY)
    for part in I.parts:
        piece = part_expansion(part)
        out = out.bilinear(piece, lambda a, b: LinComb.single(a.concat(b)))
    return out


def _signed_to_r_label(eps):
    I = eps.to_composition()
    sign = (-1) ** (I.length - 1) if eps.degree else 1
    return I, sign


def convert(x, target):
    """Exact change of basis; all paths route through S."""
    if target not in BASES:
        raise ValueError(f"unknown Sym basis {target!r}")
    if x.basis == target:
        return x
    if x.basis == "signedR":
        terms = LinComb()
        for eps, c in x.comb.items():
            I, sign = _signed_to_r_label(eps)
            terms = terms + LinComb.single(I, sign).scale(c)
        return convert(SymElement("R", terms), target)
    if target == "signedR":
        r = convert(x, "R")
        terms = LinComb()
        for I, c in r.comb.items():
            eps = SignSeq.from_composition(I)
            sign = (-1) ** (I.length - 1) if eps.degree else 1
            terms = terms + LinComb.single(eps, sign).scale(c)
        return SymElement("signedR", terms)

    if x.basis == "S":
        if target == "R":
            return SymElement("R", x.comb.bind(_s_to_r))
        if target == "L":
            return SymElement("L", x.comb.bind(
                lambda I: _multiplicative_expand(I, _s_part_in_lambda)))
    if x.basis == "R" and target != "S":
        return convert(convert(x, "S"), target)
    if x.basis == "R":
        return SymElement("S", x.comb.bind(_r_to_s))
    if x.basis == "L":
        s = SymElement("S", x.comb.bind(
            lambda I: _multiplicative_expand(I, _lambda_part_in_s)))
        return convert(s, target) if target != "S" else s
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# products


def _concat_rule(a, b):
    return LinComb.single(a.concat(b))


def _ribbon_rule(a, b):
    if not a.parts:
        return LinComb.single(b)
    if not b.parts:
        return LinComb.single(a)
    return LinComb({a.concat(b): 1, a.glue(b): 1})


def _signed_rule(a, b):
    if a.degree == 0:
        return LinComb.single(b)
    if b.degree == 0:
        return LinComb.single(a)
    return LinComb({a.joined(1, b): 1, a.joined(-1, b): -1})


_PRODUCT_RULES = {"S": _concat_rule, "L": _concat_rule, "R": _ribbon_rule,
                  "signedR": _signed_rule}


def multiply(x, y, basis=None):
    """Product of two Sym elements, in ``basis`` (default: basis of x)."""
    basis = basis or x.basis
    x = convert(x, basis)
    y = convert(y, basis)
    return SymElement(basis, x.comb.bilinear(y.comb, _PRODUCT_RULES[basis]))


def ribbon_product(x, y):
    return multiply(x, y, "R")


# ---------------------------------------------------------------------------
# coproduct


@lru_cache(maxsize=None)
def _coproduct_s_label(I):
    """Delta(S^I) as a tensor LinComb over pairs of compositions."""
    out = LinComb.single((EMPTY, EMPTY))
    for part in I.parts:
        delta_part = LinComb({(Composition((k,)) if k else EMPTY,
                               Composition((part - k,)) if part - k else EMPTY): 1
                              for k in range(part + 1)})
        new = LinComb()
        for (a1, b1), c1 in out.items():
            for (a2, b2), c2 in delta_part.items():
                key = (a1.concat(a2), b1.concat(b2))
                new.terms[key] = new.terms.get(key, 0) + c1 * c2
        out = new
    return out


def coproduct(x):
    """Coproduct as a tensor LinComb in the S (x) S basis."""
    s = convert(x, "S")
    return s.comb.bind(_coproduct_s_label)


def coproduct_in_basis(x, basis):
    """Coproduct with both tensor factors converted to ``basis``."""
    t = coproduct(x)
    out = LinComb()
    for (a, b), c in t.items():
        left = convert(SymElement.single("S", a), basis).comb
        right = convert(SymElement.single("S", b), basis).comb
        out = out + tensor(left, right).scale(c)
    return out


def sym_is_primitive(x):
    """Delta(x) = x (x) 1 + 1 (x) x, for homogeneous x of degree >= 1."""
    s = convert(x, "S")
    return is_primitive(s.comb, _coproduct_s_label, EMPTY)


def sigma_series(cap, z=1):
    """The grouplike series sum_n z^n S_n as a GradedSeries in the S basis."""
    comps = {0: LinComb.single(EMPTY)}
    for n in range(1, cap + 1):
        comps[n] = LinComb.single(Composition((n,)), Fraction(z) ** n if z != 1 else 1)
    return GradedSeries(comps, cap)


def series_multiply(a, b, cap):
    """Product of two GradedSeries of S-basis components."""
    comps = {}
    for n in range(cap + 1):
        acc = LinComb()
        for k in range(n + 1):
            acc = acc + a.component(k).bilinear(b.component(n - k), _concat_rule)
        if acc:
            comps[n] = acc
    return GradedSeries(comps, cap)


# ---------------------------------------------------------------------------
# power sums and Lie idempotents


@lru_cache(maxsize=None)
def psi(n):
    """Dynkin power sum via the Newton recurrence n S_n = sum S_{n-k} Psi_k."""
    if n < 1:
        raise ValueError("psi needs n >= 1")
    acc = LinComb.single(Composition((n,)), Fraction(n))
    for k in range(1, n):
        prev = psi(k).comb
        s_part = LinComb.single(Composition((n - k,)))
        acc = acc - s_part.bilinear(prev, _concat_rule)
    return SymElement("S", acc)


@lru_cache(maxsize=None)
def _log_sigma_component(n):
    """Degree-n component of log(sigma), in the S basis."""
    # log(1 + x) with x = sum_{m>=1} S_m ; the m-th power has min degree m
    acc = LinComb()
    x = {d: LinComb.single(Composition((d,))) for d in range(1, n + 1)}
    power = dict(x)  # x^1
    acc = acc + power.get(n, LinComb())
    for m in range(2, n + 1):
        new = {}
        for d1, c1 in power.items():
            for d2 in range(1, n - d1 + 1):
                t = c1.bilinear(x[d2], _concat_rule)
                key = d1 + d2
                new[key] = new.get(key, LinComb()) + t
        power = new
        if n in power:
            acc = acc + power[n].scale(Fraction((-1) ** (m + 1), m))
    return acc


def phi(n):
    """Solomon power sum: Phi_n = n [t^n] log sigma_t."""
    if n < 1:
        raise ValueError("phi needs n >= 1")
    return SymElement("S", _log_sigma_component(n).scale(Fraction(n)))


def euler_idempotent(n, q):
    """One-parameter family of Lie idempotents in the ribbon basis.

    (1/n) sum over permutations of (-1)^d q^(maj - C(d+1,2)) / qbin(n-1, d)
    times the permutation, aggregated by descent class: each descent class I
    contributes that coefficient on R_I (d = length(I)-1, maj = sum Des(I)).
    """
    if n < 1:
        raise ValueError("euler idempotent needs n >= 1")
    symbolic = isinstance(q, (MultiPoly, PolyFraction))
    out = LinComb()
    for I in compositions(n):
        d = I.length - 1
        maj = sum(I.descent_set())
        e = maj - d * (d + 1) // 2
        qb = qbinomial(n - 1, d)
        if symbolic:
            denom = qb
            coeff = PolyFraction((q ** e) * ((-1) ** d), denom) * Fraction(1, n)
        else:
            q = Fraction(q)
            qb_val = qb.eval({"q": q})
            if not qb_val:
                raise PoleError(f"qbinomial({n - 1},{d}) vanishes at q={q}")
            coeff = Fraction((-1) ** d, n) * q ** e / qb_val
        out = out + LinComb.single(I, coeff)
    return SymElement("R", out)


# ---------------------------------------------------------------------------
# internal product via the symmetric group algebra

INTERNAL_DEGREE_CAP = 8


@lru_cache(maxsize=None)
def _descent_classes(n):
    """Composition -> tuple of permutations of {1..n} with that descent
    composition."""
    out = {}
    for perm in itertools.permutations(range(1, n + 1)):
        descents = {i + 1 for i in range(n - 1) if perm[i] > perm[i + 1]}
        I = Composition.from_descents(n, descents)
        out.setdefault(I, []).append(perm)
    return {I: tuple(ps) for I, ps in out.items()}


def _perm_descent_composition(perm):
    n = len(perm)
    descents = {i + 1 for i in range(n - 1) if perm[i] > perm[i + 1]}
    return Composition.from_descents(n, descents)


def internal_product(x, y, cap=INTERNAL_DEGREE_CAP):
    """Descent-algebra product, R_I * R_J = alpha(D_J D_I).

    Both operands must be homogeneous of the same degree n <= cap.  The group
    algebra product is computed on permutation supports; the result is
    regrouped by descent class, asserting equal coefficients inside each
    class.
    """
    xr = convert(x, "R")
    yr = convert(y, "R")
    if not (xr.is_homogeneous() and yr.is_homogeneous()):
        raise ValueError("internal product needs homogeneous operands")
    n = xr.degree() if xr.comb else 0
    m = yr.degree() if yr.comb else 0
    if n != m:
        raise ValueError(f"internal product degree mismatch: {n} != {m}")
    if n > cap:
        raise ValueError(f"internal product degree {n} exceeds cap {cap}")
    if n == 0:
        c = xr.comb.coeff(EMPTY) * yr.comb.coeff(EMPTY)
        return SymElement("R", LinComb.single(EMPTY, c))
    classes = _descent_classes(n)

    def perm_support(elem):
        support = {}
        for I, c in elem.comb.items():
            for perm in classes[I]:
                support[perm] = support.get(perm, 0) + c
        return support

    xs = perm_support(xr)
    ys = perm_support(yr)
    prod = {}
    # alpha is an anti-isomorphism: x * y  <->  y-hat times x-hat
    for tau, ct in ys.items():
        for sigma, cs in xs.items():
            comp = tuple(tau[s - 1] for s in sigma)
            c = ct * cs
            s = prod.get(comp, 0) + c
            if s:
                prod[comp] = s
            else:
                prod.pop(comp, None)
    out = {}
    for I, perms in classes.items():
        coeffs = {prod.get(p, 0) for p in perms}
        vals = list(coeffs)
        first = vals[0]
        if any(v != first for v in vals[1:]):
            raise AssertionError(
                f"internal product left the descent algebra on class {I}")
        if first:
            out[I] = first
    return SymElement("R", LinComb(out))


# ---------------------------------------------------------------------------
# commutative image


class Partition:
    """Weakly decreasing tuple of positive integers; labels power sums."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be >= 1")
        self.parts = parts
        self._hash = hash(("P", parts))

    @property
    def grade(self):
        return sum(self.parts)

    def merge(self, other):
        return Partition(self.parts + other.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self):
        return f"Partition({self})"


def symfunc_multiply(f, g):
    """Product of power-sum expansions (p is a multiplicative basis)."""
    return f.bilinear(g, lambda a, b: LinComb.single(a.merge(b)))


@lru_cache(maxsize=None)
def h_in_p(n):
    """Complete homogeneous h_n in the power-sum basis, via Newton's identity
    n h_n = sum_k p_k h_{n-k}."""
    if n == 0:
        return LinComb.single(Partition(()))
    acc = LinComb()
    for k in range(1, n + 1):
        pk = LinComb.single(Partition((k,)))
        acc = acc + symfunc_multiply(pk, h_in_p(n - k))
    return acc.scale(Fraction(1, n))


def commutative_image(x):
    """Image in ordinary symmetric functions, expanded over power sums."""
    s = convert(x, "S")

    def image_of(I):
        out = LinComb.single(Partition(()))
        for part in I.parts:
            out = symfunc_multiply(out, h_in_p(part))
        return out

    return s.comb.bind(image_of)


def is_lie_idempotent(x, n, check_internal=None, internal_cap=INTERNAL_DEGREE_CAP):
    """Certificate for the Lie-idempotent criterion.

    Checks primitivity and commutative image p_n / n; when the degree allows
    (or on request) also the internal idempotency x * x = x.
    """
    primitive = sym_is_primitive(x)
    target = LinComb.single(Partition((n,)), Fraction(1, n))
    image_ok = commutative_image(x) == target
    idempotent = None
    if check_internal is None:
        check_internal = n <= internal_cap
    if check_internal:
        idempotent = internal_product(x, x, cap=internal_cap) == convert(x, "R")
    ok = primitive and image_ok and (idempotent is not False)
    return {
        "primitive": primitive,
        "commutative_image_ok": image_ok,
        "internal_idempotent": idempotent,
        "is_lie_idempotent": ok,
    }


# ---------------------------------------------------------------------------
# alien operator dictionary


def alien_plus(n):
    """S_n, the image of the right-lateral alien operator."""
    return SymElement.single("S", Composition((n,)))


def alien_minus(n):
    """(-1)^n Lambda_n, the image of the left-lateral alien operator."""
    return SymElement("L", LinComb.single(Composition((n,)), (-1) ** n))


def alien_canonical(n):
    """Weighted average over sign sequences; equals Phi_n / n.

    Weights p! q! / (p+q+1)! depend only on the sign counts, so the
    order-reversing anti-involution does not change the element.
    """
    import math
    out = LinComb()
    from .combinat import sign_seqs
    for eps in sign_seqs(n):
        p, q = eps.plus_count(), eps.minus_count()
        lam = Fraction(math.factorial(p) * math.factorial(q), math.factorial(p + q + 1))
        out = out + LinComb.single(eps, lam)
    return SymElement("signedR", out)


def alien(op, n):
    if op == "plus":
        return alien_plus(n)
    if op == "minus":
        return alien_minus(n)
    if op == "canonical":
        return alien_canonical(n)
    raise ValueError(f"unknown alien operator {op!r}")
