"""Quasi-symmetric functions (monomial and fundamental bases), duality with
Sym, mould symmetry predicates, and a minimal FQSym layer."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .combinat import (Composition, PackedWord, compositions, descent_composition,
                       quasi_shuffle, shifted_shuffle)
from .freemod import LinComb, pairing
from . import ncsf

QSYM_BASES = ("M", "F")

EMPTY = Composition(())


class QSymElement:
    __slots__ = ("basis", "comb")

    def __init__(self, basis, comb):
        if basis not in QSYM_BASES:
            raise ValueError(f"unknown QSym basis {basis!r}")
        if isinstance(comb, dict):
            comb = LinComb(comb)
        self.basis = basis
        self.comb = comb

    @classmethod
    def single(cls, basis, label, coeff=1):
        return cls(basis, LinComb.single(label, coeff))

    @classmethod
    def unit(cls, basis="M"):
        return cls.single(basis, EMPTY)

    def __eq__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        if self.basis == other.basis:
            return self.comb == other.comb
        return qsym_convert(self, "M").comb == qsym_convert(other, "M").comb

    def __add__(self, other):
        if other.basis != self.basis:
            other = qsym_convert(other, self.basis)
        return QSymElement(self.basis, self.comb + other.comb)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QSymElement(self.basis, self.comb.scale(c))

    def __mul__(self, other):
        return qsym_multiply(self, other)

    def __str__(self):
        return f"{self.basis}:{self.comb}"

    def __repr__(self):
        return f"QSymElement({self})"

    def to_json(self):
        return {"basis": self.basis, "terms": self.comb.to_json()}


@lru_cache(maxsize=None)
def _f_to_m(J):
    """F_J = sum of M_I over I with Des(I) containing Des(J)."""
    n = J.weight
    des = sorted(set(range(1, n)) - J.descent_set())
    base = J.descent_set()
    out = {}
    for extra in _subsets(des):
        out[Composition.from_descents(n, base | frozenset(extra))] = 1
    return LinComb(out)


@lru_cache(maxsize=None)
def _m_to_f(J):
    """Moebius inversion: M_J = sum (-1)^(l(I)-l(J)) F_I over finer I."""
    n = J.weight
    des = sorted(set(range(1, n)) - J.descent_set())
    base = J.descent_set()
    out = {}
    for extra in _subsets(des):
        out[Composition.from_descents(n, base | frozenset(extra))] = (-1) ** len(extra)
    return LinComb(out)


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def qsym_convert(x, target):
    if x.basis == target:
        return x
    if x.basis == "F":
        return QSymElement("M", x.comb.bind(_f_to_m))
    return QSymElement("F", x.comb.bind(_m_to_f))


def fundamental_to_monomial(x):
    return qsym_convert(x, "M")


def monomial_to_fundamental(x):
    return qsym_convert(x, "F")


def _monomial_rule(I, J):
    out = LinComb()
    for word, mult in quasi_shuffle(I.parts, J.parts).items():
        out.terms[Composition(word)] = mult
    return out


def monomial_product(x, y):
    x = qsym_convert(x, "M")
    y = qsym_convert(y, "M")
    return QSymElement("M", x.comb.bilinear(y.comb, _monomial_rule))


def qsym_multiply(x, y, basis=None):
    basis = basis or x.basis
    out = monomial_product(x, y)
    return qsym_convert(out, basis)


def qsym_coproduct(x):
    """Deconcatenation coproduct on the monomial basis."""
    m = qsym_convert(x, "M")

    def rule(I):
        out = LinComb()
        for k in range(I.length + 1):
            out.terms[(Composition(I.parts[:k]), Composition(I.parts[k:]))] = 1
        return out

    return m.comb.bind(rule)


def duality_pairing(f, g):
    """<M_I, S^J> = delta_IJ extended bilinearly; accepts any bases."""
    fm = qsym_convert(f, "M")
    gs = ncsf.convert(g, "S")
    return pairing(fm.comb, gs.comb)


# ---------------------------------------------------------------------------
# moulds


class Mould:
    """Coefficient function on compositions (words over positive integers)."""

    __slots__ = ("fn", "_cache")

    def __init__(self, fn):
        self.fn = fn
        self._cache = {}

    @classmethod
    def from_dict(cls, values, default=0):
        return cls(lambda I: values.get(I, default))

    def coeff(self, I):
        if I not in self._cache:
            self._cache[I] = self.fn(I)
        return self._cache[I]


def is_symmetrel(m, cap):
    """Character law m(I)m(J) = sum_K (K | I qsh J) m(K), |I|+|J| <= cap."""
    if m.coeff(EMPTY) != 1:
        return False
    for wi in range(1, cap):
        for wj in range(1, cap - wi + 1):
            for I in compositions(wi):
                for J in compositions(wj):
                    rhs = 0
                    for word, mult in quasi_shuffle(I.parts, J.parts).items():
                        rhs = rhs + mult * m.coeff(Composition(word))
                    if m.coeff(I) * m.coeff(J) != rhs:
                        return False
    return True


def is_alternel(m, cap):
    """Infinitesimal-character law: m(empty) = 0 and the quasi-shuffle of two
    nonempty words pairs to zero, up to |I|+|J| <= cap."""
    if m.coeff(EMPTY) != 0:
        return False
    for wi in range(1, cap):
        for wj in range(1, cap - wi + 1):
            for I in compositions(wi):
                for J in compositions(wj):
                    rhs = 0
                    for word, mult in quasi_shuffle(I.parts, J.parts).items():
                        rhs = rhs + mult * m.coeff(Composition(word))
                    if rhs != 0:
                        return False
    return True


def series_coefficient_mould(series):
    """The mould I -> coefficient of S^I in a GradedSeries over Sym."""
    def fn(I):
        return series.component(I.weight).coeff(I)
    return Mould(fn)


# ---------------------------------------------------------------------------
# FQSym (minimal layer: product and projection)

FQSYM_BASES = ("F", "G")


class FQSymElement:
    """Formal sum of permutations (packed words that are bijective)."""

    __slots__ = ("basis", "comb")

    def __init__(self, basis, comb):
        if basis not in FQSYM_BASES:
            raise ValueError(f"unknown FQSym basis {basis!r}")
        if isinstance(comb, dict):
            comb = LinComb(comb)
        for label in comb.labels():
            if not label.is_permutation():
                raise ValueError(f"FQSym labels must be permutations: {label}")
        self.basis = basis
        self.comb = comb

    @classmethod
    def single(cls, basis, label, coeff=1):
        return cls(basis, LinComb.single(label, coeff))

    def to_f(self):
        if self.basis == "F":
            return self
        return FQSymElement("F", self.comb.map_labels(_inverse_perm))

    def to_g(self):
        if self.basis == "G":
            return self
        return FQSymElement("G", self.comb.map_labels(_inverse_perm))

    def __eq__(self, other):
        if not isinstance(other, FQSymElement):
            return NotImplemented
        return self.to_f().comb == other.to_f().comb

    def __add__(self, other):
        return FQSymElement(self.basis, self.comb +
                            (other if other.basis == self.basis else
                             (other.to_f() if self.basis == "F" else other.to_g())).comb)

    def scale(self, c):
        return FQSymElement(self.basis, self.comb.scale(c))

    def __str__(self):
        return f"{self.basis}:{self.comb}"

    def to_json(self):
        return {"basis": self.basis, "terms": self.comb.to_json()}


def _inverse_perm(w):
    inv = [0] * len(w.letters)
    for i, x in enumerate(w.letters, start=1):
        inv[x - 1] = i
    return PackedWord(inv)


def _fqsym_rule(a, b):
    out = LinComb()
    for word in shifted_shuffle(a.letters, b.letters):
        out.terms[PackedWord(word)] = 1
    return out


def fqsym_product(x, y):
    """F-basis product: shifted shuffle of permutations."""
    xf, yf = x.to_f(), y.to_f()
    return FQSymElement("F", xf.comb.bilinear(yf.comb, _fqsym_rule))


def fqsym_to_qsym(x):
    """Commutative image: F_sigma -> F_{C(sigma)}."""
    xf = x.to_f()
    out = LinComb()
    for perm, c in xf.comb.items():
        I = descent_composition(perm.letters)
        out = out + LinComb.single(I, c)
    return QSymElement("F", out)
