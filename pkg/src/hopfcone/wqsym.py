"""Word quasi-symmetric functions in the M and Phi bases, the dual N basis
through the Sym embedding, the tridendriform splitting, the Schroeder-tree
basis, and the MQSym product."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .combinat import (Composition, MultisetComposition, PackedWord, SetComposition,
                       finer_words, multiset_union, pack, packed_words,
                       segmented_shifted_shuffle, std)
from .freemod import LinComb
from . import ncsf, qsym

WQSYM_BASES = ("M", "Phi", "N")

EMPTY_WORD = PackedWord(())


class WQSymElement:
    __slots__ = ("basis", "comb")

    def __init__(self, basis, comb):
        if basis not in WQSYM_BASES:
            raise ValueError(f"unknown WQSym basis {basis!r}")
        if isinstance(comb, dict):
            comb = LinComb(comb)
        self.basis = basis
        self.comb = comb

    @classmethod
    def single(cls, basis, label, coeff=1):
        return cls(basis, LinComb.single(label, coeff))

    @classmethod
    def unit(cls, basis="M"):
        return cls.single(basis, EMPTY_WORD)

    def __eq__(self, other):
        if not isinstance(other, WQSymElement):
            return NotImplemented
        if self.basis == other.basis:
            return self.comb == other.comb
        if "N" in (self.basis, other.basis):
            return False
        return wq_convert(self, "M").comb == wq_convert(other, "M").comb

    def __add__(self, other):
        if other.basis != self.basis:
            other = wq_convert(other, self.basis)
        return WQSymElement(self.basis, self.comb + other.comb)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return WQSymElement(self.basis, self.comb.scale(c))

    def __str__(self):
        return f"{self.basis}:{self.comb}"

    def __repr__(self):
        return f"WQSymElement({self})"

    def to_json(self):
        return {"basis": self.basis, "terms": self.comb.to_json()}


# ---------------------------------------------------------------------------
# M-basis product (convolution of packed words)


def convolution_words(u, v):
    """Packed words w = x.y with pack(x) = u, pack(y) = v (each once)."""
    p, q = u.max_letter, v.max_letter
    if not u.letters:
        return [v]
    if not v.letters:
        return [u]
    out = []
    for m in range(max(p, q), p + q + 1):
        extra = q - (m - p)
        for aset in itertools.combinations(range(1, m + 1), p):
            rest = [x for x in range(1, m + 1) if x not in aset]
            if len(rest) > q:
                continue
            for add in itertools.combinations(aset, extra):
                bset = sorted(rest + list(add))
                word = tuple(aset[x - 1] for x in u.letters) + \
                       tuple(bset[x - 1] for x in v.letters)
                out.append(PackedWord(word))
    return out


def _m_rule(u, v):
    return LinComb({w: 1 for w in convolution_words(u, v)})


def wq_m_product(x, y):
    x = wq_convert(x, "M")
    y = wq_convert(y, "M")
    return WQSymElement("M", x.comb.bilinear(y.comb, _m_rule))


# ---------------------------------------------------------------------------
# Phi basis: segmented shifted shuffle product, deconcatenation coproduct


def _phi_rule(u, v):
    terms = segmented_shifted_shuffle(u.set_composition(), v.set_composition())
    return LinComb({sc.packed_word(): m for sc, m in terms.items()})


def wq_phi_product(x, y):
    x = wq_convert(x, "Phi")
    y = wq_convert(y, "Phi")
    return WQSymElement("Phi", x.comb.bilinear(y.comb, _phi_rule))


def _std_segmented(perm, bars):
    """Relabel a segmented permutation fragment to values 1..k, keeping bars."""
    ranks = {v: i for i, v in enumerate(sorted(perm), start=1)}
    return tuple(ranks[v] for v in perm), bars


def wq_phi_coproduct(x):
    """Cut the segmented permutation at every position; standardize sides."""
    x = wq_convert(x, "Phi")

    def rule(u):
        perm, bars = u.set_composition().segmented()
        n = len(perm)
        out = LinComb()
        for k in range(n + 1):
            lperm, lbars = _std_segmented(perm[:k], frozenset(b for b in bars if b < k))
            rperm, rbars = _std_segmented(perm[k:], frozenset(b - k for b in bars if b > k))
            left = SetComposition.from_segmented(lperm, lbars).packed_word() if lperm else EMPTY_WORD
            right = SetComposition.from_segmented(rperm, rbars).packed_word() if rperm else EMPTY_WORD
            out.terms[(left, right)] = out.terms.get((left, right), 0) + 1
        return out

    return x.comb.bind(rule)


# ---------------------------------------------------------------------------
# Phi <-> M conversions via the refinement order


@lru_cache(maxsize=None)
def _phi_to_m_label(u):
    return LinComb({v: 1 for v in finer_words(u)})


@lru_cache(maxsize=None)
def _m_to_phi_label(u):
    mu = u.max_letter
    return LinComb({v: (-1) ** (v.max_letter - mu) for v in finer_words(u)})


def wq_convert(x, target):
    if x.basis == target:
        return x
    if "N" in (x.basis, target):
        raise ValueError("the dual N basis does not convert to M/Phi")
    if x.basis == "Phi":
        return WQSymElement("M", x.comb.bind(_phi_to_m_label))
    return WQSymElement("Phi", x.comb.bind(_m_to_phi_label))


def phi_to_m(x):
    return wq_convert(x, "M")


def m_to_phi(x):
    return wq_convert(x, "Phi")


# ---------------------------------------------------------------------------
# embedding of Sym in the dual, commutative projection


def words_with_evaluation(I):
    """All packed words u with ev(u) = I."""
    letters = []
    for i, part in enumerate(I.parts, start=1):
        letters.extend([i] * part)
    return sorted({PackedWord(p) for p in itertools.permutations(letters)},
                  key=lambda w: w.letters)


def embed_sym_dual(x):
    """S^I -> sum of N_u over ev(u) = I (Hopf embedding of Sym in the dual)."""
    s = ncsf.convert(x, "S")

    def rule(I):
        return LinComb({u: 1 for u in words_with_evaluation(I)})

    return WQSymElement("N", s.comb.bind(rule))


def commutative_projection(x):
    """M_u -> M_{ev(u)}, the Hopf epimorphism onto QSym."""
    m = wq_convert(x, "M")
    out = LinComb()
    for u, c in m.comb.items():
        out = out + LinComb.single(u.evaluation(), c)
    return qsym.QSymElement("M", out)


# ---------------------------------------------------------------------------
# tridendriform structure


def tridendriform_split(x, y):
    """Split the M product into (left, middle, right) by comparing the
    maxima of the two concatenated blocks."""
    x = wq_convert(x, "M")
    y = wq_convert(y, "M")
    for elem in (x, y):
        if elem.comb.coeff(EMPTY_WORD):
            raise ValueError("tridendriform operations need nonunital operands")
    parts = {"left": LinComb(), "middle": LinComb(), "right": LinComb()}
    for u, cu in x.comb.items():
        for v, cv in y.comb.items():
            c = cu * cv
            n = len(u)
            for w in convolution_words(u, v):
                mx = max(w.letters[:n])
                my = max(w.letters[n:])
                key = "left" if my < mx else ("middle" if my == mx else "right")
                parts[key] = parts[key] + LinComb.single(w, c)
    return (WQSymElement("M", parts["left"]),
            WQSymElement("M", parts["middle"]),
            WQSymElement("M", parts["right"]))


def tree_basis(tree):
    """M_T = sum of M_u over packed words u whose max-letter factorization
    tree is T."""
    from .combinat import schroeder_tree
    n = tree.grade
    out = LinComb()
    for u in packed_words(n):
        if schroeder_tree(u.letters) == tree:
            out.terms[u] = 1
    return WQSymElement("M", out)


# ---------------------------------------------------------------------------
# MQSym


class MQSymElement:
    __slots__ = ("comb",)

    def __init__(self, comb):
        if isinstance(comb, dict):
            comb = LinComb(comb)
        self.comb = comb

    @classmethod
    def single(cls, label, coeff=1):
        return cls(LinComb.single(label, coeff))

    @classmethod
    def unit(cls):
        return cls.single(MultisetComposition(()))

    def __eq__(self, other):
        return isinstance(other, MQSymElement) and self.comb == other.comb

    def __add__(self, other):
        return MQSymElement(self.comb + other.comb)

    def scale(self, c):
        return MQSymElement(self.comb.scale(c))

    def __str__(self):
        return f"m:{self.comb}"

    def to_json(self):
        return {"basis": "m", "terms": self.comb.to_json()}


def _rho(a_parts, b_parts):
    """Three-term last-part recursion on tuples of multiset parts."""
    if not a_parts:
        return {b_parts: 1}
    if not b_parts:
        return {a_parts: 1}
    out = {}
    A, B = a_parts[-1], b_parts[-1]
    for seq, m in _rho(a_parts, b_parts[:-1]).items():
        key = seq + (B,)
        out[key] = out.get(key, 0) + m
    for seq, m in _rho(a_parts[:-1], b_parts).items():
        key = seq + (A,)
        out[key] = out.get(key, 0) + m
    for seq, m in _rho(a_parts[:-1], b_parts[:-1]).items():
        key = seq + (multiset_union(A, B),)
        out[key] = out.get(key, 0) + m
    return out


def mq_product_labels(A, B):
    """pi(A, B) = rho(A, B shifted by max(A)); dict of label -> multiplicity."""
    if not A.parts:
        return {B: 1}
    if not B.parts:
        return {A: 1}
    shift = A.max_letter
    bshift = tuple(tuple(x + shift for x in p) for p in B.parts)
    return {MultisetComposition(seq): m
            for seq, m in _rho(A.parts, bshift).items()}


def mq_product(x, y):
    if isinstance(x, MultisetComposition):
        x = MQSymElement.single(x)
    if isinstance(y, MultisetComposition):
        y = MQSymElement.single(y)

    def rule(a, b):
        return LinComb(mq_product_labels(a, b))

    return MQSymElement(x.comb.bilinear(y.comb, rule))


def packed_word_to_multiset(u):
    """A set composition, viewed inside MQSym (each part a set)."""
    return MultisetComposition(u.blocks())
