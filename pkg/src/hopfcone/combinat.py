"""Ground combinatorial objects and the shuffle family of products.

Label types (compositions, sign sequences, packed words, set compositions,
multiset compositions, Schroeder trees) are immutable, hashable and carry a
``grade``.  Products return plain dicts word -> multiplicity; the algebra
modules lift them to formal linear combinations.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class Composition:
    """Finite ordered sequence of positive integers (possibly empty)."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be >= 1: {parts}")
        self.parts = parts
        self._hash = hash(("C", parts))

    @property
    def weight(self):
        return sum(self.parts)

    grade = weight

    @property
    def length(self):
        return len(self.parts)

    def descent_set(self):
        """{i_1, i_1+i_2, ...} without the final weight."""
        out, s = [], 0
        for p in self.parts[:-1]:
            s += p
            out.append(s)
        return frozenset(out)

    @classmethod
    def from_descents(cls, n, descents):
        if n == 0:
            return cls(())
        cuts = sorted(descents)
        prev, parts = 0, []
        for d in cuts:
            parts.append(d - prev)
            prev = d
        parts.append(n - prev)
        return cls(parts)

    def concat(self, other):
        return Composition(self.parts + other.parts)

    def glue(self, other):
        """(i_1..i_r) |> (j_1..j_s) = (i_1..i_{r-1}, i_r+j_1, j_2..j_s)."""
        if not self.parts:
            return other
        if not other.parts:
            return self
        return Composition(self.parts[:-1] + (self.parts[-1] + other.parts[0],) + other.parts[1:])

    def to_sign_seq(self):
        return SignSeq.from_composition(self)

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        if not self.parts:
            return ""
        if all(p <= 9 for p in self.parts):
            return "".join(str(p) for p in self.parts)
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return f"Composition({list(self.parts)})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(int(t) for t in text.split(","))
        return cls(int(ch) for ch in text)


class SignSeq:
    """Sequence of +/- signs of length n-1, of degree n (empty = degree 1).

    The degree-0 unit is the empty sequence with degree 0.  Signs are stored
    as +1/-1 integers.  Degree n corresponds to a composition of n via
    descents at the minus positions.
    """

    __slots__ = ("signs", "degree", "_hash")

    def __init__(self, signs=(), degree=None):
        signs = tuple(1 if s in (1, "+") else -1 for s in signs)
        if degree is None:
            degree = len(signs) + 1
        if degree == 0 and signs:
            raise ValueError("degree-0 sign sequence must be empty")
        if degree > 0 and degree != len(signs) + 1:
            raise ValueError("degree must be len(signs)+1")
        self.signs = signs
        self.degree = degree
        self._hash = hash(("E", signs, degree))

    @property
    def grade(self):
        return self.degree

    def to_composition(self):
        if self.degree == 0:
            return Composition(())
        descents = {i + 1 for i, s in enumerate(self.signs) if s < 0}
        return Composition.from_descents(self.degree, descents)

    @classmethod
    def from_composition(cls, comp):
        n = comp.weight
        if n == 0:
            return cls((), 0)
        des = comp.descent_set()
        return cls(tuple(-1 if i in des else 1 for i in range(1, n)), n)

    def joined(self, sign, other):
        """self followed by one sign then other (signed-ribbon product law)."""
        return SignSeq(self.signs + (sign,) + other.signs)

    def reversed(self):
        return SignSeq(tuple(reversed(self.signs)), self.degree)

    def plus_count(self):
        return sum(1 for s in self.signs if s > 0)

    def minus_count(self):
        return sum(1 for s in self.signs if s < 0)

    def __eq__(self, other):
        return (isinstance(other, SignSeq)
                and self.signs == other.signs and self.degree == other.degree)

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.degree == 0:
            return ""
        return "".join("+" if s > 0 else "-" for s in self.signs) + "."

    def __repr__(self):
        return f"SignSeq({self})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls((), 0)
        if text.endswith("."):
            text = text[:-1]
        if any(ch not in "+-" for ch in text):
            raise ValueError(f"bad sign sequence: {text!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in text))


class PackedWord:
    """Word over {1..m} of length n using every letter 1..m."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters=()):
        letters = tuple(int(x) for x in letters)
        if letters:
            m = max(letters)
            if min(letters) < 1 or set(letters) != set(range(1, m + 1)):
                raise ValueError(f"not a packed word: {letters}")
        self.letters = letters
        self._hash = hash(("W", letters))

    @property
    def grade(self):
        return len(self.letters)

    @property
    def max_letter(self):
        return max(self.letters) if self.letters else 0

    def evaluation(self):
        """Evaluation composition ev(u): letter multiplicities."""
        m = self.max_letter
        counts = [0] * m
        for x in self.letters:
            counts[x - 1] += 1
        return Composition(counts)

    def is_permutation(self):
        return self.max_letter == len(self.letters)

    def std(self):
        return PackedWord(std(self.letters))

    def blocks(self):
        """Ordered set partition view: block i = positions of letter i (1-based)."""
        m = self.max_letter
        out = [[] for _ in range(m)]
        for pos, x in enumerate(self.letters, start=1):
            out[x - 1].append(pos)
        return tuple(tuple(b) for b in out)

    def set_composition(self):
        return SetComposition(self.blocks())

    def __eq__(self, other):
        return isinstance(other, PackedWord) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if all(x <= 9 for x in self.letters):
            return "".join(str(x) for x in self.letters)
        return ",".join(str(x) for x in self.letters)

    def __repr__(self):
        return f"PackedWord({list(self.letters)})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(int(t) for t in text.split(","))
        return cls(int(ch) for ch in text)


class SetComposition:
    """Ordered sequence of disjoint nonempty sets partitioning {1..n}."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts):
        parts = tuple(tuple(sorted(int(x) for x in p)) for p in parts)
        union = [x for p in parts for x in p]
        n = len(union)
        if any(not p for p in parts) or sorted(union) != list(range(1, n + 1)):
            raise ValueError(f"not a set composition of [n]: {parts}")
        self.parts = parts
        self._hash = hash(("SC", parts))

    @property
    def grade(self):
        return sum(len(p) for p in self.parts)

    def packed_word(self):
        n = self.grade
        letters = [0] * n
        for i, block in enumerate(self.parts, start=1):
            for pos in block:
                letters[pos - 1] = i
        return PackedWord(letters)

    def segmented(self):
        """(permutation word, bar positions after index i) view."""
        perm = tuple(x for block in self.parts for x in block)
        bars, s = set(), 0
        for block in self.parts[:-1]:
            s += len(block)
            bars.add(s)
        return perm, frozenset(bars)

    @classmethod
    def from_segmented(cls, perm, bars):
        parts, cur = [], []
        for i, x in enumerate(perm, start=1):
            cur.append(x)
            if i in bars:
                parts.append(cur)
                cur = []
        if cur:
            parts.append(cur)
        return cls(parts)

    def __eq__(self, other):
        return isinstance(other, SetComposition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __str__(self):
        def block(p):
            if all(x <= 9 for x in p):
                return "".join(str(x) for x in p)
            return ",".join(str(x) for x in p)
        return "(" + "|".join(block(p) for p in self.parts) + ")"

    def __repr__(self):
        return f"SetComposition({self})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        if not text:
            return cls(())
        parts = []
        for chunk in text.split("|"):
            if "," in chunk:
                parts.append([int(t) for t in chunk.split(",")])
            else:
                parts.append([int(ch) for ch in chunk])
        return cls(parts)


class MultisetComposition:
    """Ordered sequence of nonempty multisets over {1..m}, every letter used.

    Parts are stored as sorted tuples (multisets in canonical form).
    """

    __slots__ = ("parts", "_hash")

    def __init__(self, parts):
        parts = tuple(tuple(sorted(int(x) for x in p)) for p in parts)
        if any(not p for p in parts):
            raise ValueError("empty part in multiset composition")
        letters = {x for p in parts for x in p}
        if parts:
            m = max(letters)
            if min(letters) < 1 or letters != set(range(1, m + 1)):
                raise ValueError(f"letters must cover 1..max: {parts}")
        self.parts = parts
        self._hash = hash(("MC", parts))

    @property
    def grade(self):
        return sum(len(p) for p in self.parts)

    @property
    def length(self):
        return len(self.parts)

    @property
    def max_letter(self):
        return max((x for p in self.parts for x in p), default=0)

    def to_matrix(self):
        m = self.max_letter
        rows = []
        for p in self.parts:
            row = [0] * m
            for x in p:
                row[x - 1] += 1
            rows.append(row)
        return rows

    @classmethod
    def from_matrix(cls, rows):
        rows = [list(r) for r in rows]
        if any(any(v < 0 for v in r) for r in rows):
            raise ValueError("negative entry in packed matrix")
        if any(sum(r) == 0 for r in rows):
            raise ValueError("null row in packed matrix")
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        for j in range(ncols):
            if sum(r[j] for r in rows) == 0:
                raise ValueError("null column in packed matrix")
        parts = []
        for r in rows:
            part = []
            for j, mult in enumerate(r, start=1):
                part.extend([j] * mult)
            parts.append(part)
        return cls(parts)

    def shifted(self, k):
        return MultisetComposition.__new__(MultisetComposition)._init_raw(
            tuple(tuple(x + k for x in p) for p in self.parts))

    def _init_raw(self, parts):
        # used for shifted values that temporarily do not cover 1..max
        self.parts = parts
        self._hash = hash(("MC", parts))
        return self

    def __eq__(self, other):
        return isinstance(other, MultisetComposition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "".join("{" + ", ".join(str(x) for x in p) + "}" for p in self.parts)

    def __repr__(self):
        return f"MultisetComposition({self})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls(())
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"bad multiset composition: {text!r}")
        parts = []
        for chunk in text[1:-1].split("}{"):
            parts.append([int(t) for t in chunk.split(",")])
        return cls(parts)


class SchroederTree:
    """Plane rooted tree whose internal nodes all have >= 2 children.

    ``children == ()`` is a leaf.  A tree with n+1 leaves corresponds to
    packed words of length n.
    """

    __slots__ = ("children", "_hash")

    def __init__(self, children=()):
        children = tuple(children)
        if len(children) == 1:
            raise ValueError("internal node needs >= 2 children")
        if any(not isinstance(c, SchroederTree) for c in children):
            raise TypeError("children must be SchroederTree")
        self.children = children
        self._hash = hash(("T", children))

    @property
    def is_leaf(self):
        return not self.children

    def leaf_count(self):
        if self.is_leaf:
            return 1
        return sum(c.leaf_count() for c in self.children)

    @property
    def grade(self):
        return self.leaf_count() - 1

    def internal_sectors(self):
        """Yield, per internal node, the tuple of sector indices it spans.

        Sectors are the gaps between consecutive leaves, numbered 1..n in
        left-to-right order; an internal node spans the gaps between the
        leaves of its subtree.
        """
        out = []

        def walk(node, offset):
            # returns number of leaves under node
            if node.is_leaf:
                return 1
            total = 0
            for c in node.children:
                total += walk(c, offset + total)
            out.append(tuple(range(offset + 1, offset + total)))
            return total

        walk(self, 0)
        return out

    def __eq__(self, other):
        return isinstance(other, SchroederTree) and self.children == other.children

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.is_leaf:
            return "o"
        return "(" + "".join(str(c) for c in self.children) + ")"

    def __repr__(self):
        return f"SchroederTree({self})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        pos = 0

        def node():
            nonlocal pos
            if pos < len(text) and text[pos] == "o":
                pos += 1
                return cls(())
            if pos >= len(text) or text[pos] != "(":
                raise ValueError(f"bad tree at {pos}: {text!r}")
            pos += 1
            children = []
            while pos < len(text) and text[pos] != ")":
                children.append(node())
            if pos >= len(text):
                raise ValueError("unbalanced tree string")
            pos += 1
            return cls(children)

        t = node()
        if pos != len(text):
            raise ValueError("trailing garbage in tree string")
        return t


LEAF = SchroederTree(())


# ---------------------------------------------------------------------------
# word operations


def std(word):
    """Standardized word: relabel occurrences left-to-right, smallest first."""
    word = tuple(word)
    if not word:
        return ()
    order = sorted(range(len(word)), key=lambda i: (word[i], i))
    out = [0] * len(word)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def pack(word):
    """Packed word: order-preserving relabeling of the letters onto 1..m."""
    word = tuple(word)
    ranks = {v: i for i, v in enumerate(sorted(set(word)), start=1)}
    return PackedWord(ranks[v] for v in word)


def descent_composition(word):
    """Descent composition C(w) of a nonempty word."""
    word = tuple(word)
    if not word:
        return Composition(())
    descents = {i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1]}
    return Composition.from_descents(len(word), descents)


def _add_term(acc, word, mult=1):
    acc[word] = acc.get(word, 0) + mult


def quasi_shuffle(u, v):
    """Quasi-shuffle of two words over an additive semigroup.

    au (qsh) bv = a(u qsh bv) + b(au qsh v) + (a+b)(u qsh v); returns a dict
    word -> multiplicity.
    """
    u, v = tuple(u), tuple(v)

    @lru_cache(maxsize=None)
    def rec(x, y):
        if not x:
            return {y: 1}
        if not y:
            return {x: 1}
        out = {}
        for w, m in rec(x[1:], y).items():
            _add_term(out, (x[0],) + w, m)
        for w, m in rec(x, y[1:]).items():
            _add_term(out, (y[0],) + w, m)
        for w, m in rec(x[1:], y[1:]).items():
            _add_term(out, (x[0] + y[0],) + w, m)
        return out

    return dict(rec(u, v))


def shuffle(u, v):
    """Plain shuffle product; returns a dict word -> multiplicity."""
    u, v = tuple(u), tuple(v)

    @lru_cache(maxsize=None)
    def rec(x, y):
        if not x:
            return {y: 1}
        if not y:
            return {x: 1}
        out = {}
        for w, m in rec(x[1:], y).items():
            _add_term(out, (x[0],) + w, m)
        for w, m in rec(x, y[1:]).items():
            _add_term(out, (y[0],) + w, m)
        return out

    return dict(rec(u, v))


def shift_word(word, k):
    return tuple(x + k for x in word)


def shifted_shuffle(u, v):
    """u shuffled with v shifted by len(u) (the permutation convention)."""
    u, v = tuple(u), tuple(v)
    return shuffle(u, shift_word(v, len(u)))


def shifted_shuffle_max(u, v):
    """u shuffled with v shifted by max(u) (the packed-word convention)."""
    u, v = tuple(u), tuple(v)
    return shuffle(u, shift_word(v, max(u) if u else 0))


def segmented_shifted_shuffle(alpha, beta):
    """Shifted shuffle of set compositions, with bars re-inserted.

    Bars go between letters that were separated by a bar in their source, and
    after each letter of (shifted) beta immediately followed by a letter of
    alpha.  Returns a dict SetComposition -> 1.
    """
    if not alpha.parts:
        return {beta: 1}
    if not beta.parts:
        return {alpha: 1}
    pa, bars_a = alpha.segmented()
    pb, bars_b = beta.segmented()
    k = len(pa)
    pb = shift_word(pb, k)
    out = {}
    n = len(pa) + len(pb)
    for positions in itertools.combinations(range(n), len(pa)):
        posset = set(positions)
        word, ia, ib = [], 0, 0
        source = []  # (which, index within source)
        for i in range(n):
            if i in posset:
                word.append(pa[ia])
                source.append(("a", ia))
                ia += 1
            else:
                word.append(pb[ib])
                source.append(("b", ib))
                ib += 1
        bars = set()
        for i in range(n - 1):
            (s1, i1), (s2, i2) = source[i], source[i + 1]
            if s1 == s2:
                barset = bars_a if s1 == "a" else bars_b
                if (i1 + 1) in barset:
                    bars.add(i + 1)
            elif s1 == "b" and s2 == "a":
                bars.add(i + 1)
        sc = SetComposition.from_segmented(tuple(word), frozenset(bars))
        _add_term(out, sc)
    return out


def refines(fine, coarse):
    """True if composition ``fine`` refines ``coarse`` by grouping
    consecutive parts."""
    if fine.weight != coarse.weight:
        return False
    it = iter(fine.parts)
    for target in coarse.parts:
        s = 0
        while s < target:
            try:
                s += next(it)
            except StopIteration:
                return False
        if s != target:
            return False
    return True


def finer(w, wprime):
    """Packed-word refinement: same standardization, finer evaluation."""
    if len(w) != len(wprime):
        return False
    if std(w.letters) != std(wprime.letters):
        return False
    return refines(w.evaluation(), wprime.evaluation())


def finer_words(u):
    """All packed words finer than u, by inserting bars inside blocks."""
    perm, bars = u.set_composition().segmented()
    n = len(perm)
    interior = [i for i in range(1, n) if i not in bars]
    out = []
    for extra in _subsets(interior):
        sc = SetComposition.from_segmented(perm, bars | frozenset(extra))
        out.append(sc.packed_word())
    return out


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def schroeder_tree(word):
    """Tree of a word via recursive factorization at the maximal letter."""
    word = tuple(word)

    def build(w):
        if not w:
            return LEAF
        m = max(w)
        children, seg = [], []
        for x in w:
            if x == m:
                children.append(build(tuple(seg)))
                seg = []
            else:
                seg.append(x)
        children.append(build(tuple(seg)))
        return SchroederTree(children)

    return build(word)


# ---------------------------------------------------------------------------
# enumerators


@lru_cache(maxsize=None)
def compositions(n):
    """All compositions of n, as a tuple."""
    if n == 0:
        return (Composition(()),)
    out = []
    for bits in itertools.product((0, 1), repeat=n - 1):
        descents = {i + 1 for i, b in enumerate(bits) if b}
        out.append(Composition.from_descents(n, descents))
    return tuple(out)


@lru_cache(maxsize=None)
def packed_words(n):
    """All packed words of length n (ordered Bell many), as a tuple."""
    if n == 0:
        return (PackedWord(()),)
    out = []
    for m in range(1, n + 1):
        needed = set(range(1, m + 1))
        for word in itertools.product(range(1, m + 1), repeat=n):
            if set(word) == needed:
                out.append(PackedWord(word))
    return tuple(out)


def permutations_words(n):
    return [PackedWord(p) for p in itertools.permutations(range(1, n + 1))]


def sign_seqs(n):
    """All sign sequences of degree n."""
    if n == 0:
        return [SignSeq((), 0)]
    return [SignSeq(signs) for signs in itertools.product((1, -1), repeat=n - 1)]


@lru_cache(maxsize=None)
def multiset_compositions(n):
    """All multiset compositions of total size n."""
    if n == 0:
        return (MultisetComposition(()),)
    out = []
    for m in range(1, n + 1):
        # distribute n letter-slots over parts and letters 1..m, covering all
        for nparts in range(1, n + 1):
            for sizes in _compositions_of(n, nparts):
                for parts in _parts_with_sizes(sizes, m):
                    letters = {x for p in parts for x in p}
                    if letters == set(range(1, m + 1)):
                        out.append(MultisetComposition(parts))
    return tuple(out)


def _compositions_of(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions_of(n - first, k - 1):
            yield (first,) + rest


def _parts_with_sizes(sizes, m):
    choices = [list(itertools.combinations_with_replacement(range(1, m + 1), s))
               for s in sizes]
    yield from itertools.product(*choices)


def multiset_union(p, q):
    return tuple(sorted(p + q))
