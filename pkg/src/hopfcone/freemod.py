"""Generic free-module layer: formal linear combinations, tensor squares,
graded series, and the grouplike/primitive predicates."""

from __future__ import annotations

from .coeffring import scalar_simplify, scalar_to_json


class LinComb:
    """Finite formal sum of hashable labels with exact scalar coefficients.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for label, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    s = clean.get(label)
                    t = c if s is None else s + c
                    if t:
                        clean[label] = t
                    elif s is not None:
                        del clean[label]
        self.terms = clean

    @classmethod
    def single(cls, label, coeff=1):
        return cls({label: coeff} if coeff else {})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def labels(self):
        return self.terms.keys()

    def coeff(self, label):
        return self.terms.get(label, 0)

    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        terms = dict(self.terms)
        for label, c in other.terms.items():
            s = terms.get(label, 0) + c
            if s:
                terms[label] = s
            else:
                terms.pop(label, None)
        out = LinComb.__new__(LinComb)
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = LinComb.__new__(LinComb)
        out.terms = {l: -c for l, c in self.terms.items()}
        return out

    def scale(self, c):
        if not c:
            return LinComb()
        out = LinComb.__new__(LinComb)
        out.terms = {l: cc * c for l, cc in self.terms.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[l] == c for l, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset((l, scalar_simplify(c)) for l, c in self.terms.items()))

    def map_labels(self, fn):
        """Linear extension of a label -> label map."""
        return LinComb((fn(l), c) for l, c in self.terms.items())

    def bind(self, fn):
        """Linear extension of a label -> LinComb map."""
        out = LinComb()
        for l, c in self.terms.items():
            out = out + fn(l).scale(c)
        return out

    def bilinear(self, other, rule):
        """Bilinear extension of rule(label, label) -> LinComb."""
        out = LinComb()
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                out = out + rule(l1, l2).scale(c1 * c2)
        return out

    def graded_components(self):
        """Split by label grade; returns dict degree -> LinComb."""
        out = {}
        for l, c in self.terms.items():
            out.setdefault(label_grade(l), LinComb()).terms[l] = c
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for l, c in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            c = scalar_simplify(c)
            if c == 1:
                bits.append(f"[{l}]")
            elif c == -1:
                bits.append(f"-[{l}]")
            else:
                bits.append(f"({c})[{l}]")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"LinComb({self})"

    def to_json(self, label_str=str):
        return {label_str(l): scalar_to_json(c) for l, c in
                sorted(self.terms.items(), key=lambda kv: str(kv[0]))}


def label_grade(label):
    if isinstance(label, tuple):
        return sum(label_grade(x) for x in label)
    return label.grade


def tensor(x, y):
    """Outer product of two LinCombs as a LinComb over label pairs."""
    out = LinComb()
    for l1, c1 in x.items():
        for l2, c2 in y.items():
            out.terms[(l1, l2)] = c1 * c2
    return out


def tensor_multiply(t1, t2, product):
    """Componentwise product of two tensor LinCombs.

    ``product(l1, l2) -> LinComb`` is the underlying algebra product.
    """
    out = LinComb()
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            left = product(a1, a2)
            right = product(b1, b2)
            out = out + tensor(left, right).scale(c1 * c2)
    return out


def tensor_map(t, fn_left, fn_right):
    """Apply label -> LinComb maps to both tensor factors, bilinearly."""
    out = LinComb()
    for (a, b), c in t.items():
        out = out + tensor(fn_left(a), fn_right(b)).scale(c)
    return out


class GradedSeries:
    """A degree-indexed family of homogeneous LinCombs, truncated at ``cap``."""

    __slots__ = ("components", "cap")

    def __init__(self, components, cap):
        self.components = {d: x for d, x in components.items() if d <= cap and x}
        self.cap = cap
        for d, x in self.components.items():
            for label in x.labels():
                if label_grade(label) != d:
                    raise ValueError(f"component {d} holds a grade-{label_grade(label)} label")

    def component(self, d):
        return self.components.get(d, LinComb())

    def __eq__(self, other):
        return (isinstance(other, GradedSeries) and self.cap == other.cap
                and self.components == other.components)


def is_grouplike(series, coproduct, unit_label):
    """True if Delta(S_n) = sum_k S_k (x) S_{n-k} for all n <= cap.

    ``coproduct`` maps a label to a tensor LinComb.  The degree-0 component
    must be the unit with coefficient 1.
    """
    if series.component(0) != LinComb.single(unit_label):
        raise ValueError("grouplike test needs a unital degree-0 component")
    for n in range(0, series.cap + 1):
        lhs = series.component(n).bind(coproduct)
        rhs = LinComb()
        for k in range(0, n + 1):
            rhs = rhs + tensor(series.component(k), series.component(n - k))
        if lhs != rhs:
            return False
    return True


def is_primitive(x, coproduct, unit_label):
    """True if Delta(x) = x (x) 1 + 1 (x) x for a homogeneous x of grade >= 1."""
    one = LinComb.single(unit_label)
    lhs = x.bind(coproduct)
    rhs = tensor(x, one) + tensor(one, x)
    return lhs == rhs


def pairing(f, g, rule=None):
    """Bilinear pairing of two LinCombs.

    ``rule(l1, l2) -> scalar`` defaults to the Kronecker delta on labels.
    """
    if rule is None:
        rule = lambda a, b: 1 if a == b else 0
    total = 0
    for l1, c1 in f.items():
        for l2, c2 in g.items():
            r = rule(l1, l2)
            if r:
                total = total + c1 * c2 * r
    return total
