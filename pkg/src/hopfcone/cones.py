"""Polyhedral cones attached to packed words and multiset compositions,
indicator-function product identities, integer point transforms and the
closed-form rational functions of segmented permutations."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .coeffring import MultiPoly, PolyFraction
from .combinat import MultisetComposition, PackedWord, segmented_shifted_shuffle
from .wqsym import convolution_words, mq_product_labels


class Cone:
    """Ordered list of integer linear forms, each weak (>= 0) or strict (< 0)."""

    __slots__ = ("dim", "constraints")

    def __init__(self, dim, constraints):
        constraints = tuple((tuple(int(c) for c in coeffs), bool(strict))
                            for coeffs, strict in constraints)
        for coeffs, _ in constraints:
            if len(coeffs) != dim:
                raise ValueError("constraint length does not match dimension")
        self.dim = dim
        self.constraints = constraints

    def indicator(self, point):
        """1 if the (exact rational) point satisfies every constraint."""
        if len(point) != self.dim:
            raise ValueError(f"point has dimension {len(point)}, cone has {self.dim}")
        for coeffs, strict in self.constraints:
            v = sum(Fraction(c) * Fraction(x) for c, x in zip(coeffs, point) if c)
            if strict:
                if not v < 0:
                    return 0
            elif not v >= 0:
                return 0
        return 1

    def grid_mask(self, pts):
        """Boolean mask over an integer point array of shape (N, dim).

        Strict constraints are evaluated as c.x <= -1, exact on integers.
        """
        mask = np.ones(len(pts), dtype=bool)
        for coeffs, strict in self.constraints:
            vals = pts @ np.asarray(coeffs, dtype=np.int64)
            mask &= vals <= -1 if strict else vals >= 0
        return mask

    def __str__(self):
        bits = []
        for coeffs, strict in self.constraints:
            lhs = " + ".join(f"{c}*x{i + 1}" if c != 1 else f"x{i + 1}"
                             for i, c in enumerate(coeffs) if c)
            bits.append(f"{lhs} {'< 0' if strict else '>= 0'}")
        return "; ".join(bits)

    def to_json(self):
        return {"dim": self.dim,
                "constraints": [{"coeffs": list(c), "strict": s}
                                for c, s in self.constraints]}


def cone_K(u):
    """All-weak cone: prefix-of-blocks coordinate sums are >= 0."""
    n = len(u)
    blocks = u.blocks()
    rows, current = [], [0] * n
    for block in blocks:
        current = list(current)
        for pos in block:
            current[pos - 1] = 1
        rows.append((current, False))
    return Cone(n, rows)


def cone_C(u):
    """Prefix sums along the segmented permutation; strict except at the end
    of each block."""
    n = len(u)
    perm, bars = u.set_composition().segmented()
    rows, current = [], [0] * n
    for k, pos in enumerate(perm, start=1):
        current = list(current)
        current[pos - 1] = 1
        block_end = (k == n) or (k in bars)
        rows.append((current, not block_end))
    return Cone(n, rows)


def cone_multiset(A):
    """Multiplicity-weighted prefix constraints of a multiset composition."""
    p = A.max_letter
    rows, current = [], [0] * p
    for part in A.parts:
        current = list(current)
        for x in part:
            current[x - 1] += 1
        rows.append((current, False))
    return Cone(p, rows)


def indicator(cone, point):
    return cone.indicator(point)


# ---------------------------------------------------------------------------
# grid identity checks


def grid_points(dim, box):
    """All integer points of [-box, box]^dim as an (N, dim) array."""
    side = np.arange(-box, box + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _pad_cone(cone, total, offset):
    rows = []
    for coeffs, strict in cone.constraints:
        row = [0] * total
        row[offset:offset + cone.dim] = coeffs
        rows.append((row, strict))
    return Cone(total, rows)


def product_identity_check(u, v, box=6, flavor="K"):
    """Pointwise check of the indicator identity for a Cartesian product.

    flavor "K": 1_{K_u x K_v} = sum over the M-basis convolution of
    (-1)^{max u + max v - max w} 1_{K_w}; flavor "C": same with C-cones over
    the Phi-basis segmented shifted shuffle.  Exact on the integer grid
    [-box, box]^(|u|+|v|).
    """
    if flavor not in ("K", "C"):
        raise ValueError(f"unknown cone flavor {flavor!r}")
    m, n = len(u), len(v)
    total = m + n
    if total == 0 or not u.letters or not v.letters:
        return {"status": "pass", "points_checked": 0, "flavor": flavor,
                "note": "empty factor: identity is trivial"}
    pts = grid_points(total, box)
    make = cone_K if flavor == "K" else cone_C
    lhs = _pad_cone(make(u), total, 0).grid_mask(pts).astype(np.int64)
    lhs *= _pad_cone(make(v), total, m).grid_mask(pts).astype(np.int64)
    if flavor == "K":
        expansion = {}
        for w in convolution_words(u, v):
            expansion[w] = expansion.get(w, 0) + 1
    else:
        expansion = {sc.packed_word(): mult for sc, mult in
                     segmented_shifted_shuffle(u.set_composition(),
                                               v.set_composition()).items()}
    rhs = np.zeros(len(pts), dtype=np.int64)
    base = u.max_letter + v.max_letter
    for w, mult in expansion.items():
        # base - max(w) can be negative for Phi-basis terms; only parity matters
        sign = 1 if (base - w.max_letter) % 2 == 0 else -1
        rhs += sign * mult * make(w).grid_mask(pts).astype(np.int64)
    diff = lhs - rhs
    bad = np.nonzero(diff)[0]
    if len(bad):
        pt = [int(x) for x in pts[bad[0]]]
        return {"status": "fail", "points_checked": int(len(pts)),
                "flavor": flavor, "counterexample": {"point": pt,
                "lhs": int(lhs[bad[0]]), "rhs": int(rhs[bad[0]])}}
    return {"status": "pass", "points_checked": int(len(pts)), "flavor": flavor}


def sigma_plus_identity(a, b):
    """sigma+(a) sigma+(b) = sigma+(a)sigma+(a+b) + sigma+(b)sigma+(a+b)
    - sigma+(a+b), for exact rationals."""
    def sp(x):
        return 1 if x >= 0 else 0
    lhs = sp(a) * sp(b)
    rhs = sp(a) * sp(a + b) + sp(b) * sp(a + b) - sp(a + b)
    return lhs == rhs


def multiset_identity_check(A, B, samples=200, box=3, seed=0):
    """pi(alpha(A), alpha(B)) = alpha(pi(A, B)) pointwise.

    Checked on the full integer grid [-box, box]^(p+q) and on ``samples``
    random exact-rational points.
    """
    p, q = A.max_letter, B.max_letter
    total = p + q
    if total == 0:
        return {"status": "pass", "points_checked": 0}
    shift = p
    product_terms = mq_product_labels(A, B)
    cone_a, cone_b = cone_multiset(A), cone_multiset(B)
    sign_lhs = (-1) ** (A.length + B.length)

    def lhs_at(point):
        return sign_lhs * cone_a.indicator(point[:p]) * cone_b.indicator(point[p:])

    def rhs_at(point):
        total_val = 0
        for T, mult in product_terms.items():
            total_val += mult * (-1) ** T.length * cone_multiset(T).indicator(point)
        return total_val

    checked = 0
    pts = grid_points(total, box)
    # vectorized grid pass
    lhs = cone_a.grid_mask(pts[:, :p]).astype(np.int64)
    lhs *= cone_b.grid_mask(pts[:, p:]).astype(np.int64)
    lhs *= sign_lhs
    rhs = np.zeros(len(pts), dtype=np.int64)
    for T, mult in product_terms.items():
        rhs += mult * (-1) ** T.length * cone_multiset(T).grid_mask(pts).astype(np.int64)
    bad = np.nonzero(lhs - rhs)[0]
    if len(bad):
        pt = [int(x) for x in pts[bad[0]]]
        return {"status": "fail", "points_checked": int(len(pts)),
                "counterexample": {"point": pt, "lhs": int(lhs[bad[0]]),
                                   "rhs": int(rhs[bad[0]])}}
    checked += len(pts)
    rng = random.Random(seed)
    for _ in range(samples):
        point = [Fraction(rng.randint(-10 ** 4, 10 ** 4),
                          rng.randint(1, 100)) for _ in range(total)]
        if lhs_at(point) != rhs_at(point):
            return {"status": "fail", "points_checked": checked,
                    "counterexample": {"point": [str(x) for x in point]}}
        checked += 1
    assert shift == p
    return {"status": "pass", "points_checked": checked}


# ---------------------------------------------------------------------------
# integer point transforms


def ipt_box(u, box):
    """Signed lattice points of C_u inside [-box, box]^n.

    Returns a dict exponent-tuple -> count, every count carrying the sign
    (-1)^max(u).
    """
    n = len(u)
    if n == 0:
        return {(): 1}
    pts = grid_points(n, box)
    mask = cone_C(u).grid_mask(pts)
    sign = (-1) ** u.max_letter
    return {tuple(int(x) for x in pt): sign for pt in pts[mask]}


def ipt_star_check(u, v, box, margin=None):
    """Box-restricted star product of integer point transforms.

    The product transform F_u * F_v (variables concatenated) is compared with
    the sum of F_w over the segmented shifted shuffle, on the box shrunk by
    ``margin`` (default max(|u|, |v|)).
    """
    m, n = len(u), len(v)
    if margin is None:
        margin = max(m, n)
    inner = box - margin
    if inner < 0:
        raise ValueError("box too small for the requested margin")
    total = m + n
    pts = grid_points(total, inner)
    fu = cone_C(u).grid_mask(pts[:, :m]).astype(np.int64) * (-1) ** u.max_letter
    fv = cone_C(v).grid_mask(pts[:, m:]).astype(np.int64) * (-1) ** v.max_letter
    lhs = fu * fv
    rhs = np.zeros(len(pts), dtype=np.int64)
    for sc, mult in segmented_shifted_shuffle(u.set_composition(),
                                              v.set_composition()).items():
        w = sc.packed_word()
        rhs += mult * (-1) ** w.max_letter * cone_C(w).grid_mask(pts).astype(np.int64)
    bad = np.nonzero(lhs - rhs)[0]
    if len(bad):
        return {"status": "fail", "points_checked": int(len(pts)),
                "counterexample": {"point": [int(x) for x in pts[bad[0]]]}}
    return {"status": "pass", "points_checked": int(len(pts))}


# ---------------------------------------------------------------------------
# rational functions of cones


class RationalConeFn:
    """Closed-form rational function of a segmented permutation:
    1/(z_{s_n} - 1) times the product of z_{s_{i+1}} / (z_{s_i} - z_{s_{i+1}}).
    """

    __slots__ = ("word", "fraction")

    def __init__(self, word):
        self.word = word
        perm, _ = word.set_composition().segmented()
        n = len(perm)
        # writing every denominator as z_i - z_j (and z - 1) absorbs the
        # (-1)^max(u) of the integer point transform
        num = MultiPoly.const(1)
        den = MultiPoly.var(f"z{perm[n - 1]}") - 1
        for i in range(n - 1):
            num = num * MultiPoly.var(f"z{perm[i + 1]}")
            den = den * (MultiPoly.var(f"z{perm[i]}") - MultiPoly.var(f"z{perm[i + 1]}"))
        self.fraction = PolyFraction(num, den)

    def eval(self, zs):
        """Evaluate at a list of Fractions z1..zn (1-indexed by position)."""
        point = {f"z{i + 1}": Fraction(z) for i, z in enumerate(zs)}
        return self.fraction.eval(point)

    def __str__(self):
        return str(self.fraction)


def rational_fn(u):
    return RationalConeFn(u)


def star_identity_random_check(u, v, trials=20, seed=0, retry_budget=200):
    """F_u * F_v = sum of F_w over the segmented shifted shuffle, tested at
    random exact rational points (exact equality at every point)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    m, n = len(u), len(v)
    total = m + n
    fu, fv = RationalConeFn(u), RationalConeFn(v)
    terms = [RationalConeFn(sc.packed_word()) for sc in
             segmented_shifted_shuffle(u.set_composition(), v.set_composition())]
    rng = random.Random(seed)
    done, attempts = 0, 0
    while done < trials:
        if attempts > retry_budget + trials:
            raise PoleRetryError("could not find pole-free sample points")
        attempts += 1
        zs = [Fraction(rng.randint(-10 ** 4, 10 ** 4)) for _ in range(total)]
        if len(set(zs)) != total or any(z == 1 or z == 0 for z in zs):
            continue
        lhs = fu.eval(zs[:m]) * fv.eval(zs[m:])
        rhs = sum(t.eval(zs) for t in terms)
        if lhs != rhs:
            return {"status": "fail", "points_checked": done,
                    "counterexample": {"point": [str(z) for z in zs]}}
        done += 1
    return {"status": "pass", "points_checked": done}


class PoleRetryError(RuntimeError):
    """All candidate sample points hit poles within the retry budget."""
