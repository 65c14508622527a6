"""Iterated-integral characters: the Catalan closed-form family with Lie
idempotent certification, and seeded Monte-Carlo estimation of sign-pattern
weights for probability densities (consistency, character, Sparre Andersen
and ribbon-to-elementary coefficient checks)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coeffring import MultiPoly
from .combinat import Composition, SignSeq, compositions, quasi_shuffle, sign_seqs
from .freemod import LinComb
from . import ncsf


# ---------------------------------------------------------------------------
# the Catalan triangle and the closed-form primitive family


@lru_cache(maxsize=None)
def catalan_poly(n):
    """ca_n(a, b) by the recurrence ca_{n+1} = (a+b) ca_n + ab sum ca_i ca_j."""
    if n < 1:
        raise ValueError("catalan_poly needs n >= 1")
    if n == 1:
        return MultiPoly.const(1)
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    prev = catalan_poly(n - 1)
    acc = (a + b) * prev
    cross = MultiPoly()
    for i in range(1, n - 1):
        cross = cross + catalan_poly(i) * catalan_poly(n - 1 - i)
    return acc + a * b * cross


def narayana(n, k):
    """T(n, k) = (1/k) C(n-1, k-1) C(n, k-1)."""
    return Fraction(math.comb(n - 1, k - 1) * math.comb(n, k - 1), k)


def _stacks(signs):
    """Maximal runs of identical signs: list of (sign, run length)."""
    out = []
    for s in signs:
        if out and out[-1][0] == s:
            out[-1][1] += 1
        else:
            out.append([s, 1])
    return [(s, r) for s, r in out]


def catalan_D(n):
    """The degree-n primitive element on the signed ribbon basis.

    Over sign sequences of length n-1 split into maximal stacks
    (eta_1)^{n_1}...(eta_s)^{n_s}: coefficient = product of a over interior
    plus-stacks, b over interior minus-stacks, times ca_{n_1}...ca_{n_s}.
    """
    if n < 2:
        raise ValueError("catalan_D needs n >= 2")
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    out = LinComb()
    for eps in sign_seqs(n):
        coeff = MultiPoly.const(1)
        stacks = _stacks(eps.signs)
        for idx, (sign, run) in enumerate(stacks):
            if idx < len(stacks) - 1:
                coeff = coeff * (a if sign > 0 else b)
            coeff = coeff * catalan_poly(run)
        out = out + LinComb.single(eps, coeff)
    return ncsf.SymElement("signedR", out)


def catalan_normalizer(n):
    """lambda_n(a, b) with commutative_image(D^n) = lambda_n p_n (computed,
    not assumed; raises if the image is not proportional to p_n)."""
    image = ncsf.commutative_image(catalan_D(n))
    pn = ncsf.Partition((n,))
    lam = image.coeff(pn)
    if image != LinComb.single(pn, lam):
        raise AssertionError(f"commutative image of D^{n} is not a multiple of p_{n}")
    return lam


def catalan_lie_idempotent(n, a0, b0):
    """D^n specialized at (a0, b0), normalized to a Lie idempotent."""
    a0, b0 = Fraction(a0), Fraction(b0)
    lam = catalan_normalizer(n)
    lam_val = lam.eval({"a": a0, "b": b0}) if isinstance(lam, MultiPoly) else Fraction(lam)
    if not lam_val:
        raise ZeroDivisionError(f"normalizing scalar vanishes at (a,b)=({a0},{b0})")
    elem = catalan_D(n)
    point = {"a": a0, "b": b0}
    specialized = LinComb({lab: c.eval(point) if isinstance(c, MultiPoly) else Fraction(c)
                           for lab, c in elem.comb.items()})
    idem = ncsf.SymElement("signedR", specialized).scale(Fraction(1, n) / lam_val)
    cert = ncsf.is_lie_idempotent(idem, n, check_internal=n <= 6)
    return idem, cert


def u_series(N):
    """Coefficients of u(t) from u = a t + b t u / (1 - u); u_1 = a and
    u_n = (b - a) u_{n-1} + sum_{i+j=n} u_i u_j."""
    if N < 1:
        raise ValueError("u_series needs N >= 1")
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    us = [None, a]
    for n in range(2, N + 1):
        term = (b - a) * us[n - 1]
        for i in range(1, n):
            term = term + us[i] * us[n - i]
        us.append(term)
    return us[1:]


def u_catalan_identity_check(N=6):
    """u(t) - a t = a b t ca(t), order by order."""
    us = u_series(N)
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    for n in range(1, N + 1):
        lhs = us[n - 1] - (a if n == 1 else MultiPoly())
        rhs = a * b * catalan_poly(n - 1) if n >= 2 else MultiPoly()
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# densities and seeded Monte Carlo


GOLDEN64 = 0x9E3779B97F4A7C15


def splitmix64(x):
    """One round of SplitMix64; the documented shard-seed mixing function."""
    x = (x + GOLDEN64) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def derive_seed(seed, shard, tag=0):
    """Shard i uses splitmix64(seed xor splitmix64(shard + tag<<32))."""
    return splitmix64(seed ^ splitmix64((shard + (tag << 32)) & 0xFFFFFFFFFFFFFFFF))


class Density:
    """A named probability density with a deterministic vectorized sampler."""

    def __init__(self, name, sampler, symmetric):
        self.name = name
        self._sampler = sampler
        self.symmetric = symmetric

    def sample(self, rng, shape):
        return self._sampler(rng, shape)

    @classmethod
    def gaussian(cls):
        return cls("gaussian", lambda rng, shape: rng.standard_normal(shape), True)

    @classmethod
    def uniform(cls):
        return cls("uniform", lambda rng, shape: rng.uniform(-1.0, 1.0, shape), True)

    @classmethod
    def catalan_mixture(cls, a, b):
        """2(a sigma+ + b sigma-) e^{-|x|} with a + b = 1/2: draw +Exp(1)
        with probability 2a, else -Exp(1)."""
        a, b = Fraction(a), Fraction(b)
        if a + b != Fraction(1, 2):
            raise ValueError("catalan mixture needs a + b = 1/2")
        p_plus = float(2 * a)

        def sampler(rng, shape):
            signs = np.where(rng.random(shape) < p_plus, 1.0, -1.0)
            return signs * rng.exponential(1.0, shape)

        return cls(f"catalan:{a},{b}", sampler, a == b)

    @classmethod
    def parse(cls, text):
        if text == "gaussian":
            return cls.gaussian()
        if text == "uniform":
            return cls.uniform()
        if text.startswith("catalan:"):
            a, b = text[len("catalan:"):].split(",")
            return cls.catalan_mixture(Fraction(a), Fraction(b))
        raise ValueError(f"unknown density {text!r}")


@dataclass(frozen=True)
class MCConfig:
    seed: int = 0
    samples: int = 10 ** 6
    shards: int = 4
    threads: int = 1

    def shard_sizes(self):
        base, extra = divmod(self.samples, self.shards)
        return [base + (1 if i < extra else 0) for i in range(self.shards)]


def _sharded_indicator_mean(density, cfg, ncols, event_fn, tag=0):
    """Mean and count of an indicator over sharded sample matrices.

    ``event_fn(S)`` maps the (samples, ncols) cumulative-sum matrix to a
    boolean vector.  Shards draw from independently derived seeds, so the
    merged result does not depend on whether they run sequentially or on a
    thread pool.
    """

    def one_shard(args):
        shard, size = args
        rng = np.random.default_rng(derive_seed(cfg.seed, shard, tag))
        x = density.sample(rng, (size, ncols)) if ncols else np.zeros((size, 0))
        s = np.cumsum(x, axis=1)
        return int(np.count_nonzero(event_fn(s))), size

    jobs = [(shard, size) for shard, size in enumerate(cfg.shard_sizes()) if size]
    if cfg.threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(one_shard, jobs))
    else:
        results = [one_shard(j) for j in jobs]
    hits = sum(h for h, _ in results)
    total = sum(n for _, n in results)
    p = hits / total if total else 0.0
    stderr = math.sqrt(p * (1 - p) / total) if total else 0.0
    return p, stderr, total


class FullSignWord:
    """A full-length word of +/- signs, one per partial sum S_1..S_n.

    Distinct from SignSeq: m^{eps} constrains every partial sum, so the
    Monte-Carlo weight of a degree-n average needs n signs, not n-1.
    """

    __slots__ = ("signs",)

    def __init__(self, signs):
        self.signs = tuple(1 if s in (1, "+") else -1 for s in signs)

    @property
    def degree(self):
        return len(self.signs)

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if any(ch not in "+-" for ch in text):
            raise ValueError(f"bad sign word {text!r}")
        return cls(text)


def mc_weight(word, density, cfg):
    """Empirical frequency of (eps_1 S_1 > 0, ..., eps_n S_n > 0)."""
    if not isinstance(word, FullSignWord):
        word = FullSignWord(word)
    n = word.degree
    if n == 0:
        return {"estimate": 1.0, "stderr": 0.0, "samples": 0, "eps": ""}

    def event(s):
        ok = np.ones(len(s), dtype=bool)
        for j, sign in enumerate(word.signs):
            ok &= s[:, j] > 0 if sign > 0 else s[:, j] < 0
        return ok

    p, stderr, total = _sharded_indicator_mean(density, cfg, n, event)
    return {"estimate": p, "stderr": stderr, "samples": total, "eps": str(word)}


def _cone_probability(I, density, cfg, tag):
    """P(S at each cut point >= 0) for the nondecreasing word of ev = I."""
    n = I.weight
    if n == 0:
        return 1.0, 0.0
    cuts = sorted(I.descent_set() | {n})

    def event(s):
        ok = np.ones(len(s), dtype=bool)
        for c in cuts:
            ok &= s[:, c - 1] >= 0
        return ok

    p, stderr, _ = _sharded_indicator_mean(density, cfg, n, event, tag)
    return p, stderr


def chi_M(I, density, cfg, tag=0):
    """chi(M_I) = (-1)^(length I) P(cone of the nondecreasing word)."""
    p, stderr = _cone_probability(I, density, cfg, tag)
    sign = (-1) ** I.length
    return sign * p, stderr


def mc_character_check(I, J, density, cfg):
    """chi(M_I) chi(M_J) = sum_K (K | I qsh J) chi(M_K) within 4 sigma.

    Each chi estimate uses an independent derived stream, so the assertion is
    a genuine statistical test of the character property.
    """
    tag = 1
    chi_i, s_i = chi_M(I, density, cfg, tag)
    chi_j, s_j = chi_M(J, density, cfg, tag + 1)
    rhs, var = 0.0, 0.0
    k_terms = quasi_shuffle(I.parts, J.parts)
    for idx, (word, mult) in enumerate(sorted(k_terms.items())):
        K = Composition(word)
        chi_k, s_k = chi_M(K, density, cfg, tag + 2 + idx)
        rhs += mult * chi_k
        var += (mult * s_k) ** 2
    lhs = chi_i * chi_j
    var += (chi_j * s_i) ** 2 + (chi_i * s_j) ** 2 + (s_i * s_j) ** 2
    sigma = math.sqrt(var)
    diff = lhs - rhs
    sigmas = abs(diff) / sigma if sigma else (0.0 if diff == 0 else math.inf)
    return {"estimate": lhs, "target": rhs, "stderr": sigma,
            "sigmas": sigmas, "pass": sigmas <= 4.0,
            "I": str(I), "J": str(J)}


def consistency_check(eps, density, cfg):
    """m^{eps+} + m^{eps-} = m^{eps} I(f) with I(f) = 1, common random
    numbers across the three estimates."""
    word = eps if isinstance(eps, FullSignWord) else FullSignWord(
        "".join("+" if s > 0 else "-" for s in eps.signs))
    n = word.degree
    diffs, total = [], 0
    for shard, size in enumerate(MCConfig(cfg.seed, cfg.samples, cfg.shards).shard_sizes()):
        if size == 0:
            continue
        rng = np.random.default_rng(derive_seed(cfg.seed, shard, tag=9))
        x = density.sample(rng, (size, n + 1))
        s = np.cumsum(x, axis=1)
        base = np.ones(size, dtype=bool)
        for j, sign in enumerate(word.signs):
            base &= s[:, j] > 0 if sign > 0 else s[:, j] < 0
        plus = base & (s[:, n] > 0)
        minus = base & (s[:, n] < 0)
        y = plus.astype(np.float64) + minus.astype(np.float64) - base.astype(np.float64)
        diffs.append(y)
        total += size
    y = np.concatenate(diffs) if diffs else np.zeros(0)
    diff = float(y.mean()) if total else 0.0
    stderr = float(y.std(ddof=1) / math.sqrt(total)) if total > 1 else 0.0
    sigmas = abs(diff) / stderr if stderr else (0.0 if diff == 0 else math.inf)
    return {"estimate": diff, "target": 0.0, "stderr": stderr,
            "sigmas": sigmas, "pass": sigmas <= 4.0, "eps": str(word)}


def sparre_andersen_targets(nmax):
    """tau_n = coefficient of s^n in 1 - sqrt(1 - s), exact."""
    return [Fraction(math.comb(2 * n - 2, n - 1), n * 2 ** (2 * n - 1))
            for n in range(1, nmax + 1)]


def sparre_andersen(density, nmax, cfg):
    """Estimate tau_n = P(S_1<0, ..., S_{n-1}<0, S_n>=0) and compare with the
    coefficients of 1 - sqrt(1 - s), within 4 sigma per coefficient."""
    if not density.symmetric:
        raise ValueError("Sparre Andersen check needs a symmetric density")
    if nmax < 1 or nmax > 5:
        raise ValueError("nmax must be in 1..5")
    targets = sparre_andersen_targets(nmax)
    hits = np.zeros(nmax, dtype=np.int64)
    total = 0
    for shard, size in enumerate(cfg.shard_sizes()):
        if size == 0:
            continue
        rng = np.random.default_rng(derive_seed(cfg.seed, shard, tag=5))
        x = density.sample(rng, (size, nmax))
        s = np.cumsum(x, axis=1)
        neg = np.ones(size, dtype=bool)
        for n in range(1, nmax + 1):
            ok = neg & (s[:, n - 1] >= 0)
            hits[n - 1] += int(np.count_nonzero(ok))
            neg &= s[:, n - 1] < 0
        total += size
    rows, all_pass = [], True
    for n in range(1, nmax + 1):
        p = hits[n - 1] / total
        stderr = math.sqrt(p * (1 - p) / total) if total else 0.0
        target = float(targets[n - 1])
        sigmas = abs(p - target) / stderr if stderr else (0.0 if p == target else math.inf)
        ok = sigmas <= 4.0
        all_pass &= ok
        rows.append({"n": n, "estimate": p, "target": target,
                     "stderr": stderr, "sigmas": sigmas, "pass": ok})
    return {"pass": all_pass, "rows": rows, "samples": total}


def _signed_m_estimates(n, density, cfg, tag=11):
    """Shared-sample estimates of m^{eps+} for all eps of length n-1, plus
    the K_I cone probabilities of every composition of n.

    Returns (m_plus: dict SignSeq->(p, var), cone: dict Composition->(p, var)).
    """
    m_counts = {eps: 0 for eps in sign_seqs(n)}
    cone_counts = {I: 0 for I in compositions(n)}
    total = 0
    for shard, size in enumerate(cfg.shard_sizes()):
        if size == 0:
            continue
        rng = np.random.default_rng(derive_seed(cfg.seed, shard, tag))
        x = density.sample(rng, (size, n))
        s = np.cumsum(x, axis=1)
        pos = s > 0
        nonneg = s >= 0
        neg = s < 0
        for eps in m_counts:
            ok = pos[:, n - 1].copy()
            for j, sign in enumerate(eps.signs):
                ok &= pos[:, j] if sign > 0 else neg[:, j]
            m_counts[eps] += int(np.count_nonzero(ok))
        for I in cone_counts:
            cuts = sorted(I.descent_set() | {n})
            ok = np.ones(size, dtype=bool)
            for c in cuts:
                ok &= nonneg[:, c - 1]
            cone_counts[I] += int(np.count_nonzero(ok))
        total += size
    m_plus = {eps: (c / total, (c / total) * (1 - c / total) / total)
              for eps, c in m_counts.items()}
    cone = {I: (c / total, (c / total) * (1 - c / total) / total)
            for I, c in cone_counts.items()}
    return m_plus, cone


def lambda_coefficients_check(density, I, cfg):
    """(-1)^(r+n) P(K_I) equals the Lambda-basis coefficient of the
    Monte-Carlo R_f series, within 4 sigma (shared samples)."""
    n = I.weight
    r = I.length
    m_plus, cone = _signed_m_estimates(n, density, cfg)
    # degree-n component of R_f on the signed ribbon basis
    comb = LinComb()
    var_by_eps = {}
    for eps, (p, var) in m_plus.items():
        comb = comb + LinComb.single(eps, p)
        var_by_eps[eps] = var
    elem = ncsf.SymElement("signedR", comb)
    lam = ncsf.convert(elem, "L")
    coeff = lam.comb.coeff(I)
    coeff = float(coeff) if coeff else 0.0
    p_cone, var_cone = cone[I]
    lhs = (-1) ** (r + n) * p_cone
    # conservative propagated variance: the conversion is an integer matrix
    conv_var = 0.0
    for eps, var in var_by_eps.items():
        unit = ncsf.convert(ncsf.SymElement.single("signedR", eps), "L")
        c = unit.comb.coeff(I)
        conv_var += (int(c) ** 2) * var if c else 0.0
    sigma = math.sqrt(var_cone + conv_var)
    diff = lhs - coeff
    sigmas = abs(diff) / sigma if sigma else (0.0 if diff == 0 else math.inf)
    return {"estimate": lhs, "target": coeff, "stderr": sigma,
            "sigmas": sigmas, "pass": sigmas <= 4.0, "I": str(I)}


def rf_lf_sigma_check(density, cap, cfg):
    """Telescoping check of R_f = L_f sigma_{I(f)} on Monte-Carlo estimates.

    With a probability density, I(f) = 1 and the degree-n coefficient law is
    m^{eps+} + m^{eps-} = m^{eps}; shared samples make the residual a 4-sigma
    statistical quantity.
    """
    residuals = []
    for n in range(1, cap + 1):
        total = 0
        sums = {}
        for shard, size in enumerate(cfg.shard_sizes()):
            if size == 0:
                continue
            rng = np.random.default_rng(derive_seed(cfg.seed, shard, tag=13 + n))
            x = density.sample(rng, (size, n))
            s = np.cumsum(x, axis=1)
            pos, neg = s > 0, s < 0
            for eps in sign_seqs(n):
                full_prefix = np.ones(size, dtype=bool)
                for j, sign in enumerate(eps.signs):
                    full_prefix &= pos[:, j] if sign > 0 else neg[:, j]
                plus = full_prefix & pos[:, n - 1]
                minus = full_prefix & neg[:, n - 1]
                key = eps
                agg = sums.setdefault(key, np.zeros(3, dtype=np.int64))
                agg[0] += int(np.count_nonzero(plus))
                agg[1] += int(np.count_nonzero(minus))
                agg[2] += int(np.count_nonzero(full_prefix))
            total += size
        for eps, agg in sums.items():
            diff = (agg[0] + agg[1] - agg[2]) / total
            p = agg[2] / total
            sigma = math.sqrt(max(p * (1 - p), 1.0 / total) / total)
            residuals.append({"degree": n, "eps": str(eps), "residual": diff,
                              "sigmas": abs(diff) / sigma})
    worst = max((r["sigmas"] for r in residuals), default=0.0)
    return {"pass": worst <= 4.0, "worst": worst, "checked": len(residuals)}
