import itertools
import random
from fractions import Fraction

import pytest

from hopfcone import moulds, wqsym
from hopfcone.coeffring import MultiPoly, PolyFraction, binomial_poly
from hopfcone.combinat import LEAF, PackedWord, SchroederTree, packed_words, schroeder_tree

W = PackedWord.parse


def _z(i):
    return MultiPoly.var(f"z{i}")


def test_mould_M_golden():
    den = (_z(2) * _z(4) * _z(7) - 1) \
        * (_z(2) * _z(4) * _z(7) * _z(1) * _z(5) - 1) \
        * (_z(2) * _z(4) * _z(7) * _z(1) * _z(5) * _z(3) * _z(6) - 1)
    assert moulds.mould_M(W("2131231")).fraction == PolyFraction(1, den)
    assert moulds.mould_M(W("1")).fraction == PolyFraction(1, _z(1) - 1)
    assert moulds.mould_M(W("12")).fraction == \
        PolyFraction(1, (_z(1) - 1) * (_z(1) * _z(2) - 1))


def test_mould_laurent_expansion_oracle():
    # M_u(Z) = sum over alpha < 0 with pack(alpha) = u of z^alpha; compare a
    # partial sum against the exact value at a point far inside |z| > 1
    from hopfcone.combinat import pack
    u = W("121")
    zs = [Fraction(7), Fraction(9), Fraction(11)]
    exact = moulds.mould_M(u).eval(zs)
    partial = Fraction(0)
    for alpha in itertools.product(range(-24, 0), repeat=3):
        if pack(alpha).letters == u.letters:
            partial += zs[0] ** alpha[0] * zs[1] ** alpha[1] * zs[2] ** alpha[2]
    assert abs(float(exact - partial)) < 1e-12


def test_mould_star_checks():
    assert moulds.mould_star_check(W("1"), W("1"), trials=20, seed=0)["status"] == "pass"
    assert moulds.mould_star_check(W("11"), W("21"), trials=20, seed=1)["status"] == "pass"
    # unit: star with the empty word is the identity
    star = moulds.mould_star(moulds.mould_M(W("12")), moulds.mould_M(W("")))
    zs = [Fraction(3), Fraction(5)]
    assert star.eval(zs) == moulds.mould_M(W("12")).eval(zs)


def test_mould_star_all_pairs_total_4():
    for lu in range(1, 4):
        for lv in range(1, 5 - lu):
            for u in packed_words(lu):
                for v in packed_words(lv):
                    r = moulds.mould_star_check(u, v, trials=20, seed=23)
                    assert r["status"] == "pass", (u, v)


def test_op_eval_golden():
    d0 = moulds.DiscreteSeq.delta(0)
    for t in range(-3, 6):
        assert moulds.op_eval(W("1"), [d0], t) == (1 if t >= 1 else 0)
    f = moulds.DiscreteSeq({0: 2, 1: 3})
    g = moulds.DiscreteSeq({0: 5, 2: 7})
    for t in range(-2, 8):
        assert moulds.op_eval(W("11"), [f, g], t) == \
            sum(f(t - n) * g(t - n) for n in range(1, 30))
        w12 = sum(f(t - n1 - n2) * g(t - n2)
                  for n1 in range(1, 30) for n2 in range(1, 30))
        assert moulds.op_eval(W("12"), [f, g], t) == w12
        assert moulds.op_eval(W("21"), [g, f], t) == w12
    assert moulds.op_eval(W(""), [], 5) == 1


def test_op_eval_arity_mismatch():
    with pytest.raises(ValueError):
        moulds.op_eval(W("11"), [moulds.DiscreteSeq.delta(0)], 0)


def test_delta_left_inverse_of_M():
    rng = random.Random(3)
    for _ in range(10):
        f = moulds.random_seq(rng, 3)
        expr = moulds.DeltaExpr(moulds.MExpr(moulds.LeafExpr(1)))
        for t in range(-6, 8):
            assert expr.eval([f], t) == f(t)


def test_rb_operator_identity():
    d0 = moulds.DiscreteSeq.delta(0)
    assert moulds.rb_operator_check(d0, d0, (-5, 10))["status"] == "pass"
    zero = moulds.DiscreteSeq()
    assert moulds.rb_operator_check(zero, d0, (-5, 5))["status"] == "pass"
    rng = random.Random(11)
    for _ in range(100):
        f1 = moulds.random_seq(rng, 3)
        f2 = moulds.random_seq(rng, 3)
        assert moulds.rb_operator_check(f1, f2, (-8, 9))["status"] == "pass"


def test_decompose_golden():
    ME, PE, LE = moulds.MExpr, moulds.ProdExpr, moulds.LeafExpr
    assert moulds.decompose(W("21")) == ME(PE([ME(LE(2)), LE(1)]))
    assert moulds.decompose(W("132")) == \
        ME(PE([LE(2), ME(PE([LE(3), ME(LE(1))]))]))
    assert moulds.decompose(W("3121")) == \
        ME(PE([LE(1), ME(PE([LE(3), ME(PE([LE(2), LE(4)]))]))]))


def test_decompose_evaluates_like_op_eval():
    rng = random.Random(0)
    for n in range(1, 5):
        for u in packed_words(n):
            fs = [moulds.random_seq(rng, 2, coeff_bound=3) for _ in range(n)]
            expr = moulds.decompose(u)
            for t in range(-4, 6):
                assert expr.eval(fs, t) == moulds.op_eval(u, fs, t), (u, t)


def test_operad_tables():
    def words(d):
        return {str(w) for w in d}

    assert words(moulds.operad_compose(W("12"), 2, W("12"))) == {"123", "213", "112"}
    assert words(moulds.operad_compose(W("121"), 1, W("12"))) == {"1232"}
    assert words(moulds.operad_compose(W("121"), 2, W("12"))) == {"1121", "1231", "2132"}
    assert words(moulds.operad_compose(W("121"), 3, W("12"))) == {"2312"}
    assert words(moulds.operad_compose(W("123"), 1, W("12"))) == {"1234"}
    assert words(moulds.operad_compose(W("123"), 2, W("12"))) == {"1123", "1234", "2134"}
    assert words(moulds.operad_compose(W("123"), 3, W("12"))) == \
        {"1213", "1223", "1234", "1324", "2314"}


def test_operad_out_of_range():
    with pytest.raises(ValueError):
        moulds.operad_compose(W("12"), 3, W("1"))


def test_operad_symbolic_matches_rational():
    cases = [((1, 2), 2, (1, 2)), ((1, 2, 1), 2, (1, 2)), ((2, 1), 1, (1, 1)),
             ((1, 1), 2, (2, 1)), ((1,), 1, (1, 2, 1))]
    for u, k, v in cases:
        r = moulds.operad_symbolic_vs_rational_check(
            PackedWord(u), k, PackedWord(v), trials=8, seed=4)
        assert r["status"] == "pass", (u, k, v)


def _rand_eval_equal(x, y, arity, seed, trials=8):
    rng = random.Random(seed)
    for _ in range(trials):
        zs = [Fraction(rng.randint(2, 10 ** 4)) for _ in range(arity)]
        lhs = sum(c * moulds.mould_M(w).eval(zs) for w, c in x.items())
        rhs = sum(c * moulds.mould_M(w).eval(zs) for w, c in y.items())
        if lhs != rhs:
            return False
    return True


def test_operad_axioms_random_triples():
    rng = random.Random(77)
    pool = [u for n in range(1, 3) for u in packed_words(n)]
    for trial in range(12):
        a = rng.choice([u for u in packed_words(rng.randint(2, 3))])
        b, c = rng.choice(pool), rng.choice(pool)
        if len(a) + len(b) + len(c) > 6:
            continue
        m, n, p = len(a), len(b), len(c)
        # nested: (a o_i b) o_{i+j-1} c = a o_i (b o_j c)
        i = rng.randint(1, m)
        j = rng.randint(1, n)
        lhs = moulds.operad_compose_lin(moulds.operad_compose(a, i, b),
                                        i + j - 1, {c: 1})
        rhs = moulds.operad_compose_lin({a: 1}, i,
                                        moulds.operad_compose(b, j, c))
        assert lhs == rhs, (a, b, c, i, j)
        assert _rand_eval_equal(lhs, rhs, m + n + p - 2, seed=trial)
        # parallel: for i < k: (a o_i b) o_{k+n-1} c = (a o_k c) o_i b
        if m >= 2:
            i, k = 1, m
            lhs = moulds.operad_compose_lin(moulds.operad_compose(a, i, b),
                                            k + n - 1, {c: 1})
            rhs = moulds.operad_compose_lin(moulds.operad_compose(a, k, c),
                                            i, {b: 1})
            assert lhs == rhs, (a, b, c)
            assert _rand_eval_equal(lhs, rhs, m + n + p - 2, seed=100 + trial)


def test_tridendriform_ops_golden():
    assert {str(w) for w in moulds.tridendriform_op("right", W("1"), W("1"))} == {"12"}
    # the three parts partition the full product
    for u, v in [(W("1"), W("1")), (W("11"), W("1")), (W("12"), W("21"))]:
        parts = [moulds.tridendriform_op(kind, u, v)
                 for kind in ("left", "middle", "right")]
        total = {}
        for part in parts:
            for w, c in part.items():
                total[w] = total.get(w, 0) + c
        want = {}
        for w in wqsym.convolution_words(u, v):
            want[w] = want.get(w, 0) + 1
        assert total == want


def test_tridendriform_operator_forms():
    rng = random.Random(8)
    words = [u for n in range(1, 3) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 4:
            continue
        fs = [moulds.random_seq(rng, 2, coeff_bound=3)
              for _ in range(len(u) + len(v))]
        for kind in ("left", "middle", "right"):
            r = moulds.tridendriform_operator_check(kind, u, v, fs, (-5, 6))
            assert r["status"] == "pass", (kind, u, v)


def test_tree_mould_golden():
    T = SchroederTree
    ex = T([T([LEAF, LEAF]), T([LEAF, LEAF]), T([LEAF, LEAF, LEAF])])
    want = PolyFraction(1, (_z(1) - 1) * (_z(3) - 1) * (_z(5) * _z(6) - 1)
                        * (_z(1) * _z(2) * _z(3) * _z(4) * _z(5) * _z(6) - 1))
    assert moulds.tree_mould(ex).fraction == want
    # one internal node with k leaves: a single prefix factor
    t3 = T([LEAF, LEAF, LEAF])
    assert moulds.tree_mould(t3).fraction == PolyFraction(1, _z(1) * _z(2) - 1)


def test_tree_mould_equals_word_sums():
    for n in range(0, 4):
        for t in {schroeder_tree(u.letters) for u in packed_words(n)}:
            r = moulds.tree_mould_check(t, trials=10, seed=9)
            assert r["status"] == "pass", t


def test_natural_character():
    t = MultiPoly.var("t")
    m1 = wqsym.WQSymElement.single("M", W("1"))
    assert moulds.natural_character(m1) == t
    assert moulds.natural_character(wqsym.WQSymElement.unit()) == MultiPoly.const(1)
    prod = wqsym.wq_m_product(m1, m1)
    assert moulds.natural_character(prod) == t * t


def test_natural_character_multiplicative():
    words = [u for n in range(1, 3) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        xu = wqsym.WQSymElement.single("M", u)
        xv = wqsym.WQSymElement.single("M", v)
        lhs = moulds.natural_character(xu) * moulds.natural_character(xv)
        rhs = moulds.natural_character(wqsym.wq_m_product(xu, xv))
        assert lhs == rhs, (u, v)


def test_natural_character_lattice_count_oracle():
    # M_u applied to the indicator of [0, inf) counts increasing tuples:
    # the value at integer t is binomial(t, max u)
    for u in [W("1"), W("11"), W("21"), W("121"), W("312")]:
        p = u.max_letter
        poly = binomial_poly(p)
        for t in range(0, 8):
            count = sum(1 for _ in itertools.combinations(range(-t, 0), p))
            assert poly.eval({"t": Fraction(t)}) == count


def test_qint_character():
    # at q = 1 the q-integer alphabet degenerates to t ones: the natural
    # character evaluated at integer t
    for text in ["1", "11", "21", "121"]:
        el = wqsym.WQSymElement.single("M", W(text))
        nat = moulds.natural_character(el)
        for t in range(0, 6):
            assert moulds.qint_character(el, Fraction(1), t) == \
                nat.eval({"t": Fraction(t)})
    # spot value: M_{ev=(1)}([2]_q) = 1 + q
    el = wqsym.WQSymElement.single("M", W("1"))
    q = Fraction(3)
    assert moulds.qint_character(el, q, 2) == 1 + q
