import itertools
import random
from fractions import Fraction

import pytest

from hopfcone import ncsf, qsym, wqsym
from hopfcone.combinat import (Composition, MultisetComposition, PackedWord,
                               compositions, multiset_compositions, packed_words,
                               quasi_shuffle, schroeder_tree)
from hopfcone.freemod import LinComb

C = Composition.parse
W = PackedWord.parse
MC = MultisetComposition.parse


def Mw(text, coeff=1):
    return wqsym.WQSymElement.single("M", W(text), coeff)


def Phiw(text, coeff=1):
    return wqsym.WQSymElement.single("Phi", W(text), coeff)


def test_m_product_golden():
    got = wqsym.wq_m_product(Mw("11"), Mw("21"))
    want = LinComb({W("1121"): 1, W("1132"): 1, W("2221"): 1,
                    W("2231"): 1, W("3321"): 1})
    assert got.comb == want
    got = wqsym.wq_m_product(Mw("1"), Mw("1"))
    assert got.comb == LinComb({W("12"): 1, W("21"): 1, W("11"): 1})
    assert wqsym.wq_m_product(Mw("121"), wqsym.WQSymElement.unit()) == Mw("121")


def test_phi_product_golden():
    got = wqsym.wq_phi_product(Phiw("1"), Phiw("121"))
    assert got.comb == LinComb({W("1121"): 1, W("2132"): 1, W("2121"): 1,
                                W("3121"): 1})
    got = wqsym.wq_phi_product(Phiw("1312"), Phiw("21"))
    names = ["131221", "131231", "131232", "131243", "141232",
             "141321", "142321", "142331", "142341", "153421",
             "242321", "242331", "242341", "253421", "353421"]
    assert got.comb == LinComb({W(w): 1 for w in names})


def test_phi_coproduct_golden():
    got = wqsym.wq_phi_coproduct(Phiw("23121"))
    e = W("")
    want = LinComb({(e, W("23121")): 1, (W("1"), W("2321")): 1,
                    (W("11"), W("121")): 1, (W("211"), W("21")): 1,
                    (W("2121"), W("1")): 1, (W("23121"), e): 1})
    assert got == want


def test_phi_m_conversions_golden():
    got = wqsym.phi_to_m(Phiw("133142"))
    assert got.comb == LinComb({W("133142"): 1, W("134152"): 1,
                                W("144253"): 1, W("145263"): 1})
    got = wqsym.m_to_phi(Mw("133142"))
    assert got.comb == LinComb({W("133142"): 1, W("134152"): -1,
                                W("144253"): -1, W("145263"): 1})
    # bijective words convert trivially
    assert wqsym.phi_to_m(Phiw("3142")).comb == LinComb.single(W("3142"))


def test_phi_m_roundtrips():
    for n in range(0, 5):
        for u in packed_words(n):
            x = Mw(str(u)) if u.letters else wqsym.WQSymElement.unit()
            assert wqsym.phi_to_m(wqsym.m_to_phi(x)) == x


def test_m_and_phi_products_agree():
    words = [u for n in range(1, 5) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 5:
            continue
        via_m = wqsym.wq_m_product(Mw(str(u)), Mw(str(v)))
        via_phi = wqsym.phi_to_m(
            wqsym.wq_phi_product(wqsym.m_to_phi(Mw(str(u))),
                                 wqsym.m_to_phi(Mw(str(v)))))
        assert via_m == via_phi, (u, v)


def test_commutative_projection_algebra_map():
    words = [u for n in range(1, 4) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 4:
            continue
        lhs = wqsym.commutative_projection(wqsym.wq_m_product(Mw(str(u)), Mw(str(v))))
        rhs = qsym.monomial_product(wqsym.commutative_projection(Mw(str(u))),
                                    wqsym.commutative_projection(Mw(str(v))))
        assert lhs == rhs, (u, v)


def test_embed_sym_dual():
    got = wqsym.embed_sym_dual(ncsf.SymElement.single("S", C("2")))
    assert got.basis == "N" and got.comb == LinComb.single(W("11"))
    got = wqsym.embed_sym_dual(ncsf.SymElement.single("S", C("11")))
    assert got.comb == LinComb({W("12"): 1, W("21"): 1})
    got = wqsym.embed_sym_dual(ncsf.SymElement.unit("S"))
    assert got.comb == LinComb.single(W(""))


def test_ev_fiber_embedding_consistency():
    # for EVERY u with ev(u)=I and v with ev(v)=J, the evaluation multiset of
    # the convolution u * v equals I qsh J -- so cone weights built from M_u
    # depend only on ev(u), and projecting any fiber member recovers M_I M_J
    for wi in range(1, 3):
        for wj in range(1, 5 - wi):
            for I in compositions(wi):
                for J in compositions(wj):
                    want = {Composition(word): mult for word, mult in
                            quasi_shuffle(I.parts, J.parts).items()}
                    for u in wqsym.words_with_evaluation(I):
                        for v in wqsym.words_with_evaluation(J):
                            got = {}
                            for w in wqsym.convolution_words(u, v):
                                K = w.evaluation()
                                got[K] = got.get(K, 0) + 1
                            assert got == want, (I, J, u, v)


def test_tridendriform_split_golden():
    left, middle, right = wqsym.tridendriform_split(Mw("1"), Mw("1"))
    assert left.comb == LinComb.single(W("21"))
    assert middle.comb == LinComb.single(W("11"))
    assert right.comb == LinComb.single(W("12"))
    # M_11 > M_1: last letter is the strict maximum
    _, _, right = wqsym.tridendriform_split(Mw("11"), Mw("1"))
    assert right.comb == LinComb.single(W("112"))


def test_tridendriform_split_partitions_product():
    words = [u for n in range(1, 5) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 5:
            continue
        left, middle, right = wqsym.tridendriform_split(Mw(str(u)), Mw(str(v)))
        total = wqsym.wq_m_product(Mw(str(u)), Mw(str(v)))
        assert left.comb + middle.comb + right.comb == total.comb, (u, v)


def test_tridendriform_rejects_unit():
    with pytest.raises(ValueError):
        wqsym.tridendriform_split(wqsym.WQSymElement.unit(), Mw("1"))


def _ops():
    def left(x, y):
        return wqsym.tridendriform_split(x, y)[0]

    def middle(x, y):
        return wqsym.tridendriform_split(x, y)[1]

    def right(x, y):
        return wqsym.tridendriform_split(x, y)[2]

    def odot(x, y):
        return wqsym.wq_m_product(x, y)

    return left, middle, right, odot


def test_tridendriform_axioms():
    # the seven axioms: six compatibilities plus associativity of the middle
    left, middle, right, odot = _ops()
    triples = []
    for la in range(1, 4):
        for lb in range(1, 4):
            for lc in range(1, 4):
                if la + lb + lc <= 5:
                    for a in packed_words(la):
                        for b in packed_words(lb):
                            for c in packed_words(lc):
                                triples.append((Mw(str(a)), Mw(str(b)), Mw(str(c))))
    assert triples
    for x, y, z in triples:
        assert left(left(x, y), z) == left(x, odot(y, z))
        assert left(right(x, y), z) == right(x, left(y, z))
        assert right(odot(x, y), z) == right(x, right(y, z))
        assert middle(right(x, y), z) == right(x, middle(y, z))
        assert middle(left(x, y), z) == middle(x, right(y, z))
        assert left(middle(x, y), z) == middle(x, left(y, z))
        assert middle(middle(x, y), z) == middle(x, middle(y, z))


def test_tree_basis():
    from hopfcone.combinat import LEAF, SchroederTree
    t = SchroederTree([LEAF, LEAF, LEAF])
    got = wqsym.tree_basis(t)
    assert got.comb == LinComb.single(W("11"))
    assert wqsym.tree_basis(LEAF).comb == LinComb.single(W(""))
    # tree fibers partition the packed words
    for n in range(1, 5):
        total = 0
        for tree in {schroeder_tree(u.letters) for u in packed_words(n)}:
            total += len(wqsym.tree_basis(tree).comb)
        assert total == len(packed_words(n))


def test_mq_product_golden():
    got = wqsym.mq_product_labels(MC("{1,1,2}{1}"), MC("{1,1,1,2}"))
    want = {MC("{1,1,2}{1}{3,3,3,4}"): 1, MC("{1,1,2}{3,3,3,4}{1}"): 1,
            MC("{3,3,3,4}{1,1,2}{1}"): 1, MC("{1,1,2,3,3,3,4}{1}"): 1,
            MC("{1,1,2}{1,3,3,3,4}"): 1}
    assert got == want
    A = wqsym.MQSymElement.single(MC("{1,2}{1}"))
    assert wqsym.mq_product(A, wqsym.MQSymElement.unit()) == A


def test_mq_product_associative():
    elems = [mc for n in range(1, 3) for mc in multiset_compositions(n)]
    for A, B, Cc in itertools.product(elems, repeat=3):
        if A.grade + B.grade + Cc.grade > 4:
            continue
        ea, eb, ec = (wqsym.MQSymElement.single(x) for x in (A, B, Cc))
        lhs = wqsym.mq_product(wqsym.mq_product(ea, eb), ec)
        rhs = wqsym.mq_product(ea, wqsym.mq_product(eb, ec))
        assert lhs == rhs, (A, B, Cc)


def test_mq_restricts_to_wqsym():
    # on set compositions the product matches the packed-word convolution
    words = [u for n in range(1, 4) for u in packed_words(n)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 4:
            continue
        A = wqsym.packed_word_to_multiset(u)
        B = wqsym.packed_word_to_multiset(v)
        got = wqsym.mq_product_labels(A, B)
        want = {}
        for w in wqsym.convolution_words(u, v):
            key = wqsym.packed_word_to_multiset(w)
            want[key] = want.get(key, 0) + 1
        assert got == want, (u, v)


def test_wq_n_basis_has_no_conversion():
    with pytest.raises(ValueError):
        wqsym.wq_convert(wqsym.WQSymElement.single("N", W("12")), "M")
