import itertools

import pytest

from hopfcone.combinat import (LEAF, Composition, MultisetComposition, PackedWord,
                               SchroederTree, SetComposition, SignSeq,
                               compositions, descent_composition, finer,
                               finer_words, multiset_compositions, pack,
                               packed_words, quasi_shuffle, refines,
                               schroeder_tree, segmented_shifted_shuffle,
                               shifted_shuffle, shifted_shuffle_max, shuffle, std)


def test_std_golden():
    assert std("bbacab") == (3, 4, 1, 6, 2, 5)
    assert std("abc") == (1, 2, 3)
    assert std("cba") == (3, 2, 1)


def test_std_preserves_descents():
    for word in itertools.product(range(1, 4), repeat=4):
        s = std(word)
        des_w = {i for i in range(3) if word[i] > word[i + 1]}
        des_s = {i for i in range(3) if s[i] > s[i + 1]}
        assert des_w == des_s


def test_std_idempotent_on_permutations():
    for p in itertools.permutations(range(1, 5)):
        assert std(p) == p


def test_pack_golden():
    assert pack([6, 4, 6, 6, 1, 8, 1, 2]).letters == (4, 3, 4, 4, 1, 5, 1, 2)
    assert pack([1, 1, 1]).letters == (1, 1, 1)
    # by hand: letters {0, 9} -> 9 maps to 2, 0 maps to 1
    assert pack([9, 0, 9]).letters == (2, 1, 2)


def test_pack_idempotent():
    for word in itertools.product(range(1, 5), repeat=4):
        assert pack(pack(word).letters).letters == pack(word).letters


def test_descent_composition():
    assert descent_composition((3, 4, 1, 6, 2, 5)) == Composition((2, 2, 2))
    assert descent_composition((1, 2, 3)) == Composition((3,))
    assert descent_composition((3, 2, 1)) == Composition((1, 1, 1))


def test_signseq_composition_bijection():
    e = SignSeq.parse("-++-+")
    assert e.to_composition() == Composition((1, 3, 2))
    assert SignSeq.from_composition(Composition((1, 3, 2))) == e
    assert SignSeq.parse("+++").to_composition() == Composition((4,))
    assert SignSeq.parse("--").to_composition() == Composition((1, 1, 1))
    # unit and bullet
    assert SignSeq((), 0).to_composition() == Composition(())
    assert SignSeq((), 1).to_composition() == Composition((1,))


def test_signseq_roundtrip_weight_8():
    for n in range(0, 9):
        for I in compositions(n):
            assert SignSeq.from_composition(I).to_composition() == I


def test_quasi_shuffle_golden():
    got = quasi_shuffle((1, 3), (3, 2))
    want = {(1, 3, 3, 2): 2, (1, 3, 2, 3): 1, (3, 1, 3, 2): 1, (3, 1, 2, 3): 1,
            (3, 2, 1, 3): 1, (1, 6, 2): 1, (4, 3, 2): 1, (4, 2, 3): 1,
            (1, 3, 5): 1, (3, 1, 5): 1, (3, 3, 3): 1, (4, 5): 1}
    assert got == want


def test_quasi_shuffle_unit_and_minimal():
    assert quasi_shuffle((2, 1), ()) == {(2, 1): 1}
    # one recursion step by hand
    assert quasi_shuffle((1,), (1,)) == {(1, 1): 2, (2,): 1}


def _qs_mul(a, b):
    """Quasi-shuffle on dicts word -> multiplicity."""
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, m in quasi_shuffle(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * m
    return out


def test_quasi_shuffle_commutative_associative():
    words = [I.parts for n in range(1, 5) for I in compositions(n)]
    for u, v in itertools.product(words, repeat=2):
        if sum(u) + sum(v) <= 5:
            assert quasi_shuffle(u, v) == quasi_shuffle(v, u)
    for u, v, w in itertools.product(words, repeat=3):
        if sum(u) + sum(v) + sum(w) <= 5:
            lhs = _qs_mul(quasi_shuffle(u, v), {w: 1})
            rhs = _qs_mul({u: 1}, quasi_shuffle(v, w))
            assert lhs == rhs, (u, v, w)


def test_shuffle_and_shifted_shuffle():
    assert shuffle((1, 2), ()) == {(1, 2): 1}
    assert shifted_shuffle((1,), (1,)) == {(1, 2): 1, (2, 1): 1}
    assert shifted_shuffle((1, 2), (1,)) == \
        {(1, 2, 3): 1, (1, 3, 2): 1, (3, 1, 2): 1}
    # the packed-word variant shifts by the maximum
    assert shifted_shuffle_max((1, 1), (1,)) == \
        {(1, 1, 2): 1, (1, 2, 1): 1, (2, 1, 1): 1}


def test_segmented_shifted_shuffle_golden():
    got = segmented_shifted_shuffle(SetComposition.parse("(2|1)"),
                                    SetComposition.parse("(12)"))
    want = {SetComposition.parse(s): 1 for s in
            ["(2|134)", "(23|14)", "(234|1)", "(3|2|14)", "(3|24|1)", "(34|2|1)"]}
    assert got == want
    got = segmented_shifted_shuffle(SetComposition.parse("(1|2)"),
                                    SetComposition.parse("(12)"))
    want = {SetComposition.parse(s): 1 for s in
            ["(1|234)", "(13|24)", "(134|2)", "(3|1|24)", "(3|14|2)", "(34|1|2)"]}
    assert got == want


def test_segmented_shuffle_unit():
    a = SetComposition.parse("(2|13)")
    assert segmented_shifted_shuffle(a, SetComposition(())) == {a: 1}
    assert segmented_shifted_shuffle(SetComposition(()), a) == {a: 1}


def test_segmented_shuffle_underlying_permutations():
    # every term has coefficient 1 and its underlying permutation lies in the
    # shifted shuffle of the underlying permutations
    for pu, pv in [("(2|1)", "(12)"), ("(13|2)", "(1|2)"), ("(123)", "(1|2)")]:
        a, b = SetComposition.parse(pu), SetComposition.parse(pv)
        perms = set(shifted_shuffle(a.segmented()[0], b.segmented()[0]))
        got = segmented_shifted_shuffle(a, b)
        assert set(got.values()) == {1}
        assert {sc.segmented()[0] for sc in got} <= perms


def test_packed_word_counts():
    for n, count in [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)]:
        assert len(packed_words(n)) == count


def test_finer():
    assert finer(PackedWord.parse("134152"), PackedWord.parse("133142"))
    u = PackedWord.parse("2121")
    assert finer(u, u)
    assert not finer(PackedWord.parse("21"), PackedWord.parse("12"))


def test_finer_words_agree_with_predicate():
    for n in range(1, 5):
        for u in packed_words(n):
            via_bars = set(finer_words(u))
            via_pred = {v for v in packed_words(n) if finer(v, u)}
            assert via_bars == via_pred, u


def test_refines():
    assert refines(Composition((2, 1, 1, 1)), Composition((2, 1, 2)))
    assert not refines(Composition((1, 3)), Composition((2, 2)))


def test_schroeder_tree_small():
    assert schroeder_tree((1,)) == SchroederTree([LEAF, LEAF])
    assert schroeder_tree((1, 1)) == SchroederTree([LEAF, LEAF, LEAF])
    # 121 factors as 1 . 2 . 1 at the max letter
    sub = SchroederTree([LEAF, LEAF])
    assert schroeder_tree((1, 2, 1)) == SchroederTree([sub, sub])


def test_schroeder_counts():
    for n, count in [(0, 1), (1, 1), (2, 3), (3, 11), (4, 45)]:
        assert len({schroeder_tree(u.letters) for u in packed_words(n)}) == count


def test_tree_parse_roundtrip():
    t = schroeder_tree((3, 1, 2, 1))
    assert SchroederTree.parse(str(t)) == t


def test_multiset_composition_matrix():
    m = [[2, 1, 0, 0], [1, 0, 0, 0], [0, 0, 3, 1]]
    mc = MultisetComposition.from_matrix(m)
    assert str(mc) == "{1, 1, 2}{1}{3, 3, 3, 4}"
    assert mc.to_matrix() == m
    assert MultisetComposition.from_matrix([[1]]) == MultisetComposition([(1,)])
    assert MultisetComposition.from_matrix([[0, 1], [1, 0]]) == \
        MultisetComposition([(2,), (1,)])


def test_multiset_composition_rejects_bad_matrices():
    with pytest.raises(ValueError):
        MultisetComposition.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        MultisetComposition.from_matrix([[1, 0], [1, 0]])


def test_multiset_composition_enumeration():
    # oracle: direct count of sequences of nonempty multisets covering 1..m
    for n in range(1, 4):
        got = multiset_compositions(n)
        assert len(got) == len(set(got))
        for mc in got:
            assert mc.grade == n


def test_parse_roundtrips():
    for text in ["132", "1,3,2", ""]:
        c = Composition.parse(text)
        assert Composition.parse(str(c)) == c
    for text in ["313144132", "1"]:
        w = PackedWord.parse(text)
        assert PackedWord.parse(str(w)) == w
    sc = SetComposition.parse("(247|9|138|56)")
    assert SetComposition.parse(str(sc)) == sc
    assert sc.packed_word() == PackedWord.parse("313144132")
    e = SignSeq.parse("-++-+")
    assert SignSeq.parse(str(e)) == e
    mc = MultisetComposition.parse("{1,1,2}{1}{3,3,3,4}")
    assert MultisetComposition.parse(str(mc).replace(" ", "")) == mc


def test_packed_word_blocks_roundtrip():
    for n in range(1, 5):
        for u in packed_words(n):
            assert u.set_composition().packed_word() == u


def test_invalid_labels_rejected():
    with pytest.raises(ValueError):
        PackedWord((1, 3))  # skips letter 2
    with pytest.raises(ValueError):
        Composition((0, 1))
    with pytest.raises(ValueError):
        SignSeq((1,), 0)
