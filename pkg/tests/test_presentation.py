import pytest

from twobridge.pairs import CoprimePair, canonical_pairs
from twobridge.presentation import (chain_presentation, relator, relator_letter, rewrite_R0,
                                    schubert_word, subscript_range)
from twobridge.words import SWord, abelianize, parse_word

from oracles import schreier_rewrite, schubert_letters

# [PAPER] the listed relators of L(17/13)
R0_17_13 = ("S_1 S_1 S_0^-1 S_0^-1 S_1 S_1 S_0^-1 S_0^-1 S_0^-1 "
            "S_-1 S_-1 S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1")
RM1_17_13 = ("S_0 S_0 S_-1^-1 S_-1^-1 S_0 S_0 S_-1^-1 S_-1^-1 S_-1^-1 "
             "S_-2 S_-2 S_-1^-1 S_-1^-1 S_-2 S_-2 S_-1^-1 S_-1^-1")
R1_17_13 = ("S_2 S_2 S_1^-1 S_1^-1 S_2 S_2 S_1^-1 S_1^-1 S_1^-1 "
            "S_0 S_0 S_1^-1 S_1^-1 S_0 S_0 S_1^-1 S_1^-1")


def test_R0_17_13_matches_listing():
    a = CoprimePair(17, 13)
    assert rewrite_R0(a) == parse_word(R0_17_13)
    assert relator(a, -1) == parse_word(RM1_17_13)
    assert relator(a, 1) == parse_word(R1_17_13)


def test_R0_abelianization_17_13():
    # [DERIVED] count letters in the listed word
    assert abelianize(rewrite_R0(CoprimePair(17, 13))) == {1: 4, 0: -9, -1: 4}


def test_schubert_word_shape():
    for a in canonical_pairs(40):
        w = schubert_word(a)
        assert len(w.relator) == 2 * a.p
        assert [g for g, _ in w.relator] == ["a", "b"] * a.p
        assert w.relator == tuple(schubert_letters(a.p, a.q))


def test_R0_matches_schreier_oracle():
    for a in canonical_pairs(120):
        oracle = SWord(tuple(schreier_rewrite(schubert_letters(a.p, a.q))))
        assert rewrite_R0(a) == oracle, str(a)


def test_relator_letter_indexing():
    a = CoprimePair(17, 13)
    word = rewrite_R0(a)
    for j in range(1, a.p + 1):
        assert relator_letter(a, j) == word.letters[j - 1]


def test_subscript_range_and_exponent_sum():
    for a in canonical_pairs(60):
        m, M = subscript_range(a)
        w = rewrite_R0(a)
        assert len(w) == a.p
        assert min(w.subscripts()) == m and max(w.subscripts()) == M
        # the relator dies under S_k -> t^k, t = 1 exactly for knots
        total = sum(e for _, e in w.letters)
        assert (abs(total) == 1) if a.is_knot else (total == 0)


def test_chain_presentation_17_13():
    a = CoprimePair(17, 13)
    y0 = chain_presentation(a, 0)
    assert y0.generators == (-1, 0) and y0.relators == ()
    y1 = chain_presentation(a, 1)
    assert y1.generators == (-2, -1, 0, 1)
    assert y1.relators == (parse_word(RM1_17_13), parse_word(R0_17_13))
    y2 = chain_presentation(a, 2)
    assert y2.generators == (-3, -2, -1, 0, 1, 2)
    assert len(y2.relators) == 4
    assert "Y_1" in str(y1)
    assert y1.to_json()["generators"] == [-2, -1, 0, 1]


def test_chain_presentation_counts():
    for a in canonical_pairs(30):
        m, M = subscript_range(a)
        for n in range(4):
            cp = chain_presentation(a, n)
            assert len(cp.generators) == M - m + 2 * n
            assert len(cp.relators) == 2 * n
            for r in cp.relators:
                assert r.subscripts() <= set(cp.generators)


def test_chain_presentation_rejects_negative_level():
    with pytest.raises(ValueError):
        chain_presentation(CoprimePair(3, 1), -1)
