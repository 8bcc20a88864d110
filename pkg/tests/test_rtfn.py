from dataclasses import replace

import pytest

from twobridge.alexpoly import alexander_polynomial, content, relator_coefficients
from twobridge.cyclegraph import IncrementalPath, build_cycle, is_symmetric
from twobridge.intlinalg import gcd_maximal_minors
from twobridge.pairs import CoprimePair, canonical_pairs
from twobridge.presentation import rewrite_R0
from twobridge.rtfn import (NestedWordError, RtfnWitness, Stage, WitnessError, back_substitute,
                            base_witness, build_witness, derive_nested_words, lift_witness,
                            negate_witness, parafree_chain_report, verify_witness)
from twobridge.words import is_rotation, parse_word, shift

from oracles import bareiss_det, naive_conjugate, naive_free_reduce


def oracle_back_substitute(top, ns, vs, ws):
    """``A_(i-1) = W_i A_i^(n_i) V_i W_i^-1`` unwound with plain lists."""
    word = list(top)
    for i in range(len(ns), 0, -1):
        w = list(ws[i - 1])
        w_inv = [(k, -e) for k, e in reversed(w)]
        word = w + word * ns[i - 1] + list(vs[i - 1]) + w_inv
    return naive_free_reduce(word)


# -- the worked example L(17/13) ---------------------------------------------------

@pytest.fixture(scope="module")
def words_17_13():
    a = CoprimePair(17, 13)
    return derive_nested_words(a, build_witness(a))


def test_hat_words_17_13(words_17_13):
    nw = words_17_13
    # [PAPER] A_1 = S_1^2 S_0^-2, A_2 = S_1, V_1 = S_0^-1 S_-1^2 S_0^-2 S_-1^2 S_0^-2, V_2 = S_0^-2
    assert nw.multiplicities == (2, 2)
    assert nw.ahat[0] == rewrite_R0(CoprimePair(17, 13))
    assert nw.ahat[1] == parse_word("S_1 S_1 S_0^-1 S_0^-1")
    assert nw.ahat[2] == parse_word("S_1")
    assert nw.vhat[0] == parse_word("S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1")
    assert nw.vhat[1] == parse_word("S_0^-1 S_0^-1")


def test_check_words_17_13(words_17_13):
    nw = words_17_13
    # [PAPER] the check words are listed with every subscript lowered by one
    listed = {
        "A1": "S_-2 S_-2 S_-1^-1 S_-1^-1",
        "A2": "S_-2",
        "V1": "S_0 S_0 S_-1^-1 S_-1^-1 S_0 S_0 S_-1^-1 S_-1^-1 S_-1^-1",
        "V2": "S_-1^-1 S_-1^-1",
    }
    assert is_rotation(shift(nw.acheck[1], -1), parse_word(listed["A1"]))
    assert is_rotation(shift(nw.acheck[2], -1), parse_word(listed["A2"]))
    assert is_rotation(shift(nw.vcheck[0], -1), parse_word(listed["V1"]))
    assert is_rotation(shift(nw.vcheck[1], -1), parse_word(listed["V2"]))
    # the unshifted ones end in S_m with m = -1
    assert nw.acheck[2] == parse_word("S_-1")


def test_all_conditions_17_13(words_17_13):
    assert all(v for _, v in words_17_13.checks)
    names = [k for k, _ in words_17_13.checks]
    assert names == ["M1", "M2", "M3", "M4", "M5", "m1", "m2", "m3", "m4", "m5"]


# -- witnesses -----------------------------------------------------------------------

def test_witness_shapes():
    w = build_witness(CoprimePair(17, 13))
    assert w.N == 2
    assert w.gammas[-1].steps() == (1, -1)
    for g in w.gammas:
        assert g.closable
        assert is_symmetric(g.closure()) is not None
    js = w.to_json()
    assert js["N"] == 2 and [s["n_i"] for s in js["stages"]] == [2, 2]


def test_base_cases():
    assert base_witness(CoprimePair(5, 1)).multiplicities == [1]
    # p mod q = 1 with kappa = 1: a single stage holding all (q+1)/2 summits
    assert base_witness(CoprimePair(4, 3)).multiplicities == [2]
    # kappa > 1: a kappa-pair stage then the top
    assert base_witness(CoprimePair(7, 3)).multiplicities == [2, 1]
    with pytest.raises(WitnessError):
        base_witness(CoprimePair(17, 13))


def test_lift_checks_reduction_target():
    with pytest.raises(WitnessError):
        lift_witness(build_witness(CoprimePair(3, 1)), CoprimePair(33, 23))


def test_negate_witness_is_valid():
    for a in canonical_pairs(40, positive_only=True):
        w = negate_witness(build_witness(a))
        b = CoprimePair(a.p, -a.q)
        assert w.pair == b
        assert verify_witness(b, w).ok, str(b)


def test_verify_detects_tampering():
    a = CoprimePair(17, 13)
    w = build_witness(a)
    st = w.stages[0]
    bad_n = RtfnWitness(a, w.gamma0, (replace(st, n=st.n + 1),) + w.stages[1:])
    assert not verify_witness(a, bad_n).checks["R3"]
    wrong_top = RtfnWitness(a, w.gamma0, w.stages[:1])
    assert not verify_witness(a, wrong_top).checks["R2"]
    other = RtfnWitness(CoprimePair(17, 5), w.gamma0, w.stages)
    assert not verify_witness(a, other).checks["R1"]
    # an Upsilon that climbs to a summit
    top = build_cycle(a).max_grading
    summit_ups = replace(w.stages[1], upsilon=IncrementalPath((top - 1, top, top - 1)))
    rep = verify_witness(a, RtfnWitness(a, w.gamma0, (w.stages[0], summit_ups)))
    assert not rep.checks["R4"]


def test_witness_totality_and_words():
    for a in canonical_pairs(60):
        w = build_witness(a)
        rep = verify_witness(a, w)
        assert rep.ok, (str(a), rep.failures())
        nw = derive_nested_words(a, w)
        assert all(v for _, v in nw.checks), str(a)


def test_back_substitution_oracle():
    for a in canonical_pairs(60):
        nw = derive_nested_words(a, build_witness(a))
        r0 = list(rewrite_R0(a).letters)
        hat = oracle_back_substitute(nw.ahat[-1].letters, nw.multiplicities,
                                     [v.letters for v in nw.vhat], [x.letters for x in nw.what])
        chk = oracle_back_substitute(nw.acheck[-1].letters, nw.multiplicities,
                                     [v.letters for v in nw.vcheck], [x.letters for x in nw.wcheck])
        assert naive_conjugate(hat, r0), str(a)
        assert naive_conjugate(chk, r0), str(a)
        assert list(back_substitute(nw, "hat").letters) == hat


def test_nested_words_strict_mode():
    a = CoprimePair(17, 13)
    w = build_witness(a)
    st = w.stages[1]
    broken = RtfnWitness(a, w.gamma0, (w.stages[0], replace(st, n=3)))
    with pytest.raises(NestedWordError):
        derive_nested_words(a, broken)
    nw = derive_nested_words(a, broken, strict=False)
    assert not dict(nw.checks)["M3"]


# -- the chain report -------------------------------------------------------------------

def test_chain_report_17_13():
    rep = parafree_chain_report(CoprimePair(17, 13), 3)
    assert rep.content == 1 and rep.verdict == "primitive"
    for lv in rep.levels:
        assert lv.C_values == [1, 1, 1, 1]
        assert lv.index == 16
    assert rep.leading_product_ok


def test_first_matrix_17_13():
    rep = parafree_chain_report(CoprimePair(17, 13), 3)
    for lv in rep.levels:
        n = lv.n
        step = next(s for s in lv.steps if s.side == "hat" and s.k == 1)
        B = step.matrix
        # [PAPER] a (2n+1) x (2n+2) matrix whose last row is the class -4 S'_(n-1) + 5 S'_n up to sign
        assert len(B) == 2 * n + 1 and all(len(r) == 2 * n + 2 for r in B)
        assert B[-1][-2:] == [4, -5] and not any(B[-1][:-2])
        # [PAPER] deleting the last column leaves determinant +-4^(2n+1)
        assert abs(bareiss_det([r[:-1] for r in B])) == 4 ** (2 * n + 1)
        # [PAPER] deleting the first column gives the identity modulo 2
        sub = [r[1:] for r in B]
        assert all(sub[i][j] % 2 == (i == j) for i in range(len(sub)) for j in range(len(sub)))
        assert gcd_maximal_minors(B) == 1


def test_chain_report_81_49():
    rep = parafree_chain_report(CoprimePair(81, 49), 2)
    assert rep.verdict == "primitive"
    assert all(lv.index == 16 for lv in rep.levels)


def test_chain_report_flags_content_failure():
    rep = parafree_chain_report(CoprimePair(4, 3), 2)
    assert rep.content == 2
    assert not rep.hypothesis_ok and rep.verdict == "hypothesis-failed"


def test_chain_report_sweep():
    for a in canonical_pairs(30):
        rep = parafree_chain_report(a, 2)
        assert rep.leading_product_ok, str(a)
        lead = relator_coefficients(a)[2][-1]
        for lv in rep.levels:
            assert lv.index == lead * lead
            for s in lv.steps:
                assert s.telescopes, str(a)
                assert s.C == s.C_reduced, str(a)
        if content(alexander_polynomial(a)) == 1:
            assert rep.verdict == "primitive", str(a)
    js = parafree_chain_report(CoprimePair(4, 3), 0).to_json()
    assert js["verdict"] == "hypothesis-failed"
