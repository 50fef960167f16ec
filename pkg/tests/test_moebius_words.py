from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from oracles import brute_force_ball, derivative_mp, fixed_points_mp, matrix_word, surd_mp
from pingpong_lab.circle import INF
from pingpong_lab.errors import FactorNotAbelian
from pingpong_lab.moebius import (MapClass, MoebiusMap, classify, commutator, commutes,
                                  fixed_pair, is_hyperbolic, shares_fixed_point)
from pingpong_lab.surd import Surd
from pingpong_lab.words import (FactorSpec, NormalWord, ball, certify_hyperbolic_like, evaluate,
                                free_pair)

H = MoebiusMap(4, 0, 0, 1)
G = MoebiusMap(5, -3, -3, 5)


def test_apply_examples():
    assert H(1) == Surd(4)
    assert H(INF) is INF
    assert G(0) == Surd(F(-3, 5))


@pytest.mark.parametrize("m,cls", [((4, 0, 0, 1), MapClass.HYPERBOLIC), ((1, 1, 0, 1), MapClass.PARABOLIC),
                                   ((0, -1, 1, 0), MapClass.ELLIPTIC)])
def test_classify_examples(m, cls):
    assert classify(MoebiusMap(*m)) is cls


def test_fixed_pair_examples():
    fp = fixed_pair(H)
    assert fp.attracting is INF and fp.repelling == Surd(0)
    fp = fixed_pair(G)
    assert fp.attracting == Surd(-1) and fp.repelling == Surd(1)
    fp = fixed_pair(MoebiusMap(1, 1, 1, 2))
    assert fp.attracting == Surd(F(-1, 2), F(1, 2), 5)
    assert fp.repelling == Surd(F(-1, 2), F(-1, 2), 5)


def test_inverse_swaps_fixed_points():
    assert fixed_pair(G.inverse()) == fixed_pair(G).swapped()


entries = st.integers(-12, 12)


@settings(max_examples=400, deadline=None)
@given(entries, entries, entries, entries)
def test_fixed_points_match_mpmath(a, b, c, d):
    if a * d - b * c <= 0:
        return
    g = MoebiusMap(a, b, c, d)
    if not is_hyperbolic(g):
        return
    a, b, c, d = g.entries()
    fp = fixed_pair(g)
    oracle = fixed_points_mp(a, b, c, d)
    ours = sorted(surd_mp(x) for x in (fp.attracting, fp.repelling) if x is not INF)
    assert len(ours) == len(oracle)
    for x, y in zip(ours, oracle):
        assert abs(x - y) < mp.mpf(10) ** -40
    if fp.attracting is not INF:
        assert abs(derivative_mp(a, b, c, d, surd_mp(fp.attracting))) < 1
    if fp.repelling is not INF:
        assert abs(derivative_mp(a, b, c, d, surd_mp(fp.repelling))) > 1


def test_commuting_and_shared_points():
    two, three = MoebiusMap(2, 0, 0, 1), MoebiusMap(3, 0, 0, 1)
    assert shares_fixed_point(two, three)
    assert shares_fixed_point(two, MoebiusMap(1, 1, 0, 1))
    assert not shares_fixed_point(H, G)
    assert commutes(G, G ** 3)
    assert not commutes(H, G)
    assert commutes(two, three)


def test_word_multiplication():
    h = NormalWord.of(("H", 1))
    f = NormalWord.of(("K", 1))
    assert (h * h.inverse()).is_identity()
    assert NormalWord.of(("H", 1), ("K", 1)) * NormalWord.of(("K", -1), ("H", 2)) == NormalWord.of(("H", 3))
    assert NormalWord.of(("H", (1, 1))) * NormalWord.of(("H", (-1, 0))) == NormalWord.of(("H", (0, 1)))
    assert (h * f).length == 2


def test_ball_counts_against_brute_force():
    rank1 = [FactorSpec("H", ("h",)), FactorSpec("K", ("f",))]
    assert [w.format(rank1) for w in ball(rank1, 1)] == ["h", "h^-1", "f", "f^-1"]
    for r in (1, 2, 3, 4):
        assert sum(1 for _ in ball(rank1, r)) == len(brute_force_ball({"H": 1, "K": 1}, r))
    rank2 = [FactorSpec("H", ("h1", "h2"))]
    assert sum(1 for _ in ball(rank2, 2)) == 12 == len(brute_force_ball({"H": 2}, 2))


def test_evaluate_against_matrix_products():
    factors, asg = free_pair(H, G)
    ents = {k: v.entries() for k, v in asg.items()}
    for w in ball(factors, 4):
        letters = []
        for fid, (e,) in w.syllables:
            letters.append(("h" if fid == "H" else "f", e))
        assert evaluate(w, factors, asg).entries() == matrix_word(letters, ents)
    assert evaluate(NormalWord(), factors, asg).entries() == (1, 0, 0, 1)
    comm = NormalWord.of(("K", 1), ("H", 1), ("K", -1), ("H", -1))
    assert evaluate(comm, factors, asg) == commutator(G, H)


def test_certify_examples():
    cyc = [FactorSpec("H", ("h",))]
    assert certify_hyperbolic_like(cyc, {"h": H}, 8).certified
    factors, asg = free_pair(H, MoebiusMap(0, -1, 1, 0))
    cert = certify_hyperbolic_like(factors, asg, 1)
    assert not cert.certified and cert.witness.format(factors) == "f"
    assert cert.witness_class is MapClass.ELLIPTIC


def test_non_abelian_factor_rejected():
    with pytest.raises(FactorNotAbelian):
        evaluate(NormalWord.of(("H", (1, 0))), [FactorSpec("H", ("a", "b"))], {"a": H, "b": G})
