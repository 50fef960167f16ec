import pytest
from mpmath import mp

from oracles import fixed_points_mp
from pingpong_lab.configs import (CommutatorLabel, census, classify_commutator, classify_pair,
                                  sample_linked_pair, sample_pair)
from pingpong_lab.errors import CommutatorNotHyperbolic, Commuting, PreconditionViolated, SharedFixedPoint
from pingpong_lab.moebius import MoebiusMap

F4 = MoebiusMap(4, 0, 0, 1)
G5 = MoebiusMap(5, -3, -3, 5)


def _oracle_word(f, g):
    # approximate every fixed point at 50 digits and sort along the cut line
    pts = {}
    for name, m in (("f", f), ("g", g), ("fg", f * g), ("gf", g * f)):
        a, b, c, d = m.entries()
        roots = fixed_points_mp(a, b, c, d)
        if c == 0:
            roots.append(mp.inf)
        att, rep = sorted(roots, key=lambda x: abs(mp.mpf(a * d - b * c) / (c * x + d) ** 2)
                          if x != mp.inf else (mp.mpf(d) / a) ** 2)
        pts["a_" + name], pts["r_" + name] = att, rep
    order = sorted(pts, key=lambda k: pts[k])
    k = order.index("a_f")
    return " ".join(order[k:] + order[:k])


def test_pair_example_word():
    pc = classify_pair(F4, G5)
    assert str(pc.word) == "a_f a_fg a_gf a_g r_f r_gf r_fg r_g"
    assert str(pc.word) == _oracle_word(F4, G5)


def test_pair_words_match_oracle_on_samples():
    for i in range(60):
        f, g = sample_pair(3, i)
        pc = classify_pair(f, g)
        if pc.word.coincidence_free:
            assert str(pc.word) == _oracle_word(f, g)


def test_pair_errors():
    with pytest.raises(SharedFixedPoint):
        classify_pair(F4, MoebiusMap(1, 1, 0, 1))
    with pytest.raises(Commuting):
        classify_pair(G5, G5 ** 2)


def test_commutator_of_short_pair_is_elliptic():
    # oracle: tr^2 - 4 det of [f^-1, h^-1] by plain integer arithmetic
    a, b, c, d = (G5.inverse() * F4.inverse() * G5 * F4).entries()
    assert (a + d) ** 2 - 4 * (a * d - b * c) < 0
    with pytest.raises(CommutatorNotHyperbolic):
        classify_commutator(F4, G5)


def test_commutator_sampled_pairs_are_matched():
    for i in range(10):
        h, f = sample_linked_pair(11, i)
        cc = classify_commutator(h, f)
        assert cc.label is not CommutatorLabel.UNMATCHED
        assert all(cc.conjugacy.values())
        assert cc.label.value in cc.matched


def test_commutator_preconditions():
    with pytest.raises(PreconditionViolated):
        classify_commutator(G5, F4)
    with pytest.raises(PreconditionViolated):
        classify_commutator(F4, MoebiusMap(2, 1, 1, 1))


def test_census_small_and_deterministic():
    one = census(1, 5)
    assert sum(one.counts.values()) == 1
    a, b = census(300, 42), census(300, 42, workers=2)
    assert a.counts == b.counts and a.linked_counts == b.linked_counts


def test_linked_sampler_is_deterministic():
    assert sample_linked_pair(1, 0) == sample_linked_pair(1, 0)
