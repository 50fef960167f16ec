import random
from fractions import Fraction as F

import pytest

from pingpong_lab.errors import NotDense, PreconditionViolated, SeedChainViolation
from pingpong_lab.layouts import (build_linked_model, build_unlinked_geometric_model,
                                  build_unlinked_parallel_model, flagship_linked_model, sqrt2_group)
from pingpong_lab.model import TranslationGroup, gaps_and_core, north_south_audit
from pingpong_lab.surd import Surd
from pingpong_lab.words import NormalWord, ball

LAM = sqrt2_group()
SYM_POINTS = {"P": F(0), "Q": F(1, 4), "Pbar": F(1, 2), "Qbar": F(3, 4)}
h = NormalWord.of(("H", (1, 0)))
h2 = NormalWord.of(("H", (0, 1)))
f = NormalWord.of(("K", (1, 0)))


def all_models():
    yield flagship_linked_model()
    yield build_unlinked_geometric_model(LAM, LAM, {"P": F(13, 16), "Pbar": F(11, 16), "Qbar": F(1, 8),
                                                    "Q": F(3, 8)}, (F(7, 8), F(5, 8)), (F(1, 2), F(1, 16)))
    yield build_unlinked_parallel_model(LAM, LAM, {"P": F(0), "Qbar": F(1, 4), "Q": F(1, 2), "Pbar": F(3, 4)},
                                        [(F(1, 8), F(3, 8)), (F(5, 16), F(7, 16)), (F(13, 32), F(5, 8)),
                                         (F(9, 16), F(3, 16))], allow_unverified=True)
    yield build_linked_model(LAM, LAM, SYM_POINTS,
                             {"I_p": (F(13, 16), F(3, 16)), "I_q": (F(1, 8), F(3, 8)),
                              "I_pbar": (F(5, 16), F(11, 16)), "I_qbar": (F(5, 8), F(7, 8))})


def test_translation_group():
    assert LAM.is_dense
    assert LAM.contains(Surd(3, -2, 2))
    assert not LAM.contains(Surd(F(1, 2)))
    with pytest.raises(NotDense):
        build_linked_model(TranslationGroup(Surd(2), Surd(3)), LAM, SYM_POINTS, {})


def test_seed_chain_violation():
    gaps = {"I_p": (F(7, 8), F(1, 8)), "I_q": (F(3, 16), F(3, 8)),
            "I_pbar": (F(3, 8), F(5, 8)), "I_qbar": (F(5, 8), F(7, 8))}
    # u_q = 3/16 > v_p = 1/8 leaves (1/8, 3/16) to neither point
    with pytest.raises(SeedChainViolation):
        build_linked_model(LAM, LAM, SYM_POINTS, gaps)


def test_parallel_needs_opt_in():
    with pytest.raises(PreconditionViolated):
        build_unlinked_parallel_model(LAM, LAM, SYM_POINTS, [])


def test_compare_examples():
    m = flagship_linked_model()
    P, Q, Pb = (m.vpoint(b) for b in ("P", "Q", "Pbar"))
    assert m.compare(P, Q, Pb) == 1
    assert m.compare(m.act(h, Q), Pb, m.act(f, Pb)) == 1
    # sqrt2 > 1, so h2 translates further toward pbar than h
    assert m.compare(m.act(h, Q), m.act(h2, Q), Pb) == 1


def test_geometric_chain_in_model():
    m = flagship_linked_model()
    P, Q, Pb, Qb = (m.vpoint(b) for b in ("P", "Q", "Pbar", "Qbar"))
    hi, fi = h.inverse(), f.inverse()
    chain = [P, m.act(hi, Q), m.act(fi, P), Q, m.act(fi, Pb), m.act(h, Q), Pb, m.act(h, Qb),
             m.act(f, Pb), Qb, m.act(f, P), m.act(hi, Qb)]
    assert all(m.compare(chain[0], chain[i], chain[i + 1]) == 1 for i in range(1, len(chain) - 1))


def test_action_examples():
    m = flagship_linked_model()
    P = m.vpoint("P")
    assert m.act(h, P) == P
    moved = m.act(h, m.vpoint("G_q"))
    assert len(moved.word.syllables) == 1
    two = m.act(f * h, m.vpoint("G_q"))
    assert two.word == NormalWord.of(("K", (1, 0)), ("H", (1, 0)))


@pytest.mark.parametrize("model", list(all_models()), ids=lambda m: m.arrangement)
def test_action_preserves_circular_order(model):
    rng = random.Random(5)
    words = list(ball(model.factors, 3))
    bases = list(model.coords)
    pick = lambda: model.act(rng.choice(words), model.vpoint(rng.choice(bases)))
    for _ in range(400):
        x, y, z = pick(), pick(), pick()
        w = rng.choice(words)
        c = model.compare(x, y, z)
        assert c == model.compare(model.act(w, x), model.act(w, y), model.act(w, z))
        assert c == model.compare(y, z, x) == -model.compare(y, x, z)


def test_gaps_and_core():
    m = flagship_linked_model()
    of_p, of_q = gaps_and_core(m, "p"), gaps_and_core(m, "q")
    Q, P = m.vpoint("Q"), m.vpoint("P")
    assert of_p.in_gap(Q) and of_q.in_core(Q)
    assert of_p.in_core(P) and of_q.in_gap(P)
    assert of_p.in_gap(m.act(h, m.vpoint("G_q")))


def test_north_south_audit():
    m = flagship_linked_model()
    samples = [m.vpoint(b) for b in ("G_q", "G_qbar")]
    rep = north_south_audit(m, h, samples)
    assert rep.passed and rep.forward_near == "Pbar" and rep.backward_near == "P"
    with pytest.raises(PreconditionViolated):
        north_south_audit(m, NormalWord(), samples)
