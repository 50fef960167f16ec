from fractions import Fraction as F

import pytest

from pingpong_lab.circle import arc_set_equal, arcset, subset
from pingpong_lab.errors import ChainViolation, CoverageFailure, PreconditionViolated
from pingpong_lab.fixtures import (geometric_gap_data, hexagon_corpus, mirrored_gap_data,
                                   mislabeled_fixture, parallel_gap_data, same_orbit_corpus)
from pingpong_lab.layouts import flagship_linked_model
from pingpong_lab.moebius import MoebiusMap
from pingpong_lab.pingpong import (Partition, VerifyReport, build_linked_partition, build_unlinked_geometric,
                                   build_unlinked_parallel, free_product_certificate, verify_axis,
                                   verify_finite, verify_finite_model)
from pingpong_lab.unlinked import UnlinkedLabel, classify_unlinked_config, same_orbit_constraint
from pingpong_lab.words import certify_hyperbolic_like, free_pair

q = lambda a, b: (F(a), F(b))
SYM = dict(I_p=q(7 / 8, 1 / 8), I_pbar=q(3 / 8, 5 / 8), I_q=q(1 / 8, 3 / 8), I_qbar=q(5 / 8, 7 / 8),
           p=0, q=F(1, 4), pbar=F(1, 2), qbar=F(3, 4))
PAR_GAPS = [q(1 / 8, 3 / 8), (F(5, 16), F(7, 16)), (F(13, 32), F(5, 8)), (F(9, 16), F(3, 16))]
PAR_POINTS = (0, F(1, 4), F(1, 2), F(3, 4))
H = MoebiusMap(4, 0, 0, 1)
G = MoebiusMap(5, -3, -3, 5)


def test_linked_symmetric():
    part = build_linked_partition(**SYM)
    assert arc_set_equal(part.U_H, arcset(SYM["I_p"], SYM["I_pbar"]))
    assert arc_set_equal(part.U_K, arcset(SYM["I_q"], SYM["I_qbar"]))


def test_linked_coverage_failure():
    with pytest.raises(CoverageFailure):
        build_linked_partition(**{**SYM, "I_q": (F(3, 16), F(5, 16))})


def test_linked_overlap_shrinks():
    part = build_linked_partition(**{**SYM, "I_p": (F(13, 16), F(3, 16))})
    assert arc_set_equal(part.U_K, arcset((F(3, 16), F(3, 8)), (F(5, 8), F(13, 16))))


def test_unlinked_geometric():
    part = build_unlinked_geometric(q(7 / 8, 5 / 8), (F(1, 2), F(1, 16)))
    assert arc_set_equal(part.U_H, arcset((F(5, 8), F(7, 8))))
    assert arc_set_equal(part.U_K, arcset((F(1, 16), F(1, 2))))
    with pytest.raises(CoverageFailure):
        build_unlinked_geometric(q(7 / 8, 1 / 2), (F(5, 8), F(1, 16)))


def test_unlinked_parallel():
    part = build_unlinked_parallel(*PAR_GAPS, *PAR_POINTS)
    assert arc_set_equal(part.U_H, arcset(PAR_GAPS[1], PAR_GAPS[3]))
    assert arc_set_equal(part.U_K, arcset((F(3, 16), F(5, 16)), (F(7, 16), F(9, 16))))
    bad = PAR_GAPS[:3] + [(F(9, 16), F(5, 16))]
    with pytest.raises(ChainViolation, match="v4 < qbar"):
        build_unlinked_parallel(*bad, *PAR_POINTS)
    tied = [q(1 / 8, 5 / 16), (F(5, 16), F(7, 16))] + PAR_GAPS[2:]
    build_unlinked_parallel(*tied, *PAR_POINTS)


def test_moebius_mode():
    factors, asg = free_pair(H, G)
    u_h = arcset((F(-1, 2), F(1, 2)), (2, -2))
    rep = verify_finite(Partition(u_h, arcset((F(1, 2), 2), (-2, F(-1, 2)))), factors, asg, 1)
    assert rep.status == "Violated" and rep.witness_word == "f"
    # h-only direction: h((1/2, 2)) = (2, 8) inside (2, -2)
    assert (H(F(1, 2)), H(2)) == (2, 8)
    assert subset(arcset((2, 8)), arcset((2, -2)))
    asg3 = {"h": H, "f": G ** 3}
    good = Partition(u_h, arcset((F(3, 4), F(4, 3)), (F(-4, 3), F(-3, 4))))
    rep = verify_finite(good, factors, asg3, 6)
    assert rep.verified
    hl = certify_hyperbolic_like(factors, asg3, 6)
    cert = free_product_certificate(rep, hl, factors, asg3)
    assert cert.issued and cert.trivial_words == 0 and cert.words == 1456


def test_certificate_forwarding():
    factors, asg = free_pair(H, G)
    bad = verify_finite(Partition(arcset((F(-1, 2), F(1, 2))), arcset((F(1, 2), 2))), factors, asg, 1)
    cert = free_product_certificate(bad, certify_hyperbolic_like(factors, asg, 2))
    assert not cert.issued and "Violated" in cert.forwarded
    ell, ell_asg = free_pair(H, MoebiusMap(0, -1, 1, 0))
    cert = free_product_certificate(VerifyReport("finite", "Verified", 1),
                                    certify_hyperbolic_like(ell, ell_asg, 1), ell)
    assert not cert.issued and cert.forwarded == "f is Elliptic"


def test_axis_and_model_modes_agree_on_flagship():
    m = flagship_linked_model()
    part = build_linked_partition(**SYM)
    assert verify_axis(part, m).verified
    assert verify_finite_model(part, m, 4).verified
    hand = Partition(arcset((0, F(1, 10))), arcset((F(1, 2), F(6, 10))))
    assert verify_axis(hand, m).status == "Inapplicable"
    assert verify_finite_model(hand, m, 2).status == "Inapplicable"


def test_unlinked_classifier_labels():
    assert classify_unlinked_config(geometric_gap_data()).label is UnlinkedLabel.GEOMETRIC
    assert classify_unlinked_config(parallel_gap_data()).label is UnlinkedLabel.NON_GEOMETRIC_1
    assert classify_unlinked_config(mirrored_gap_data()).label is UnlinkedLabel.NON_GEOMETRIC_2
    hexa = classify_unlinked_config(hexagon_corpus(1)[0])
    assert hexa.label is UnlinkedLabel.HEXAGONAL and not hexa.accepted
    assert hexa.witness["closures_disjoint"]


def test_same_orbit():
    data, g = same_orbit_corpus(1)[0]
    assert same_orbit_constraint(classify_unlinked_config(data), g).holds
    data, g = mislabeled_fixture()
    res = same_orbit_constraint(classify_unlinked_config(data), g)
    assert not res.holds and res.report.startswith("COUNTEREXAMPLE")
    with pytest.raises(PreconditionViolated):
        same_orbit_constraint(classify_unlinked_config(data), None)
