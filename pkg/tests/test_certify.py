"""Side pairings, ridge cycles, transversality, and symbolic identities."""

import pytest

from fordcr.algebra.rationals import QQ
from fordcr.certify import (ridge_cycle_relations, six_bisector_identity,
                            six_bisector_membership, verify_side_pairings,
                            vertex_transversality)
from fordcr.group import Representation


@pytest.fixture(scope="module")
def pairings(rep0):
    return verify_side_pairings(rep0)


def test_all_pairings_valid(pairings):
    assert len(pairings) == 14 + 6
    assert all(c.valid for c in pairings)


def test_pairing_residual_powers(pairings):
    # residual target^-1 . pairing . source = unit scalar times G1^power
    g2_powers = [c.power for c in pairings[:8]]
    g3_powers = [c.power for c in pairings[8:14]]
    assert g2_powers == [1, -1, -2, 0, -1, 0, 1, 2]
    assert g3_powers == [1, -1, 1, 0, 1, -3]


def test_vertex_images(pairings):
    images = pairings[14:]
    assert all(c.valid for c in images)
    byname = {(c.pairing, c.source): c.target for c in images}
    assert byname[("-2", "p_{-121}")] == "p_{-323}"


@pytest.fixture(scope="module")
def cycles(rep0):
    return ridge_cycle_relations(rep0)


def test_six_ridge_cycles_close(cycles):
    cs, report = cycles
    assert len(cs) == 6
    assert all(c.valid for c in cs)
    assert [c.power for c in cs] == [0, 3, -2, 1, 1, 2]
    assert [c.order for c in cs] == [1, 1, 1, 1, 3, 3]


def test_presentation_equivalence(cycles):
    _, report = cycles
    assert all(report.values()), report


def test_transversality_at_p2(rep0):
    tr = vertex_transversality(rep0)
    assert tr.valid
    assert tr.indices == (1, 2, 3, 5, 10, 11)
    assert tr.non_transverse == ((1, 2, 3, 10), (1, 2, 5, 11),
                                 (3, 5, 10, 11))
    f = rep0.field
    s7 = rep0.tau
    e = f.elem
    expected = {
        1: (e(-8), f.zero, f.zero, f.zero),
        2: (e(3), s7, e(-1), -3 * s7),
        3: (f.zero, f.zero, e(-6), -2 * s7),
        5: (e(QQ(-1, 2)), s7 * QQ(-3, 2), e(QQ(-1, 2)), s7 * QQ(-3, 2)),
        10: (e(-5), s7, e(5), -s7),
        11: (e(QQ(-9, 2)), s7 * QQ(5, 2), e(QQ(-1, 2)), s7 * QQ(-3, 2)),
    }
    for i, vec in expected.items():
        got = tr.gradients[i]
        assert all((a - b).is_zero() for a, b in zip(got, vec)), i
    tangents = {
        (1, 2, 3, 10): (f.zero, e(QQ(8, 3)), -s7 / e(3), f.one),
        (1, 2, 5, 11): (f.zero, f.zero, -3 * s7, f.one),
        (3, 5, 10, 11): (-2 * s7 / e(3), e(QQ(-2, 3)), -s7 / e(3), f.one),
    }
    for q, vec in tangents.items():
        got = tr.tangents[q]
        assert all((a - b).is_zero() for a, b in zip(got, vec)), q
    assert tr.exits == {(1, 2, 3, 10): ((11,), (5,)),
                        (1, 2, 5, 11): ((3,), (10,)),
                        (3, 5, 10, 11): ((1,), (2,))}


def test_six_bisector_membership_unipotent(rep0):
    out = six_bisector_membership(rep0)
    assert all(out.values()), out


def test_six_bisector_membership_deformed():
    out = six_bisector_membership(Representation(QQ(1, 100)))
    assert all(out.values()), out


def test_symbolic_identities_uniform():
    out = six_bisector_identity()
    assert all(out.values()), out
