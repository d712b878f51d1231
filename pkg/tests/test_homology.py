import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz_homology.algebra import AlgebraMorphism, abelian, is_lie, quotient_algebra, center
from leibniz_homology.exactla import GF, QQ, Matrix
from leibniz_homology.homology import (
    CapacityError,
    NotLieError,
    chevalley_eilenberg_homology,
    comparison_t,
    hl1_to_abelianization,
    induced_homology_map,
    leibniz_homology,
    loday_complex,
    projection_sign_defect,
    tensor_index,
    tensor_tuple,
)

import oracles
from conftest import CYCLIC, H3, SL2, change_basis, make, oracle_brackets, two_step, unitriangular


def test_tensor_index_roundtrip():
    for i in range(27):
        assert tensor_index(tensor_tuple(i, 3, 3), 3) == i
    assert tensor_index((1, 0, 2), 3) == 11


def test_hl0_is_ground_field(h3):
    assert leibniz_homology(h3, 0).dim == 1


@pytest.mark.parametrize("F", [QQ, GF(2)])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_abelian_closed_form(F, n):
    g = abelian(F, n)
    for k in (1, 2, 3):
        assert leibniz_homology(g, k).dim == n**k


def test_dd_zero(catalog):
    for e in catalog:
        assert loday_complex(e.algebra, 4 if e.algebra.dim <= 4 else 3).check_dd() == []


@given(two_step(max_v=3, max_w=2))
def test_dd_zero_random(g):
    assert loday_complex(g, 4).check_dd() == []


@given(two_step(max_v=3, max_w=2))
def test_homology_matches_oracle(g):
    p = g.field.characteristic
    expect = oracles.loday_homology_dims(g.dim, oracle_brackets(g), 3, p)
    for k in (1, 2, 3):
        assert leibniz_homology(g, k).dim == expect[k]


@given(st.data())
def test_basis_change_invariance(data):
    g = data.draw(two_step(max_v=3, max_w=1))
    cols = data.draw(unitriangular(g.dim))
    g2 = change_basis(g, cols)
    for k in (1, 2, 3):
        assert leibniz_homology(g2, k).dim == leibniz_homology(g, k).dim


@given(two_step(max_v=3, max_w=2))
def test_hl1_is_abelianization(g):
    assert hl1_to_abelianization(g).is_bijective()


def test_capacity_error(h3):
    with pytest.raises(CapacityError):
        leibniz_homology(h3, 4)
    with pytest.raises(CapacityError):
        leibniz_homology(h3, 9, max_degree=9)
    assert leibniz_homology(h3, 4, max_degree=4).dim == oracles.loday_homology_dims(3, H3, 4)[4]


def test_functoriality_identity_and_composition(h3):
    ident = AlgebraMorphism.identity(h3)
    for n in (1, 2, 3):
        f = induced_homology_map(ident, n)
        assert f.matrix == Matrix.identity(QQ, f.domain.dim)
    q, p = quotient_algebra(h3, center(h3))
    for n in (1, 2):
        hp = induced_homology_map(p, n)
        assert hp.domain.dim == leibniz_homology(h3, n).dim
    # quotient by the center then identity = quotient
    idq = AlgebraMorphism.identity(q)
    for n in (1, 2):
        assert (induced_homology_map(idq, n) @ induced_homology_map(p, n)).matrix == induced_homology_map(
            idq.compose(p), n).matrix


def test_cyclic_values():
    g = make(QQ, 2, CYCLIC)
    assert [leibniz_homology(g, k).dim for k in (1, 2, 3)] == [1, 1, 1]


@pytest.mark.parametrize("brackets,dim", [(SL2, 3), (H3, 3), ({}, 3)])
def test_ce_matches_oracle(brackets, dim):
    g = make(QQ, dim, brackets)
    expect = oracles.ce_homology_dims(dim, brackets, 3)
    for k in (1, 2, 3):
        assert chevalley_eilenberg_homology(g, k).dim == expect[k]


@given(two_step(max_v=3, max_w=2))
def test_ce_random_lie(g):
    if not is_lie(g):
        return
    expect = oracles.ce_homology_dims(g.dim, oracle_brackets(g), 3, g.field.characteristic)
    for k in (1, 2, 3):
        assert chevalley_eilenberg_homology(g, k).dim == expect[k]


def test_ce_requires_lie(cyclic):
    with pytest.raises(NotLieError):
        chevalley_eilenberg_homology(cyclic, 2)


def test_antisymmetrization_sign(sl2, h3):
    for g in (sl2, h3, abelian(QQ, 3)):
        assert projection_sign_defect(g, 2)
        assert projection_sign_defect(g, 3)


def test_comparison_t_surjective(h3, sl2):
    for g in (h3, sl2, abelian(QQ, 3)):
        assert comparison_t(g).is_surjective()
