import pytest
from hypothesis import given

from leibniz_homology.algebra import (
    AlgebraMorphism,
    AxiomError,
    Ideal,
    LeibnizAlgebra,
    LeibnizIdentityError,
    abelian,
    abelianization,
    combine,
    center,
    commutator_ideal,
    direct_sum,
    extension_from,
    identity_crossed_module,
    inclusion_crossed_module,
    is_lie,
    is_perfect,
    liezation,
    pullback,
    quotient_algebra,
    validate_leibniz,
)
from leibniz_homology.exactla import GF, QQ, Matrix, Subspace

from conftest import CYCLIC, SOLVABLE, make, two_step


def test_rejects_non_leibniz():
    with pytest.raises(LeibnizIdentityError) as err:
        LeibnizAlgebra(QQ, 1, {(0, 0): {0: 1}})
    assert err.value.violations and err.value.violations[0][:3] == (0, 0, 0)


def test_validate_reports_triples():
    g = LeibnizAlgebra(QQ, 2, {(0, 0): {0: 1}}, check=False)
    assert {(i, j, k) for i, j, k, *_ in validate_leibniz(g)} == {(0, 0, 0)}


def test_brackets(sl2):
    assert sl2.bracket([0, 1, 0], [0, 0, 1]) == (1, 0, 0)
    assert sl2.bracket([1, 0, 0], [0, 1, 0]) == (0, 2, 0)
    assert is_lie(sl2) and is_perfect(sl2)


def test_cyclic_is_leibniz_not_lie(cyclic):
    assert not is_lie(cyclic)
    assert commutator_ideal(cyclic).dim == 1
    L, _ = liezation(cyclic)
    assert L.dim == 1 and L.is_abelian()


def test_center_and_abelianization(h3):
    assert center(h3).space == Subspace.span(QQ, 3, [[0, 0, 1]])
    ab, p = abelianization(h3)
    assert ab.dim == 2 and ab.is_abelian()
    assert p.map.is_surjective()


def test_ideal_checked():
    g = make(QQ, 2, SOLVABLE)
    Ideal.spanned_by(g, [[0, 1]])
    with pytest.raises(AxiomError):
        Ideal.spanned_by(g, [[1, 0]])


def test_quotient_algebra(h3):
    q, p = quotient_algebra(h3, center(h3))
    assert q.dim == 2 and q.is_abelian()
    for i in range(3):
        for j in range(3):
            u, v = h3.unit(i), h3.unit(j)
            assert p.apply_sparse(h3.bracket_sparse(u, v)) == q.bracket_sparse(p.apply_sparse(u), p.apply_sparse(v))


def test_morphism_checked():
    g = make(QQ, 2, CYCLIC)
    with pytest.raises(AxiomError):
        # e1 -> e1 on the abelian line into the cyclic algebra does not respect [e1,e1]
        AlgebraMorphism(abelian(QQ, 1), g, Matrix(QQ, [[1], [0]]))
    AlgebraMorphism(abelian(QQ, 1), g, Matrix(QQ, [[0], [1]]))


def test_extension_splitting():
    g = make(QQ, 2, SOLVABLE)
    a = Ideal.spanned_by(g, [[0, 1]])
    ext = extension_from(g, a, [[1, -1]])
    assert ext.splitting is not None
    with pytest.raises(AxiomError):
        extension_from(g, a, [[1, 0]])


def test_direct_sum(sl2, h3):
    s = direct_sum(sl2, h3)
    assert s.dim == 6 and is_lie(s) and not is_perfect(s)
    assert commutator_ideal(s).dim == 4


def test_crossed_modules(h3):
    cm = inclusion_crossed_module(h3, center(h3))
    assert cm.violations() == []
    idm = identity_crossed_module(h3)
    pb, pm, pn = pullback(cm, idm)
    assert pb.dim == 1


def test_permuted_is_isomorphic(sl2):
    p = sl2.permuted([2, 0, 1])
    assert p.dim == 3 and is_perfect(p)
    # new basis vector k is old perm[k]: h, e, f become positions 1, 2, 0
    assert p.bracket_basis(1, 2) == {2: 2}
    assert p.bracket_basis(2, 0) == {1: 1}


@given(two_step())
def test_two_step_family_is_leibniz(g):
    assert validate_leibniz(g) == []
    assert commutator_ideal(g).space <= center(g).space


def _alternating(g):
    for i in range(g.dim):
        if g.bracket_basis(i, i):
            return False
        for j in range(g.dim):
            if combine([(1, g.bracket_basis(i, j)), (1, g.bracket_basis(j, i))]):
                return False
    return True


@given(two_step(fields=[GF(2), GF(3), QQ]))
def test_lie_means_alternating(g):
    assert is_lie(g) == _alternating(g)


def test_f2_antisymmetric_but_not_alternating():
    # [e1,e1] = e2 is "antisymmetric" in characteristic 2 yet not Lie
    g = make(GF(2), 2, CYCLIC)
    assert not is_lie(g)
