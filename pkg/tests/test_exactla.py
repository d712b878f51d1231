from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz_homology.exactla import (
    GF,
    QQ,
    DimensionMismatch,
    ExactnessPrereqFailed,
    Field,
    Ladder,
    LinearMap,
    Matrix,
    Mod,
    NonCommutingSquare,
    NotWellDefined,
    Subspace,
    check_exact,
    cokernel,
    field_from_string,
    image,
    induced_map,
    kernel,
    quotient,
    rank,
    rref,
    snake_connecting,
    solve,
    space,
    sparse_image,
    sparse_kernel,
)

import oracles

FIELDS = [QQ, GF(2), GF(3), GF(7)]


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    F = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)]
    return Matrix(F, rows, c)


def test_mod_arithmetic():
    a, b = Mod(3, 7), Mod(5, 7)
    assert a + b == Mod(1, 7)
    assert a * b == Mod(1, 7)
    assert a / b == Mod(2, 7)
    assert -a == Mod(4, 7)
    assert a ** 6 == Mod(1, 7)
    with pytest.raises(ZeroDivisionError):
        a / Mod(0, 7)


def test_field_parsing():
    assert field_from_string("Q") == QQ
    assert field_from_string("F2") == GF(2)
    assert field_from_string("GF(5)") == GF(5)
    assert GF(5).parse("3/4") == Mod(2, 5)  # 3 * 4^-1 = 3 * 4 = 12
    assert QQ.parse(" -3/4 ") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        field_from_string("R")
    with pytest.raises(ZeroDivisionError):
        GF(3)("1/3")


def test_rref_small():
    m = Matrix(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, piv = rref(m)
    assert piv == [0, 1]
    assert r.rows[0] == (1, 0, 1)
    assert r.rows[1] == (0, 1, 1)
    assert rank(m) == 2


@given(matrices())
def test_rank_matches_sympy(m):
    rows = [{c: Fraction(int(x) if m.field.characteristic else x) for c, x in enumerate(r) if x} for r in m.rows]
    assert rank(m) == oracles.rank(rows, m.ncols, m.field.characteristic)


@given(matrices())
def test_rank_nullity(m):
    f = LinearMap(space(m.field, m.ncols), space(m.field, m.nrows), m)
    K = kernel(f)
    assert K.dim + f.rank == m.ncols
    for v in K.vectors():
        assert not any(f(v))
    assert image(f).dim == rank(m)


@given(matrices())
def test_sparse_kernel_and_image_agree_with_dense(m):
    cols = [{r: m.rows[r][c] for r in range(m.nrows) if m.rows[r][c]} for c in range(m.ncols)]
    f = LinearMap(space(m.field, m.ncols), space(m.field, m.nrows), m)
    assert sparse_kernel(cols, m.nrows, m.field) == kernel(f)
    assert sparse_image(cols, m.nrows, m.field) == image(f)


@given(matrices(), matrices())
def test_subspace_dimension_formula(a, b):
    if a.field != b.field or a.ncols != b.ncols:
        return
    U = Subspace.span(a.field, a.ncols, a.rows)
    W = Subspace.span(a.field, a.ncols, b.rows)
    assert (U + W).dim + U.intersect(W).dim == U.dim + W.dim
    assert U.intersect(W) <= U and U <= U + W


def test_subspace_is_canonical():
    U = Subspace.span(QQ, 3, [[1, 1, 0], [0, 1, 1]])
    W = Subspace.span(QQ, 3, [[1, 2, 1], [1, 0, -1]])
    assert U == W and hash(U) == hash(W)


def test_quotient_project_lift():
    R = Subspace.span(QQ, 3, [[1, 1, 0]])
    Q = quotient(3, R)
    assert Q.dim == 2
    for k in range(Q.dim):
        assert Q.project(Q.lift_basis_dense(k)) == tuple(1 if i == k else 0 for i in range(2))
    assert Q.is_zero_class([2, 2, 0])
    assert not Q.is_zero_class([1, 0, 0])


def test_induced_map_descends_or_raises():
    R = Subspace.span(QQ, 2, [[1, 0]])
    Q = quotient(2, R)
    swap = Matrix(QQ, [[0, 1], [1, 0]])
    with pytest.raises(NotWellDefined):
        induced_map(swap, Q, Q)
    diag = Matrix(QQ, [[2, 0], [0, 3]])
    f = induced_map(diag, Q, Q)
    assert f.matrix == Matrix(QQ, [[3]])
    with pytest.raises(DimensionMismatch):
        induced_map(Matrix(QQ, [[1, 0, 0]]), Q, Q)


def test_solve():
    f = LinearMap(space(QQ, 3), space(QQ, 2), Matrix(QQ, [[1, 1, 0], [0, 1, 1]]))
    x = solve(f, (2, 3))
    assert f(x) == (2, 3)
    y = solve(f, (2, 3), shift=True)
    assert f(y) == (2, 3) and x != y
    g = LinearMap(space(QQ, 1), space(QQ, 2), Matrix(QQ, [[1], [1]]))
    assert solve(g, (1, 0)) is None


def test_check_exact_short_sequence():
    F = QQ
    inc = LinearMap(space(F, 1), space(F, 2), Matrix(F, [[1], [0]]))
    proj = LinearMap(space(F, 2), space(F, 1), Matrix(F, [[0, 1]]))
    zero_in = LinearMap.zero(space(F, 0), space(F, 1))
    zero_out = LinearMap.zero(space(F, 1), space(F, 0))
    rep = check_exact([zero_in, inc, proj, zero_out])
    assert rep.verdict and len(rep.nodes) == 3
    bad = check_exact([zero_in, inc, LinearMap.zero(space(F, 2), space(F, 1)), zero_out])
    assert not bad.verdict
    assert [n.exact for n in bad.nodes] == [True, False, False]


def _ladder(alpha, beta, gamma, F=QQ):
    # 0 -> K -> K^2 -> K -> 0 on both rows
    f = LinearMap(space(F, 1), space(F, 2), Matrix(F, [[1], [0]]))
    g = LinearMap(space(F, 2), space(F, 1), Matrix(F, [[0, 1]]))
    mk = lambda n, m, rows: LinearMap(space(F, m), space(F, n), Matrix(F, rows, m))
    return Ladder(f, g, f, g, mk(1, 1, alpha), mk(2, 2, beta), mk(1, 1, gamma))


def test_snake_connecting_map_nonzero():
    # beta sends the C-lift (0,1) to (1,0) = f2(1): connecting map is the identity K -> K
    L = _ladder([[0]], [[0, 1], [0, 0]], [[0]])
    s = snake_connecting(L)
    assert s.kernel.dim == 1 and s.cokernel.dim == 1
    assert s.connecting.matrix == Matrix(QQ, [[1]])


def test_snake_connecting_map_zero_when_split():
    L = _ladder([[0]], [[0, 0], [0, 0]], [[0]])
    assert snake_connecting(L).connecting.is_zero()


def test_snake_six_term_exactness():
    # ker α -> ker β -> ker γ -> coker α -> coker β -> coker γ is exact
    L = _ladder([[0]], [[0, 1], [0, 0]], [[0]])
    s = snake_connecting(L)
    kb = kernel(L.beta)
    assert kb.dim == 1  # spanned by (1, 0)
    ca, cb = cokernel(L.alpha), cokernel(L.beta)
    assert ca.dim == 1 and cb.dim == 1
    # image of the connecting map is all of coker α, and coker α -> coker β is then zero
    assert s.connecting.is_surjective()


def test_snake_prerequisites():
    L = _ladder([[0]], [[1, 0], [0, 1]], [[0]])
    with pytest.raises(NonCommutingSquare):
        snake_connecting(L)
    F = QQ
    f = LinearMap(space(F, 1), space(F, 2), Matrix(F, [[1], [0]]))
    g = LinearMap(space(F, 2), space(F, 1), Matrix(F, [[1, 0]]))  # does not kill the image of f
    z1 = LinearMap.zero(space(F, 1), space(F, 1))
    z2 = LinearMap.zero(space(F, 2), space(F, 2))
    with pytest.raises(ExactnessPrereqFailed):
        snake_connecting(Ladder(f, g, f, g, z1, z2, z1))
