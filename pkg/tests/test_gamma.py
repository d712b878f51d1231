import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz_homology.exactla import GF, QQ, LinearMap, Matrix, image, space
from leibniz_homology.gamma import (
    WellDefinednessFailure,
    check_gamma_injectivity,
    check_psi_tilde,
    check_split_sequence,
    gamma,
    gamma_on_map,
    gamma_scalars,
    psi,
    psi_tilde,
)
from leibniz_homology.products import square_products

from conftest import two_step


@pytest.mark.parametrize("F", [QQ, GF(2)])
@pytest.mark.parametrize("n", range(0, 7))
def test_gamma_dimension(F, n):
    G = gamma(F, n)
    assert G.dim == n * (n + 1) // 2
    assert G.witness_ok()


@pytest.mark.parametrize("F", [GF(3), GF(5), GF(7), GF(11)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_dimension_odd_primes(F, n):
    G = gamma(F, n)
    assert G.dim == n * (n + 1) // 2 and G.witness_ok()


def test_scalar_sets():
    assert len(gamma_scalars(GF(5))) == 5
    assert len(gamma_scalars(GF(11))) == 5
    assert len(gamma_scalars(QQ)) == 6


def _square_tensor(F, n):
    # γ(v) ↦ v⊗v in K^(n*n); injective onto the symmetric tensors in every characteristic
    def fn(v):
        return {i * n + j: v[i] * v[j] for i in range(n) for j in range(n) if v[i] * v[j]}
    return fn


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_universal_quadratic_map_is_injective(F, n):
    G = gamma(F, n)
    f = G.evaluate(_square_tensor(F, n), space(F, n * n))
    assert f.is_injective()
    assert f.rank == n * (n + 1) // 2


def test_non_quadratic_map_rejected():
    G = gamma(QQ, 2)
    with pytest.raises(WellDefinednessFailure):
        G.evaluate(lambda v: {0: v[0]} if v[0] else {}, space(QQ, 1))


vectors = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(st.sampled_from([QQ, GF(2), GF(3)]), vectors, vectors, vectors, st.integers(-3, 3))
def test_gamma_of_is_quadratic(F, u, v, w, k):
    G = gamma(F, 3)
    g = lambda x: G.gamma_of(x)
    add = lambda *xs: [sum(t) for t in zip(*xs)]
    assert g([k * x for x in u]) == tuple(F(k * k) * c for c in g(u))
    lhs = [a - b - c - d + e + f + h for a, b, c, d, e, f, h in
           zip(g(add(u, v, w)), g(add(u, v)), g(add(u, w)), g(add(v, w)), g(u), g(v), g(w))]
    assert not any(lhs)


@given(st.sampled_from([QQ, GF(2), GF(3)]), vectors, vectors)
def test_gamma_of_matches_universal_map(F, u, v):
    n = 3
    G = gamma(F, n)
    f = G.evaluate(_square_tensor(F, n), space(F, n * n))
    for x in (u, v):
        expect = tuple(F(x[i]) * F(x[j]) for i in range(n) for j in range(n))
        assert f(G.gamma_of(x)) == expect


def test_gamma_functorial():
    F = QQ
    a = LinearMap(space(F, 2), space(F, 3), Matrix(F, [[1, 0], [1, 1], [0, 2]]))
    b = LinearMap(space(F, 3), space(F, 2), Matrix(F, [[1, 0, 1], [0, 1, -1]]))
    assert gamma_on_map(b @ a).matrix == (gamma_on_map(b) @ gamma_on_map(a)).matrix
    ident = LinearMap.identity(space(F, 3))
    assert gamma_on_map(ident).matrix == Matrix.identity(F, 6)


def test_psi_on_catalog(catalog):
    for e in catalog:
        T = square_products(e.algebra).tensor
        ps = psi(T)
        assert ps.central
        assert ps.map.is_injective()
        pt = psi_tilde(T)
        # ψ(γ(q)) = ψ̃(γ(q, q))
        assert pt.gamma.source_dim == 2 * ps.gamma.source_dim
        assert image(ps.map) <= image(pt.map)


def test_split_sequence_catalog(catalog):
    for e in catalog:
        rep = check_split_sequence(e.algebra)
        assert rep.verdict, (e.name, rep.failures())
        v = rep.values
        assert v["dim (g⋆g)/Im ψ"] == v["dim g∧g"] + v["dim Λ²g^ab"]


def test_gamma_injectivity_catalog(catalog):
    for e in catalog:
        rep = check_gamma_injectivity(e.algebra)
        assert rep.verdict, (e.name, rep.failures())


@given(two_step(max_v=3, max_w=2))
def test_split_sequence_random(g):
    assert check_split_sequence(g).verdict
    assert check_gamma_injectivity(g).verdict


def test_psi_tilde_report(catalog):
    for e in catalog:
        pair = square_products(e.algebra)
        rep = check_psi_tilde(pair.tensor, pair.exterior)
        assert rep.error is None
        assert rep.values["rank ψ"] <= rep.values["dim ker π"]
