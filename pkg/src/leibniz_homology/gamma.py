"""Whitehead's universal quadratic functor and its maps into tensor squares.

``Γ(K^n)`` is presented on formal symbols ``γ(v)`` for ``v`` in a finite
family (zero, ``e_i``, ``2e_i``, ``e_i+e_j`` and ``2e_i+e_j``), modulo every
instance of the three defining relations whose vectors stay inside the
family. The result is checked against the standard basis
``{γ(e_i)} ∪ {γ(e_i+e_j) - γ(e_i) - γ(e_j)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .algebra import AlgebraMorphism, Ideal, LeibnizAlgebra, combine, commutator_ideal, pullback
from .exactla import (
    Field,
    LinearAlgebraError,
    LinearMap,
    Matrix,
    NotWellDefined,
    QuotientSpace,
    Subspace,
    check_exact,
    direct_sum_map,
    image,
    induced_from_columns,
    kernel,
    quotient,
    rank,
    space,
    sparse,
    sparse_image,
)
from .products import NonAbelianProduct, WellDefinednessFailure, square_products
from .report import SequenceReport


def gamma_scalars(field: Field) -> list:
    p = field.characteristic
    if p == 0:
        return [field(x) for x in (0, 1, 2, 3, -1, Fraction(1, 2))]
    if p <= 7:
        return field.elements()
    return [field(x) for x in sorted({0, 1, 2, 3, p - 1})]


def _family(field: Field, n: int) -> list[tuple]:
    z, o = field.zero, field.one
    two = field(2)

    def vec(entries: dict) -> tuple:
        return tuple(entries.get(i, z) for i in range(n))

    cand = [vec({})]
    cand += [vec({i: o}) for i in range(n)]
    cand += [vec({i: two}) for i in range(n)]
    cand += [vec({i: o, j: o}) for i in range(n) for j in range(i + 1, n)]
    cand += [vec({i: two, j: o}) for i in range(n) for j in range(n) if i != j]
    out, seen = [], set()
    for v in cand:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


@dataclass
class GammaModule:
    field: Field
    source_dim: int
    family: list[tuple]
    index: dict
    space: QuotientSpace
    witness: list[dict]  # witness basis as symbol vectors
    relation_vectors: list[dict]

    @property
    def dim(self) -> int:
        return self.space.dim

    def symbol(self, v: Sequence) -> dict:
        """The formal symbol γ(v) for ``v`` in the family."""
        key = tuple(self.field(x) for x in v)
        if key not in self.index:
            raise KeyError("vector outside the presentation family")
        return {self.index[key]: self.field.one}

    def gamma_of(self, v: Sequence) -> tuple:
        """Coordinates of γ(v) for any vector ``v`` (quadratic expansion in the witness basis)."""
        f = self.field
        v = [f(x) for x in v]
        if len(v) != self.source_dim:
            raise ValueError("vector length does not match the source")
        n = self.source_dim
        acc: dict = {}
        basic = [self.space.project(self.symbol(_unit(f, n, i))) for i in range(n)]
        for i in range(n):
            if v[i]:
                _add(acc, v[i] * v[i], basic[i])
        for i in range(n):
            for j in range(i + 1, n):
                c = v[i] * v[j]
                if c:
                    cross = self.space.project(self.symbol(_unit(f, n, i, j)))
                    _add(acc, c, cross)
                    _add(acc, -c, basic[i])
                    _add(acc, -c, basic[j])
        z = f.zero
        return tuple(acc.get(k, z) for k in range(self.dim))

    def witness_matrix(self) -> Matrix:
        cols = [self.space.project(w) for w in self.witness]
        return Matrix.from_columns(self.field, cols, self.dim) if cols else Matrix.zeros(self.field, self.dim, 0)

    def witness_ok(self) -> bool:
        """The witness family has the expected size and is a basis of the presented module."""
        n = self.source_dim
        m = self.witness_matrix()
        return len(self.witness) == n * (n + 1) // 2 and m.nrows == m.ncols and rank(m) == m.ncols

    def evaluate(self, fn: Callable[[tuple], dict], codomain: QuotientSpace) -> LinearMap:
        """Linear map determined by ``γ(v) ↦ fn(v)`` (ambient vectors of ``codomain``).

        Every relation instance must map into ``codomain``'s relations.
        """
        cols = [fn(v) for v in self.family]
        try:
            return induced_from_columns(cols, self.space, codomain)
        except NotWellDefined as exc:
            raise WellDefinednessFailure("quadratic map violates a defining relation") from exc


def _unit(f: Field, n: int, *idx: int) -> tuple:
    return tuple(f.one if i in idx else f.zero for i in range(n))


def _add(acc: dict, a, v: Sequence) -> None:
    for k, x in enumerate(v):
        if x:
            nv = acc.get(k, 0) + a * x
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)


@lru_cache(maxsize=None)
def gamma(field: Field, n: int) -> GammaModule:
    """``Γ(K^n)`` by a finite presentation; dimension ``n(n+1)/2``."""
    fam = _family(field, n)
    index = {v: k for k, v in enumerate(fam)}
    o = field.one
    ks = gamma_scalars(field)

    def add(a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def mul(k, a: tuple) -> tuple:
        return tuple(k * x for x in a)

    def g(v: tuple):
        return index.get(v)

    rels: list[dict] = []

    def emit(terms: list[tuple]) -> None:
        out: dict = {}
        for c, idx in terms:
            nv = out.get(idx, 0) + c
            if nv:
                out[idx] = nv
            else:
                out.pop(idx, None)
        if out:
            rels.append(out)

    for a in fam:
        ia = index[a]
        for k in ks:
            ika = g(mul(k, a))
            if ika is not None:
                emit([(o, ika), (-(k * k), ia)])
    N = len(fam)
    for ia in range(N):
        a = fam[ia]
        for ib in range(ia, N):
            b = fam[ib]
            ab = g(add(a, b))
            if ab is None:
                continue
            for ic in range(ib, N):
                c = fam[ic]
                abc, ac, bc = g(add(add(a, b), c)), g(add(a, c)), g(add(b, c))
                if None in (abc, ac, bc):
                    continue
                emit([(o, abc), (o, ia), (o, ib), (o, ic), (-o, ab), (-o, ac), (-o, bc)])
    for ia in range(N):
        a = fam[ia]
        for ib in range(N):
            b = fam[ib]
            ab = g(add(a, b))
            if ab is None:
                continue
            for k in ks:
                ka = g(mul(k, a))
                kab = g(add(mul(k, a), b))
                if ka is None or kab is None:
                    continue
                emit([(o, kab), (k, ia), (k, ib), (-k, ab), (-o, ka), (-o, ib)])
    rel = sparse_image(rels, N, field)
    q = quotient(N, rel)
    witness = []
    for i in range(n):
        witness.append({index[_unit(field, n, i)]: o})
    for i in range(n):
        for j in range(i + 1, n):
            witness.append(combine([(1, {index[_unit(field, n, i, j)]: o}), (-1, {index[_unit(field, n, i)]: o}),
                                    (-1, {index[_unit(field, n, j)]: o})]))
    return GammaModule(field, n, fam, index, q, witness, rels)


def gamma_of_space(a: QuotientSpace) -> GammaModule:
    return gamma(a.field, a.dim)


def gamma_on_map(f: LinearMap) -> LinearMap:
    """``Γ(f): γ(a) ↦ γ(f a)`` between the coordinate spaces of ``f``."""
    src = gamma(f.field, f.domain.dim)
    dst = gamma(f.field, f.codomain.dim)
    return src.evaluate(lambda v: _lift_coords(dst, dst.gamma_of(f(v))), dst.space)


def _lift_coords(G: GammaModule, coords: Sequence) -> dict:
    return sparse(G.space.lift(coords))


# ---------------------------------------------------------------------------
# pullback quotient and quadratic maps


@dataclass
class PullbackQuotient:
    """``Q = (m ×_g n) / <m, n>`` with the bilinear symbol map on the pullback."""

    T: NonAbelianProduct
    pullback: LeibnizAlgebra
    pr_m: AlgebraMorphism
    pr_n: AlgebraMorphism
    ideal: Ideal
    space: QuotientSpace  # over pullback coordinates

    def beta(self, x: dict, y: dict) -> dict:
        """``m_x * n_y - n_x * m_y`` as an ambient vector of ``T``."""
        T = self.T
        return combine([
            (1, T.symbol_mn(self.pr_m.apply_sparse(x), self.pr_n.apply_sparse(y))),
            (-1, T.symbol_nm(self.pr_n.apply_sparse(x), self.pr_m.apply_sparse(y))),
        ])

    def section(self, q: Sequence) -> dict:
        return sparse(self.space.lift(q))


def pullback_quotient(T: NonAbelianProduct) -> PullbackQuotient:
    if "pullback-quotient" in T.extra:
        return T.extra["pullback-quotient"]
    pb, pm, pn = pullback(T.left, T.right)
    f = pb.field
    stacked = [combine([(1, pm.apply_sparse(pb.unit(k)))] + [(1, {T.p + j: x for j, x in pn.apply_sparse(pb.unit(k)).items()})])
               for k in range(pb.dim)]
    S = Subspace.span(f, T.p + T.q, stacked)
    gens = []
    for k in range(T.dim):
        x = T.space.lift_basis(k)
        tm = T.tau_left.apply_sparse(T.space.project_sparse(x))
        tn = T.tau_right.apply_sparse(T.space.project_sparse(x))
        v = combine([(1, tm), (1, {T.p + j: c for j, c in tn.items()})])
        try:
            gens.append(S.coords(v))
        except LinearAlgebraError as exc:
            raise WellDefinednessFailure("image of (τ_m, τ_n) leaves the pullback") from exc
    sub = Subspace.span(f, pb.dim, gens)
    ideal = Ideal(pb, sub, "<m,n>")
    # quotient is abelian
    for i in range(pb.dim):
        for j in range(pb.dim):
            if not sub.contains(pb.bracket_basis(i, j)):
                raise WellDefinednessFailure("pullback modulo <m,n> is not abelian")
    res = PullbackQuotient(T, pb, pm, pn, ideal, quotient(pb.dim, sub))
    T.extra["pullback-quotient"] = res
    return res


def _check_psi_descends(P: PullbackQuotient) -> None:
    rel = P.T.space.relations
    ideal = P.ideal.space.sparse_vectors()
    for i in ideal:
        if not rel.contains(P.beta(i, i)):
            raise WellDefinednessFailure("γ(i) does not vanish for i in <m,n>")
        for k in range(P.pullback.dim):
            w = P.pullback.unit(k)
            if not rel.contains(combine([(1, P.beta(w, i)), (1, P.beta(i, w))])):
                raise WellDefinednessFailure("quadratic symbol map depends on the representative")


def _check_beta_descends(P: PullbackQuotient) -> None:
    rel = P.T.space.relations
    for i in P.ideal.space.sparse_vectors():
        for k in range(P.pullback.dim):
            w = P.pullback.unit(k)
            if not rel.contains(P.beta(w, i)) or not rel.contains(P.beta(i, w)):
                raise WellDefinednessFailure("bilinear symbol map depends on the representative")


def _check_central(T: NonAbelianProduct, vectors: list[tuple]) -> bool:
    alg = T.algebra
    for v in vectors:
        sv = sparse(v)
        for b in range(alg.dim):
            if alg.bracket_sparse(sv, alg.unit(b)) or alg.bracket_sparse(alg.unit(b), sv):
                return False
    return True


@dataclass
class PsiMap:
    gamma: GammaModule
    map: LinearMap
    quotient: PullbackQuotient
    ambient_images: list[dict]  # ambient vectors ψ(γ(v)) for v in the family
    central: bool


def psi(T: NonAbelianProduct) -> PsiMap:
    """``ψ: Γ(Q) -> m⋆n``, ``γ(q) ↦ m*n - n*m`` for a lift ``(m, n)`` of ``q``."""
    if "psi" in T.extra:
        return T.extra["psi"]
    P = pullback_quotient(T)
    _check_psi_descends(P)
    G = gamma(T.space.field, P.space.dim)

    def fn(v: tuple) -> dict:
        s = P.section(v)
        return P.beta(s, s)

    m = G.evaluate(fn, T.space)
    images = [fn(v) for v in G.family]
    res = PsiMap(G, m, P, images, _check_central(T, m.matrix.columns()))
    T.extra["psi"] = res
    return res


def psi_tilde(T: NonAbelianProduct) -> PsiMap:
    """``ψ̃: Γ(Q⊕Q) -> m⋆n``, ``γ(q, q') ↦ m*n' - n*m'``."""
    if "psi-tilde" in T.extra:
        return T.extra["psi-tilde"]
    P = pullback_quotient(T)
    _check_beta_descends(P)
    k = P.space.dim
    G = gamma(T.space.field, 2 * k)

    def fn(v: tuple) -> dict:
        return P.beta(P.section(v[:k]), P.section(v[k:]))

    m = G.evaluate(fn, T.space)
    res = PsiMap(G, m, P, [fn(v) for v in G.family], _check_central(T, m.matrix.columns()))
    T.extra["psi-tilde"] = res
    return res


def check_psi_tilde(T: NonAbelianProduct, E: NonAbelianProduct) -> SequenceReport:
    """``Γ(Q⊕Q) -> m⋆n -> m∧n -> 0`` exact."""
    pt = psi_tilde(T)
    f = T.space.field
    zero = space(f, 0)
    rep = check_exact([pt.map, E.pi, LinearMap.zero(E.space, zero)], "psi-tilde",
                      ["Γ(Q⊕Q)", "m⋆n", "m∧n", "0"])
    rep.check("image of ψ̃ is central", pt.central)
    psi_map = psi(T)
    rep.check("image of ψ lies in ker π", image(psi_map.map).issubset(kernel(E.pi)))
    rep.values.update({"dim Γ(Q⊕Q)": pt.gamma.dim, "dim m⋆n": T.dim, "dim m∧n": E.dim,
                       "rank ψ̃": pt.map.rank, "dim ker π": kernel(E.pi).dim, "rank ψ": psi_map.map.rank,
                       "defect ker π / im ψ": kernel(E.pi).dim - psi_map.map.rank})
    return rep


# ---------------------------------------------------------------------------
# exterior square of a vector space


def exterior_square_space(field: Field, k: int) -> QuotientSpace:
    """``Λ²(K^k)`` as ``K^k⊗K^k`` modulo ``e_i⊗e_i`` and ``e_i⊗e_j + e_j⊗e_i``."""
    o = field.one
    rels = []
    for i in range(k):
        rels.append({i * k + i: o})
        for j in range(i + 1, k):
            rels.append({i * k + j: o, j * k + i: o})
    return quotient(k * k, Subspace.span(field, k * k, rels))


@dataclass
class SplitData:
    T: NonAbelianProduct
    E: NonAbelianProduct
    star_mod_psi: QuotientSpace
    wedge: QuotientSpace  # Λ²(Q)
    phi: LinearMap
    pibar: LinearMap


def phi_and_pibar(T: NonAbelianProduct, E: NonAbelianProduct) -> tuple[SplitData, SequenceReport]:
    """``Λ²(Q) --φ--> (m⋆n)/Im ψ --π̄--> m∧n -> 0`` with its exactness report."""
    ps = psi(T)
    P = ps.quotient
    f = T.space.field
    k = P.space.dim
    rel = T.space.relations + Subspace.span(f, T.ambient_dim, ps.ambient_images)
    smp = quotient(T.ambient_dim, rel)
    wedge = exterior_square_space(f, k)
    o = f.one
    cols = []
    for c in range(k * k):
        a, b = divmod(c, k)
        cols.append(P.beta(P.section(_unit(f, k, a)), P.section(_unit(f, k, b))))
    try:
        phi = induced_from_columns(cols, wedge, smp)
        pibar = induced_from_columns([{i: o} for i in range(T.ambient_dim)], smp, E.space)
    except NotWellDefined as exc:
        raise WellDefinednessFailure(str(exc)) from exc
    zero = space(f, 0)
    rep = check_exact([phi, pibar, LinearMap.zero(E.space, zero)], "phi-pibar", ["Λ²Q", "(m⋆n)/Im ψ", "m∧n", "0"])
    rep.values.update({"dim Λ²Q": wedge.dim, "dim (m⋆n)/Im ψ": smp.dim, "dim m∧n": E.dim})
    return SplitData(T, E, smp, wedge, phi, pibar), rep


@dataclass
class TauMaps:
    abelianization: QuotientSpace
    tensor: LinearMap  # g⋆g -> g^ab ⊗ g^ab
    bar: LinearMap  # g⋆g -> Λ²g^ab
    tilde: LinearMap  # (g⋆g)/Im ψ -> Λ²g^ab
    wedge: QuotientSpace


def tau_maps(g: LeibnizAlgebra) -> TauMaps:
    pair = square_products(g)
    T, E = pair.tensor, pair.exterior
    f = g.field
    ab = quotient(g.dim, commutator_ideal(g).space)
    k = ab.dim
    bars = [ab.project_sparse({i: f.one}) for i in range(g.dim)]
    cols = []
    for idx in range(T.ambient_dim):
        kind, a, b = T.decode(idx)
        out: dict = {}
        if kind == "mn":
            for s, x in bars[a].items():
                for t, y in bars[b].items():
                    out[s * k + t] = out.get(s * k + t, 0) + x * y
        cols.append({c: x for c, x in out.items() if x})
    wedge = exterior_square_space(f, k)
    split, _ = phi_and_pibar(T, E)
    try:
        tau = induced_from_columns(cols, T.space, space(f, k * k))
        tbar = induced_from_columns(cols, T.space, wedge)
        ttilde = induced_from_columns(cols, split.star_mod_psi, wedge)
    except NotWellDefined as exc:
        raise WellDefinednessFailure(str(exc)) from exc
    return TauMaps(ab, tau, tbar, ttilde, wedge)


def check_split_sequence(g: LeibnizAlgebra) -> SequenceReport:
    """``0 -> Λ²g^ab -> (g⋆g)/Im ψ -> g∧g -> 0`` exact, split by ``τ̃``."""
    pair = square_products(g)
    T, E = pair.tensor, pair.exterior
    split, _ = phi_and_pibar(T, E)
    taus = tau_maps(g)
    f = g.field
    zero = space(f, 0)
    rep = check_exact(
        [LinearMap.zero(zero, split.wedge), split.phi, split.pibar, LinearMap.zero(E.space, zero)],
        "split-sequence",
        ["0", "Λ²g^ab", "(g⋆g)/Im ψ", "g∧g", "0"],
    )
    rep.name = "split-sequence"
    same_wedge = split.wedge == taus.wedge
    rep.check("Λ² of Q coincides with Λ² of g^ab", same_wedge)
    if same_wedge:
        comp = taus.tilde @ split.phi
        rep.check("τ̃ ∘ φ = identity", comp.matrix == Matrix.identity(f, split.wedge.dim))
    both = direct_sum_map(split.pibar, taus.tilde)
    rep.iso("(π̄, τ̃): (g⋆g)/Im ψ -> g∧g ⊕ Λ²g^ab", both.is_bijective())
    rep.values.update({
        "dim (g⋆g)/Im ψ": split.star_mod_psi.dim,
        "dim g∧g": E.dim,
        "dim Λ²g^ab": split.wedge.dim,
    })
    rep.check("dim (g⋆g)/Im ψ = dim g∧g + dim Λ²g^ab", split.star_mod_psi.dim == E.dim + split.wedge.dim)
    return rep


def check_gamma_injectivity(g: LeibnizAlgebra) -> SequenceReport:
    """``0 -> Γ(g^ab) -> g⋆g -> (g∧g) ⊕ Λ²g^ab -> 0`` exact."""
    pair = square_products(g)
    T, E = pair.tensor, pair.exterior
    ps = psi(T)
    taus = tau_maps(g)
    f = g.field
    zero = space(f, 0)
    right = direct_sum_map(E.pi, taus.bar)
    rep = check_exact(
        [LinearMap.zero(zero, ps.gamma.space), ps.map, right, LinearMap.zero(right.codomain, zero)],
        "gamma-sequence",
        ["0", "Γ(g^ab)", "g⋆g", "g∧g ⊕ Λ²g^ab", "0"],
    )
    rep.check("Γ(g^ab) has the standard basis", ps.gamma.witness_ok())
    rep.check("Q coincides with g^ab", ps.quotient.space == taus.abelianization)
    rep.check("τ ∘ ψ injective", (taus.tensor @ ps.map).is_injective())
    rep.check("image of ψ is central", ps.central)
    rep.values.update({"dim Γ(g^ab)": ps.gamma.dim, "dim g⋆g": T.dim, "dim g∧g": E.dim,
                       "dim Λ²g^ab": taus.wedge.dim, "rank ψ": ps.map.rank})
    return rep
