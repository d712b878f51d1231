"""Non-abelian tensor and exterior products of Leibniz crossed modules.

For crossed modules ``m -> g`` and ``n -> g`` the ambient space is
``(m⊗n) ⊕ (n⊗m)``. The symbol ``m_i*n_j`` sits at position ``i*q + j`` and
``n_j*m_i`` at ``p*q + j*p + i`` (``p = dim m``, ``q = dim n``). The tensor
product is the ambient modulo basis instances of the defining relations;
the exterior product additionally kills the box subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import (
    AlgebraMorphism,
    CrossedModule,
    Ideal,
    LeibnizAlgebra,
    algebra_on_quotient,
    combine,
    identity_crossed_module,
    inclusion_crossed_module,
    is_lie,
    pullback,
    subalgebra,
)
from .exactla import (
    LinearMap,
    Matrix,
    NotWellDefined,
    QuotientSpace,
    Subspace,
    apply_columns,
    induced_from_columns,
    quotient,
    space,
    sparse,
    sparse_image,
)
from .homology import NotLieError, bullet_square


class WellDefinednessFailure(NotWellDefined):
    """A product or map failed to descend; signals invalid crossed-module input."""


@dataclass
class NonAbelianProduct:
    kind: str  # "tensor" or "exterior"
    left: CrossedModule
    right: CrossedModule
    space: QuotientSpace
    algebra: LeibnizAlgebra
    tau_left: AlgebraMorphism | None = None
    tau_right: AlgebraMorphism | None = None
    parent: NonAbelianProduct | None = None
    pi: LinearMap | None = None
    box: Subspace | None = None
    extra: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.left.source.dim

    @property
    def q(self) -> int:
        return self.right.source.dim

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def ambient_dim(self) -> int:
        return 2 * self.p * self.q

    def mn(self, i: int, j: int) -> int:
        return i * self.q + j

    def nm(self, j: int, i: int) -> int:
        return self.p * self.q + j * self.p + i

    def symbol_mn(self, m: dict, n: dict) -> dict:
        return _sym(m, n, lambda i, j: self.mn(i, j))

    def symbol_nm(self, n: dict, m: dict) -> dict:
        return _sym(n, m, lambda j, i: self.nm(j, i))

    def decode(self, idx: int) -> tuple[str, int, int]:
        pq = self.p * self.q
        if idx < pq:
            return ("mn",) + divmod(idx, self.q)
        return ("nm",) + divmod(idx - pq, self.p)

    def symbol_label(self, idx: int) -> str:
        """``m*n`` for the first family, ``n*m'`` (primed) for the second."""
        kind, a, b = self.decode(idx)
        ml, nl = self.left.source.labels, self.right.source.labels
        if kind == "mn":
            return f"{ml[a]}*{nl[b]}"
        return f"{nl[a]}*{ml[b]}'"

    def project(self, v: dict) -> tuple:
        return self.space.project(v)


def _sym(u: dict, v: dict, pos: Callable[[int, int], int]) -> dict:
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            k = pos(i, j)
            nv = out.get(k, 0) + a * b
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


class _Actions:
    """Mutual actions of m and n induced through the common base algebra."""

    def __init__(self, cm_m: CrossedModule, cm_n: CrossedModule):
        self.cm_m, self.cm_n = cm_m, cm_n
        self.eta = cm_m.eta.apply_sparse
        self.mu = cm_n.eta.apply_sparse

    def m_on_n(self, m: dict, n: dict) -> dict:  # ^m n
        return self.cm_n.action.act_left(self.eta(m), n)

    def n_by_m(self, n: dict, m: dict) -> dict:  # n^m
        return self.cm_n.action.act_right(n, self.eta(m))

    def n_on_m(self, n: dict, m: dict) -> dict:  # ^n m
        return self.cm_m.action.act_left(self.mu(n), m)

    def m_by_n(self, m: dict, n: dict) -> dict:  # m^n
        return self.cm_m.action.act_right(m, self.mu(n))


def tensor_relations(T: NonAbelianProduct, act: _Actions) -> list[dict]:
    """Basis instances of the defining relations, in lexicographic order."""
    m_alg, n_alg = T.left.source, T.right.source
    p, q = T.p, T.q
    M = [m_alg.unit(i) for i in range(p)]
    N = [n_alg.unit(j) for j in range(q)]
    smn, snm = T.symbol_mn, T.symbol_nm
    rels: list[dict] = []
    for m in M:
        for n in N:
            for n2 in N:
                rels.append(combine([(1, smn(m, n_alg.bracket_sparse(n, n2))), (-1, smn(act.m_by_n(m, n), n2)),
                                     (1, smn(act.m_by_n(m, n2), n))]))
                rels.append(combine([(1, snm(n_alg.bracket_sparse(n, n2), m)), (-1, smn(act.n_on_m(n, m), n2)),
                                     (1, snm(n, act.m_by_n(m, n2)))]))
                rels.append(combine([(1, snm(n, act.n_on_m(n2, m))), (1, snm(n, act.m_by_n(m, n2)))]))
    for n in N:
        for m in M:
            for m2 in M:
                rels.append(combine([(1, snm(n, m_alg.bracket_sparse(m, m2))), (-1, snm(act.n_by_m(n, m), m2)),
                                     (1, snm(act.n_by_m(n, m2), m))]))
                rels.append(combine([(1, smn(m_alg.bracket_sparse(m, m2), n)), (-1, snm(act.m_on_n(m, n), m2)),
                                     (1, smn(m, act.n_by_m(n, m2)))]))
                rels.append(combine([(1, smn(m, act.m_on_n(m2, n))), (1, smn(m, act.n_by_m(n, m2)))]))
    for m in M:
        for n in N:
            mn_r, mn_l = act.m_by_n(m, n), act.m_on_n(m, n)  # m^n, ^m n
            nm_l, nm_r = act.n_on_m(n, m), act.n_by_m(n, m)  # ^n m, n^m
            for m2 in M:
                for n2 in N:
                    rels.append(combine([(1, smn(mn_r, act.m_on_n(m2, n2))), (-1, snm(mn_l, act.m_by_n(m2, n2)))]))
                    rels.append(combine([(1, smn(nm_l, act.n_by_m(n2, m2))), (-1, snm(nm_r, act.n_on_m(n2, m2)))]))
                    rels.append(combine([(1, smn(mn_r, act.n_by_m(n2, m2))), (-1, snm(mn_l, act.n_on_m(n2, m2)))]))
                    rels.append(combine([(1, smn(nm_l, act.m_on_n(m2, n2))), (-1, snm(nm_r, act.m_by_n(m2, n2)))]))
    return [r for r in rels if r]


def _bracket_fn(T: NonAbelianProduct, act: _Actions) -> Callable[[int, int], dict]:
    m_alg, n_alg = T.left.source, T.right.source

    def factors(idx: int) -> tuple[str, dict, dict]:
        kind, a, b = T.decode(idx)
        if kind == "mn":
            return kind, m_alg.unit(a), n_alg.unit(b)
        return kind, n_alg.unit(a), m_alg.unit(b)

    def bracket(u: int, v: int) -> dict:
        k1, x, y = factors(u)
        k2, x2, y2 = factors(v)
        # left factor of the result lives in m, right factor in n
        if k1 == "mn":
            left = act.m_by_n(x, y)  # m^n
        else:
            left = act.n_on_m(x, y)  # ^n m
        if k2 == "mn":
            right = act.m_on_n(x2, y2)  # ^{m'} n'
        else:
            right = act.n_by_m(x2, y2)  # n'^{m'}
        return T.symbol_mn(left, right)

    return bracket


def _tau(T: NonAbelianProduct, act: _Actions) -> tuple[AlgebraMorphism, AlgebraMorphism]:
    m_alg, n_alg = T.left.source, T.right.source
    cols_m, cols_n = [], []
    for idx in range(T.ambient_dim):
        kind, a, b = T.decode(idx)
        if kind == "mn":
            cols_m.append(act.m_by_n(m_alg.unit(a), n_alg.unit(b)))
            cols_n.append(act.m_on_n(m_alg.unit(a), n_alg.unit(b)))
        else:
            cols_m.append(act.n_on_m(n_alg.unit(a), m_alg.unit(b)))
            cols_n.append(act.n_by_m(n_alg.unit(a), m_alg.unit(b)))
    f = m_alg.field
    tm = induced_from_columns(cols_m, T.space, space(f, m_alg.dim))
    tn = induced_from_columns(cols_n, T.space, space(f, n_alg.dim))
    return AlgebraMorphism(T.algebra, m_alg, tm.matrix), AlgebraMorphism(T.algebra, n_alg, tn.matrix)


def tensor_product(cm_m: CrossedModule, cm_n: CrossedModule, name: str = "") -> NonAbelianProduct:
    if cm_m.base != cm_n.base:
        raise ValueError("crossed modules have different base algebras")
    f = cm_m.base.field
    p, q = cm_m.source.dim, cm_n.source.dim
    shell = NonAbelianProduct("tensor", cm_m, cm_n, space(f, 2 * p * q), None)  # type: ignore[arg-type]
    act = _Actions(cm_m, cm_n)
    rel = sparse_image(tensor_relations(shell, act), 2 * p * q, f)
    shell.space = quotient(2 * p * q, rel)
    labels = [shell.symbol_label(c) for c in shell.space.free]
    try:
        shell.algebra = algebra_on_quotient(f, shell.space, _bracket_fn(shell, act), labels, name)
        shell.tau_left, shell.tau_right = _tau(shell, act)
    except NotWellDefined as exc:
        raise WellDefinednessFailure(str(exc)) from exc
    shell.extra["actions"] = act
    return shell


def square_subspace(T: NonAbelianProduct) -> Subspace:
    """The box subspace of ``T``'s ambient (relations of ``T`` included), checked central."""
    if T.kind != "tensor":
        raise ValueError("box subspace is defined on a tensor product")
    if T.box is not None:
        return T.box
    pb, pr_m, pr_n = pullback(T.left, T.right)
    ms = [pr_m.apply_sparse(pb.unit(k)) for k in range(pb.dim)]
    ns = [pr_n.apply_sparse(pb.unit(k)) for k in range(pb.dim)]
    gens = []
    for x in range(pb.dim):
        for y in range(pb.dim):
            gens.append(combine([(1, T.symbol_mn(ms[x], ns[y])), (-1, T.symbol_nm(ns[x], ms[y]))]))
    gens = [g for g in gens if g]
    # centrality in the tensor product
    br = _bracket_fn(T, T.extra["actions"])
    rel = T.space.relations
    for s in gens:
        for u in range(T.ambient_dim):
            left = combine((a, br(i, u)) for i, a in s.items())
            right = combine((a, br(u, i)) for i, a in s.items())
            if not rel.contains(left) or not rel.contains(right):
                raise WellDefinednessFailure("box element is not central")
    T.box = Subspace.span(T.space.field, T.ambient_dim, gens) + rel
    T.extra["box_generators"] = gens
    return T.box


def exterior_product(cm_m: CrossedModule, cm_n: CrossedModule, name: str = "",
                     tensor: NonAbelianProduct | None = None) -> NonAbelianProduct:
    T = tensor if tensor is not None else tensor_product(cm_m, cm_n)
    box = square_subspace(T)
    f = T.space.field
    q = quotient(T.ambient_dim, box)
    shell = NonAbelianProduct("exterior", cm_m, cm_n, q, None, parent=T)  # type: ignore[arg-type]
    labels = [shell.symbol_label(c).replace("*", "∧") for c in q.free]
    plain = [s.rstrip("'") for s in labels]
    if len(set(plain)) == len(plain):  # the box relation identifies n∧m' with m∧n
        labels = plain
    try:
        shell.algebra = algebra_on_quotient(f, q, _bracket_fn(shell, T.extra["actions"]), labels, name)
    except NotWellDefined as exc:
        raise WellDefinednessFailure(str(exc)) from exc
    o = f.one
    shell.pi = induced_from_columns([{i: o} for i in range(T.ambient_dim)], T.space, q)
    shell.extra["actions"] = T.extra["actions"]
    return shell


# ---------------------------------------------------------------------------
# ideals


@dataclass
class IdealPair:
    """Products of two ideals of one algebra, with their ambient basis vectors."""

    base: LeibnizAlgebra
    first: Ideal
    second: Ideal
    tensor: NonAbelianProduct
    exterior: NonAbelianProduct

    @property
    def first_vectors(self) -> list[dict]:
        return self.first.space.sparse_vectors()

    @property
    def second_vectors(self) -> list[dict]:
        return self.second.space.sparse_vectors()


def ideal_products(a: Ideal, b: Ideal) -> IdealPair:
    g = a.parent
    if b.parent != g:
        raise ValueError("ideals of different algebras")
    key = ("ideal-products", a.space, b.space)
    if key not in g._cache:
        cm_a = inclusion_crossed_module(g, a, check=False)
        cm_b = inclusion_crossed_module(g, b, check=False)
        T = tensor_product(cm_a, cm_b)
        E = exterior_product(cm_a, cm_b, tensor=T)
        g._cache[key] = IdealPair(g, a, b, T, E)
    return g._cache[key]


def _theta_columns(pair: IdealPair) -> tuple[Subspace, list[dict]]:
    g = pair.base
    meet = pair.first.space.intersect(pair.second.space)
    av, bv = pair.first_vectors, pair.second_vectors
    E = pair.exterior
    cols = []
    for idx in range(E.ambient_dim):
        kind, x, y = E.decode(idx)
        v = g.bracket_sparse(av[x], bv[y]) if kind == "mn" else g.bracket_sparse(bv[x], av[y])
        cols.append(sparse(meet.coords(v)))
    return meet, cols


def theta(a: Ideal, b: Ideal, on: str = "exterior") -> LinearMap:
    """``a∧b -> a∩b`` (or from ``a⋆b`` with ``on="tensor"``), symbols to brackets.

    The target is ``a∩b`` in its RREF coordinates. The map is checked to be
    an algebra morphism whose image is an ideal of the parent algebra.
    """
    pair = ideal_products(a, b)
    g = pair.base
    key = ("theta", a.space, b.space, on)
    if key in g._cache:
        return g._cache[key]
    meet, cols = _theta_columns(pair)
    P = pair.exterior if on == "exterior" else pair.tensor
    th = induced_from_columns(cols, P.space, space(g.field, meet.dim))
    meet_alg, _ = subalgebra(g, meet)
    AlgebraMorphism(P.algebra, meet_alg, th.matrix)
    img = Subspace.span(g.field, g.dim, [_embed(meet, c) for c in th.matrix.columns()])
    Ideal(g, img)
    g._cache[key] = th
    return th


def _embed(s: Subspace, coords: Sequence) -> dict:
    out: dict = {}
    for a, v in zip(coords, s.sparse_vectors()):
        if a:
            for k, x in v.items():
                nv = out.get(k, 0) + a * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    return out


def full_ideal(g: LeibnizAlgebra) -> Ideal:
    key = "full-ideal"
    if key not in g._cache:
        g._cache[key] = Ideal(g, Subspace.full(g.field, g.dim), "g")
    return g._cache[key]


def square_products(g: LeibnizAlgebra) -> IdealPair:
    """``g⋆g`` and ``g∧g`` (identity crossed modules)."""
    a = full_ideal(g)
    return ideal_products(a, a)


def theta_square(g: LeibnizAlgebra) -> LinearMap:
    """``θ_{g,g}: g∧g -> g``."""
    a = full_ideal(g)
    return theta(a, a)


def delta_iso(g: LeibnizAlgebra) -> LinearMap:
    """``g•g -> g∧g``, ``x•y ↦ x∧y``; bijectivity is asserted."""
    key = "delta"
    if key in g._cache:
        return g._cache[key]
    B = bullet_square(g)
    E = square_products(g).exterior
    o = g.field.one
    cols = [{E.mn(i, j): o} for i in range(g.dim) for j in range(g.dim)]
    try:
        d = induced_from_columns(cols, B.space, E.space)
    except NotWellDefined as exc:
        raise WellDefinednessFailure("boundaries do not vanish in the exterior square") from exc
    if not d.is_bijective():
        raise WellDefinednessFailure("bullet square and exterior square are not isomorphic")
    g._cache[key] = d
    return d


def bullet_bracket_map(g: LeibnizAlgebra) -> LinearMap:
    """``g•g -> g``, ``x•y ↦ [x,y]``."""
    B = bullet_square(g)
    cols = [dict(g.bracket_basis(i, j)) for i in range(g.dim) for j in range(g.dim)]
    return induced_from_columns(cols, B.space, space(g.field, g.dim))


# ---------------------------------------------------------------------------
# Lie squares


@dataclass
class LieSquare:
    kind: str  # "tensor" or "exterior"
    base: LeibnizAlgebra
    space: QuotientSpace
    algebra: LeibnizAlgebra

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_base(self) -> LinearMap:
        """``x⊗y ↦ [x,y]``."""
        g = self.base
        cols = [dict(g.bracket_basis(i, j)) for i in range(g.dim) for j in range(g.dim)]
        return induced_from_columns(cols, self.space, space(g.field, g.dim))


def _lie_relations(g: LeibnizAlgebra) -> list[dict]:
    d = g.dim
    o = g.field.one

    def t(u: dict, v: dict) -> dict:
        return _sym(u, v, lambda i, j: i * d + j)

    rels = []
    for x in range(d):
        ex = {x: o}
        for x2 in range(d):
            ex2 = {x2: o}
            for y in range(d):
                ey = {y: o}
                rels.append(combine([(1, t(g.bracket_basis(x, x2), ey)), (-1, t(ex, g.bracket_basis(x2, y))),
                                     (1, t(ex2, g.bracket_basis(x, y)))]))
                rels.append(combine([(1, t(ex, g.bracket_basis(x2, y))), (-1, t(g.bracket_basis(x, x2), ey)),
                                     (1, t(g.bracket_basis(x, y), ex2))]))
    return [r for r in rels if r]


def _lie_bracket(g: LeibnizAlgebra) -> Callable[[int, int], dict]:
    d = g.dim

    def br(u: int, v: int) -> dict:
        a, b = divmod(u, d)
        c, e = divmod(v, d)
        return _sym(g.bracket_basis(a, b), g.bracket_basis(c, e), lambda i, j: i * d + j)

    return br


def _require_lie(g: LeibnizAlgebra) -> None:
    if not is_lie(g):
        raise NotLieError("the algebra is not a Lie algebra")


def lie_tensor_square(g: LeibnizAlgebra) -> LieSquare:
    _require_lie(g)
    key = "lie-tensor"
    if key not in g._cache:
        d = g.dim
        q = quotient(d * d, sparse_image(_lie_relations(g), d * d, g.field))
        labels = [f"{g.labels[c // d]}⊗{g.labels[c % d]}" for c in q.free]
        alg = algebra_on_quotient(g.field, q, _lie_bracket(g), labels)
        g._cache[key] = LieSquare("tensor", g, q, alg)
    return g._cache[key]


def lie_exterior_square(g: LeibnizAlgebra) -> LieSquare:
    _require_lie(g)
    key = "lie-exterior"
    if key not in g._cache:
        d = g.dim
        o = g.field.one
        sym = []
        for i in range(d):
            sym.append({i * d + i: o})
            for j in range(i + 1, d):
                sym.append({i * d + j: o, j * d + i: o})
        q = quotient(d * d, sparse_image(_lie_relations(g) + sym, d * d, g.field))
        labels = [f"{g.labels[c // d]}∧{g.labels[c % d]}" for c in q.free]
        alg = algebra_on_quotient(g.field, q, _lie_bracket(g), labels)
        g._cache[key] = LieSquare("exterior", g, q, alg)
    return g._cache[key]


@dataclass
class LieComparisonMaps:
    exterior_to_lie_tensor: LinearMap
    exterior_to_lie_exterior: LinearMap
    tensor_to_lie_tensor: LinearMap  # the natural epimorphism g⋆g -> g⋆_Lie g
    lie_tensor_to_lie_exterior: LinearMap


def leibniz_to_lie_square_maps(g: LeibnizAlgebra) -> LieComparisonMaps:
    _require_lie(g)
    pair = square_products(g)
    T, E = pair.tensor, pair.exterior
    LT, LE = lie_tensor_square(g), lie_exterior_square(g)
    d = g.dim
    o = g.field.one
    cols = []
    for idx in range(T.ambient_dim):
        kind, a, b = T.decode(idx)
        cols.append({a * d + b: o})
    try:
        e_lt = induced_from_columns(cols, E.space, LT.space)
        e_le = induced_from_columns(cols, E.space, LE.space)
        t_lt = induced_from_columns(cols, T.space, LT.space)
        lt_le = induced_from_columns([{k: o} for k in range(d * d)], LT.space, LE.space)
    except NotWellDefined as exc:
        raise WellDefinednessFailure(str(exc)) from exc
    return LieComparisonMaps(e_lt, e_le, t_lt, lt_le)


# ---------------------------------------------------------------------------
# functoriality


def product_map(src: NonAbelianProduct, dst: NonAbelianProduct, left_cols: Sequence[dict],
                right_cols: Sequence[dict]) -> LinearMap:
    """Map of products induced by linear maps on the two factors.

    ``left_cols[i]`` is the image of the i-th basis vector of ``src``'s left
    factor in ``dst``'s left factor coordinates; likewise for the right.
    """
    cols = []
    for idx in range(src.ambient_dim):
        kind, a, b = src.decode(idx)
        if kind == "mn":
            cols.append(dst.symbol_mn(left_cols[a], right_cols[b]))
        else:
            cols.append(dst.symbol_nm(right_cols[a], left_cols[b]))
    try:
        return induced_from_columns(cols, src.space, dst.space)
    except NotWellDefined as exc:
        raise WellDefinednessFailure("factor maps do not induce a map of products") from exc


def ideal_map_columns(src: Ideal, dst: Ideal, ambient_map: Callable[[dict], dict] | None = None) -> list[dict]:
    """Columns of ``src -> dst`` (RREF coordinates), through an optional ambient map."""
    out = []
    for v in src.space.sparse_vectors():
        w = ambient_map(v) if ambient_map is not None else v
        out.append(sparse(dst.space.coords(w)))
    return out


def matrix_columns(m: Matrix) -> list[dict]:
    return [sparse(c) for c in m.columns()]


__all__ = [
    "IdealPair",
    "LieComparisonMaps",
    "LieSquare",
    "NonAbelianProduct",
    "WellDefinednessFailure",
    "apply_columns",
    "bullet_bracket_map",
    "delta_iso",
    "exterior_product",
    "full_ideal",
    "ideal_map_columns",
    "ideal_products",
    "identity_crossed_module",
    "leibniz_to_lie_square_maps",
    "lie_exterior_square",
    "lie_tensor_square",
    "matrix_columns",
    "product_map",
    "square_products",
    "square_subspace",
    "tensor_product",
    "theta",
    "theta_square",
]
