"""Leibniz algebras given by structure constants, ideals, actions, crossed modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactla import (
    DimensionMismatch,
    Field,
    LinearMap,
    Matrix,
    NotWellDefined,
    QuotientSpace,
    Subspace,
    dense,
    induced_map,
    kernel,
    quotient,
    space,
    sparse,
)


class LeibnizIdentityError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        shown = ", ".join(f"({i + 1},{j + 1},{k + 1})" for i, j, k, *_ in violations[:5])
        more = "" if len(violations) <= 5 else f" and {len(violations) - 5} more"
        super().__init__(f"Leibniz identity fails at basis triples {shown}{more}")


class AxiomError(ValueError):
    pass


def axpy(acc: dict, a, v: Mapping) -> None:
    """acc += a * v, dropping zeros."""
    for k, x in v.items():
        nv = acc.get(k, 0) + a * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def combine(terms) -> dict:
    acc: dict = {}
    for a, v in terms:
        if a:
            axpy(acc, a, v)
    return acc


def _sparse_any(field: Field, v) -> dict:
    if isinstance(v, dict):
        return {k: field(x) for k, x in v.items() if field(x)}
    return {k: field(x) for k, x in enumerate(v) if field(x)}


class LeibnizAlgebra:
    """Finite-dimensional Leibniz algebra: ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    ``structure`` is either an ``n x n x n`` nested sequence or a mapping
    ``{(i, j): vector}`` of nonzero brackets (0-based indices, vectors as
    dense sequences or ``{k: c}`` dicts).
    """

    def __init__(self, field: Field, dim: int, structure=None, labels: Sequence[str] | None = None,
                 name: str = "", check: bool = True):
        self.field = field
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionMismatch("one label per basis vector required")
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        if structure is None:
            structure = {}
        if isinstance(structure, Mapping):
            for (i, j), v in structure.items():
                if not (0 <= i < dim and 0 <= j < dim):
                    raise DimensionMismatch(f"bracket index ({i},{j}) out of range")
                table[i][j] = _sparse_any(field, v)
                if any(not 0 <= k < dim for k in table[i][j]):
                    raise DimensionMismatch("bracket coefficient index out of range")
        else:
            if len(structure) != dim or any(len(r) != dim for r in structure):
                raise DimensionMismatch("structure tensor must be n x n x n")
            for i in range(dim):
                for j in range(dim):
                    if len(structure[i][j]) != dim:
                        raise DimensionMismatch("structure tensor must be n x n x n")
                    table[i][j] = _sparse_any(field, structure[i][j])
        self._table = table
        self._cache: dict = {}
        if check:
            bad = validate_leibniz(self)
            if bad:
                raise LeibnizIdentityError(bad)

    # -- basic access --------------------------------------------------------

    @property
    def structure(self) -> tuple:
        f, n = self.field, self.dim
        return tuple(tuple(dense(f, self._table[i][j], n) for j in range(n)) for i in range(n))

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._table[i][j]

    def bracket_sparse(self, u: Mapping, v: Mapping) -> dict:
        acc: dict = {}
        t = self._table
        for i, a in u.items():
            row = t[i]
            for j, b in v.items():
                c = row[j]
                if c:
                    axpy(acc, a * b, c)
        return acc

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        return dense(self.field, self.bracket_sparse(sparse(u), sparse(v)), self.dim)

    def unit(self, i: int) -> dict:
        return {i: self.field.one}

    def left_mult(self, x: Mapping) -> Matrix:
        """Matrix of y -> [x, y]."""
        return Matrix.from_sparse_columns(self.field, [self.bracket_sparse(x, self.unit(j)) for j in range(self.dim)], self.dim)

    def right_mult(self, x: Mapping) -> Matrix:
        """Matrix of y -> [y, x]."""
        return Matrix.from_sparse_columns(self.field, [self.bracket_sparse(self.unit(j), x) for j in range(self.dim)], self.dim)

    def nonzero_brackets(self) -> dict:
        return {(i, j): dict(self._table[i][j]) for i in range(self.dim) for j in range(self.dim) if self._table[i][j]}

    def is_abelian(self) -> bool:
        return not any(self._table[i][j] for i in range(self.dim) for j in range(self.dim))

    @property
    def space(self) -> QuotientSpace:
        return space(self.field, self.dim)

    def permuted(self, perm: Sequence[int]) -> LeibnizAlgebra:
        """Relabel: new basis vector ``k`` is old basis vector ``perm[k]``."""
        inv = {old: new for new, old in enumerate(perm)}
        br = {}
        for (i, j), v in self.nonzero_brackets().items():
            br[(inv[i], inv[j])] = {inv[k]: c for k, c in v.items()}
        return LeibnizAlgebra(self.field, self.dim, br, [self.labels[p] for p in perm], self.name)

    def __eq__(self, other):
        return (
            isinstance(other, LeibnizAlgebra)
            and self.field == other.field
            and self.dim == other.dim
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.field, self.dim, tuple(tuple(sorted(v.items())) for r in self._table for v in r)))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LeibnizAlgebra{tag} dim={self.dim} over {self.field}>"


def validate_leibniz(g: LeibnizAlgebra) -> list[tuple]:
    """Basis triples (i, j, k) where [x,[y,z]] = [[x,y],z] - [[x,z],y] fails.

    Each entry is ``(i, j, k, lhs, rhs)`` with sparse vectors.
    """
    bad = []
    n = g.dim
    t = g._table
    for i in range(n):
        if not any(t[i]):
            # e_i left-annihilates g: both sides vanish
            continue
        ei = g.unit(i)
        for j in range(n):
            for k in range(n):
                lhs = g.bracket_sparse(ei, t[j][k])
                rhs = combine([(1, g.bracket_sparse(t[i][j], g.unit(k))), (-1, g.bracket_sparse(t[i][k], g.unit(j)))])
                if lhs != rhs:
                    bad.append((i, j, k, lhs, rhs))
    return bad


def abelian(field: Field, n: int, name: str = "") -> LeibnizAlgebra:
    return LeibnizAlgebra(field, n, {}, name=name or f"abelian{n}")


# ---------------------------------------------------------------------------
# morphisms, ideals


class AlgebraMorphism:
    def __init__(self, domain: LeibnizAlgebra, codomain: LeibnizAlgebra, matrix: Matrix, check: bool = True):
        if matrix.shape != (codomain.dim, domain.dim):
            raise DimensionMismatch("morphism matrix has wrong shape")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        if check:
            cols = [sparse(c) for c in matrix.columns()]
            for i in range(domain.dim):
                for j in range(domain.dim):
                    lhs = self.apply_sparse(domain.bracket_basis(i, j))
                    rhs = codomain.bracket_sparse(cols[i], cols[j])
                    if lhs != rhs:
                        raise AxiomError(f"map does not preserve the bracket on ({i + 1},{j + 1})")

    @property
    def map(self) -> LinearMap:
        return LinearMap(self.domain.space, self.codomain.space, self.matrix)

    def apply_sparse(self, v: Mapping) -> dict:
        acc: dict = {}
        rows = self.matrix.rows
        for k, a in v.items():
            for r in range(len(rows)):
                x = rows[r][k]
                if x:
                    nv = acc.get(r, 0) + a * x
                    if nv:
                        acc[r] = nv
                    else:
                        acc.pop(r, None)
        return acc

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def compose(self, inner: AlgebraMorphism) -> AlgebraMorphism:
        return AlgebraMorphism(inner.domain, self.codomain, self.matrix @ inner.matrix, check=False)

    @classmethod
    def identity(cls, g: LeibnizAlgebra) -> AlgebraMorphism:
        return cls(g, g, Matrix.identity(g.field, g.dim), check=False)


class Ideal:
    """Two-sided ideal; membership of every bracket is verified on construction."""

    def __init__(self, parent: LeibnizAlgebra, space_: Subspace, name: str = ""):
        if space_.ambient_dim != parent.dim:
            raise DimensionMismatch("ideal subspace lives in the wrong ambient")
        self.parent = parent
        self.space = space_
        self.name = name
        for a in space_.sparse_vectors():
            for x in range(parent.dim):
                ex = parent.unit(x)
                if not space_.contains(parent.bracket_sparse(a, ex)) or not space_.contains(parent.bracket_sparse(ex, a)):
                    raise AxiomError("subspace is not a two-sided ideal")

    @classmethod
    def spanned_by(cls, parent: LeibnizAlgebra, vectors, name: str = "") -> Ideal:
        return cls(parent, Subspace.span(parent.field, parent.dim, vectors), name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.parent == other.parent and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"<Ideal {self.name or ''} dim={self.dim} of {self.parent!r}>"


def commutator_ideal(g: LeibnizAlgebra) -> Ideal:
    key = "commutator"
    if key not in g._cache:
        vecs = [g.bracket_basis(i, j) for i in range(g.dim) for j in range(g.dim)]
        g._cache[key] = Ideal(g, Subspace.span(g.field, g.dim, vecs), "[g,g]")
    return g._cache[key]


def center(g: LeibnizAlgebra) -> Ideal:
    n = g.dim
    rows = []
    for x in range(n):
        ex = g.unit(x)
        rows.extend(g.left_mult(ex).rows)
        rows.extend(g.right_mult(ex).rows)
    m = Matrix._raw(g.field, tuple(rows), n) if rows else Matrix.zeros(g.field, 0, n)
    ker = kernel(LinearMap(space(g.field, n), space(g.field, m.nrows), m))
    return Ideal(g, ker, "C(g)")


def ideal_closure(g: LeibnizAlgebra, seed: Subspace) -> Ideal:
    """Smallest two-sided ideal containing ``seed``."""
    cur = seed
    while True:
        gens = list(cur.sparse_vectors())
        for a in cur.sparse_vectors():
            for x in range(g.dim):
                ex = g.unit(x)
                gens.append(g.bracket_sparse(a, ex))
                gens.append(g.bracket_sparse(ex, a))
        nxt = Subspace.span(g.field, g.dim, gens)
        if nxt.dim == cur.dim:
            return Ideal(g, nxt)
        cur = nxt


def quotient_algebra(g: LeibnizAlgebra, a: Ideal, name: str = "") -> tuple[LeibnizAlgebra, AlgebraMorphism]:
    """``g / a`` with the projection; basis = cosets of the non-pivot unit vectors."""
    if a.parent != g:
        raise ValueError("ideal belongs to another algebra")
    q = quotient(g.dim, a.space)
    # bracket descends iff left/right multiplications descend
    for x in range(g.dim):
        ex = g.unit(x)
        induced_map(g.left_mult(ex), q, q)
        induced_map(g.right_mult(ex), q, q)
    br = {}
    for i in range(q.dim):
        for j in range(q.dim):
            v = q.project(g.bracket_sparse(q.lift_basis(i), q.lift_basis(j)))
            if any(v):
                br[(i, j)] = v
    labels = [g.labels[c] for c in q.free]
    h = LeibnizAlgebra(g.field, q.dim, br, labels, name or (f"{g.name}/{a.name}" if g.name else ""))
    proj = AlgebraMorphism(g, h, q.projection, check=True)
    return h, proj


def abelianization(g: LeibnizAlgebra) -> tuple[LeibnizAlgebra, AlgebraMorphism]:
    return quotient_algebra(g, commutator_ideal(g), f"{g.name}^ab" if g.name else "")


def square_span(g: LeibnizAlgebra) -> Subspace:
    """span{[x, x] : x in g}, via [e_i,e_i] and [e_i,e_j] + [e_j,e_i] (valid in every characteristic)."""
    vecs = []
    for i in range(g.dim):
        vecs.append(g.bracket_basis(i, i))
        for j in range(i + 1, g.dim):
            vecs.append(combine([(1, g.bracket_basis(i, j)), (1, g.bracket_basis(j, i))]))
    return Subspace.span(g.field, g.dim, vecs)


def liezation(g: LeibnizAlgebra) -> tuple[LeibnizAlgebra, AlgebraMorphism]:
    ideal = ideal_closure(g, square_span(g))
    ideal.name = "squares"
    h, proj = quotient_algebra(g, ideal, f"Lie({g.name})" if g.name else "")
    return h, proj


def is_lie(g: LeibnizAlgebra) -> bool:
    return square_span(g).dim == 0


def is_perfect(g: LeibnizAlgebra) -> bool:
    return commutator_ideal(g).dim == g.dim


def subalgebra(g: LeibnizAlgebra, s: Subspace, name: str = "") -> tuple[LeibnizAlgebra, AlgebraMorphism]:
    """A bracket-closed subspace as an algebra on its RREF basis, with the inclusion."""
    basis = s.sparse_vectors()
    br = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            w = g.bracket_sparse(u, v)
            if w:
                if not s.contains(w):
                    raise AxiomError("subspace is not closed under the bracket")
                br[(i, j)] = s.coords(w)
    labels = [g.labels[p] for p in s.pivots]
    sub = LeibnizAlgebra(g.field, s.dim, br, labels, name)
    return sub, AlgebraMorphism(sub, g, s.inclusion_matrix(), check=False)


def ideal_algebra(a: Ideal) -> tuple[LeibnizAlgebra, AlgebraMorphism]:
    return subalgebra(a.parent, a.space, a.name)


def direct_sum(g: LeibnizAlgebra, h: LeibnizAlgebra, name: str = "") -> LeibnizAlgebra:
    if g.field != h.field:
        raise ValueError("algebras over different fields")
    n = g.dim
    br = {}
    for (i, j), v in g.nonzero_brackets().items():
        br[(i, j)] = v
    for (i, j), v in h.nonzero_brackets().items():
        br[(n + i, n + j)] = {n + k: c for k, c in v.items()}
    labels = list(g.labels) + list(h.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{l}_1" for l in g.labels] + [f"{l}_2" for l in h.labels]
    return LeibnizAlgebra(g.field, n + h.dim, br, labels, name or (f"{g.name}+{h.name}" if g.name and h.name else ""))


@dataclass
class Extension:
    """``0 -> ideal -> total -> quotient -> 0`` with optional splitting."""

    total: LeibnizAlgebra
    ideal: Ideal
    quotient: LeibnizAlgebra
    projection: AlgebraMorphism
    splitting: AlgebraMorphism | None = None
    name: str = ""

    def __post_init__(self):
        p = self.projection
        if p.domain != self.total or p.codomain != self.quotient:
            raise ValueError("projection does not match the extension")
        if not p.map.is_surjective():
            raise AxiomError("projection is not surjective")
        if kernel(p.map) != self.ideal.space:
            raise AxiomError("kernel of the projection is not the ideal")
        if self.splitting is not None:
            s = self.splitting
            if s.domain != self.quotient or s.codomain != self.total:
                raise ValueError("splitting has the wrong shape")
            if (p.matrix @ s.matrix) != Matrix.identity(self.total.field, self.quotient.dim):
                raise AxiomError("projection after splitting is not the identity")


def extension_from(g: LeibnizAlgebra, a: Ideal, splitting_images=None, name: str = "") -> Extension:
    """Build ``0 -> a -> g -> g/a -> 0``.

    ``splitting_images`` (optional) lists, for each basis vector of ``g/a``,
    its image in ``g``; the resulting map must be a morphism.
    """
    h, proj = quotient_algebra(g, a)
    sigma = None
    if splitting_images is not None:
        cols = [_sparse_any(g.field, v) for v in splitting_images]
        sigma = AlgebraMorphism(h, g, Matrix.from_sparse_columns(g.field, cols, g.dim))
    return Extension(g, a, h, proj, sigma, name)


# ---------------------------------------------------------------------------
# actions and crossed modules


class Action:
    """Leibniz action of ``actor`` on ``actee``.

    ``left[x][a]`` is ``^x a`` and ``right[a][x]`` is ``a^x``, both sparse
    vectors in ``actee`` coordinates.
    """

    def __init__(self, actor: LeibnizAlgebra, actee: LeibnizAlgebra, left, right, check: bool = True):
        self.actor = actor
        self.actee = actee
        self.left = left
        self.right = right
        if check:
            bad = self.violations()
            if bad:
                raise AxiomError(f"action axioms fail: {bad[:3]}")

    def act_left(self, x: Mapping, a: Mapping) -> dict:
        acc: dict = {}
        for i, s in x.items():
            row = self.left[i]
            for j, t in a.items():
                if row[j]:
                    axpy(acc, s * t, row[j])
        return acc

    def act_right(self, a: Mapping, x: Mapping) -> dict:
        acc: dict = {}
        for j, t in a.items():
            row = self.right[j]
            for i, s in x.items():
                if row[i]:
                    axpy(acc, s * t, row[i])
        return acc

    def violations(self) -> list[str]:
        m, n = self.actor, self.actee
        bad = []
        L, R = self.act_left, self.act_right
        for i in range(m.dim):
            x = m.unit(i)
            for i2 in range(m.dim):
                x2 = m.unit(i2)
                xx = m.bracket_sparse(x, x2)
                for j in range(n.dim):
                    a = n.unit(j)
                    # ^{[m,m']}n = ^m(^{m'}n) + (^m n)^{m'}
                    if L(xx, a) != combine([(1, L(x, L(x2, a))), (1, R(L(x, a), x2))]):
                        bad.append(f"left-bracket ({i},{i2},{j})")
                    # n^{[m,m']} = (n^m)^{m'} - (n^{m'})^m
                    if R(a, xx) != combine([(1, R(R(a, x), x2)), (-1, R(R(a, x2), x))]):
                        bad.append(f"right-bracket ({i},{i2},{j})")
                    # ^m(^{m'}n) = -^m(n^{m'})
                    if L(x, L(x2, a)) != combine([(-1, L(x, R(a, x2)))]):
                        bad.append(f"left-left ({i},{i2},{j})")
            for j in range(n.dim):
                a = n.unit(j)
                for j2 in range(n.dim):
                    a2 = n.unit(j2)
                    aa = n.bracket_sparse(a, a2)
                    # ^m[n,n'] = [^m n, n'] - [^m n', n]
                    if L(x, aa) != combine([(1, n.bracket_sparse(L(x, a), a2)), (-1, n.bracket_sparse(L(x, a2), a))]):
                        bad.append(f"left-on-bracket ({i},{j},{j2})")
                    # [n,n']^m = [n^m, n'] + [n, n'^m]
                    if R(aa, x) != combine([(1, n.bracket_sparse(R(a, x), a2)), (1, n.bracket_sparse(a, R(a2, x)))]):
                        bad.append(f"right-on-bracket ({i},{j},{j2})")
                    # [n, ^m n'] = -[n, n'^m]
                    if n.bracket_sparse(a, L(x, a2)) != combine([(-1, n.bracket_sparse(a, R(a2, x)))]):
                        bad.append(f"bracket-left ({i},{j},{j2})")
        return bad


def bracket_action(g: LeibnizAlgebra, sub: LeibnizAlgebra, incl: AlgebraMorphism, target: Subspace,
                   actor: LeibnizAlgebra | None = None, actor_map: AlgebraMorphism | None = None) -> Action:
    """Action of ``actor`` (default g) on an ideal ``sub`` of g by the bracket of g."""
    if actor is None:
        actor = g
        actor_cols = [g.unit(i) for i in range(g.dim)]
    else:
        actor_cols = [sparse(c) for c in actor_map.matrix.columns()]
    sub_cols = [sparse(c) for c in incl.matrix.columns()]
    left = [[_coords(target, g.bracket_sparse(x, a)) for a in sub_cols] for x in actor_cols]
    right = [[_coords(target, g.bracket_sparse(a, x)) for x in actor_cols] for a in sub_cols]
    return Action(actor, sub, left, right, check=False)


def _coords(s: Subspace, v: dict) -> dict:
    return sparse(s.coords(v))


class CrossedModule:
    """``eta: m -> g`` with an action of g on m satisfying equivariance and Peiffer."""

    def __init__(self, eta: AlgebraMorphism, action: Action, check: bool = True, name: str = ""):
        if action.actor != eta.codomain or action.actee != eta.domain:
            raise ValueError("action does not match the morphism")
        self.eta = eta
        self.action = action
        self.name = name
        if check:
            bad = action.violations()
            if bad:
                raise AxiomError(f"action axioms fail: {bad[:3]}")
            bad = self.violations()
            if bad:
                raise AxiomError(f"crossed module axioms fail: {bad[:3]}")

    @property
    def source(self) -> LeibnizAlgebra:
        return self.eta.domain

    @property
    def base(self) -> LeibnizAlgebra:
        return self.eta.codomain

    def violations(self) -> list[str]:
        m, g = self.source, self.base
        eta = self.eta.apply_sparse
        L, R = self.action.act_left, self.action.act_right
        bad = []
        for x in range(g.dim):
            ex = g.unit(x)
            for i in range(m.dim):
                a = m.unit(i)
                if eta(L(ex, a)) != g.bracket_sparse(ex, eta(a)):
                    bad.append(f"eta(^x m) ({x},{i})")
                if eta(R(a, ex)) != g.bracket_sparse(eta(a), ex):
                    bad.append(f"eta(m^x) ({i},{x})")
        for i in range(m.dim):
            a = m.unit(i)
            for j in range(m.dim):
                b = m.unit(j)
                br = m.bracket_sparse(a, b)
                if L(eta(a), b) != br:
                    bad.append(f"^eta(m1) m2 ({i},{j})")
                if R(a, eta(b)) != br:
                    bad.append(f"m1^eta(m2) ({i},{j})")
        return bad


def inclusion_crossed_module(g: LeibnizAlgebra, a: Ideal, check: bool = True) -> CrossedModule:
    sub, incl = ideal_algebra(a)
    act = bracket_action(g, sub, incl, a.space)
    return CrossedModule(incl, act, check=check, name=a.name)


def identity_crossed_module(g: LeibnizAlgebra) -> CrossedModule:
    return inclusion_crossed_module(g, Ideal(g, Subspace.full(g.field, g.dim), "g"))


def pullback(cm1: CrossedModule, cm2: CrossedModule) -> tuple[LeibnizAlgebra, AlgebraMorphism, AlgebraMorphism]:
    """``{(m, n) : eta(m) = mu(n)}`` as a subalgebra of m + n, with both projections."""
    if cm1.base != cm2.base:
        raise ValueError("crossed modules over different base algebras")
    m, n = cm1.source, cm2.source
    total = direct_sum(m, n)
    f = total.field
    big = Matrix._raw(
        f,
        tuple(tuple(r1) + tuple(-x for x in r2) for r1, r2 in zip(cm1.eta.matrix.rows, cm2.eta.matrix.rows)),
        m.dim + n.dim,
    ) if cm1.base.dim else Matrix.zeros(f, 0, m.dim + n.dim)
    ker = kernel(LinearMap(space(f, m.dim + n.dim), space(f, big.nrows), big))
    pb, incl = subalgebra(total, ker, "pullback")
    inc = incl.matrix
    pm = Matrix._raw(f, inc.rows[: m.dim], pb.dim)
    pn = Matrix._raw(f, inc.rows[m.dim:], pb.dim)
    return pb, AlgebraMorphism(pb, m, pm), AlgebraMorphism(pb, n, pn)


def check_descends(g: LeibnizAlgebra, q: QuotientSpace) -> None:
    for x in range(g.dim):
        ex = g.unit(x)
        for r in q.relations.sparse_vectors():
            if not q.relations.contains(g.bracket_sparse(ex, r)) or not q.relations.contains(g.bracket_sparse(r, ex)):
                raise NotWellDefined("bracket does not descend")


def algebra_on_quotient(field: Field, q: QuotientSpace, bilinear, labels=None, name: str = "",
                        check: bool = True) -> LeibnizAlgebra:
    """Algebra on ``q`` from a bilinear map on ambient basis vectors.

    ``bilinear(i, j)`` returns the sparse ambient vector of the product of
    ambient basis vectors ``i`` and ``j``. Raises NotWellDefined unless the
    relations of ``q`` form a two-sided ideal for that product.
    """
    memo: dict = {}

    def prod(i: int, j: int) -> dict:
        key = (i, j)
        if key not in memo:
            memo[key] = bilinear(i, j)
        return memo[key]

    rel = q.relations
    for r in rel.sparse_vectors():
        for j in range(q.ambient_dim):
            left = combine((a, prod(i, j)) for i, a in r.items())
            right = combine((a, prod(j, i)) for i, a in r.items())
            if not rel.contains(left) or not rel.contains(right):
                raise NotWellDefined("product does not descend to the quotient")
    br = {}
    for a, i in enumerate(q.free):
        for b, j in enumerate(q.free):
            v = prod(i, j)
            if v:
                w = q.project(v)
                if any(w):
                    br[(a, b)] = w
    return LeibnizAlgebra(field, q.dim, br, labels, name, check=check)
