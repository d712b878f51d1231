"""Loday and Chevalley-Eilenberg homology by exact rank computations.

Chains of degree ``n`` live in ``g^{⊗n}`` (or ``Λ^n g``). Basis tensors are
ordered lexicographically in their index tuples; exterior monomials are the
increasing tuples in lexicographic order. Chain vectors are sparse dicts
keyed by basis position.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Callable, Sequence

from .algebra import AlgebraMorphism, LeibnizAlgebra, algebra_on_quotient, commutator_ideal, is_lie
from .exactla import (
    Field,
    LinearAlgebraError,
    LinearMap,
    Matrix,
    NotWellDefined,
    QuotientSpace,
    Subspace,
    apply_columns,
    quotient,
    space,
    sparse_image,
    sparse_kernel,
)

DEFAULT_MAX_DEGREE = 3
MAX_CHAIN_DIM = 10**4


class CapacityError(ValueError):
    """Requested degree or chain dimension exceeds the configured bound."""


class NotLieError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tensor and exterior bases


def tensor_index(t: Sequence[int], dim: int) -> int:
    i = 0
    for a in t:
        i = i * dim + a
    return i


def tensor_tuple(i: int, dim: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        i, r = divmod(i, dim)
        out.append(r)
    return tuple(reversed(out))


def tensor_basis(dim: int, n: int) -> list[tuple[int, ...]]:
    return list(product(range(dim), repeat=n))


def exterior_basis(dim: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations(range(dim), n))


def sort_sign(t: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sign of the sorting permutation and the sorted tuple; None on repeats."""
    if len(set(t)) != len(t):
        return None
    lst = list(t)
    sign = 1
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


def _check_capacity(dim: int, n: int, max_chain_dim: int) -> None:
    if dim**n > max_chain_dim:
        raise CapacityError(f"chain space of dimension {dim}^{n} exceeds the bound {max_chain_dim}")


# ---------------------------------------------------------------------------
# Loday complex


def loday_columns(g: LeibnizAlgebra, n: int) -> list[dict]:
    """Sparse columns of ``d_n: g^{⊗n} -> g^{⊗(n-1)}`` (``d_1 = 0`` into the ground field)."""
    if n < 1:
        raise ValueError("boundary degree must be at least 1")
    key = ("loday", n)
    if key in g._cache:
        return g._cache[key]
    d = g.dim
    t = g._table
    cols: list[dict] = []
    if n == 1:
        cols = [{} for _ in range(d)]
    else:
        for tup in tensor_basis(d, n):
            col: dict = {}
            for j in range(1, n):
                sign = 1 if (j + 1) % 2 == 0 else -1
                for i in range(j):
                    br = t[tup[i]][tup[j]]
                    if not br:
                        continue
                    rest = tup[:j] + tup[j + 1:]
                    for k, c in br.items():
                        new = rest[:i] + (k,) + rest[i + 1:]
                        idx = tensor_index(new, d)
                        nv = col.get(idx, 0) + sign * c
                        if nv:
                            col[idx] = nv
                        else:
                            col.pop(idx, None)
            cols.append(col)
    g._cache[key] = cols
    return cols


def loday_boundary(g: LeibnizAlgebra, n: int) -> LinearMap:
    cols = loday_columns(g, n)
    nrows = 1 if n == 1 else g.dim ** (n - 1)
    return LinearMap(space(g.field, g.dim**n), space(g.field, nrows), Matrix.from_sparse_columns(g.field, cols, nrows))


@dataclass
class ChainComplex:
    """``C_0 <- C_1 <- ... <- C_top``; ``columns[n]`` are the sparse columns of ``d_n``."""

    field: Field
    dims: list[int]
    columns: dict[int, list[dict]]

    def check_dd(self) -> list[int]:
        """Degrees ``n`` where ``d_{n-1} d_n`` is nonzero."""
        bad = []
        for n in sorted(self.columns):
            if n - 1 in self.columns:
                lower = self.columns[n - 1]
                if any(apply_columns(lower, c) for c in self.columns[n]):
                    bad.append(n)
        return bad


def loday_complex(g: LeibnizAlgebra, top: int, max_chain_dim: int = MAX_CHAIN_DIM) -> ChainComplex:
    _check_capacity(g.dim, top, max_chain_dim)
    dims = [1] + [g.dim**k for k in range(1, top + 1)]
    return ChainComplex(g.field, dims, {k: loday_columns(g, k) for k in range(1, top + 1)})


# ---------------------------------------------------------------------------
# homology


@dataclass
class HomologyResult:
    """``H_n = Z_n / B_n``.

    ``space`` is the quotient of cycle coordinates (in the RREF basis of
    ``cycles``) by the boundaries; representatives are cycles in the chain
    space.
    """

    degree: int
    chain_dim: int
    cycles: Subspace
    boundaries: Subspace
    space: QuotientSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.cycles.field

    def project(self, chain) -> tuple:
        """Homology class of a cycle."""
        try:
            return self.space.project(self.cycles.coords(chain))
        except LinearAlgebraError as exc:
            raise NotWellDefined("chain is not a cycle") from exc

    def representative(self, k: int) -> dict:
        return dict(self.cycles.sparse_vectors()[self.space.free[k]])

    def representatives(self) -> list[dict]:
        z = self.cycles.sparse_vectors()
        return [dict(z[c]) for c in self.space.free]


def homology_from_columns(field: Field, degree: int, chain_dim: int, d_out: list[dict] | None,
                          out_dim: int, d_in: list[dict] | None) -> HomologyResult:
    cycles = sparse_kernel(d_out, out_dim, field) if d_out is not None else Subspace.full(field, chain_dim)
    bounds = sparse_image(d_in, chain_dim, field) if d_in is not None else Subspace.zero(field, chain_dim)
    if not bounds.issubset(cycles):
        raise LinearAlgebraError("boundaries are not cycles: d∘d ≠ 0")
    rel = Subspace.span(field, cycles.dim, [cycles.coords(b) for b in bounds.sparse_vectors()])
    return HomologyResult(degree, chain_dim, cycles, bounds, quotient(cycles.dim, rel))


def leibniz_homology(g: LeibnizAlgebra, n: int, max_degree: int = DEFAULT_MAX_DEGREE,
                     max_chain_dim: int = MAX_CHAIN_DIM) -> HomologyResult:
    """``HL_n(g)``; ``HL_0`` is the ground field."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > max_degree:
        raise CapacityError(f"degree {n} exceeds the configured maximum {max_degree}")
    _check_capacity(g.dim, n + 1, max_chain_dim)
    key = ("HL", n)
    if key in g._cache:
        return g._cache[key]
    chain_dim = g.dim**n
    d_out = loday_columns(g, n) if n >= 1 else None
    out_dim = 1 if n == 1 else g.dim ** (n - 1)
    d_in = loday_columns(g, n + 1)
    res = homology_from_columns(g.field, n, chain_dim, d_out, out_dim, d_in)
    g._cache[key] = res
    return res


def homology_map(apply: Callable[[dict], dict], src: HomologyResult, dst: HomologyResult) -> LinearMap:
    """Map on homology induced by a chain map given as a function on sparse chains."""
    for b in src.boundaries.sparse_vectors():
        if not dst.boundaries.contains(apply(b)):
            raise NotWellDefined("chain map does not send boundaries to boundaries")
    images = [dst.project(apply(r)) for r in src.representatives()]
    return LinearMap.from_images(src.space, dst.space, images)


def tensor_power_apply(columns: Sequence[dict], n: int, src_dim: int, dst_dim: int) -> Callable[[dict], dict]:
    """``f^{⊗n}`` on sparse chains, ``f`` given by sparse columns."""
    memo: dict[int, dict] = {}

    def on_basis(idx: int) -> dict:
        if idx in memo:
            return memo[idx]
        acc: dict = {0: 1}
        for a in tensor_tuple(idx, src_dim, n):
            nxt: dict = {}
            for k, x in acc.items():
                for m, y in columns[a].items():
                    key = k * dst_dim + m
                    nv = nxt.get(key, 0) + x * y
                    if nv:
                        nxt[key] = nv
                    else:
                        nxt.pop(key, None)
            acc = nxt
        memo[idx] = acc
        return acc

    def apply(v: dict) -> dict:
        out: dict = {}
        for idx, a in v.items():
            for k, x in on_basis(idx).items():
                nv = out.get(k, 0) + a * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    return apply


def morphism_columns(f: AlgebraMorphism) -> list[dict]:
    return [{i: x for i, x in enumerate(c) if x} for c in f.matrix.columns()]


def induced_homology_map(f: AlgebraMorphism, n: int, max_degree: int = DEFAULT_MAX_DEGREE,
                         max_chain_dim: int = MAX_CHAIN_DIM) -> LinearMap:
    src = leibniz_homology(f.domain, n, max_degree, max_chain_dim)
    dst = leibniz_homology(f.codomain, n, max_degree, max_chain_dim)
    if n == 0:
        return homology_map(dict, src, dst)
    return homology_map(tensor_power_apply(morphism_columns(f), n, f.domain.dim, f.codomain.dim), src, dst)


def hl1_to_abelianization(g: LeibnizAlgebra) -> LinearMap:
    """The identification ``HL_1(g) -> g^ab``, class of x ↦ x̄."""
    h1 = leibniz_homology(g, 1)
    q = quotient(g.dim, commutator_ideal(g).space)
    return LinearMap.from_images(h1.space, q, [q.project(r) for r in h1.representatives()])


# ---------------------------------------------------------------------------
# bullet square


@dataclass
class BulletSquare:
    """``g•g = (g⊗g) / im d_3`` with bracket ``[x•y, x'•y'] = [x,y]•[x',y']``."""

    base: LeibnizAlgebra
    space: QuotientSpace
    algebra: LeibnizAlgebra

    def project(self, v: dict) -> tuple:
        return self.space.project(v)


def bullet_square(g: LeibnizAlgebra) -> BulletSquare:
    key = "bullet"
    if key in g._cache:
        return g._cache[key]
    d = g.dim
    rel = sparse_image(loday_columns(g, 3), d * d, g.field)
    q = quotient(d * d, rel)
    t = g._table

    def bilinear(u: int, v: int) -> dict:
        a, b = divmod(u, d)
        c, e = divmod(v, d)
        left, right = t[a][b], t[c][e]
        out: dict = {}
        for k, x in left.items():
            for m, y in right.items():
                out[k * d + m] = out.get(k * d + m, 0) + x * y
        return {k: x for k, x in out.items() if x}

    labels = [f"{g.labels[c // d]}•{g.labels[c % d]}" for c in q.free]
    alg = algebra_on_quotient(g.field, q, bilinear, labels=labels, name=f"{g.name}•{g.name}" if g.name else "")
    res = BulletSquare(g, q, alg)
    g._cache[key] = res
    return res


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex


def _require_lie(g: LeibnizAlgebra) -> None:
    if not is_lie(g):
        raise NotLieError("the algebra is not a Lie algebra")


def ce_columns(g: LeibnizAlgebra, n: int) -> list[dict]:
    """Sparse columns of ``d(x_1∧…∧x_n) = Σ_{i<j} (-1)^{i+j} [x_i,x_j]∧x_1…x̂_i…x̂_j…``."""
    key = ("ce", n)
    if key in g._cache:
        return g._cache[key]
    d = g.dim
    t = g._table
    if n == 1:
        cols: list[dict] = [{} for _ in range(d)]
    else:
        target = {m: i for i, m in enumerate(exterior_basis(d, n - 1))}
        cols = []
        for mono in exterior_basis(d, n):
            col: dict = {}
            for i in range(n):
                for j in range(i + 1, n):
                    br = t[mono[i]][mono[j]]
                    if not br:
                        continue
                    sign = 1 if (i + j) % 2 == 0 else -1
                    rest = mono[:i] + mono[i + 1:j] + mono[j + 1:]
                    for k, c in br.items():
                        ss = sort_sign((k,) + rest)
                        if ss is None:
                            continue
                        s2, tup = ss
                        idx = target[tup]
                        nv = col.get(idx, 0) + sign * s2 * c
                        if nv:
                            col[idx] = nv
                        else:
                            col.pop(idx, None)
            cols.append(col)
    g._cache[key] = cols
    return cols


def chevalley_eilenberg_homology(g: LeibnizAlgebra, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> HomologyResult:
    _require_lie(g)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > max_degree:
        raise CapacityError(f"degree {n} exceeds the configured maximum {max_degree}")
    key = ("H", n)
    if key in g._cache:
        return g._cache[key]
    chain_dim = comb(g.dim, n)
    d_out = ce_columns(g, n) if n >= 1 else None
    out_dim = comb(g.dim, n - 1) if n >= 1 else 0
    d_in = ce_columns(g, n + 1) if n + 1 <= g.dim else None
    res = homology_from_columns(g.field, n, chain_dim, d_out, out_dim, d_in)
    g._cache[key] = res
    return res


def antisymmetrization_apply(dim: int, n: int) -> Callable[[dict], dict]:
    """Chain projection ``g^{⊗n} -> Λ^n g``, ``x_1⊗…⊗x_n ↦ x_1∧…∧x_n``."""
    target = {m: i for i, m in enumerate(exterior_basis(dim, n))}

    def apply(v: dict) -> dict:
        out: dict = {}
        for idx, a in v.items():
            ss = sort_sign(tensor_tuple(idx, dim, n))
            if ss is None:
                continue
            s, tup = ss
            k = target[tup]
            nv = out.get(k, 0) + s * a
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    return apply


def projection_sign_defect(g: LeibnizAlgebra, n: int) -> bool:
    """True iff ``d_CE ∘ p_n = -p_{n-1} ∘ d_Loday`` on every basis tensor of degree ``n ≥ 2``.

    With the boundary conventions used here the antisymmetrization is a
    chain map up to this global sign, which leaves homology maps unchanged.
    """
    _require_lie(g)
    d = g.dim
    pn = antisymmetrization_apply(d, n)
    pm = antisymmetrization_apply(d, n - 1)
    ce = ce_columns(g, n)
    lod = loday_columns(g, n)
    for idx in range(d**n):
        lhs = apply_columns(ce, pn({idx: g.field.one}))
        rhs = pm(lod[idx])
        if any(lhs.get(k, 0) + rhs.get(k, 0) for k in set(lhs) | set(rhs)):
            return False
    return True


def comparison_t(g: LeibnizAlgebra) -> LinearMap:
    """``t_g: HL_2(g) -> H_2(g)`` induced by antisymmetrization."""
    _require_lie(g)
    hl = leibniz_homology(g, 2)
    h = chevalley_eilenberg_homology(g, 2)
    return homology_map(antisymmetrization_apply(g.dim, 2), hl, h)
