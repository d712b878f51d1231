"""Verifiers that rebuild each structural isomorphism and exact sequence on concrete input.

Every verifier returns a :class:`SequenceReport`; its verdict is the
conjunction of all node, isomorphism and check flags it records.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import (
    Extension,
    Ideal,
    LeibnizAlgebra,
    center,
    commutator_ideal,
    extension_from,
    is_lie,
    is_perfect,
)
from .exactla import (
    LinearMap,
    Matrix,
    NotWellDefined,
    Subspace,
    Ladder,
    check_exact,
    image,
    induced_from_columns,
    kernel,
    quotient,
    restrict,
    snake_connecting,
    solve,
    space,
    sparse,
)
from .gamma import gamma
from .homology import (
    chevalley_eilenberg_homology,
    comparison_t,
    exterior_basis,
    induced_homology_map,
    leibniz_homology,
)
from .products import (
    bullet_bracket_map,
    bullet_square,
    delta_iso,
    full_ideal,
    ideal_products,
    leibniz_to_lie_square_maps,
    lie_exterior_square,
    lie_tensor_square,
    product_map,
    square_products,
    theta,
    theta_square,
)
from .report import SequenceReport

ExtensionInput = Extension


class PreconditionError(ValueError):
    pass


def _timed(rep: SequenceReport, label: str, fn: Callable):
    t = time.perf_counter()
    out = fn()
    rep.timings[label] = rep.timings.get(label, 0.0) + time.perf_counter() - t
    return out


# ---------------------------------------------------------------------------
# HL_2 through the exterior square


@dataclass
class HL2Bridge:
    """Explicit ``HL_2(g) ≅ Ker θ_{g,g}`` through ``g•g`` and ``δ``."""

    algebra: LeibnizAlgebra
    kernel: Subspace  # Ker θ in g∧g coordinates
    to_kernel: LinearMap  # HL_2(g) -> Ker θ (RREF coordinates)
    from_kernel: LinearMap  # inverse


def hl2_bridge(g: LeibnizAlgebra) -> HL2Bridge:
    key = "hl2-bridge"
    if key in g._cache:
        return g._cache[key]
    hl = leibniz_homology(g, 2)
    B = bullet_square(g)
    d = delta_iso(g)
    K = kernel(theta_square(g))
    to_cols = []
    for r in hl.representatives():
        w = d(B.project(r))
        to_cols.append(K.coords(w))
    to_k = LinearMap.from_images(hl.space, space(g.field, K.dim), to_cols)
    back = []
    for w in K.vectors():
        x = solve(d, w)
        if x is None:
            raise NotWellDefined("kernel element outside the image of δ")
        back.append(hl.project(sparse(B.space.lift(x))))
    from_k = LinearMap.from_images(space(g.field, K.dim), hl.space, back)
    res = HL2Bridge(g, K, to_k, from_k)
    g._cache[key] = res
    return res


def check_hl2_theorem(g: LeibnizAlgebra) -> SequenceReport:
    rep = SequenceReport("hl2-theorem")
    hl = _timed(rep, "loday", lambda: leibniz_homology(g, 2))
    th = _timed(rep, "products", lambda: theta_square(g))
    d = delta_iso(g)
    B = bullet_square(g)
    K = kernel(th)
    dprime = bullet_bracket_map(g)
    rep.values.update({"dim HL2": hl.dim, "dim ker θ": K.dim, "dim g•g": B.space.dim,
                       "dim g∧g": th.domain.dim})
    rep.check("dim HL2 = dim ker θ", hl.dim == K.dim)
    rep.iso("δ: g•g -> g∧g", d.is_bijective())
    rep.check("θ ∘ δ = d'", (th @ d).matrix == dprime.matrix)
    incl = LinearMap.from_images(hl.space, B.space, [B.project(r) for r in hl.representatives()])
    rep.check("HL2 embeds in g•g", incl.is_injective())
    kd = kernel(dprime)
    rep.check("image of HL2 in g•g = ker d'", image(incl) == kd)
    rep.iso("δ restricted: ker d' -> ker θ", restrict(d, kd, K).is_bijective())
    br = hl2_bridge(g)
    rep.iso("HL2 -> ker θ", br.to_kernel.is_bijective())
    rep.check("bridge round trip", (br.from_kernel @ br.to_kernel).matrix == Matrix.identity(g.field, hl.dim))
    return rep


# ---------------------------------------------------------------------------
# extensions


@dataclass
class ExtensionLadder:
    ext: Extension
    top_left: LinearMap  # a∧g -> g∧g
    top_right: LinearMap  # g∧g -> h∧h
    alpha: LinearMap  # θ_{a,g}
    beta: LinearMap  # θ_{g,g}
    gamma: LinearMap  # θ_{h,h}
    incl: LinearMap  # a -> g
    proj: LinearMap  # g -> h


def _projection_columns(ext: Extension) -> list[dict]:
    return [sparse(c) for c in ext.projection.matrix.columns()]


def extension_ladder(ext: Extension) -> ExtensionLadder:
    g, a, h = ext.total, ext.ideal, ext.quotient
    G = full_ideal(g)
    ag = ideal_products(a, G).exterior
    gg = square_products(g).exterior
    hh = square_products(h).exterior
    a_vecs = a.space.sparse_vectors()
    ident = [g.unit(i) for i in range(g.dim)]
    pcols = _projection_columns(ext)
    f = product_map(ag, gg, a_vecs, ident)
    gmap = product_map(gg, hh, pcols, pcols)
    alpha = theta(a, G)
    beta = theta_square(g)
    gam = theta_square(h)
    fld = g.field
    incl = LinearMap(space(fld, a.dim), space(fld, g.dim), a.space.inclusion_matrix())
    proj = LinearMap(space(fld, g.dim), space(fld, h.dim), ext.projection.matrix)
    return ExtensionLadder(ext, f, gmap, alpha, beta, gam, incl, proj)


def check_right_exactness(ext: Extension) -> SequenceReport:
    L = extension_ladder(ext)
    zero = space(ext.total.field, 0)
    rep = check_exact([L.top_left, L.top_right, LinearMap.zero(L.top_right.codomain, zero)], "right-exactness",
                      ["a∧g", "g∧g", "h∧h", "0"])
    rep.values.update({"dim a∧g": L.top_left.domain.dim, "dim g∧g": L.top_right.domain.dim,
                       "dim h∧h": L.top_right.codomain.dim})
    return rep


def check_split_injectivity(ext: Extension) -> SequenceReport:
    if ext.splitting is None:
        raise PreconditionError("extension has no recorded splitting")
    L = extension_ladder(ext)
    rep = SequenceReport("split-injectivity")
    k = kernel(L.top_left)
    rep.values.update({"dim a∧g": L.top_left.domain.dim, "dim ker(a∧g -> g∧g)": k.dim})
    rep.check("a∧g -> g∧g injective", k.dim == 0)
    return rep


@dataclass
class SixTerm:
    report: SequenceReport
    maps: list[LinearMap]
    connecting: LinearMap
    kernel_theta_ag: Subspace


def six_term(ext: Extension) -> SixTerm:
    g, a, h = ext.total, ext.ideal, ext.quotient
    L = extension_ladder(ext)
    ladder = Ladder(L.top_left, L.top_right, L.incl, L.proj, L.alpha, L.beta, L.gamma)
    snake = snake_connecting(ladder)
    bg, bh = hl2_bridge(g), hl2_bridge(h)
    ker_alpha = kernel(L.alpha)
    m0 = bg.from_kernel @ restrict(L.top_left, ker_alpha, bg.kernel)
    m1 = induced_homology_map(ext.projection, 2)
    if snake.kernel != bh.kernel:
        raise NotWellDefined("snake kernel differs from Ker θ_{h,h}")
    m2 = snake.connecting @ bh.to_kernel
    hl1g = leibniz_homology(g, 1)
    m3 = induced_from_columns(a.space.sparse_vectors(), snake.cokernel, hl1g.space)
    m4 = induced_homology_map(ext.projection, 1)
    m5 = LinearMap.zero(m4.codomain, space(g.field, 0))
    maps = [m0, m1, m2, m3, m4, m5]
    rep = check_exact(maps, "six-term", ["Ker θ_{a,g}", "HL2(g)", "HL2(h)", "a/[a,g]", "HL1(g)", "HL1(h)", "0"])
    rep.values.update({"dim Ker θ_{a,g}": ker_alpha.dim, "dim HL2(g)": m1.domain.dim, "dim HL2(h)": m1.codomain.dim,
                       "dim a/[a,g]": snake.cokernel.dim, "dim HL1(g)": m4.domain.dim, "dim HL1(h)": m4.codomain.dim,
                       "rank connecting": snake.connecting.rank})
    return SixTerm(rep, maps, snake.connecting, ker_alpha)


def six_term_sequence(ext: Extension) -> SequenceReport:
    return six_term(ext).report


def eight_term_audit(ext: Extension, max_degree: int = 3) -> SequenceReport:
    g, h = ext.total, ext.quotient
    rep = SequenceReport("eight-term-audit")
    st = six_term(ext)
    rep.merge(st.report, "tail")
    hl3g = _timed(rep, "HL3(g)", lambda: leibniz_homology(g, 3, max_degree=max_degree))
    hl3h = _timed(rep, "HL3(h)", lambda: leibniz_homology(h, 3, max_degree=max_degree))
    m = _timed(rep, "HL3 map", lambda: induced_homology_map(ext.projection, 3, max_degree=max_degree))
    k0 = kernel(st.maps[0]).dim
    bound = hl3h.dim - m.rank
    rep.values.update({"dim HL3(g)": hl3g.dim, "dim HL3(h)": hl3h.dim, "rank HL3(g)->HL3(h)": m.rank,
                       "dim ker(Ker θ_{a,g} -> HL2(g))": k0, "equality holds": int(k0 == bound)})
    rep.check("dim ker(Ker θ_{a,g} -> HL2(g)) <= dim HL3(h) - rank(HL3(g) -> HL3(h))", k0 <= bound,
              f"{k0} <= {bound}")
    return rep


def central_extension_corollary(ext: Extension) -> SequenceReport:
    """Central extension: ``a∧g ≅ Coker η`` and the exact tail through ``HL_2``.

    Surjectivity of ``HL_2(g) -> HL_2(h)`` is recorded as a value; it holds
    exactly when ``a ∩ [g,g] = 0``, which is checked.
    """
    g, a = ext.total, ext.ideal
    if not a.space.issubset(center(g).space):
        raise PreconditionError("ideal is not central")
    rep = SequenceReport("central-extension")
    fld = g.field
    G = full_ideal(g)
    pair = ideal_products(a, G)
    T, E = pair.tensor, pair.exterior
    ab = quotient(g.dim, commutator_ideal(g).space)
    p, k = a.dim, ab.dim
    a_vecs = a.space.sparse_vectors()
    bars = [ab.project_sparse(v) for v in a_vecs]
    gbar = [ab.project_sparse(g.unit(i)) for i in range(g.dim)]
    # a⊗g^ab at i*k+s, g^ab⊗a at p*k + s*p + i
    cols = []
    for idx in range(T.ambient_dim):
        kind, x, y = T.decode(idx)
        if kind == "mn":
            cols.append({x * k + s: c for s, c in gbar[y].items()})
        else:
            cols.append({p * k + s * p + y: c for s, c in gbar[x].items()})
    target = space(fld, 2 * p * k)
    iso = induced_from_columns(cols, T.space, target)
    rep.iso("a⋆g -> a⊗g^ab ⊕ g^ab⊗a", iso.is_bijective())
    eta_cols = []
    for i in range(p):
        for j in range(p):
            v: dict = {}
            for s, c in bars[j].items():
                v[i * k + s] = v.get(i * k + s, 0) + c
            for s, c in bars[i].items():
                v[p * k + s * p + j] = v.get(p * k + s * p + j, 0) - c
            eta_cols.append({t: c for t, c in v.items() if c})
    eta_img = Subspace.span(fld, 2 * p * k, eta_cols)
    coker = quotient(2 * p * k, eta_img)
    iso_ext = induced_from_columns(cols, E.space, coker)
    rep.iso("a∧g -> Coker η", iso_ext.is_bijective())
    st = six_term(ext)
    m0, m1 = st.maps[0], st.maps[1]
    rep.check("θ_{a,g} = 0", theta(a, G).is_zero())
    to_coker = iso_ext @ LinearMap(space(fld, st.kernel_theta_ag.dim), E.space, st.kernel_theta_ag.inclusion_matrix())
    rep.iso("Ker θ_{a,g} = a∧g ≅ Coker η", to_coker.is_bijective())
    tail = check_exact([m0, m1], "coker-tail", ["Coker η", "HL2(g)", "HL2(h)"])
    rep.merge(tail)
    surj = m1.is_surjective()
    disjoint = a.space.intersect(commutator_ideal(g).space).dim == 0
    rep.values.update({"dim Coker η": coker.dim, "rank η": eta_img.dim, "dim HL2(g)": m1.domain.dim,
                       "dim HL2(h)": m1.codomain.dim, "HL2(g)->HL2(h) surjective": int(surj),
                       "a ∩ [g,g] = 0": int(disjoint)})
    rep.check("HL2(g) -> HL2(h) surjective iff a ∩ [g,g] = 0", surj == disjoint)
    rep.merge(st.report, "six-term")
    return rep


# ---------------------------------------------------------------------------
# perfect algebras


def check_uce_perfect(g: LeibnizAlgebra) -> SequenceReport:
    if not is_perfect(g):
        raise PreconditionError("algebra is not perfect")
    rep = SequenceReport("uce-perfect")
    pair = square_products(g)
    E = pair.exterior
    th = theta_square(g)
    rep.iso("π: g⋆g -> g∧g", E.pi.is_bijective())
    rep.check("θ surjective", th.is_surjective())
    K = kernel(th)
    alg = E.algebra
    central = all(
        not alg.bracket_sparse(v, alg.unit(b)) and not alg.bracket_sparse(alg.unit(b), v)
        for v in K.sparse_vectors() for b in range(alg.dim)
    )
    rep.check("ker θ central", central)
    rep.check("g∧g perfect", is_perfect(alg))
    hl2 = _timed(rep, "HL2(g∧g)", lambda: leibniz_homology(alg, 2))
    rep.check("HL2(g∧g) = 0", hl2.dim == 0)
    rep.values.update({"dim g⋆g": pair.tensor.dim, "dim g∧g": E.dim, "dim ker θ": K.dim, "dim HL2(g∧g)": hl2.dim})
    return rep


# ---------------------------------------------------------------------------
# Lie algebras


def _require_lie(g: LeibnizAlgebra) -> None:
    if not is_lie(g):
        raise PreconditionError("algebra is not a Lie algebra")


@dataclass
class LieTheta:
    kernel_lie: Subspace  # ker(g∧_Lie g -> g)
    ce_to_kernel: LinearMap  # H_2(g) -> ker, x∧y ↦ x∧y
    t_chain: LinearMap  # HL_2 -> H_2
    t_theta: LinearMap  # Ker θ -> ker(g∧_Lie g -> g)


def lie_theta(g: LeibnizAlgebra) -> LieTheta:
    LE = lie_exterior_square(g)
    KL = kernel(LE.to_base())
    h2 = chevalley_eilenberg_homology(g, 2)
    d = g.dim
    mono = exterior_basis(d, 2)
    def to_le(v: dict) -> dict:
        return {mono[c][0] * d + mono[c][1]: x for c, x in v.items()}

    for b in h2.boundaries.sparse_vectors():
        if not LE.space.relations.contains(to_le(b)):
            raise NotWellDefined("CE boundaries do not vanish in the Lie exterior square")
    cols = [KL.coords(LE.space.project(to_le(r))) for r in h2.representatives()]
    ce_k = LinearMap.from_images(h2.space, space(g.field, KL.dim), cols)
    maps = leibniz_to_lie_square_maps(g)
    br = hl2_bridge(g)
    t_theta = restrict(maps.exterior_to_lie_exterior, br.kernel, KL)
    return LieTheta(KL, ce_k, comparison_t(g), t_theta)


def lie_comparison_check(g: LeibnizAlgebra) -> SequenceReport:
    _require_lie(g)
    rep = SequenceReport("lie-comparison")
    lt = lie_theta(g)
    br = hl2_bridge(g)
    t = lt.t_chain
    rep.check("t_g surjective", t.is_surjective())
    rep.iso("H2 -> ker(g∧_Lie g -> g)", lt.ce_to_kernel.is_bijective())
    rep.check("chain-level and θ-level t_g agree",
              (lt.ce_to_kernel @ t).matrix == (lt.t_theta @ br.to_kernel).matrix)
    maps = leibniz_to_lie_square_maps(g)
    V = kernel(maps.exterior_to_lie_exterior)
    rep.check("V ⊆ Ker θ", V.issubset(br.kernel))
    kt = kernel(lt.t_theta)
    V_in_K = Subspace.span(g.field, br.kernel.dim, [br.kernel.coords(v) for v in V.sparse_vectors()])
    rep.check("V = ker t_g under HL2 ≅ Ker θ", V_in_K == kt)
    rep.check("g∧g -> g⋆_Lie g -> g∧_Lie g commutes",
              (maps.lie_tensor_to_lie_exterior @ maps.exterior_to_lie_tensor).matrix == maps.exterior_to_lie_exterior.matrix)
    W = kernel(maps.lie_tensor_to_lie_exterior)
    epi = restrict(maps.exterior_to_lie_tensor, V, W)
    rep.check("V -> ker(g⋆_Lie g -> g∧_Lie g) surjective", epi.is_surjective())
    n_ab = g.dim - commutator_ideal(g).dim
    gam = gamma(g.field, n_ab)
    rep.check("ker(g⋆_Lie g -> g∧_Lie g) has dim of Γ(g^ab)", W.dim == gam.dim == n_ab * (n_ab + 1) // 2)
    kdim = kernel(t).dim
    rep.check("dim ker t_g >= dim Γ(g^ab)", kdim >= gam.dim)
    if not is_perfect(g):
        rep.check("t_g not injective for non-perfect g", kdim > 0)
    rep.values.update({"dim HL2": t.domain.dim, "dim H2": t.codomain.dim, "dim ker t": kdim, "dim V": V.dim,
                       "dim Γ(g^ab)": gam.dim, "dim g⋆_Lie g": lie_tensor_square(g).dim,
                       "dim g∧_Lie g": lie_exterior_square(g).dim})
    return rep


def perfect_lie_sequence(g: LeibnizAlgebra) -> SequenceReport:
    _require_lie(g)
    if not is_perfect(g):
        raise PreconditionError("algebra is not perfect")
    maps = leibniz_to_lie_square_maps(g)
    pair = square_products(g)
    lam = maps.tensor_to_lie_tensor
    K = kernel(lam)
    br = hl2_bridge(g)
    to_ext = pair.exterior.pi
    into = br.from_kernel @ restrict(to_ext, K, br.kernel)
    t = comparison_t(g)
    f = g.field
    zero = space(f, 0)
    rep = check_exact([LinearMap.zero(zero, into.domain), into, t, LinearMap.zero(t.codomain, zero)],
                      "perfect-lie", ["0", "HL2(g⋆_Lie g)", "HL2(g)", "H2(g)", "0"])
    LT = lie_tensor_square(g)
    hl2_lt = leibniz_homology(LT.algebra, 2)
    rep.check("dim HL2(g⋆_Lie g) = dim Ker λ", hl2_lt.dim == K.dim)
    rep.values.update({"dim g⋆_Lie g": LT.dim, "dim HL2(g⋆_Lie g)": hl2_lt.dim, "dim Ker λ": K.dim,
                       "dim HL2(g)": t.domain.dim, "dim H2(g)": t.codomain.dim})
    return rep


# ---------------------------------------------------------------------------
# basis permutation


def permute_extension(ext: Extension, perm: Sequence[int]) -> Extension:
    """Same extension after relabelling the basis of the total algebra."""
    g2 = ext.total.permuted(perm)
    inv = {old: new for new, old in enumerate(perm)}
    vecs = [{inv[k]: c for k, c in v.items()} for v in ext.ideal.space.sparse_vectors()]
    a2 = Ideal.spanned_by(g2, vecs, ext.ideal.name)
    sigma = None
    if ext.splitting is not None:
        # splitting images are expressed against the new quotient basis
        e2 = extension_from(g2, a2)
        old_q = ext.projection
        # map new quotient basis -> old quotient basis via lifts
        cols = []
        for k in range(e2.quotient.dim):
            lift = {}
            for i, c in _lift_of(e2, k).items():
                lift[perm[i]] = c
            old_coords = old_q.apply_sparse(lift)
            img = ext.splitting.apply_sparse(old_coords)
            cols.append({inv[i]: c for i, c in img.items()})
        sigma = cols
        return extension_from(g2, a2, [_dense(g2, c) for c in sigma], ext.name)
    return extension_from(g2, a2, None, ext.name)


def _lift_of(ext: Extension, k: int) -> dict:
    q = quotient(ext.total.dim, ext.ideal.space)
    return q.lift_basis(k)


def _dense(g: LeibnizAlgebra, v: dict) -> list:
    return [v.get(i, g.field.zero) for i in range(g.dim)]
