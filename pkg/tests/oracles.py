"""Independent reference computations for regression values.

Nothing here imports the package under test: structure constants are plain
dicts ``{(i, j): {k: "coeff"}}`` (0-based) and every rank is taken by sympy's
``DomainMatrix`` over QQ or GF(p).
"""

from __future__ import annotations

import itertools
from math import comb
from fractions import Fraction

from sympy import QQ as SQQ
from sympy.polys.domains import GF as SGF
from sympy.polys.matrices import DomainMatrix


def _domain(p):
    return SQQ if p == 0 else SGF(p)


def _elt(dom, x, p):
    x = Fraction(x)
    if p == 0:
        return dom.convert(x.numerator) / dom.convert(x.denominator)
    return dom.convert(x.numerator * pow(x.denominator, -1, p) % p)


def rank(rows, ncols, p=0):
    """Rank of a list of sparse rows ``{col: Fraction}``."""
    if not rows or ncols == 0:
        return 0
    dom = _domain(p)
    dense = [[dom.zero] * ncols for _ in rows]
    for r, row in enumerate(rows):
        for c, v in row.items():
            dense[r][c] = _elt(dom, v, p)
    return DomainMatrix(dense, (len(rows), ncols), dom).rank()


def bracket_table(n, brackets):
    """Dense table ``t[i][j] = {k: Fraction}`` from sparse structure constants."""
    t = [[{} for _ in range(n)] for _ in range(n)]
    for (i, j), vec in brackets.items():
        t[i][j] = {k: Fraction(v) for k, v in vec.items() if Fraction(v) != 0}
    return t


def _bracket(t, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in t[i][j].items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c != 0}


# ---------------------------------------------------------------------------
# Loday complex, written from the boundary formula


def loday_ranks(n, brackets, top, p=0):
    """Ranks of d_k : g^{⊗k} -> g^{⊗(k-1)} for k = 2..top+1."""
    t = bracket_table(n, brackets)
    out = {1: 0}
    for k in range(2, top + 2):
        index = {w: r for r, w in enumerate(itertools.product(range(n), repeat=k - 1))}
        rows = []
        for word in itertools.product(range(n), repeat=k):
            img = {}
            for a in range(k):
                for b in range(a + 1, k):
                    sign = -1 if (b + 1) % 2 else 1
                    for c, coef in t[word[a]][word[b]].items():
                        w = word[:a] + (c,) + word[a + 1:b] + word[b + 1:]
                        col = index[w]
                        img[col] = img.get(col, 0) + sign * coef
            img = {c: v for c, v in img.items() if v != 0}
            if img:
                rows.append(img)
        out[k] = rank(rows, len(index), p)
    return out


def loday_homology_dims(n, brackets, top=3, p=0):
    r = loday_ranks(n, brackets, top, p)
    dims = {0: 1}
    for k in range(1, top + 1):
        dims[k] = n ** k - r[k] - r[k + 1]
    return dims


# ---------------------------------------------------------------------------
# g ⋆ g and g ∧ g for the identity crossed module


def _lin(t, u, v, kind, n):
    """Sparse vector of the symbol kind(u, v) in the 2n^2 ambient space."""
    out = {}
    off = 0 if kind == "A" else n * n
    for i, a in u.items():
        for j, b in v.items():
            key = off + i * n + j
            out[key] = out.get(key, 0) + a * b
    return out


def _sum(*terms):
    out = {}
    for s, vec in terms:
        for k, v in vec.items():
            out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v != 0}


def tensor_square_relations(n, brackets):
    t = bracket_table(n, brackets)
    e = [{i: Fraction(1)} for i in range(n)]
    br = lambda u, v: _bracket(t, u, v)
    A = lambda u, v: _lin(t, u, v, "A", n)
    B = lambda u, v: _lin(t, u, v, "B", n)
    rels = []
    for x, y, z in itertools.product(e, repeat=3):
        rels.append(_sum((1, A(x, br(y, z))), (-1, A(br(x, y), z)), (1, A(br(x, z), y))))
        rels.append(_sum((1, B(x, br(y, z))), (-1, B(br(x, y), z)), (1, B(br(x, z), y))))
        rels.append(_sum((1, A(br(x, y), z)), (-1, B(br(x, z), y)), (1, A(x, br(z, y)))))
        rels.append(_sum((1, B(br(x, y), z)), (-1, A(br(x, z), y)), (1, B(x, br(z, y)))))
        rels.append(_sum((1, A(x, br(y, z))), (1, A(x, br(z, y)))))
        rels.append(_sum((1, B(x, br(y, z))), (1, B(x, br(z, y)))))
    for x, y, z, w in itertools.product(e, repeat=4):
        u, v = br(x, y), br(z, w)
        rels.append(_sum((1, A(u, v)), (-1, B(u, v))))
    return [r for r in rels if r]


def tensor_square_dim(n, brackets, p=0):
    return 2 * n * n - rank(tensor_square_relations(n, brackets), 2 * n * n, p)


def exterior_square_dim(n, brackets, p=0):
    rels = tensor_square_relations(n, brackets)
    for i in range(n):
        for j in range(n):
            rels.append({i * n + j: Fraction(1), n * n + i * n + j: Fraction(-1)})
    return 2 * n * n - rank(rels, 2 * n * n, p)


def commutator_dim(n, brackets, p=0):
    rows = [{k: Fraction(v) for k, v in vec.items() if Fraction(v) != 0} for vec in brackets.values()]
    return rank([r for r in rows if r], n, p)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex of a Lie algebra


def _wedge_normal(word):
    """Sign and sorted tuple of a wedge word, or None when a letter repeats."""
    if len(set(word)) < len(word):
        return None
    w = list(word)
    sign = 1
    for a in range(len(w)):
        for b in range(len(w) - 1 - a):
            if w[b] > w[b + 1]:
                w[b], w[b + 1] = w[b + 1], w[b]
                sign = -sign
    return sign, tuple(w)


def ce_homology_dims(n, brackets, top=3, p=0):
    t = bracket_table(n, brackets)
    ranks = {1: 0}
    for k in range(2, top + 2):
        index = {w: r for r, w in enumerate(itertools.combinations(range(n), k - 1))}
        rows = []
        for word in itertools.combinations(range(n), k):
            img = {}
            for a in range(k):
                for b in range(a + 1, k):
                    sign = -1 if (a + b) % 2 else 1
                    rest = word[:a] + word[a + 1:b] + word[b + 1:]
                    for c, coef in t[word[a]][word[b]].items():
                        norm = _wedge_normal((c,) + rest)
                        if norm is None:
                            continue
                        s, w = norm
                        img[index[w]] = img.get(index[w], 0) + sign * s * coef
            img = {c: v for c, v in img.items() if v != 0}
            if img:
                rows.append(img)
        ranks[k] = rank(rows, len(index), p)
    return {k: comb(n, k) - ranks[k] - ranks[k + 1] for k in range(1, top + 1)}
