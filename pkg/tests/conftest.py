import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from leibniz_homology.algebra import LeibnizAlgebra
from leibniz_homology.catalog import load_catalog
from leibniz_homology.exactla import GF, QQ, LinearMap, Matrix, solve, space

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SL2 = {(0, 1): {1: 2}, (1, 0): {1: -2}, (0, 2): {2: -2}, (2, 0): {2: 2}, (1, 2): {0: 1}, (2, 1): {0: -1}}
H3 = {(0, 1): {2: 1}, (1, 0): {2: -1}}
CYCLIC = {(0, 0): {1: 1}}
SOLVABLE = {(0, 0): {1: 1}, (1, 0): {1: 1}}
NULLFILIFORM3 = {(0, 0): {1: 1}, (1, 0): {2: 1}}


def make(field, dim, brackets, name=""):
    return LeibnizAlgebra(field, dim, brackets, name=name)


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def sl2():
    return make(QQ, 3, SL2, "sl2")


@pytest.fixture(scope="session")
def h3():
    return make(QQ, 3, H3, "h3")


@pytest.fixture(scope="session")
def cyclic():
    return make(QQ, 2, CYCLIC, "cyclic")


FIELDS = [QQ, GF(2), GF(3)]

small_scalar = st.integers(min_value=-2, max_value=2)


@st.composite
def two_step(draw, max_v=3, max_w=2, fields=FIELDS):
    """Random algebra V ⊕ W with [v, v'] = B(v, v') in W and every other bracket zero.

    Any bilinear B gives a Leibniz algebra (both sides of the identity
    vanish); it is Lie exactly when B is alternating.
    """
    field = draw(st.sampled_from(fields))
    nv = draw(st.integers(1, max_v))
    nw = draw(st.integers(0, max_w))
    alternating = draw(st.booleans())
    brackets = {}
    for i in range(nv):
        for j in range(nv):
            if alternating and j < i:
                continue
            if alternating and i == j:
                continue
            vec = {nv + k: draw(small_scalar) for k in range(nw)}
            vec = {k: c for k, c in vec.items() if field(c)}
            if vec:
                brackets[(i, j)] = vec
                if alternating:
                    brackets[(j, i)] = {k: -c for k, c in vec.items()}
    return make(field, nv + nw, brackets, "two-step")


def oracle_brackets(g):
    """Structure constants for the oracle, residues written as integers."""
    out = {}
    for ij, v in g.nonzero_brackets().items():
        out[ij] = {k: (int(c) if g.field.characteristic else c) for k, c in v.items()}
    return out


def change_basis(g, columns):
    """The same algebra written in the basis whose k-th vector is ``columns[k]``."""
    F, n = g.field, g.dim
    P = Matrix.from_columns(F, columns, n)
    Pmap = LinearMap(space(F, n), space(F, n), P)
    if not Pmap.is_bijective():
        raise ValueError("not a basis")
    brackets = {}
    for i in range(n):
        for j in range(n):
            w = g.bracket(columns[i], columns[j])
            x = solve(Pmap, w)
            vec = {k: c for k, c in enumerate(x) if c}
            if vec:
                brackets[(i, j)] = vec
    return make(F, n, brackets, g.name)


@st.composite
def unitriangular(draw, n):
    """Columns of a random unit upper-triangular matrix (invertible over every field)."""
    cols = []
    for k in range(n):
        col = [0] * n
        col[k] = 1
        for r in range(k):
            col[r] = draw(small_scalar)
        cols.append(col)
    return cols
