import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz_homology.algebra import Ideal, center, commutator_ideal, direct_sum, extension_from, is_lie
from leibniz_homology.exactla import QQ
from leibniz_homology.homology import leibniz_homology
from leibniz_homology.theorems import (
    PreconditionError,
    central_extension_corollary,
    check_hl2_theorem,
    check_right_exactness,
    check_split_injectivity,
    check_uce_perfect,
    eight_term_audit,
    hl2_bridge,
    lie_comparison_check,
    perfect_lie_sequence,
    permute_extension,
    six_term_sequence,
)

from conftest import H3, make, two_step


def _unit(n, *ks):
    return [1 if i in ks else 0 for i in range(n)]


@given(two_step(max_v=3, max_w=2))
def test_hl2_theorem_random(g):
    rep = check_hl2_theorem(g)
    assert rep.verdict, rep.failures()


def test_hl2_bridge_inverse(h3):
    br = hl2_bridge(h3)
    assert br.to_kernel.is_bijective()
    assert (br.to_kernel @ br.from_kernel).matrix.rows == tuple(
        tuple(1 if i == j else 0 for j in range(5)) for i in range(5))


def test_uce_perfect(sl2):
    assert check_uce_perfect(sl2).verdict
    s = direct_sum(sl2, sl2)
    assert check_uce_perfect(s).verdict
    assert perfect_lie_sequence(sl2).verdict


def test_uce_requires_perfect(h3):
    with pytest.raises(PreconditionError):
        check_uce_perfect(h3)


@given(two_step(max_v=3, max_w=2))
def test_lie_comparison_random(g):
    if not is_lie(g):
        return
    rep = lie_comparison_check(g)
    assert rep.verdict, rep.failures()


@st.composite
def central_extensions(draw):
    """Two-step algebra extended by its center or by its commutator ideal (both central)."""
    g = draw(two_step(max_v=3, max_w=2))
    a = center(g) if draw(st.booleans()) else commutator_ideal(g)
    return extension_from(g, a)


@given(central_extensions())
def test_sequences_random_central(ext):
    for rep in (six_term_sequence(ext), eight_term_audit(ext), central_extension_corollary(ext),
                check_right_exactness(ext)):
        assert rep.verdict, (rep.name, rep.failures())


def test_central_surjectivity_criterion():
    h3 = make(QQ, 3, H3)
    rep = central_extension_corollary(extension_from(h3, Ideal.spanned_by(h3, [_unit(3, 2)])))
    assert rep.verdict
    assert rep.values["HL2(g)->HL2(h) surjective"] == 0
    assert rep.values["a ∩ [g,g] = 0"] == 0
    # h3 plus a line, extended by the line: a ∩ [g,g] = 0 and HL2 surjects
    g = make(QQ, 4, H3)
    rep = central_extension_corollary(extension_from(g, Ideal.spanned_by(g, [_unit(4, 3)])))
    assert rep.verdict
    assert rep.values["HL2(g)->HL2(h) surjective"] == 1
    assert rep.values["a ∩ [g,g] = 0"] == 1


def test_central_requires_central(sl2):
    s = direct_sum(sl2, make(QQ, 1, {}))
    ext = extension_from(s, Ideal.spanned_by(s, [_unit(4, 0), _unit(4, 1), _unit(4, 2)]))
    with pytest.raises(PreconditionError):
        central_extension_corollary(ext)


def test_split_injectivity_needs_splitting(h3):
    ext = extension_from(h3, Ideal.spanned_by(h3, [_unit(3, 2)]))
    with pytest.raises(PreconditionError):
        check_split_injectivity(ext)


def test_catalog_extensions(catalog):
    for e in catalog:
        ext = e.extension
        if ext is None:
            continue
        six = six_term_sequence(ext)
        assert six.verdict and len(six.nodes) == 5, (e.name, six.failures())
        eight = eight_term_audit(ext)
        assert eight.verdict, (e.name, eight.failures())
        v = eight.values
        assert v["dim ker(Ker θ_{a,g} -> HL2(g))"] <= v["dim HL3(h)"] - v["rank HL3(g)->HL3(h)"]
        if ext.splitting is not None:
            assert check_split_injectivity(ext).verdict


def test_eight_term_inequality_values(catalog):
    by = {e.name: e for e in catalog}
    rep = eight_term_audit(by["heisenberg-3-q"].extension)
    assert rep.values["dim HL3(g)"] == 10
    assert rep.values["dim HL3(h)"] == 8


@pytest.mark.parametrize("perm", [[1, 0], [0, 1]])
def test_permutation_invariance_small(perm):
    g = make(QQ, 2, {(0, 0): {1: 1}, (1, 0): {1: 1}})
    ext = extension_from(g, Ideal.spanned_by(g, [[0, 1]]), [[1, -1]])
    p = permute_extension(ext, perm)
    for fn in (six_term_sequence, eight_term_audit, check_right_exactness, check_split_injectivity):
        a, b = fn(ext), fn(p)
        assert a.verdict == b.verdict
        assert a.values == b.values


def test_permutation_invariance_catalog(catalog):
    for e in catalog:
        if e.extension is None or e.algebra.dim > 4:
            continue
        for perm in itertools.islice(itertools.permutations(range(e.algebra.dim)), 1, 4):
            p = permute_extension(e.extension, list(perm))
            for fn in (six_term_sequence, check_right_exactness):
                a, b = fn(e.extension), fn(p)
                assert a.verdict == b.verdict and a.values == b.values, (e.name, perm)
            assert [leibniz_homology(p.total, k).dim for k in (1, 2)] == \
                [leibniz_homology(e.algebra, k).dim for k in (1, 2)]


def test_perfect_lie_sequence_requires_perfect_lie(h3, cyclic):
    with pytest.raises(PreconditionError):
        perfect_lie_sequence(h3)
    with pytest.raises(PreconditionError):
        perfect_lie_sequence(cyclic)
