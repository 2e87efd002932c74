import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triplecup import modelsearch as ms

PUBLISHED_31 = ms.ParameterSet(((9, 16), (12, 22), (15, 19)))
PUBLISHED_32 = ms.ParameterSet(((9, 17), (12, 23), (15, 20)))


def test_published_gaps():
    assert ms.gaps(PUBLISHED_31) == [7, 8, 30, 31, 62, 63, 76]
    assert ms.valid(PUBLISHED_31) and ms.valid(PUBLISHED_32)


def test_published_sets_are_minimal():
    found = dict(ms.search_min_q(32))
    assert all(not found[q] for q in range(11, 31))
    assert PUBLISHED_31 in found[31]
    assert PUBLISHED_32 in found[32]
    # the remaining hits are cyclic relabelings of the published ones
    assert set(found[31]) == {PUBLISHED_31.rotate(k) for k in range(3)}
    assert set(found[32]) == {PUBLISHED_32.rotate(k) for k in range(3)}


def loop_search(q, convention, margin):
    out = []
    for p in itertools.product(range(4, q - 6), repeat=3):
        s = (q - p[2], q - p[0], q - p[1])
        try:
            I = ms.ParameterSet(tuple(zip(p, s)))
        except ms.InvalidParameterSet:
            continue
        if ms.valid(I, convention, margin):
            out.append(I)
    return out


@pytest.mark.parametrize("q,convention,margin", [(31, "published", 4), (33, "published", 4), (30, "published", 3), (34, "literal", 4)])
def test_vectorized_search_matches_loop(q, convention, margin):
    assert ms.search_q(q, convention, margin) == loop_search(q, convention, margin)


def test_found_sets_recheck_with_independent_membership():
    for q, sets in ms.search_min_q(36, 31):
        for I in sets:
            assert not ms.is_bad(I, q) and not ms.is_bad(I, 2 * q)


@st.composite
def parameter_sets(draw):
    q = draw(st.integers(20, 45))
    p = [draw(st.integers(4, q - 7)) for _ in range(3)]
    s = (q - p[2], q - p[0], q - p[1])
    try:
        return ms.ParameterSet(tuple(zip(p, s)))
    except ms.InvalidParameterSet:
        return PUBLISHED_31


@given(parameter_sets(), st.sampled_from(list(ms.CONVENTIONS)))
def test_membership_routines_agree(I, convention):
    bad = set(ms.bad_dimensions(I, convention))
    for d in range(3 * I.q + 1):
        assert ms.is_bad(I, d, convention) == (d in bad)


@given(parameter_sets(), st.sampled_from(list(ms.CONVENTIONS)), st.integers(0, 2))
def test_rotation_symmetry(I, convention, k):
    assert ms.bad_dimensions(I.rotate(k), convention) == ms.bad_dimensions(I, convention)
    assert ms.valid(I.rotate(k), convention) == ms.valid(I, convention)


def test_literal_convention_differs():
    assert ms.gaps(PUBLISHED_31, "literal") == [7, 8, 30, 31, 62, 63, 85, 86]


def test_invalid_sets():
    with pytest.raises(ms.InvalidParameterSet):
        ms.ParameterSet(((3, 16), (12, 22), (15, 19)))
    with pytest.raises(ms.InvalidParameterSet):
        ms.ParameterSet(((9, 16), (12, 23), (15, 19)))
    with pytest.raises(ms.InvalidParameterSet):
        ms.ParameterSet.from_flat([9, 16, 12, 22, 15])
    with pytest.raises(ms.InvalidParameterSet):
        ms.FhModel(5, 7)


def test_profile():
    m = ms.FhModel(9, 16)
    assert m.r == 25
    assert m.short_degrees == (0, 1, 2, 23, 24, 25)
    assert m.nonzero_degrees == (0, 1, 2, 9, 16, 23, 24, 25)


def test_ratio_report():
    rep = ms.systolic_ratio_model(PUBLISHED_31, 10)
    assert rep.ratio_exponent_n == 1
    assert rep.ratio_exponent_volume == Fraction(1, 3)
    assert rep.ratio_at_n == 10.0
    with pytest.raises(ms.InvalidParameterSet):
        ms.systolic_ratio_model(ms.ParameterSet(((4, 7), (4, 7), (4, 7))), 10)
