from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psl2reps.components import (
    MAX_P,
    RangeGuardError,
    census,
    count_components_n,
    count_total,
    enumerate_components,
    formula_census,
    is_exceptional,
    is_nonempty,
    mw_bounds,
    satisfies_mw,
    signatures_in_range,
    violated_bound,
)
from psl2reps.surface import BoundaryType, SurfaceSig

S03, S04, S11, S12 = SurfaceSig(0, 3), SurfaceSig(0, 4), SurfaceSig(1, 1), SurfaceSig(1, 2)


def test_mw_bounds():
    assert mw_bounds(S11, (1,)) == (0, 1)
    assert mw_bounds(S03, (1, 1, 1)) == (2, 1)
    assert mw_bounds(S04, (0, 0, 0, 0)) == (-2, 2)
    with pytest.raises(ValueError):
        mw_bounds(S04, (1,))


def test_exceptional():
    assert is_exceptional(S04, 1, (1, 1, 1, 1))
    assert is_exceptional(S04, 0, (1, -1, -1, -1))
    assert not is_exceptional(S12, 1, (1, 1))
    assert not is_exceptional(S04, 0, (1, -1, -1, 0))


def test_pants_indices():
    tp = {(c.n, c.s) for c in enumerate_components(S03, "tp")}
    expected = {(-1, (-1, -1, -1)), (1, (1, 1, 1))}
    expected |= {(0, s) for s in [(1, 1, -1), (1, -1, 1), (-1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]}
    assert tp == expected
    assert is_nonempty(S03, 0, (1, -1, 0))
    assert not is_nonempty(S03, 1, (1, -1, 0))


def test_torus_indices():
    got = {(c.n, c.s) for c in enumerate_components(S11, "tp")}
    assert got == {(-1, (-1,)), (0, (1,)), (0, (-1,)), (1, (1,))}


def test_counts():
    assert count_components_n(S04, 1) == count_components_n(S04, -1) == 5
    assert count_components_n(S04, 0) == comb(4, 2) + 2 * 4
    assert count_components_n(S11, 0) == 2
    assert count_total(S11) == 4
    assert count_total(S03) == 8
    # the n = +-2 rows contribute one component each, so the total is 26
    assert count_total(S04) == 1 + 5 + 14 + 5 + 1 == 26


def test_boundary_filters():
    for c in enumerate_components(S04, "mixed"):
        assert c.boundary is BoundaryType.MIXED
    hyp = enumerate_components(S04, "hyp")
    assert {c.n for c in hyp} == set(range(-2, 3))
    assert len(enumerate_components(S04, "all")) == sum(
        len(enumerate_components(S04, b)) for b in ("tp", "mixed", "hyp"))


def test_guard():
    with pytest.raises(RangeGuardError):
        enumerate_components(SurfaceSig(0, MAX_P + 1))


def test_violated_bound_message():
    assert "chi + p_+" in violated_bound(S04, 0, (1, 1, 1, 1))
    assert violated_bound(S04, 2, (1, 1, 1, 1)) == "none"


def test_census_documents():
    doc = census(S04)
    assert doc["total"] == 26
    assert [row["count"] for row in doc["per_n"]] == [r["count"] for r in formula_census(S04)["per_n"]]


def test_signatures_in_range():
    sigs = signatures_in_range(-2)
    assert set(sigs) == {S03, S11, S04, S12}
    with pytest.raises(ValueError):
        SurfaceSig(0, 2)


@pytest.mark.parametrize("sig", signatures_in_range(-6, -1, 6))
def test_formula_matches_enumeration(sig):
    rows = census(sig, "tp")["per_n"]
    assert [r["count"] for r in rows] == [count_components_n(sig, r["n"]) for r in rows]
    assert sum(r["count"] for r in rows) == count_total(sig)


@given(st.sampled_from(signatures_in_range(-5)), st.data())
def test_nonempty_is_mw_or_exceptional(sig, data):
    g, p = sig.g, sig.p
    s = tuple(data.draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=p, max_size=p)))
    n = data.draw(st.integers(sig.chi - 1, -sig.chi + 1))
    assert is_nonempty(sig, n, s) == (satisfies_mw(sig, n, s) or is_exceptional(sig, n, s))
    if is_exceptional(sig, n, s):
        assert abs(n) <= 1 and g == 0
