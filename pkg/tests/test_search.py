import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freecircle import _kernels
from freecircle.classification import DiffeoClass, admits_free_action
from freecircle.search import (BudgetExhausted, NoFreeAction, SearchBox, coverage, enumerate_witnesses,
                               family_for, make_witness, naive_scan, realize_target)

BACKENDS = sorted(_kernels.BACKENDS)


def _params(ws):
    return [w.params for w in ws]


@pytest.mark.parametrize("family", ["plumbing", "cp2-bundle", "direct-nonspin"])
@pytest.mark.parametrize("bounds", [(1, 1), (2, 2), (3, 3), (1, 3), (3, 1)])
def test_small_box_matches_naive(family, bounds):
    box = SearchBox(*bounds, family)
    want = _params(naive_scan(box))
    for backend, jobs in itertools.product(BACKENDS, (1, 3)):
        assert _params(enumerate_witnesses(box, jobs=jobs, backend=backend)) == want


def test_plumbing_small_box_example():
    ws = _params(enumerate_witnesses(SearchBox(1, 1, "plumbing")))
    assert (0, -1, -1, 0, -1) in ws
    assert len(ws) == len(set(ws))


def test_cp2_examples():
    ws = _params(enumerate_witnesses(SearchBox(400, 80, "cp2-bundle")))
    assert (333, 73, -4) in ws
    assert [p for p in ws if p[2] == 0][:6] == [(0, -1, 0), (0, 1, 0), (-1, -1, 0), (-1, 1, 0),
                                                (1, -1, 0), (1, 1, 0)]
    assert sum(p[2] == 0 for p in ws) == 2 * 801
    assert make_witness("cp2-bundle", (0, 1, 0)).triple == (0, 0, 0)


def test_cp2_driven_scan_equals_blind_scan():
    box = SearchBox(60, 15, "cp2-bundle")
    assert set(_params(enumerate_witnesses(box, jobs=2))) == set(_params(naive_scan(box)))


def test_canonical_order():
    for family, bounds in [("plumbing", (3, 3)), ("cp2-bundle", (40, 13)), ("direct-nonspin", (10, 9))]:
        keys = [w.key for w in enumerate_witnesses(SearchBox(*bounds, family))]
        assert keys == sorted(keys)


def test_coverage_examples():
    assert coverage(SearchBox(3, 3), set()).hits == {}
    rep = coverage(SearchBox(12, 27, "direct-nonspin"), {(1, 1, 0)})
    assert rep.unhit == {(1, 1, 0)} and not rep.hits
    rep = coverage(SearchBox(400, 80, "cp2-bundle"), {(2, 0, 0), (0, 0, 0)})
    # (37, -73, 12) precedes the table witness (333, 73, -4) in canonical order
    assert rep.hits[(2, 0, 0)].params == (37, -73, 12)
    assert make_witness("cp2-bundle", (333, 73, -4)).triple == (2, 0, 0)
    assert rep.hits[(0, 0, 0)].params == (0, -1, -80)


@settings(max_examples=25)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(2, 5))
def test_coverage_independent_of_jobs(ab, eb, jobs):
    targets = {(i, j, k) for i in range(28) for j in range(12) for k in range(2)}
    one = coverage(SearchBox(ab, eb), targets, jobs=1)
    many = coverage(SearchBox(ab, eb), targets, jobs=jobs)
    assert one.to_rows() == many.to_rows()


def test_witnesses_revalidate_and_admit():
    for family, bounds in [("plumbing", (3, 4)), ("cp2-bundle", (100, 21)), ("direct-nonspin", (12, 9))]:
        for w in enumerate_witnesses(SearchBox(*bounds, family)):
            assert w.revalidate()
            adm = admits_free_action(DiffeoClass(*w.triple))
            assert adm.spin_quotient if family == "plumbing" else adm.nonspin_quotient


def test_budget_is_deterministic():
    targets = {(i, j, 1) for i in range(28) for j in range(12)}
    a = coverage(SearchBox(50, 20), targets, jobs=1, budget=20_000)
    b = coverage(SearchBox(50, 20), targets, jobs=4, budget=20_000)
    assert a.budget_exhausted and a.to_rows() == b.to_rows() and a.nodes == b.nodes


def test_realize_examples():
    w = realize_target((0, 0, 0))
    assert w.family == "plumbing" and w.triple == (0, 0, 0)
    assert make_witness("plumbing", (0, -1, -1, 0, -1)).triple == (0, 0, 0)
    w = realize_target((4, 2, 0))
    assert w.family == "direct-nonspin" and w.triple == (4, 2, 0) and w.revalidate()
    assert w.chardata.astuple()[1:4] == (1, 0, 1) and w.chardata.v == 0


def test_realize_errors():
    with pytest.raises(NoFreeAction, match="no free circle action"):
        realize_target((0, 1, 0))
    with pytest.raises(BudgetExhausted):
        realize_target((1, 1, 1), budget=10)


def test_family_dispatch():
    assert family_for((0, 0, 1)) == "plumbing"
    assert family_for((2, 2, 0)) == "cp2-bundle"
    assert family_for((0, 2, 0)) == "direct-nonspin"
    with pytest.raises(NoFreeAction):
        family_for((1, 2, 0))


def test_box_validation():
    with pytest.raises(ValueError):
        SearchBox(0, 3)
    with pytest.raises(ValueError):
        SearchBox(3, 3, "lens")
