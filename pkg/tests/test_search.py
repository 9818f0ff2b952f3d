import json
from collections import Counter

import numpy as np
import pytest

from kakeyaplanes.constructions import baer_configuration
from kakeyaplanes.errors import BudgetExceeded
from kakeyaplanes.gf import field_of_order
from kakeyaplanes.kakeya import LineSelection, cover
from kakeyaplanes.plane import dump_plane, load_plane
from kakeyaplanes.search import (
    SplitMix64,
    enumerate_selections,
    find_witness,
    lower_bound,
    sample_check,
    sample_digits,
    search_space,
    verify_theorem,
)

from oracles import size_histogram

# frozen from oracles.size_histogram: {(size, largest knot): count}
FROZEN = {
    2: {(3, 2): 4, (4, 3): 4},
    3: {(7, 3): 72, (9, 4): 9},
    4: {(10, 2): 48, (12, 3): 720, (13, 4): 240, (16, 5): 16},
    5: {(17, 3): 3000, (18, 3): 4000, (19, 3): 2000, (19, 4): 6000, (21, 5): 600, (25, 6): 25},
}


@pytest.mark.parametrize("q", [2, 3, 4])
def test_oracle_reproduces_frozen(q):
    assert dict(size_histogram(q)) == FROZEN[q]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_exhaustive_matches_frozen(ag, q):
    report = enumerate_selections(ag(q))
    assert report.knot_counts == FROZEN[q]
    assert report.evaluated == q ** (q + 1)


def test_q2_sizes(ag):
    assert enumerate_selections(ag(2)).attained == {3: 4, 4: 4}


def test_q3_min_max(ag):
    report = enumerate_selections(ag(3))
    assert (report.min_size, report.max_size) == (7, 9)
    assert sum(report.attained.values()) == 81


def test_q4_sizes_above_cutoff(ag):
    report = enumerate_selections(ag(4))
    assert report.threshold_cutoff == 13
    assert [s for s in report.attained if s >= 13] == [13, 16]
    assert report.gaps == [14, 15]


def test_witnesses_are_first_and_correct(ag):
    plane = ag(4)
    report = enumerate_selections(plane)
    for size, chosen in report.witnesses.items():
        assert cover(LineSelection(plane, chosen)).size == size
    # the all-zero digits selection comes first in enumeration order
    first = search_space(plane).selection([0] * 5)
    assert report.witnesses[cover(first).size] == first.chosen


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_reduction_preserves_sizes_and_scales_counts(ag, q):
    full = enumerate_selections(ag(q))
    red = enumerate_selections(ag(q), reduce=True)
    assert set(red.attained) == set(full.attained)
    assert {s: c * q * q for s, c in red.attained.items()} == full.attained
    assert red.as_dict()["count_unit"] == "translation_orbit"


def test_reduction_ignored_for_loaded_plane(ag):
    loaded = load_plane(dump_plane(ag(3)))
    report = enumerate_selections(loaded, reduce=True)
    assert not report.reduced and report.evaluated == 81


def test_verify_theorem_q4(ag):
    summary = verify_theorem(enumerate_selections(ag(4)))
    assert summary.ok, summary.violations
    assert [c["k"] for c in enumerate_selections(ag(4)).conformance] == [1, 0]


def test_verify_theorem_q5(ag):
    report = enumerate_selections(ag(5))
    summary = verify_theorem(report)
    assert summary.ok
    # size 19 = q^2 - 2q + 4 is reached with a (q-1)-knot; 18 only with smaller knots
    assert 4 in report.max_knots[19]
    assert report.max_knots[18] == [3]


def test_verify_theorem_flags_violation(ag):
    report = enumerate_selections(ag(4))
    report.attained[14] = 1
    report.max_knots[14] = [4]
    summary = verify_theorem(report)
    assert not summary.ok
    assert not summary.checks["no_gap_sizes"] and not summary.checks["intervals"]


def test_determinism_across_jobs(ag):
    plane = ag(4)
    one = enumerate_selections(plane, jobs=1).to_json()
    assert enumerate_selections(plane, jobs=2).to_json() == one
    assert enumerate_selections(plane, jobs=3).to_json() == one


def test_chunking_independent(ag, monkeypatch):
    import kakeyaplanes.search as s

    plane = ag(5)
    base = enumerate_selections(plane).to_json()
    monkeypatch.setattr(s, "_chunks", lambda total, parts: [(a, min(a + 997, total)) for a in range(0, total, 997)])
    assert enumerate_selections(plane).to_json() == base


def test_budget(ag):
    with pytest.raises(BudgetExceeded):
        enumerate_selections(ag(5), budget=1000)
    with pytest.raises(BudgetExceeded):
        enumerate_selections(ag(9), reduce=True)  # needs big as well
    with pytest.raises(BudgetExceeded):
        enumerate_selections(ag(9), big=True)


def test_budget_env(ag, monkeypatch):
    monkeypatch.setenv("KAKEYA_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        enumerate_selections(ag(4))


def test_splitmix_reference_vector():
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_below_uniformish():
    rng = SplitMix64(123)
    counts = Counter(rng.below(7) for _ in range(7000))
    assert set(counts) == set(range(7))
    assert all(800 < c < 1200 for c in counts.values())


def test_sample_rows_reproducible(ag):
    space = search_space(ag(5))
    a = sample_digits(space, 50, 9)
    assert np.array_equal(a, sample_digits(space, 50, 9))
    assert not np.array_equal(a, sample_digits(space, 50, 10))
    # row i does not depend on how many rows were drawn
    assert np.array_equal(a[:10], sample_digits(space, 10, 9))


def test_sample_mode(ag):
    plane = ag(7)
    r1 = enumerate_selections(plane, "sample", n=400, seed=3)
    assert r1.to_json() == enumerate_selections(plane, "sample", n=400, seed=3, jobs=2).to_json()
    assert sum(r1.attained.values()) == 400
    assert r1.min_size >= lower_bound(7)
    assert verify_theorem(r1).ok


def test_sample_check_q9(ag):
    rep = sample_check(ag(9), 1000, 42)
    assert rep.ok and rep.passed["points"] == 1000


def test_sample_check_q8_lower_bound(ag):
    rep = sample_check(ag(8), 1000, 5)
    assert rep.ok and rep.min_size >= 36


def test_sample_check_loaded_plane(ag):
    rows = dump_plane(ag(5)).splitlines()
    loaded = load_plane("\n".join([rows[0]] + ["L -1 " + r.split(None, 2)[2] for r in rows[1:]]))
    rep = sample_check(loaded, 100, 1)
    assert rep.ok


def test_find_witness(ag):
    assert find_witness(ag(4), 15) is None
    sel = find_witness(ag(2), 4)
    assert cover(sel).size == 4
    assert cover(find_witness(ag(9), 63)).size == 63
    assert cover(baer_configuration(field_of_order(9)).selection).size == 63


def test_report_json_schema(ag):
    data = json.loads(enumerate_selections(ag(3)).to_json())
    for key in ("q", "mode", "reduced", "attained", "witnesses", "max_knots", "conformance", "gaps"):
        assert key in data
    assert data["attained"] == [{"size": 7, "count": 72}, {"size": 9, "count": 9}]
    assert data["gaps"] == [8]
