import json

import pytest

from heavycol import (
    check_lemma1,
    check_reduction_claim,
    check_theorem1,
    check_theorem2,
    converse_scan,
    enumerate_universe,
    order_sensitivity_scan,
    remark_counterexamples,
    UniverseSpec,
)
from heavycol.verification import UniverseTooLarge


def constrained(n, **kw):
    return UniverseSpec(
        n=n, require_distinct_columns=True, forbid_all_zero_column=True, **kw
    )


@pytest.mark.parametrize("n,size", [(1, 3), (2, 15), (3, 255)])
def test_exhaustive_universe_sizes(n, size):
    assert sum(1 for _ in enumerate_universe(UniverseSpec(n=n))) == size


def test_universe_rows_are_sorted_distinct():
    for m in enumerate_universe(UniverseSpec(n=2)):
        assert list(m.rows) == sorted(set(m.rows))


def test_constraints_filter():
    mats = {m.rows for m in enumerate_universe(constrained(2))}
    assert (0,) not in mats  # the 1x2 all-zero matrix is excluded
    assert (1, 2) in mats


def test_m_range_filter():
    mats = list(enumerate_universe(UniverseSpec(n=2, m_min=2, m_max=2)))
    assert all(m.m == 2 for m in mats) and len(mats) == 6


def test_spec_validation():
    with pytest.raises(UniverseTooLarge):
        UniverseSpec(n=5, mode="exhaustive")
    with pytest.raises(ValueError):
        UniverseSpec(n=2, mode="random", samples=5)  # seed missing
    with pytest.raises(ValueError):
        UniverseSpec(n=0)
    with pytest.raises(ValueError):
        UniverseSpec(n=2, m_min=3, m_max=2)


def test_random_mode_is_reproducible_and_respects_spec():
    spec = UniverseSpec(n=5, mode="random", samples=40, seed=11, m_min=1, m_max=6)
    first = [m.rows for m in enumerate_universe(spec)]
    second = [m.rows for m in enumerate_universe(spec)]
    assert first == second
    assert len(first) == 40
    assert all(1 <= len(r) <= 6 for r in first)
    other = [m.rows for m in enumerate_universe(
        UniverseSpec(n=5, mode="random", samples=40, seed=12, m_min=1, m_max=6))]
    assert first != other


def test_theorem1_scan_n2():
    report = check_theorem1(UniverseSpec(n=2))
    assert report.tested == 15
    assert report.violation_count == 0
    assert report.tallies["converse_gap_a1"] >= 1
    assert report.tallies["a1_true"] + report.tallies["a1_false"] == 15
    # contrapositive tally matches the no-heavy count
    assert report.tallies["no_heavy_and_a1_false"] == report.tallies["no_heavy"]


def test_theorem1_rejects_constrained_spec():
    with pytest.raises(ValueError):
        check_theorem1(constrained(2))
    with pytest.raises(ValueError):
        check_theorem2(UniverseSpec(n=2))


def test_theorem2_scan_n2():
    report = check_theorem2(constrained(2))
    assert report.violation_count == 0
    assert report.tallies["key_condition_hits"] >= 1
    assert report.tallies["no_heavy_and_a2_false"] == report.tallies["no_heavy"]


def test_lemma1_scan_n2():
    report = check_lemma1(UniverseSpec(n=2))
    assert report.violation_count == 0
    # the full 2-cube is one of the fully paired matrices
    assert report.tallies["hypothesis_holds"] >= 1


def test_claim_scan_n2():
    report = check_reduction_claim(UniverseSpec(n=2))
    assert report.violation_count == 0
    assert report.tallies["unpaired_found"] == report.tallies["no_heavy"]


def test_remark_report():
    report = remark_counterexamples()
    assert report.tested == 1
    assert report.tallies == {"confirmed": 1, "violations": 0}
    assert report.violations[0].matrix == "00"
    assert report.spec.mode == "fixed"


def test_converse_scan_collects_known_witness():
    report = converse_scan(UniverseSpec(n=2))
    cases = {(w.matrix, w.property) for w in report.violations}
    assert ("10\n01", "converse_gap_a1") in cases
    assert report.violation_count == 0  # exploratory, never a violation


def test_converse_never_collects_true_verdicts():
    report = converse_scan(UniverseSpec(n=1))
    assert all(w.matrix != "1" for w in report.violations)


def test_order_sensitivity_scan_n3():
    report = order_sensitivity_scan(UniverseSpec(n=3))
    assert report.tallies["a1_order_mismatch"] == 0
    assert report.violation_count == 0
    total = report.tallies["a2_permutation_sensitive"] + report.tallies["a2_permutation_stable"]
    assert total == report.tested


def test_reports_deterministic_across_workers():
    for make in (
        lambda w: check_theorem1(UniverseSpec(n=3), workers=w),
        lambda w: check_theorem2(constrained(3), workers=w),
        lambda w: check_lemma1(
            UniverseSpec(n=4, mode="random", samples=80, seed=5), workers=w
        ),
    ):
        docs = {make(w).to_json() for w in (1, 2)}
        assert len(docs) == 1


def test_witness_cap_truncates_list_not_counts():
    capped = converse_scan(UniverseSpec(n=2), witness_cap=2)
    full = converse_scan(UniverseSpec(n=2))
    assert len(capped.violations) == 2
    assert capped.tallies == full.tallies
    assert capped.violations == full.violations[:2]


def test_witness_cap_commutes_with_partitioning():
    # eight collectible witnesses at n=2; a tight cap must pick the same
    # leading ones whatever the chunking
    docs = {converse_scan(UniverseSpec(n=2), workers=w, witness_cap=3).to_json()
            for w in (1, 2, 3)}
    assert len(docs) == 1


def test_chunk_ranges_partition_exactly():
    from heavycol.verification import _chunk_ranges

    for lo, hi, pieces in [(1, 16, 4), (0, 7, 3), (1, 4, 10), (0, 1, 5)]:
        ranges = _chunk_ranges(lo, hi, pieces)
        assert ranges[0][0] == lo and ranges[-1][1] == hi
        for (a, b), (c, d) in zip(ranges, ranges[1:]):
            assert b == c and a < b
        assert sum(b - a for a, b in ranges) == hi - lo


def test_report_json_shape():
    doc = json.loads(check_theorem1(UniverseSpec(n=1)).to_json())
    assert set(doc) == {"spec", "tested", "tallies", "violations"}
    assert doc["tested"] == 3
    assert doc["spec"]["n"] == 1 and doc["spec"]["mode"] == "exhaustive"


def test_collected_witnesses_reproduce_their_condition():
    from heavycol import heavy_columns, parse_matrix, run_a1

    report = converse_scan(UniverseSpec(n=2))
    for w in report.violations:
        if w.property != "converse_gap_a1":
            continue
        m = parse_matrix(w.matrix)
        assert heavy_columns(m) and not run_a1(m).value
