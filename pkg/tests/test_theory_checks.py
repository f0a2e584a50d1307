import pytest

from core.theory import gap_intervals
from pipelines.theory_checks import (
    STATUS_CERTIFIED,
    STATUS_UNDECIDED,
    STATUS_WITNESSED,
    check_constructions,
    check_gap_consistency,
    check_lemma6,
    check_lemma7,
    check_sqrt,
    check_system4_equivalence,
    check_wang_meng,
    conjecture_scan,
    exact_sets,
    lemma6_values,
    run_theorem_checks,
    scan_window,
)


def test_lemma6_values_at_90():
    values = lemma6_values(90)
    for k in (10, 11, 12, 13, 15, 16, 18, 23, 30):
        assert k in values
    assert 14 not in values


def test_check_constructions_passes():
    check = check_constructions(4, 200)
    assert check.passed
    assert check.checked > 0


def test_check_lemma6_exact_range():
    check = check_lemma6(n_max=30)
    assert check.passed, check.failures
    assert check.checked == sum(len(lemma6_values(n)) for n in range(9, 31))


def test_check_lemma6_interval_witnesses_need_no_search():
    # every k up to n=12 has an interval witness
    check = check_lemma6(n_max=12, budget=0, cap=2)
    assert check.passed
    assert check.checked == sum(len(lemma6_values(n)) for n in range(9, 13))


def test_check_lemma7_and_system4():
    assert check_lemma7(28, 80).passed
    check = check_system4_equivalence(trials=500, n_max=100)
    assert check.passed
    assert check.checked == 500


def test_exact_set_checks():
    sets = exact_sets(2, 20)
    assert sets[17].exponents == [1, 2, 3, 4, 5, 6, 8, 16]
    for check in (check_sqrt(sets), check_gap_consistency(sets), check_wang_meng(sets)):
        assert check.passed, (check.name, check.failures)


def test_scan_window():
    assert list(scan_window(20, 1)) == list(range(8, 20))
    assert list(scan_window(65, 4)) == list(range(11, 20))


def test_scan_n20_k1():
    report = conjecture_scan(1, 20, 20, budget=0)
    assert report.status(20, 19) == STATUS_WITNESSED
    assert report.rows[0].witnesses[19].witness.elements == (0, 1)
    for e in range(11, 19):
        assert report.status(20, e) == STATUS_CERTIFIED
    assert report.status(20, 9) == STATUS_WITNESSED


def test_scan_n35_k2_leaves_open_values_undecided():
    report = conjecture_scan(2, 35, 35, budget=0)
    assert report.status(35, 11) == STATUS_UNDECIDED
    assert report.status(35, 16) == STATUS_UNDECIDED
    assert report.status(35, 14) == STATUS_CERTIFIED
    assert report.status(35, 17) == STATUS_WITNESSED


def test_scan_n57_k3_certifies_17():
    report = conjecture_scan(3, 57, 57, budget=0)
    assert report.status(57, 17) == STATUS_CERTIFIED


def test_scan_statuses_are_exclusive():
    report = conjecture_scan(2, 18, 22, budget=0)
    for row in report.rows:
        assert set(row.statuses.values()) <= {STATUS_WITNESSED, STATUS_CERTIFIED, STATUS_UNDECIDED}
        assert set(row.witnesses) == {e for e, s in row.statuses.items() if s == STATUS_WITNESSED}


@pytest.mark.slow
def test_scan_n65_k4_leaves_15_undecided():
    report = conjecture_scan(4, 65, 65, budget=20000)
    assert report.status(65, 15) == STATUS_UNDECIDED
    assert report.status(65, 19) == STATUS_CERTIFIED


@pytest.mark.slow
def test_run_theorem_checks_full_size():
    checks = run_theorem_checks()
    assert all(c.passed for c in checks), [c.to_dict() for c in checks if not c.passed]


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4])
def test_scan_classification_57_to_70(k):
    report = conjecture_scan(k, 57, 70, budget=2000)
    assert [row.n for row in report.rows] == list(range(57, 71))
    for row in report.rows:
        gaps = gap_intervals(row.n)
        assert list(row.statuses) == list(scan_window(row.n, k))
        for e, status in row.statuses.items():
            if gaps.certificate_for(e):
                assert status == STATUS_CERTIFIED, (row.n, e)
            elif status == STATUS_WITNESSED:
                record = row.witnesses[e]
                assert record.exponent == e and record.verify()
            else:
                assert status == STATUS_UNDECIDED, (row.n, e)
                assert e not in row.witnesses
