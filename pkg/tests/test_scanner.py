import pytest
from hypothesis import given, settings, strategies as st

from oracle import classify_ref
from reflectra.scanner import (
    ScanRange,
    ScanReport,
    discovered_cycles,
    first_cyclic_in_width,
    merge_reports,
    scan,
)
from reflectra.trajectory import StepBudgetExceeded, run_sequence


def _brute(lo, hi):
    hist = {}
    for x in range(lo, hi + 1):
        label, it = classify_ref(x)
        c = 0 if label == "zero" else int(label.split("-")[1])
        hist[(c, it)] = hist.get((c, it), 0) + 1
    return hist


def test_range_validation():
    assert ScanRange.for_digits(4) == ScanRange(1000, 9999)
    assert ScanRange.for_digits(4).digit_width == 4
    assert ScanRange(1000, 9998).digit_width is None
    assert len(ScanRange(5, 4)) == 0
    for lo, hi in [(0, 5), (5, 3), (1, 10**18)]:
        with pytest.raises(ValueError):
            ScanRange(lo, hi)


def test_four_digit_scan():
    r = scan(ScanRange.for_digits(4))
    assert r.class_counts == {0: 8363, 2178: 637}
    assert r.total == 9000
    assert r.max_iterations == {0: 13, 2178: 4}
    assert sum(r.histogram.values()) == r.total


def test_two_digit_scan():
    r = scan(ScanRange.for_digits(2))
    assert r.class_counts == {0: 90}
    assert sorted(it for _, it in r.histogram) == [1, 2, 3, 4, 5, 6]


def test_six_digit_scan():
    r = scan(ScanRange.for_digits(6), workers=4)
    assert r.class_counts == {0: 460458, 2178: 241749, 21978: 178686, 219978: 19107}
    assert r.overall_max_iterations == 49


def test_matches_brute_force():
    assert scan(ScanRange(1, 30000)).histogram == _brute(1, 30000)


def test_empty_range():
    r = scan(ScanRange(10, 9))
    assert r.total == 0 and r.class_counts == {}


@pytest.mark.parametrize("d, first", [(4, 1012), (5, 10012), (6, 100012), (7, 1000012)])
def test_first_cyclic(d, first):
    # 4-digit value by oracle scan upward from 1000
    assert first_cyclic_in_width(d) == first
    assert all(classify_ref(n)[0] == "zero" for n in range(10 ** (d - 1), min(first, 10 ** (d - 1) + 3000)))


def test_first_cyclic_width_check():
    with pytest.raises(ValueError):
        first_cyclic_in_width(3)


@pytest.mark.parametrize("d, canon", [
    (4, [2178]),
    (5, [2178, 21978]),
    (6, [2178, 21978, 219978]),
    (7, [2178, 21978, 219978, 2199978]),
])
def test_discovered_cycles(d, canon):
    fams = discovered_cycles(ScanRange.for_digits(d))
    assert [f.canonical for f in fams] == [0] + canon


def test_budget_witness():
    def needs_more(x):
        try:
            run_sequence(x, 3)
        except StepBudgetExceeded:
            return True
        return False

    witness = next(x for x in range(100, 201) if needs_more(x))
    with pytest.raises(StepBudgetExceeded) as e:
        scan(ScanRange(100, 200), max_steps=3, memo=False)
    assert e.value.value == witness
    with pytest.raises(StepBudgetExceeded):
        scan(ScanRange(100, 200), max_steps=3)


def test_memo_iteration_reconstruction():
    a = scan(ScanRange(10**7, 10**7 + 200000), memo=True, memo_bits=12)
    b = scan(ScanRange(10**7, 10**7 + 200000), memo=False)
    assert a == b


ranges = st.integers(1, 2 * 10**6).flatmap(
    lambda lo: st.tuples(st.just(lo), st.integers(lo, lo + 5000)))


@settings(max_examples=200)
@given(ranges, st.integers(1, 8), st.integers(1, 3000))
def test_worker_and_chunk_invariance(bounds, workers, chunk):
    rng = ScanRange(*bounds)
    assert scan(rng, workers, chunk_size=chunk) == scan(rng, 1)


@settings(max_examples=200)
@given(ranges, st.data())
def test_partition_additivity(bounds, data):
    lo, hi = bounds
    cut = data.draw(st.integers(lo, hi + 1))
    parts = [scan(ScanRange(lo, cut - 1)), scan(ScanRange(cut, hi))]
    assert merge_reports(parts, ScanRange(lo, hi)) == scan(ScanRange(lo, hi))


def test_report_invariants():
    r = scan(ScanRange(123, 45678))
    assert sum(r.class_counts.values()) == 45678 - 123 + 1 == r.total
    assert isinstance(r, ScanReport)
    assert r.fractions()[0] == pytest.approx(r.class_counts[0] / r.total)
