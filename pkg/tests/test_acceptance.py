"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before
asserting. Timings exclude the one-time numba compilation, which the
``warm`` fixture triggers.
"""
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ACCEPTANCE_LINES
from oracle import reflect_ref, step_ref
from reflectra import kernel
from reflectra.catalog import FamilyKind, generate_family, parameter_range, verify_curiosities, verify_factorizations
from reflectra.digits import LIMIT, digit_count, first_step_divisor, reflect, step
from reflectra.scanner import ScanRange, discovered_cycles, merge_reports, scan
from reflectra.trajectory import classify, cycle_members, run_sequence
from reflectra.verify import PRINTED_FOURTEEN, random_width_samples, verify_formulas, verify_table1

PROPERTY_CASES = 10_000


def record(n, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def warm():
    for memo in (True, False):
        scan(ScanRange(1, 20000), 1, memo=memo)
        scan(ScanRange(1, 20000), 2, memo=memo)


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def test_1_table1_four_digit(warm):
    r, dt = timed(scan, ScanRange.for_digits(4), 1)
    errata = [c for c in verify_table1(through=4) if not c.holds]
    ok = (r.class_counts == {0: 8363, 2178: 637} and r.total == 9000 and dt < 1.0
          and [(c.claimed, c.computed) for c in errata] == [(537, 637)])
    record(1, ok, f"4-digit {dict(r.class_counts)} in {dt:.3f}s; prose 537 flagged: {bool(errata)}")


def test_2_table1_five_digit(warm):
    r, dt = timed(scan, ScanRange.for_digits(5), 1)
    ok = r.class_counts == {0: 45600, 2178: 38030, 21978: 6370} and dt < 2.0
    record(2, ok, f"5-digit {dict(r.class_counts)} in {dt:.3f}s")


def test_3_table1_six_digit(warm):
    want = {0: 460458, 2178: 241749, 21978: 178686, 219978: 19107}
    r1, dt1 = timed(scan, ScanRange.for_digits(6), 1)
    r8, dt8 = timed(scan, ScanRange.for_digits(6), 8)
    ok = r1.class_counts == want and r8 == r1 and dt1 < 20.0 and dt8 < 5.0
    record(3, ok, f"6-digit {dict(r1.class_counts)}; 1 worker {dt1:.3f}s, 8 workers {dt8:.3f}s")


def test_4_iteration_ranges(warm):
    def span(r, cls=None):
        its = [it for (c, it) in r.histogram if cls is None or c == cls]
        return min(its), max(its)

    r2, r3, r4, r6 = (scan(ScanRange.for_digits(d)) for d in (2, 3, 4, 6))
    ok = (
        set(r2.class_counts) == {0} and span(r2) == (1, 6)
        and set(r3.class_counts) == {0} and span(r3) == (1, 6)
        and span(r4, 2178) == (1, 4) and span(r4, 0) == (1, 13)
        and r6.overall_max_iterations == 49
    )
    record(4, ok, f"2-dig {span(r2)}, 3-dig {span(r3)}, 4-dig cyc {span(r4, 2178)} zero {span(r4, 0)}, "
                  f"6-dig max {r6.overall_max_iterations}")


@pytest.mark.slow
def test_5_cycle_inventories(warm):
    counts = {}
    for d in range(4, 8):
        counts[d] = sum(1 for f in discovered_cycles(ScanRange.for_digits(d)) if f.canonical)
    r8, dt = timed(scan, ScanRange.for_digits(8), 8)
    fams = discovered_cycles(ScanRange.for_digits(8), report=r8)
    canon8 = {f.canonical for f in fams if f.canonical}
    counts[8] = len(canon8)
    want8 = {2178, 21978, 219978, 2199978, 21999978, 21782178, 11436678}
    mx = r8.overall_max_iterations
    finding = "matches 71" if mx == 71 else f"FINDING: computed maximum {mx}, stated 71"
    ok = counts == {4: 1, 5: 2, 6: 3, 7: 4, 8: 7} and canon8 == want8 and dt < 300
    record(5, ok, f"nonzero cycles {counts}; 8-digit scan {dt:.1f}s (8 workers); max iterations {finding}")


def test_6_fourteen_member_family():
    members = cycle_members(11436678)
    mags = sorted(abs(m) for m in members)
    t = run_sequence(11436678)
    first3 = []
    u = 11436678
    for _ in range(3):
        u = step(u)
        first3.append(u)
    eight = [f for f in discovered_cycles(ScanRange(11436678, 11436678))]
    ok = (mags == PRINTED_FOURTEEN[8] and mags[0] == 11436678 and mags[-1] == 76226733
          and first3 == [-76226733, -42464466, 23981958] and t.terminal.cycle_canonical == 11436678
          and eight[-1].period == 14)
    record(6, ok, f"period {len(members)}, sorted magnitudes equal printed list: {mags == PRINTED_FOURTEEN[8]}; "
                  f"first iterates {first3}")


def test_7_lemma():
    fails = 0
    for x in range(10, 10**6):
        for v in (x, -x):
            if step(v) % first_step_divisor(v):
                fails += 1
    samples = random_width_samples(10**6, 7, 18, seed=7).tolist()
    for v in samples:
        if step(v) % first_step_divisor(v):
            fails += 1
    widths = {digit_count(v) for v in samples}
    record(7, fails == 0 and widths == set(range(7, 19)),
           f"2-6 digits exhaustive (both signs) + 10^6 samples at 7-18 digits: {fails} failures")


def test_8_generator_formulas():
    fails = []
    for k in parameter_range(FamilyKind.PAIR_REPUNIT_22):
        a, b = 22 * (10**k - 1), 66 * (10**k - 1)
        for kind in (FamilyKind.PAIR_REPUNIT_22, FamilyKind.PAIR_REPUNIT_66):
            m = cycle_members(generate_family(kind, k))
            if len(m) != 4 or set(m) != {a, -a, b, -b}:
                fails.append((kind.value, k))
    for kind in (FamilyKind.SPACED_2178, FamilyKind.SPACED_6534):
        for k in parameter_range(kind):
            v = generate_family(kind, k)
            u = v
            for _ in range(len(cycle_members(v))):
                u = step(u)
            if u != v:
                fails.append((kind.value, k))
    ks = parameter_range(FamilyKind.PAIR_REPUNIT_22)
    record(8, not fails, f"pair k={ks.start}..{ks.stop - 1}, spaced k=4..14: failures {fails}")


@pytest.mark.slow
def test_9_oracle_equivalence():
    mismatches = 0
    vals = np.arange(-99999, 100000, dtype=np.int64)
    out = np.empty_like(vals)
    kernel.step_array(vals, out)
    mismatches += sum(1 for v, s in zip(vals.tolist(), out.tolist()) if s != step_ref(v))
    mismatches += sum(1 for v in range(-99999, 100000) if reflect(v) != reflect_ref(v))
    rng = np.random.default_rng(9)
    total = 0
    for batch in range(10):
        if batch % 2:
            vals = rng.integers(-(LIMIT - 1), LIMIT, size=10**6)
        else:
            vals = random_width_samples(10**6, 1, 18, seed=100 + batch)
        kernel.step_array(vals, out := np.empty_like(vals))
        mismatches += sum(1 for v, s in zip(vals.tolist(), out.tolist()) if s != step_ref(v))
        total += len(vals)
    record(9, mismatches == 0 and total == 10**7,
           f"1-5 digits exhaustive + {total} random samples: {mismatches} mismatches")


def _property(strategy, fn):
    calls = 0

    @settings(max_examples=PROPERTY_CASES, database=None)
    @given(strategy)
    def run(v):
        nonlocal calls
        calls += 1
        fn(v)

    run()
    return calls


ints = st.integers(-(LIMIT - 1), LIMIT - 1)
ints8 = st.integers(-(10**8 - 1), 10**8 - 1)
small_ranges = st.integers(1, 10**8).flatmap(lambda lo: st.tuples(st.just(lo), st.integers(lo, lo + 400)))


def _palindrome(args):
    half, odd, sign = args
    s = str(half)
    p = int(s + s[::-1][1:] if odd else s + s[::-1])
    if p < LIMIT:
        assert step(sign * p) == 0


def _negation(x):
    a, b = classify(x), classify(-x)
    assert (a.limit.kind, a.limit.cycle_canonical, a.iterations) == \
        (b.limit.kind, b.limit.cycle_canonical, b.iterations)


def _workers(args):
    (lo, hi), w = args
    assert scan(ScanRange(lo, hi), w, chunk_size=37) == scan(ScanRange(lo, hi), 1)


def _memo(bounds):
    rng = ScanRange(*bounds)
    assert scan(rng, memo=True, memo_bits=10) == scan(rng, memo=False)


def _partition(args):
    (lo, hi), cut = args
    cut = lo + cut % (hi - lo + 2)
    parts = [scan(ScanRange(lo, cut - 1)), scan(ScanRange(cut, hi))]
    assert merge_reports(parts, ScanRange(lo, hi)) == scan(ScanRange(lo, hi))


PROPERTIES = {
    "odd symmetry": (ints, lambda x: step(-x) == -step(x) or pytest.fail(str(x))),
    "conditional involution": (ints.filter(lambda x: x % 10), lambda x: reflect(reflect(x)) == x or pytest.fail(str(x))),
    "palindrome annihilation": (st.tuples(st.integers(1, 10**9 - 1), st.booleans(), st.sampled_from([-1, 1])), _palindrome),
    "negation equivalence of classify": (ints8, _negation),
    "worker-count invariance": (st.tuples(small_ranges, st.integers(1, 8)), _workers),
    "memoization invariance": (small_ranges, _memo),
    "partition additivity": (st.tuples(small_ranges, st.integers(0, 10**6)), _partition),
}


@pytest.mark.slow
def test_10_property_suite(warm):
    results = {}
    for name, (strategy, fn) in PROPERTIES.items():
        results[name] = _property(strategy, fn)
    ok = all(n >= PROPERTY_CASES for n in results.values())
    record(10, ok, "; ".join(f"{k}: {v} cases" for k, v in results.items()))


def test_11_erratum_detection():
    cur = [c.check_name for c in verify_curiosities() if not c.holds]
    fac = [c.check_name for c in verify_factorizations() if not c.holds]
    formulas = {c.check_name: c for c in verify_formulas()}
    first = [formulas[f"first cyclic {d}-digit number"] for d in (5, 6)]
    ok = (cur == ["6534/(6+5+3+4)"]
          and fac == ["21978 = 2*3^3*11*27", "65934 = 2*3^4*11*27"]
          and all(c.holds for c in first) and [c.computed for c in first] == [10012, 100012])
    record(11, ok, f"curiosities flagged {cur}; factorizations flagged {fac}; "
                   f"first cyclic 5/6-digit {[c.computed for c in first]}")
