"""Exhaustive classification of integer ranges.

The range is cut into contiguous chunks; chunk ``i`` goes to worker
``i % workers``. Each worker owns its scratch buffers and memo tables, runs the
compiled kernel chunk by chunk with the GIL released, and keeps a private
histogram. The final merge adds histograms, so the result does not depend on
the number of workers or on scheduling.
"""
from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import kernel
from .catalog import CycleFamily, family_from_seed
from .digits import LIMIT
from .trajectory import DEFAULT_MAX_STEPS, StepBudgetExceeded

DEFAULT_CHUNK = 1 << 16
DEFAULT_MEMO_BITS = 20


@dataclass(frozen=True)
class ScanRange:
    lo: int
    hi: int

    def __post_init__(self):
        # hi == lo - 1 is the empty range
        if not (1 <= self.lo and self.lo - 1 <= self.hi < LIMIT):
            raise ValueError(f"invalid scan range [{self.lo}, {self.hi}]")

    @classmethod
    def for_digits(cls, d: int) -> "ScanRange":
        if not 1 <= d <= 18:
            raise ValueError(f"digit width must be 1..18, got {d}")
        return cls(10 ** (d - 1), 10**d - 1)

    @property
    def digit_width(self) -> int | None:
        d = len(str(self.lo))
        if self.lo == 10 ** (d - 1) and self.hi == 10**d - 1:
            return d
        return None

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True, eq=True)
class ScanReport:
    """Aggregated classification of a range.

    Classes are keyed by canonical cycle member, 0 standing for the zero
    limit. ``elapsed`` and ``worker_count`` describe the run, not the result,
    and are left out of equality.
    """

    range: ScanRange
    class_counts: Mapping[int, int]
    histogram: Mapping[tuple[int, int], int]
    max_iterations: Mapping[int, int]
    total: int
    elapsed: float = field(default=0.0, compare=False)
    worker_count: int = field(default=1, compare=False)

    @classmethod
    def from_histogram(cls, rng: ScanRange, histogram: Mapping[tuple[int, int], int],
                       elapsed: float = 0.0, worker_count: int = 1) -> "ScanReport":
        hist = {key: histogram[key] for key in sorted(histogram) if histogram[key]}
        counts: Counter = Counter()
        maxima: dict[int, int] = {}
        for (c, it), n in hist.items():
            counts[c] += n
            maxima[c] = max(maxima.get(c, 0), it)
        return cls(
            range=rng,
            class_counts=dict(sorted(counts.items())),
            histogram=hist,
            max_iterations=dict(sorted(maxima.items())),
            total=sum(counts.values()),
            elapsed=elapsed,
            worker_count=worker_count,
        )

    @property
    def overall_max_iterations(self) -> int:
        return max(self.max_iterations.values(), default=0)

    def fractions(self) -> dict[int, float]:
        return {c: n / self.total for c, n in self.class_counts.items()}


def merge_reports(reports: Iterable[ScanReport], rng: ScanRange | None = None) -> ScanReport:
    """Sum reports over disjoint subranges. ``rng`` defaults to their hull."""
    reports = list(reports)
    hist: Counter = Counter()
    for r in reports:
        hist.update(r.histogram)
    if rng is None:
        rng = ScanRange(min(r.range.lo for r in reports), max(r.range.hi for r in reports))
    return ScanReport.from_histogram(
        rng, hist,
        elapsed=sum(r.elapsed for r in reports),
        worker_count=max((r.worker_count for r in reports), default=1),
    )


class _Worker:
    def __init__(self, chunk_size: int, max_steps: int, memo: bool, memo_bits: int):
        self.max_steps = max_steps
        self.memo = memo
        self.buf = np.empty(max_steps + 2, dtype=np.int64)
        self.out_canon = np.empty(chunk_size, dtype=np.int64)
        self.out_iters = np.empty(chunk_size, dtype=np.int64)
        self.hist: Counter = Counter()
        if memo:
            self.state = np.zeros(2, dtype=np.int64)
            self.table_keys = np.zeros(1 << kernel.CYCLE_TABLE_BITS, dtype=np.int64)
            self.table_ids = np.zeros(1 << kernel.CYCLE_TABLE_BITS, dtype=np.int64)
            self.cyc_canon = np.zeros(kernel.MAX_CYCLES, dtype=np.int64)
            self.cyc_neg = np.zeros(kernel.MAX_CYCLES, dtype=np.int64)
            self.memo_keys = np.zeros(1 << memo_bits, dtype=np.int64)
            self.memo_cls = np.zeros(1 << memo_bits, dtype=np.int64)
            self.memo_iters = np.zeros(1 << memo_bits, dtype=np.int64)

    def classify_block(self, lo: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        """Signed canonicals and iteration counts for ``lo .. lo+count-1``."""
        if self.memo:
            status = kernel.classify_block_memo(
                lo, count, self.max_steps, self.buf, self.state, self.table_keys,
                self.table_ids, self.cyc_canon, self.cyc_neg, self.memo_keys,
                self.memo_cls, self.memo_iters, self.out_canon, self.out_iters)
        else:
            status = kernel.classify_block_plain(
                lo, count, self.max_steps, self.buf, self.out_canon, self.out_iters)
        if status >= 0:
            raise StepBudgetExceeded(lo + status, self.max_steps)
        return self.out_canon[:count], self.out_iters[:count]

    def run_chunk(self, lo: int, count: int) -> None:
        canon, iters = self.classify_block(lo, count)
        classes = np.zeros(64, dtype=np.int64)
        counts = np.zeros((64, int(iters.max()) + 1), dtype=np.int64)
        nc = kernel.tally(canon, iters, count, classes, counts)
        if nc < 0:
            pairs, n = np.unique(np.stack([np.abs(canon), iters]), axis=1, return_counts=True)
            for (c, it), k in zip(pairs.T.tolist(), n.tolist()):
                self.hist[(c, it)] += k
            return
        for a in range(nc):
            c = abs(int(classes[a]))
            for it in np.flatnonzero(counts[a]).tolist():
                self.hist[(c, it)] += int(counts[a, it])


def default_workers() -> int:
    env = os.environ.get("REFLECTRA_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _chunks(rng: ScanRange, chunk_size: int) -> list[tuple[int, int]]:
    return [(lo, min(chunk_size, rng.hi + 1 - lo)) for lo in range(rng.lo, rng.hi + 1, chunk_size)]


def scan(rng: ScanRange, workers: int = 1, *, memo: bool = True, chunk_size: int = DEFAULT_CHUNK,
         max_steps: int = DEFAULT_MAX_STEPS, memo_bits: int = DEFAULT_MEMO_BITS) -> ScanReport:
    """Classify every integer in ``rng`` and aggregate the results.

    Raises :class:`StepBudgetExceeded` naming the first input (in chunk
    order of the failing worker) that exhausted ``max_steps``.
    """
    if workers < 1 or chunk_size < 1 or max_steps < 1:
        raise ValueError("workers, chunk_size and max_steps must be positive")
    t0 = time.perf_counter()
    chunks = _chunks(rng, chunk_size)
    workers = min(workers, max(1, len(chunks)))
    # a table much larger than the range only costs allocation time
    memo_bits = min(memo_bits, max(8, (8 * len(rng)).bit_length()))
    pool = [_Worker(min(chunk_size, max(len(rng), 1)), max_steps, memo, memo_bits)
            for _ in range(workers)]

    def work(w: int) -> None:
        for lo, count in chunks[w::workers]:
            pool[w].run_chunk(lo, count)

    if workers == 1:
        work(0)
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            for f in [ex.submit(work, w) for w in range(workers)]:
                f.result()
    hist: Counter = Counter()
    for w in pool:
        hist.update(w.hist)
    return ScanReport.from_histogram(rng, hist, time.perf_counter() - t0, workers)


def first_cyclic_in_width(d: int, *, block: int = 4096, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Smallest d-digit integer whose trajectory ends on a cycle."""
    if not 4 <= d <= 18:
        raise ValueError(f"width must be 4..18, got {d}")
    w = _Worker(block, max_steps, memo=False, memo_bits=0)
    lo, hi = 10 ** (d - 1), 10**d - 1
    while lo <= hi:
        count = min(block, hi + 1 - lo)
        canon, _ = w.classify_block(lo, count)
        hits = np.flatnonzero(canon)
        if hits.size:
            return lo + int(hits[0])
        lo += count
    raise LookupError(f"no {d}-digit input reaches a cycle")


def discovered_cycles(rng: ScanRange, workers: int = 1, *, report: ScanReport | None = None,
                      **scan_kwargs) -> list[CycleFamily]:
    """Distinct terminal cycles reached from ``rng``, zero included, by canonical."""
    if report is None:
        report = scan(rng, workers, **scan_kwargs)
    return [family_from_seed(c) for c in sorted(report.class_counts)]
