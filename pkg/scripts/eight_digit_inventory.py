"""Full 8-digit run: cycle inventory, mirror split and longest trajectories.

Takes about 20 s on one core.
"""
import argparse
from collections import Counter

import numpy as np

from reflectra.catalog import known_cycles_for_width
from reflectra.scanner import DEFAULT_CHUNK, ScanRange, _Worker, discovered_cycles
from reflectra.trajectory import DEFAULT_MAX_STEPS, run_sequence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--digits", type=int, default=8)
    ap.add_argument("--witnesses", type=int, default=5)
    args = ap.parse_args()
    rng = ScanRange.for_digits(args.digits)

    w = _Worker(DEFAULT_CHUNK, DEFAULT_MAX_STEPS, memo=True, memo_bits=20)
    signed = Counter()
    longest, witnesses = 0, []
    for lo in range(rng.lo, rng.hi + 1, DEFAULT_CHUNK):
        n = min(DEFAULT_CHUNK, rng.hi + 1 - lo)
        canon, iters = w.classify_block(lo, n)
        vals, counts = np.unique(canon, return_counts=True)
        signed.update(dict(zip(vals.tolist(), counts.tolist())))
        m = int(iters.max())
        if m > longest:
            longest, witnesses = m, []
        if m == longest and len(witnesses) < args.witnesses:
            witnesses += [lo + int(i) for i in np.flatnonzero(iters == m)[: args.witnesses - len(witnesses)]]

    print("entered cycle (negative = mirror image of the cycle through |c|):")
    for c in sorted(signed, key=lambda v: (abs(v), v < 0)):
        print(f"  {c:>12} {signed[c]:>10}")
    print(f"longest trajectory: {longest} iterations, e.g. {witnesses}")
    for x in witnesses[:1]:
        t = run_sequence(x)
        print(f"  {x}: ... {t.iterates[-6:]} ({t.terminal.label})")
    if args.digits <= 10:
        known = [f.canonical for f in known_cycles_for_width(args.digits)]
        found = sorted({abs(c) for c in signed})
        print("catalog agrees with discovery:", known == found)


if __name__ == "__main__":
    main()
