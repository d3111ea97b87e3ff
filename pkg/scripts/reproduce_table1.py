"""Class counts, fractions and iteration maxima per digit width.

    python scripts/reproduce_table1.py --through 7 --workers 4
"""
import argparse

from reflectra.report import class_label
from reflectra.scanner import ScanRange, default_workers, scan
from reflectra.verify import TABLE1_COUNTS


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--through", type=int, default=6)
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()

    for d in range(1, args.through + 1):
        r = scan(ScanRange.for_digits(d), args.workers)
        print(f"{d}-digit: {r.total} inputs, {r.elapsed:.2f}s, max iterations {r.overall_max_iterations}")
        published = TABLE1_COUNTS.get(d, {})
        for c, n in r.class_counts.items():
            pub = published.get(c)
            mark = "" if pub is None else ("  (matches)" if pub == n else f"  (published {pub})")
            print(f"  {class_label(c):>16} {n:>10} {n / r.total:.4f}  "
                  f"iterations 1..{r.max_iterations[c]}{mark}")


if __name__ == "__main__":
    main()
