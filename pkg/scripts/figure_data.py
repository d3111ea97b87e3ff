"""Write the iteration-count histograms per digit width as CSV.

One file per width, ``hist_<d>digit.csv``, in the reflectra CSV schema; these
are the distributions plotted by number of iterations.

    python scripts/figure_data.py --out data/ --through 6
"""
import argparse
from pathlib import Path

from reflectra.report import emit_scan_csv
from reflectra.scanner import ScanRange, default_workers, scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("data"))
    ap.add_argument("--through", type=int, default=6)
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for d in range(2, args.through + 1):
        path = args.out / f"hist_{d}digit.csv"
        path.write_text(emit_scan_csv(scan(ScanRange.for_digits(d), args.workers)), encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main()
