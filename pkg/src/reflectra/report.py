"""CSV and JSON forms of scan reports and verification results.

The CSV carries the histogram only, one ``limit_class,iterations,count`` row
per nonzero bin. The JSON carries the whole report and can be parsed back.
Both are sorted so the same report always serializes to the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable

from .catalog import Check
from .scanner import ScanRange, ScanReport


def class_label(canonical: int) -> str:
    return "zero" if canonical == 0 else f"cycle-{canonical}"


def parse_label(label: str) -> int:
    if label == "zero":
        return 0
    prefix, _, num = label.partition("-")
    if prefix != "cycle" or not num.isdigit():
        raise ValueError(f"bad class label {label!r}")
    return int(num)


@dataclass(frozen=True)
class HistogramRow:
    limit_class: str
    iterations: int
    count: int


def histogram_rows(report: ScanReport) -> list[HistogramRow]:
    """Rows ordered by class (zero first, then by canonical) and iteration count."""
    return [
        HistogramRow(class_label(c), it, n)
        for (c, it), n in sorted(report.histogram.items())
    ]


def emit_scan_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["limit_class", "iterations", "count"])
    for row in histogram_rows(report):
        w.writerow([row.limit_class, row.iterations, row.count])
    return buf.getvalue()


def scan_to_dict(report: ScanReport, include_runtime: bool = True) -> dict:
    d = {
        "range": {"lo": report.range.lo, "hi": report.range.hi},
        "totals": report.total,
        "class_counts": {class_label(c): n for c, n in report.class_counts.items()},
        "histogram": [
            {"limit_class": r.limit_class, "iterations": r.iterations, "count": r.count}
            for r in histogram_rows(report)
        ],
        "max_iterations": {class_label(c): n for c, n in report.max_iterations.items()},
    }
    if include_runtime:
        d["elapsed_ms"] = round(report.elapsed * 1000, 3)
        d["worker_count"] = report.worker_count
    return d


def emit_scan_json(report: ScanReport, include_runtime: bool = True) -> str:
    """JSON object with sorted keys.

    ``elapsed_ms`` and ``worker_count`` vary between runs of the same range;
    ``include_runtime=False`` drops them to get reproducible bytes.
    """
    return json.dumps(scan_to_dict(report, include_runtime), sort_keys=True, indent=2) + "\n"


def parse_scan_json(text: str) -> ScanReport:
    d = json.loads(text)
    rng = ScanRange(d["range"]["lo"], d["range"]["hi"])
    hist = {(parse_label(r["limit_class"]), r["iterations"]): r["count"] for r in d["histogram"]}
    report = ScanReport.from_histogram(
        rng, hist, d.get("elapsed_ms", 0.0) / 1000, d.get("worker_count", 1))
    counts = {parse_label(k): v for k, v in d["class_counts"].items()}
    if counts != dict(report.class_counts) or d["totals"] != report.total:
        raise ValueError("class_counts/totals disagree with histogram")
    return report


def emit_verification_report(results: Iterable[Check]) -> str:
    return json.dumps([c.as_dict() for c in results], sort_keys=True, indent=2) + "\n"
