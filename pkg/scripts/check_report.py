#!/usr/bin/env python
"""Validate a benchmark CSV report.

Checks the header, that every row parses, that the recorded speedup is
consistent with the timings, and that the counter columns never favor
the baseline. Exits 0 when the report is well formed, 1 otherwise.
"""

import argparse
import csv
import sys

EXPECTED_HEADER = [
    "kind",
    "param",
    "t_fast_ms",
    "t_base_ms",
    "speedup",
    "rm_fast",
    "ra_fast",
    "rm_base",
    "ra_base",
]


def check(path: str) -> list[str]:
    problems = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return ["empty file"]
        if header != EXPECTED_HEADER:
            problems.append(f"bad header: {header}")
            return problems
        rows = list(reader)
    if not rows:
        problems.append("no data rows")
    for idx, row in enumerate(rows, start=2):
        if len(row) != len(EXPECTED_HEADER):
            problems.append(f"line {idx}: expected {len(EXPECTED_HEADER)} fields")
            continue
        kind, param = row[0], row[1]
        if kind not in ("bank", "sdft"):
            problems.append(f"line {idx}: unknown kind {kind!r}")
        try:
            int(param)
            t_fast, t_base, speedup, rm_f, ra_f, rm_b, ra_b = map(float, row[2:])
        except ValueError:
            problems.append(f"line {idx}: non-numeric field")
            continue
        if t_fast <= 0 or t_base <= 0:
            problems.append(f"line {idx}: non-positive timing")
            continue
        if abs(speedup - t_base / t_fast) > 1e-6 * speedup:
            problems.append(f"line {idx}: speedup inconsistent with timings")
        if rm_b < rm_f or ra_b < ra_f:
            problems.append(f"line {idx}: baseline op counts below the fast path")
    return problems


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("report", help="benchmark CSV produced by the bench command")
    args = parser.parse_args(argv)
    problems = check(args.report)
    for p in problems:
        print(p, file=sys.stderr)
    if not problems:
        print(f"{args.report}: OK")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
