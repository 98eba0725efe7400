#!/usr/bin/env python
"""Run the oracle-vs-fast SER sweep and print a short summary."""

import csv
import sys

from fastgabor.cli import main as cli_main


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    output = "compare.csv"
    if "--output" not in argv:
        argv = ["--output", output] + argv
    else:
        output = argv[argv.index("--output") + 1]
    code = cli_main(["compare"] + argv)
    if code != 0:
        return code
    with open(output, newline="") as fh:
        rows = [r for r in csv.DictReader(fh) if r["status"] == "ok"]
    if rows:
        for col in ("ser_real_iir", "ser_imag_iir", "ser_real_fir", "ser_imag_fir"):
            values = [float(r[col]) for r in rows]
            print(f"{col}: min {min(values):.2f} dB, max {max(values):.2f} dB")
    else:
        print("no rows with an IIR measurement (sigma below the IIR floor)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
