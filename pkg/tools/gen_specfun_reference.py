"""Regenerate tests/data/specfun_reference.csv from mpmath at 50 digits.

Run once; the CSV is committed so the test suite never calls this oracle
alongside the code under test.
"""

import csv
import pathlib

import mpmath

mpmath.mp.dps = 50

ABSCISSAE = (
    "0.01", "0.1", "0.25", "0.5", "0.75", "1.25", "1.5", "2.5", "3.7", "5",
    "7.3", "9.99", "10", "12.5", "25", "50", "123.456", "1000", "100000", "100000000",
)

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "specfun_reference.csv"


def rows():
    for text in ABSCISSAE:
        # the double nearest the decimal, so the oracle sees exactly what the kernels see
        x = mpmath.mpf(float(text))
        yield "ln_gamma", 0, text, mpmath.loggamma(x)
        yield "digamma", 0, text, mpmath.digamma(x)
        for m in (1, 2, 3):
            yield "polygamma", m, text, mpmath.polygamma(m, x)


def main():
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("function", "order", "x", "value"))
        for name, order, x, value in rows():
            writer.writerow((name, order, x, mpmath.nstr(value, 17, strip_zeros=False)))


if __name__ == "__main__":
    main()
