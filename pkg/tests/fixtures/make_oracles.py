"""Regenerate oracle_sums.csv with exact rational arithmetic.

Run from the repository root: ``python tests/fixtures/make_oracles.py``.
"""

from fractions import Fraction
from pathlib import Path


def salem_sum(n):
    return sum((Fraction(n - k, n) / (2 * k) for k in range(1, n + 1)), Fraction(0))


def sobolev(n):
    return sum((Fraction(n - k, n) ** 2 / (2 * k) for k in range(1, n + 1)), Fraction(0))


def main():
    lines = ["# exact rational sums rounded once to double", "n,salem_sum,sobolev_sq"]
    n = 2
    while n <= 4096:
        lines.append(f"{n},{float(salem_sum(n)):.17g},{float(sobolev(n)):.17g}")
        n *= 2
    Path(__file__).with_name("oracle_sums.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
