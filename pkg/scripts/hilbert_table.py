"""Quotient Hilbert function by exact ranks next to the closed-form expansion.

    python scripts/hilbert_table.py --case full --dmax 6
"""

import argparse
import time

from degenlocus import idealcheck as ic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", choices=ic.CASES, default="full")
    ap.add_argument("--dmax", type=int, default=5)
    args = ap.parse_args()

    closed = ic.closed_form_hilbert(args.case, args.dmax)
    print(f"{'d':>3} {'closed form':>12} {'rank':>8} {'seconds':>8}")
    for d in range(args.dmax + 1):
        t0 = time.perf_counter()
        value = ic.quotient_hilbert(args.case, d)[d]
        flag = "" if value == closed[d] else "  MISMATCH"
        print(f"{d:>3} {closed[d]:>12} {value:>8} {time.perf_counter() - t0:>8.2f}{flag}")


if __name__ == "__main__":
    main()
