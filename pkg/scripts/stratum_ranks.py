"""Evaluation ranks of degree-d monomials on sampled points of a stratum.

Default: Hermitian 3x3 matrices with a repeated eigenvalue, d = 1..3, plus
the per-weight multiplicity comparison against the character series.
"""

import argparse
import time

from degenlocus import idealcheck as ic
from degenlocus import matspaces as ms
from degenlocus.covariants import dim_forms


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--space", default="hermitian", choices=sorted(ms.KINDS.values()))
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--distinct", type=int, default=2)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--seed", default="0")
    args = ap.parse_args()

    desc = ms.SpaceDescriptor(args.space, args.n)
    for d in range(1, args.dmax + 1):
        t0 = time.perf_counter()
        r = ic.eval_rank_on_stratum(desc, args.distinct, d, args.points, seed=args.seed)
        print(f"d={d}: rank {r} of {dim_forms(desc.dim, d)} monomials ({time.perf_counter() - t0:.1f}s)")
    if (args.space, args.n, args.distinct) == ("hermitian", 3, 2):
        for d in range(2, args.dmax + 1):
            ok, found, expected = ic.weight_multiplicity_check(d, seed=args.seed)
            print(f"weight multiplicities d={d}: {'match' if ok else 'differ'} (total {sum(found.values())})")


if __name__ == "__main__":
    main()
