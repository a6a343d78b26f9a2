"""Sum-of-squares certificates for the Hermitian discriminant, n = 2..N."""

import argparse
import json
import time

from degenlocus.matspaces import SpaceDescriptor
from degenlocus.subdisc import sos_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--seed", default="0")
    ap.add_argument("--out", help="directory for sos_n*.json")
    args = ap.parse_args()

    for n in range(2, args.nmax + 1):
        t0 = time.perf_counter()
        samples = 10 * SpaceDescriptor("hermitian", n).dim
        cert = sos_certificate(n, samples=samples, seed=args.seed)
        print(f"n={n}: {len(cert.terms)} squares, verified by {cert.verified}"
              f" ({cert.checked_points or 'all'} points) in {time.perf_counter() - t0:.1f}s")
        if args.out:
            with open(f"{args.out}/sos_n{n}.json", "w") as fh:
                json.dump(cert.to_json(), fh)


if __name__ == "__main__":
    main()
