"""Solve for cofactors of the four degree 4-6 relations and dump them as JSON.

Compares the weight-split systems with the unsplit ones (optional, slower).
"""

import argparse
import json
import time

from degenlocus import idealcheck as ic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--method", choices=("exact", "modular"), default="modular")
    ap.add_argument("--unsplit", action="store_true", help="also solve without weight splitting")
    ap.add_argument("--out", help="write cofactors to this JSON file")
    args = ap.parse_args()

    gens = list(ic.case_generators("full", "c3"))
    dump = {}
    for name, target in ic.relation_targets().items():
        modes = (True, False) if args.unsplit else (True,)
        for split in modes:
            t0 = time.perf_counter()
            cert = ic.membership_fixed_degree(target, gens, method=args.method, split=split)
            dt = time.perf_counter() - t0
            size = f"{cert.unknowns}x{cert.equations}" if cert else "-"
            print(f"{name:<18} split={split!s:<5} system {size:>10}  {cert.method if cert else 'none':<8} "
                  f"{dt:7.2f}s  verified={bool(cert and cert.verify())}")
            if cert and split:
                dump[name] = {"cofactor_degree": cert.cofactor_degree,
                              "cofactors": [h.to_json() for h in cert.cofactors]}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(dump, fh, indent=1)


if __name__ == "__main__":
    main()
