"""Command-line front end: ``degenlocus <command> ...``.

Every command prints line-delimited JSON on stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import covariants as cov
from . import idealcheck as ic
from . import matspaces as ms
from .exactmath import Matrix, MultiPoly, format_scalar, parse_scalar
from .exactmath.scalars import is_scalar
from .subdisc import sdisc, sos_certificate

log = logging.getLogger("degenlocus")

COVARIANTS = ("c1", "c2", "d", "c3", "c4", "c", "wedge", "f")
SUITES = ("all", "relations", "series", "membership", "spans", "monomial")


class UsageError(Exception):
    """Bad input; reported on stderr with exit status 2."""


@dataclass
class RunConfig:
    command: str
    space: Optional[str] = None
    case: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    d_max: int = 5
    seed: str = "0"
    samples: Optional[int] = None
    matrix: Optional[str] = None
    output: Optional[str] = None
    pretty: bool = False
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, ns):
        known = {f for f in cls.__dataclass_fields__ if f != "extra"}
        vals = {k: v for k, v in vars(ns).items() if k in known}
        extra = {k: v for k, v in vars(ns).items() if k not in known and k != "func"}
        return cls(**vals, extra=extra)


# JSON helpers ------------------------------------------------------------------


def encode(value):
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, MultiPoly):
        return value.to_json()
    if isinstance(value, Matrix):
        return [[encode(x) for x in row] for row in value.rows]
    if is_scalar(value):
        return format_scalar(value)
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    return value


def matrix_json(A, desc, **extra):
    out = {"space": desc.code, "n": desc.n, "entries": A.to_strings()}
    out.update(extra)
    return out


def read_matrix(path, expect_space=None):
    """Load a matrix file; returns (Matrix, SpaceDescriptor)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "entries" not in data:
        raise UsageError(f"{path}: expected an object with 'space', 'n' and 'entries'")
    code = data.get("space", "full")
    if code not in ms.KINDS:
        raise UsageError(f"{path}: unknown space {code!r} (expected one of {', '.join(ms.KINDS)})")
    entries = data["entries"]
    n = data.get("n", len(entries) if isinstance(entries, list) else None)
    if not isinstance(entries, list) or len(entries) != n or any(
            not isinstance(r, list) or len(r) != n for r in entries):
        raise UsageError(f"{path}: 'entries' must be an {n}x{n} list of rows")
    try:
        A = Matrix([[parse_scalar(str(x)) for x in row] for row in entries])
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    try:
        desc = ms.SpaceDescriptor(code, n)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if expect_space is not None and desc.code != expect_space:
        raise UsageError(f"{path}: expected space {expect_space!r}, got {desc.code!r}")
    if not desc.contains(A):
        raise UsageError(f"{path}: matrix does not lie in space {desc.code!r} ({desc.kind})")
    return A, desc


def emit(obj, cfg, stream=None):
    stream = stream or sys.stdout
    text = json.dumps(obj, indent=2 if cfg.pretty else None, sort_keys=False)
    stream.write(text + "\n")


def _scalar_arg(text, what):
    try:
        return parse_scalar(text)
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse {what} {text!r}") from None


def _int_list(text, what):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers") from None


# commands ------------------------------------------------------------------------


def cmd_sdisc(cfg):
    A, _ = read_matrix(cfg.matrix)
    k = cfg.k if cfg.k is not None else 0
    if not 0 <= k <= A.nrows - 1:
        raise UsageError(f"--k must lie in 0..{A.nrows - 1}")
    emit({"command": "sdisc", "k": k, "value": format_scalar(sdisc(A, k))}, cfg)
    return 0


def cmd_covariant(cfg):
    name = cfg.extra["name"]
    if cfg.extra.get("symbolic"):
        if not cfg.space or not cfg.n:
            raise UsageError("--symbolic needs --space and --n")
        desc = ms.SpaceDescriptor(cfg.space, cfg.n)
        A = ms.generic_matrix(desc).matrix
    else:
        if not cfg.matrix:
            raise UsageError("give --matrix FILE or --symbolic")
        A, desc = read_matrix(cfg.matrix)
    n = desc.n
    if name in ("c2", "d", "c3", "c4") and n != 3:
        raise UsageError(f"covariant {name} is defined for 3x3 matrices")
    k = cfg.k
    if name == "c1":
        value = cov.c1(A)
    elif name == "c2":
        value = cov.c2(A)
    elif name == "d":
        value = list(cov.d_invariants(A))
    elif name == "c3":
        value = cov.c3(A)
    elif name == "c4":
        value = cov.c4(A)
    elif name == "c":
        value = cov.c_full(A)
    elif name == "wedge":
        k = 1 if k is None else k
        if not 0 <= k <= n - 1:
            raise UsageError(f"--k must lie in 0..{n - 1}")
        value = cov.wedge_P(A, k)
    else:
        k = 1 if k is None else k
        if not 1 <= k <= n - 1:
            raise UsageError(f"--k must lie in 1..{n - 1}")
        value = cov.f_k(A, k)
    out = {"command": "covariant", "name": name, "space": desc.code, "n": n}
    if name in ("wedge", "f"):
        out["k"] = k
    out["value"] = encode(value)
    emit(out, cfg)
    return 0


def cmd_sos(cfg):
    n = cfg.n or 2
    samples = cfg.extra.get("verify_samples")
    mode = "samples" if samples else "auto"
    try:
        cert = sos_certificate(n, verify=mode, samples=samples, seed=cfg.seed)
    except ArithmeticError as exc:
        log.error("%s", exc)
        emit({"command": "sos", "n": n, "seed": cfg.seed, "verified": False}, cfg)
        return 1
    out = {"command": "sos", "n": n, "seed": cfg.seed, "term_count": len(cert.terms)}
    out.update(cert.to_json())
    out["verified"] = True
    out["verification"] = cert.verified
    emit(out, cfg)
    return 0


def cmd_sample(cfg):
    if not cfg.space or not cfg.n:
        raise UsageError("sample needs --space and --n")
    desc = ms.SpaceDescriptor(cfg.space, cfg.n)
    mult = _int_list(cfg.extra.get("multiplicities") or ",".join(["1"] * cfg.n), "--multiplicities")
    eig_text = cfg.extra.get("eigenvalues")
    if eig_text:
        eig = [_scalar_arg(x, "eigenvalue") for x in eig_text.split(",")]
    else:
        eig = list(range(1, len(mult) + 1))
    try:
        pt = ms.sample_degenerate(desc, mult, eig, seed=cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit(matrix_json(pt.matrix, desc, provenance=pt.provenance(),
                     min_poly_degree=ms.min_poly_degree(pt.matrix)), cfg)
    return 0


def cmd_perturb(cfg):
    kind = cfg.extra["kind"]
    eps = _scalar_arg(cfg.extra.get("eps") or "1", "--eps")
    lam = _scalar_arg(cfg.extra.get("lam") or "0", "--lam")
    if kind == "jordan":
        if not cfg.matrix:
            raise UsageError("jordan perturbation needs --matrix (a matrix in Jordan form)")
        A, desc = read_matrix(cfg.matrix)
        try:
            B = ms.jordan_perturb(A, lam, eps)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        emit(matrix_json(B, desc, kind=kind, min_poly_degree=ms.min_poly_degree(B)), cfg)
        return 0
    blocks = cfg.extra.get("blocks")
    if blocks:
        rs = _int_list(blocks, "--blocks")
    else:
        rs = [cfg.extra.get("r") or 2]
    if any(r < 1 for r in rs):
        raise UsageError("block sizes must be >= 1")
    if kind == "s":
        B = ms.s_perturb_blocks([(r, lam) for r in rs], eps)
    else:
        B = ms.block_diag([ms.symmetrize_jordan(r, lam) for r in rs])
    out = {"space": "symc", "n": B.nrows, "entries": B.to_strings(), "kind": kind,
           "min_poly_degree": ms.min_poly_degree(B)}
    emit(out, cfg)
    return 0


def _check(name, expected, got):
    return {"name": name, "expected": expected, "got": got, "pass": expected == got}


def run_suite(case, suite, d_max, seed):
    checks = []
    want = SUITES[1:] if suite == "all" else (suite,)
    if "spans" in want:
        r = ic.span_checks(case)
        target = 20 if case == "full" else 7
        checks.append(_check("covariant coordinate rank", target, r["covariant_rank"]))
        checks.append(_check("wedge coordinate rank", target, r["wedge_rank"]))
        checks.append(_check("stacked rank", target, r["union_rank"]))
    if "series" in want:
        ranks = ic.quotient_hilbert(case, d_max)
        checks.append(_check("quotient Hilbert function", ic.closed_form_hilbert(case, d_max), ranks))
        order = max(d_max, 8)
        checks.append(_check("multiplicity series identity", True,
                             ic.multiplicity_series(case, order) == ic.multiplicity_series_identity(case, order)))
        checks.append(_check("character series at q=1", ranks, ic.character_series(case, d_max).at_one()))
    if "membership" in want:
        gens = list(ic.case_generators(case, "c3"))
        targets = ic.relation_targets() if case == "full" else ic.sym_targets()
        for name, tg in targets.items():
            cert = ic.membership_fixed_degree(tg, gens)
            checks.append(_check(f"membership {name}", True, cert is not None and cert.verify()))
    if "relations" in want:
        rep = ic.relations_on_M1_check(seed=seed)
        for name, ok in rep.items():
            if name.startswith("control") or name.startswith(case):
                checks.append(_check(name, True, ok))
    if "monomial" in want:
        ok, _ = ic.monomial_kernel_check(12)
        checks.append(_check("monomial algebra kernel, total degree <= 12", True, ok))
    return checks


def cmd_verify(cfg):
    case = cfg.case or "full"
    suite = cfg.extra.get("suite") or "all"
    checks = run_suite(case, suite, cfg.d_max, cfg.seed)
    ok = all(c["pass"] for c in checks)
    emit({"command": "verify", "case": case, "suite": suite, "dmax": cfg.d_max, "seed": cfg.seed,
          "checks": checks, "pass": ok}, cfg)
    return 0 if ok else 1


def cmd_hilbert(cfg):
    case = cfg.case or "full"
    series = ic.closed_form_hilbert(case, cfg.d_max)
    ranks = ic.quotient_hilbert(case, cfg.d_max)
    emit({"command": "hilbert", "case": case, "dmax": cfg.d_max, "series": series,
          "ranks": ranks, "match": series == ranks}, cfg)
    return 0 if series == ranks else 1


def cmd_weyl(cfg):
    if cfg.n is None or cfg.k is None:
        raise UsageError("weyl needs --n and --k")
    try:
        dim = cov.weyl_dim(cfg.n, cfg.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit({"command": "weyl", "n": cfg.n, "k": cfg.k, "dim": dim, "squares": 2 * dim}, cfg)
    return 0


# parser ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--seed", default="0", help="seed for every random choice (echoed in output)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = argparse.ArgumentParser(prog="degenlocus", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sdisc", parents=[common], help="k-subdiscriminant of a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, default=0)
    s.set_defaults(func=cmd_sdisc)

    s = sub.add_parser("covariant", parents=[common], help="evaluate a covariant")
    s.add_argument("name", choices=COVARIANTS)
    s.add_argument("--matrix")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--space", choices=sorted(ms.KINDS))
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_covariant)

    s = sub.add_parser("sos", parents=[common], help="sum-of-squares certificate for the discriminant")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--verify-samples", type=int, dest="verify_samples")
    s.set_defaults(func=cmd_sos)

    s = sub.add_parser("sample", parents=[common], help="exact random matrix with prescribed spectrum")
    s.add_argument("--space", required=True, choices=sorted(ms.KINDS))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--multiplicities")
    s.add_argument("--eigenvalues")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("perturb", parents=[common], help="Jordan or symmetric block perturbations")
    s.add_argument("kind", choices=("jordan", "s", "sym"))
    s.add_argument("--matrix")
    s.add_argument("--lam")
    s.add_argument("--eps")
    s.add_argument("--r", type=int)
    s.add_argument("--blocks", help="comma-separated block sizes")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("verify", parents=[common], help="ideal and series checks for 3x3 matrices")
    s.add_argument("--case", choices=ic.CASES, default="full")
    s.add_argument("--suite", choices=SUITES, default="all")
    s.add_argument("--dmax", type=int, default=5, dest="d_max")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert function: closed form vs ranks")
    s.add_argument("--case", choices=ic.CASES, default="full")
    s.add_argument("--dmax", type=int, default=5, dest="d_max")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("weyl", parents=[common], help="dimension of the (n-k, 1^k) irreducible")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_weyl)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    cfg = RunConfig.from_args(ns)
    try:
        return ns.func(cfg)
    except UsageError as exc:
        print(f"degenlocus {cfg.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
