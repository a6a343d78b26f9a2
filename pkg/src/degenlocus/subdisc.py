"""Subdiscriminants, the sum-of-squares certificate for the discriminant, and
vanishing checks for the highest weight vectors f_k."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod

from .covariants import c_full, f_k, laplacian, weyl_dim, xvars
from .exactmath import Matrix, MultiPoly, det_exact, format_scalar, simplify
from .exactmath.scalars import is_scalar
from .matspaces import SpaceDescriptor, generic_matrix, matrix_coordinates, rng_for, sample_stratum

__all__ = [
    "sdisc_def",
    "sdisc",
    "power_sums",
    "SosCertificate",
    "sos_certificate",
    "harmonic_check_cR",
    "vanishing_fk_on_stratum",
]


def sdisc_def(eigenvalues, k):
    """Sum over (n-k)-subsets of prod_{s<t} (l_s - l_t)^2."""
    lam = [simplify(v) for v in eigenvalues]
    n = len(lam)
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}, got {k}")
    total = 0
    for sub in combinations(lam, n - k):
        term = 1
        for a, b in combinations(sub, 2):
            term = term * (a - b) ** 2
        total = total + term
    return simplify(total)


def power_sums(A, m):
    """[tr(A^0), ..., tr(A^m)]."""
    return [P.trace() for P in A.powers(m)]


def sdisc(A, k):
    """Determinant of the leading (n-k) x (n-k) Hankel matrix of power sums."""
    A = A.matrix if hasattr(A, "matrix") else A if isinstance(A, Matrix) else Matrix(A)
    if not A.is_square():
        raise ValueError("square matrix required")
    n = A.nrows
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}, got {k}")
    m = n - k
    p = power_sums(A, 2 * m - 2)
    H = Matrix([[p[i + j] for j in range(m)] for i in range(m)])
    d = det_exact(H)
    return d if isinstance(d, MultiPoly) else simplify(d)


@dataclass
class SosCertificate:
    """target = sum(weight * poly**2) over the Hermitian real coordinates."""

    n: int
    variables: tuple
    terms: list
    target: MultiPoly
    verified: str = "no"
    checked_points: int = 0

    def evaluate_sum(self, point):
        return simplify(sum(w * p.evaluate(point) ** 2 for w, p in self.terms))

    def verify_symbolic(self):
        total = MultiPoly.const(self.variables, 0)
        for w, p in self.terms:
            total = total + (p * p) * w
        return total == self.target

    def verify_points(self, points):
        """Exact identity check at rational points; ``points`` are coordinate dicts."""
        for pt in points:
            if self.evaluate_sum(pt) != sdisc(
                generic_matrix(SpaceDescriptor("hermitian", self.n)).matrix.map(lambda e: e.evaluate(pt)), 0
            ):
                return False
        return True

    def to_json(self):
        return {
            "n": self.n,
            "vars": list(self.variables),
            "terms": [
                {"weight": format_scalar(w),
                 "poly": {",".join(map(str, e)): format_scalar(c) for e, c in p.items()}}
                for w, p in self.terms
            ],
            "verified": self.verified,
            "checked_points": self.checked_points,
        }


def _alpha_factorial(a):
    return prod(factorial(e) for e in a)


def random_hermitian_points(n, count, seed):
    """Rational points (coordinate dicts) of Her(n)."""
    from .matspaces import random_rational

    desc = SpaceDescriptor("hermitian", n)
    rng = rng_for(f"herpoints/{n}", seed)
    return [{v: random_rational(rng) for v in desc.variables()} for _ in range(count)]


def sos_certificate(n, verify="auto", samples=None, seed=0):
    """Discriminant of Her(n) as a weighted sum of squares of coefficient parts.

    Every monomial coefficient c_a of det(x | Ax | ... | A^(n-1) x) on the
    symbolic Hermitian matrix contributes (a!, Re c_a) and (a!, Im c_a).

    verify: "symbolic" expands the full identity, "samples" checks it
    exactly at ``samples`` random rational points (default 10 * n^2), and
    "auto" chooses symbolic for n <= 3.  Raises ArithmeticError if the
    identity fails.
    """
    desc = SpaceDescriptor("hermitian", n)
    G = generic_matrix(desc)
    vs = G.variables
    form = c_full(G.matrix)
    parts = form.coefficients_in(xvars(n))
    terms = []
    for a in sorted(parts, reverse=True):
        w = _alpha_factorial(a)
        c = parts[a].with_vars(vs)
        for q in (c.real_part(), c.imag_part()):
            if not q.is_zero():
                terms.append((w, q))
    if verify == "auto":
        verify = "symbolic" if n <= 3 else "samples"
    if verify == "symbolic":
        target = sdisc(G.matrix, 0).with_vars(vs)
        cert = SosCertificate(n, vs, terms, target)
        if not cert.verify_symbolic():
            raise ArithmeticError("sum-of-squares identity failed to verify")
        cert.verified = "symbolic"
        return cert
    if verify != "samples":
        raise ValueError(f"unknown verification mode {verify!r}")
    count = samples if samples is not None else 10 * n * n
    cert = SosCertificate(n, vs, terms, None)
    pts = random_hermitian_points(n, count, seed)
    if not cert.verify_points(pts):
        raise ArithmeticError("sum-of-squares identity failed at a sample point")
    cert.verified = "samples"
    cert.checked_points = count
    return cert


def harmonic_check_cR(n, samples=0, seed=0, space="sym_real"):
    """Whether the form det(x | Ax | ...) is harmonic in x for real symmetric A.

    With ``samples == 0`` the identity is checked on the symbolic matrix of
    ``space``; otherwise at that many random rational symmetric matrices.
    """
    desc = SpaceDescriptor(space, n)
    xs = xvars(n)
    if samples == 0:
        return laplacian(c_full(generic_matrix(desc).matrix), xs).is_zero()
    from .matspaces import random_rational

    rng = rng_for(f"harmonic/{n}", seed)
    for _ in range(samples):
        rows = [[0] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                rows[j][k] = rows[k][j] = random_rational(rng)
        if not laplacian(c_full(Matrix(rows)), xs).is_zero():
            return False
    return True


@dataclass
class FkReport:
    n: int
    k: int
    trials: int
    seed: object
    space: str
    vanished: int
    weyl_dim: int
    squares: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.vanished == self.trials

    def to_json(self):
        return {
            "n": self.n, "k": self.k, "trials": self.trials, "seed": self.seed,
            "space": self.space, "vanished": self.vanished, "weyl_dim": self.weyl_dim,
            "squares": self.squares, "pass": self.passed,
        }


def vanishing_fk_on_stratum(n, k, trials=50, seed=0, space="full_complex"):
    """f_{k+1} on random matrices with n-k-1 distinct eigenvalues."""
    if n < 3 or not 0 <= k <= n - 3:
        raise ValueError("need n >= 3 and 0 <= k <= n-3")
    desc = SpaceDescriptor(space, n)
    vanished = 0
    failures = []
    for t in range(trials):
        pt = sample_stratum(desc, n - k - 1, seed=f"{seed}/{t}")
        if f_k(pt.matrix, k + 1) == 0:
            vanished += 1
        else:
            failures.append(t)
    dim = weyl_dim(n, k)
    return FkReport(n, k, trials, seed, desc.code, vanished, dim, 2 * dim, failures)
