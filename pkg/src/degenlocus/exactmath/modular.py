"""Multi-prime modular elimination with rational reconstruction.

Used only to speed up large rational solves.  Every solution produced here
is checked against the original system in exact arithmetic before it is
returned, so a bad prime or a failed reconstruction can cost time but never
correctness.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .scalars import simplify

__all__ = [
    "is_prime",
    "prime_stream",
    "rref_mod",
    "rank_mod",
    "crt_pair",
    "rational_reconstruct",
    "solve_modular",
    "verify_solution",
    "certified_rank",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream(start=(1 << 31) - 1):
    """Descending primes below ``start`` (inclusive)."""
    p = start
    while p > 2:
        if is_prime(p):
            yield p
        p -= 1


def _to_mod(values, p):
    """Reduce a list of rationals mod p; None if a denominator vanishes."""
    out = []
    for v in values:
        v = Fraction(v)
        den = v.denominator % p
        if den == 0:
            return None
        out.append(v.numerator * pow(den, -1, p) % p)
    return out


def rref_mod(A, p):
    """Reduced row echelon form of an int64 array modulo p < 2**31.

    Returns ``(R, pivots)``; ``A`` is not modified.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A, p):
    return len(rref_mod(A, p)[1])


def crt_pair(r1, m1, r2, m2):
    """Combine x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruct(a, m):
    """Find n/d with n = a*d mod m, |n|, d <= sqrt(m/2); None if none exists."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def verify_solution(rows, b, x):
    """Exact check of ``rows @ x == b`` for sparse rows ``{col: value}``."""
    for r, bi in zip(rows, b):
        acc = 0
        for j, v in r.items():
            xj = x[j]
            if xj != 0:
                acc += v * xj
        if acc != bi:
            return False
    return True


def _solve_mod(rows, ncols, b, p):
    m = len(rows)
    M = np.zeros((m, ncols + 1), dtype=np.int64)
    for i, r in enumerate(rows):
        vals = _to_mod(list(r.values()) + [b[i]], p)
        if vals is None:
            return None
        for j, v in zip(r.keys(), vals[:-1]):
            M[i, j] = v
        M[i, ncols] = vals[-1]
    R, pivots = rref_mod(M, p)
    if pivots and pivots[-1] == ncols:
        return "inconsistent", tuple(pivots)
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = int(R[i, ncols])
    return x, tuple(pivots)


def solve_modular(rows, ncols, b, max_primes=40):
    """Solve a rational sparse system via CRT + rational reconstruction.

    Returns ``(status, x)`` where status is ``"ok"`` (x verified exactly),
    ``"inconsistent"`` (modular evidence only; callers should confirm with
    an exact elimination), or ``"failed"``.  Complex entries are rejected.
    """
    for r in rows:
        for v in r.values():
            if not isinstance(v, (int, Fraction)):
                raise TypeError("modular path handles rational systems only")
    b = [simplify(v) for v in b]
    residues = None
    modulus = 1
    pivot_set = None
    bad_votes = 0
    for count, p in enumerate(prime_stream()):
        if count >= max_primes:
            break
        res = _solve_mod(rows, ncols, b, p)
        if res is None:
            continue
        x, piv = res
        if x == "inconsistent":
            bad_votes += 1
            if bad_votes >= 2:
                return "inconsistent", None
            continue
        # generic primes give the largest rank and the earliest pivot columns
        better = pivot_set is None or (len(piv), [-c for c in piv]) > (
            len(pivot_set), [-c for c in pivot_set])
        if better:
            pivot_set, residues, modulus = piv, x, p
        elif piv != pivot_set:
            continue
        else:
            residues = [crt_pair(r, modulus, xi, p)[0] for r, xi in zip(residues, x)]
            modulus *= p
        cand = []
        for r in residues:
            q = rational_reconstruct(r, modulus)
            if q is None:
                cand = None
                break
            cand.append(simplify(q))
        if cand is not None and verify_solution(rows, b, cand):
            return "ok", cand
    return "failed", None


def _integer_rows(rows):
    """Scale each sparse rational row by its common denominator."""
    out = []
    for r in rows:
        den = 1
        for v in r.values():
            d = Fraction(v).denominator
            den = den * d // gcd(den, d)
        out.append({j: int(Fraction(v) * den) for j, v in r.items()})
    return out


def _dense_mod(rows, ncols, p):
    M = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            M[i, j] = v % p
    return M


def certified_rank(rows, ncols, max_primes=20):
    """Exact rank of a rational matrix via modular elimination plus an exact certificate.

    The rank modulo p never exceeds the rank over Q, giving a lower bound r.
    A kernel basis of dimension ncols - r is lifted from several primes by
    CRT and rational reconstruction and then checked exactly against every
    row, giving the matching upper bound.  Returns ``(rank, kernel)``, or
    ``(None, None)`` if no certificate was found within ``max_primes``.
    """
    for r in rows:
        for v in r.values():
            if not isinstance(v, (int, Fraction)):
                raise TypeError("certified_rank handles rational matrices only")
    irows = _integer_rows(rows)
    best = None
    residues = None
    modulus = 1
    for count, p in enumerate(prime_stream()):
        if count >= max_primes:
            break
        R, piv = rref_mod(_dense_mod(irows, ncols, p), p)
        piv = tuple(piv)
        key = (len(piv), [-c for c in piv])
        if best is None or key > (len(best), [-c for c in best]):
            best, modulus = piv, p
            residues = R[: len(piv)].astype(object)
        elif piv != best:
            continue
        else:
            Rn = R[: len(piv)].astype(object)
            residues = np.vectorize(lambda a, b: crt_pair(int(a), modulus, int(b), p)[0], otypes=[object])(residues, Rn)
            modulus *= p
        free = [c for c in range(ncols) if c not in set(best)]
        kernel = []
        ok = True
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for i, c in enumerate(best):
                val = int(residues[i, f]) % modulus
                if val:
                    q = rational_reconstruct(-val, modulus)
                    if q is None:
                        ok = False
                        break
                    v[c] = simplify(q)
            if not ok:
                break
            kernel.append(v)
        if not ok:
            continue
        if all(sum(x * v[j] for j, x in r.items() if v[j] != 0) == 0 for r in irows for v in kernel):
            return len(best), kernel
    return None, None
