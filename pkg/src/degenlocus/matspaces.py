"""Matrix spaces, generic symbolic matrices, exact samplers and perturbations.

Four spaces are supported, each with a fixed coordinate order:

========  ==============  ============================================
code      kind            coordinates (row-major)
========  ==============  ============================================
``her``   hermitian       ``h11..hnn`` then ``re_jk, im_jk`` for j < k
``symr``  sym_real        ``s11, s12, ..., snn`` (j <= k)
``full``  full_complex    ``a11, a12, ..., ann``
``symc``  sym_complex     ``s11, s12, ..., snn`` (j <= k)
========  ==============  ============================================
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import I, Echelon, Matrix, MultiPoly, inverse_exact, simplify
from .exactmath.scalars import conj, imag_part, is_real, real_part

__all__ = [
    "KINDS",
    "SpaceDescriptor",
    "GenericMatrix",
    "DegeneratePoint",
    "space",
    "generic_matrix",
    "matrix_coordinates",
    "point_from_coordinates",
    "min_poly_degree",
    "membership_Mk",
    "rng_for",
    "random_rational",
    "cayley_conjugator",
    "conjugator_inverse",
    "random_gaussian",
    "sample_degenerate",
    "sample_stratum",
    "jordan_block",
    "block_diag",
    "jordan_perturb",
    "conj_B",
    "symmetrize_jordan",
    "s_perturb",
    "s_perturb_blocks",
]

KINDS = {"her": "hermitian", "symr": "sym_real", "full": "full_complex", "symc": "sym_complex"}
CODES = {v: k for k, v in KINDS.items()}


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str
    n: int

    def __post_init__(self):
        kind = KINDS.get(self.kind, self.kind)
        if kind not in CODES:
            raise ValueError(f"unknown matrix space {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"matrix size must be >= 2, got {self.n!r}")

    @property
    def code(self):
        return CODES[self.kind]

    @property
    def symmetric(self):
        return self.kind in ("sym_real", "sym_complex")

    @property
    def real_field(self):
        return self.kind in ("hermitian", "sym_real")

    @property
    def dim(self):
        n = self.n
        return n * (n + 1) // 2 if self.symmetric else n * n

    def variables(self):
        n = self.n
        sep = "_" if n > 9 else ""

        def tag(j, k):
            return f"{j + 1}{sep}{k + 1}"

        if self.kind == "full_complex":
            return tuple(f"a{tag(j, k)}" for j in range(n) for k in range(n))
        if self.symmetric:
            return tuple(f"s{tag(j, k)}" for j in range(n) for k in range(j, n))
        diag = [f"h{tag(j, j)}" for j in range(n)]
        off = []
        for j in range(n):
            for k in range(j + 1, n):
                off += [f"re_{j + 1}_{k + 1}", f"im_{j + 1}_{k + 1}"]
        return tuple(diag + off)

    def contains(self, A):
        """Exact membership test for a concrete matrix."""
        if A.shape != (self.n, self.n):
            return False
        if self.kind == "hermitian":
            return A.is_hermitian()
        if self.kind == "sym_real":
            return A.is_symmetric() and all(is_real(x) for x in A.vec())
        if self.kind == "sym_complex":
            return A.is_symmetric()
        return True


def space(kind, n):
    return SpaceDescriptor(kind, n)


@dataclass(frozen=True)
class GenericMatrix:
    descriptor: SpaceDescriptor
    matrix: Matrix
    variables: tuple


@dataclass(frozen=True)
class DegeneratePoint:
    matrix: Matrix
    descriptor: SpaceDescriptor
    multiplicities: tuple
    eigenvalues: tuple = ()
    seed: object = None

    def provenance(self):
        from .exactmath import format_scalar

        return {
            "multiplicities": list(self.multiplicities),
            "eigenvalues": [format_scalar(x) for x in self.eigenvalues],
            "seed": self.seed,
        }


def generic_matrix(desc):
    """Symbolic matrix whose entries are the coordinate functions of the space."""
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    n = desc.n
    vs = desc.variables()
    x = {v: MultiPoly.var(vs, v) for v in vs}
    rows = [[None] * n for _ in range(n)]
    if desc.kind == "full_complex":
        it = iter(vs)
        for j in range(n):
            for k in range(n):
                rows[j][k] = x[next(it)]
    elif desc.symmetric:
        it = iter(vs)
        for j in range(n):
            for k in range(j, n):
                rows[j][k] = rows[k][j] = x[next(it)]
    else:
        for j in range(n):
            rows[j][j] = x[vs[j]]
        pos = n
        for j in range(n):
            for k in range(j + 1, n):
                a, b = x[vs[pos]], x[vs[pos + 1]]
                pos += 2
                rows[j][k] = a + b * I
                rows[k][j] = a - b * I
    return GenericMatrix(desc, Matrix(rows), vs)


def matrix_coordinates(desc, A):
    """Values of the space's coordinate variables at the concrete matrix A."""
    n = desc.n
    vs = desc.variables()
    if desc.kind == "full_complex":
        vals = A.vec()
    elif desc.symmetric:
        vals = [A[j, k] for j in range(n) for k in range(j, n)]
    else:
        vals = [A[j, j] for j in range(n)]
        for j in range(n):
            for k in range(j + 1, n):
                vals += [real_part(A[j, k]), imag_part(A[j, k])]
    return dict(zip(vs, vals))


def point_from_coordinates(desc, coords):
    g = generic_matrix(desc)
    return g.matrix.map(lambda p: p.evaluate(coords))


# minimal polynomial and strata --------------------------------------------


def min_poly_degree(A):
    """Least m >= 1 such that I, A, ..., A^m are linearly dependent."""
    if not isinstance(A, Matrix):
        A = Matrix(A)
    if not A.is_square():
        raise ValueError("square matrix required")
    ech = Echelon()
    P = Matrix.identity(A.nrows)
    m = 0
    while True:
        vec = {i: v for i, v in enumerate(P.vec()) if v != 0}
        if ech.add(vec) is None:
            return m
        m += 1
        P = P @ A


def membership_Mk(A, k):
    """True iff the minimal polynomial of A has degree at most n - k."""
    if not isinstance(A, Matrix):
        A = Matrix(A)
    n = A.nrows
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}, got {k}")
    return min_poly_degree(A) <= n - k


# seeded randomness -----------------------------------------------------------


def rng_for(stream, seed):
    """Named deterministic PRNG; the same (stream, seed) always replays."""
    return random.Random(f"{stream}/{seed}")


def random_rational(rng):
    return simplify(Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))))


def random_gaussian(rng):
    return simplify(random_rational(rng) + random_rational(rng) * I)


def _cayley(K):
    n = K.nrows
    ident = Matrix.identity(n)
    return (ident - K) @ inverse_exact(ident + K)


def _random_K(desc, rng):
    n = desc.n
    K = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            if desc.kind == "hermitian":
                z = random_gaussian(rng)
                K[j][k] = z
                K[k][j] = -conj(z)
            elif desc.kind == "sym_real":
                q = random_rational(rng)
                K[j][k], K[k][j] = q, -q
            else:
                z = random_gaussian(rng)
                K[j][k], K[k][j] = z, -z
        if desc.kind == "hermitian":
            K[j][j] = random_rational(rng) * I
    return Matrix(K)


def cayley_conjugator(desc, seed=0, K=None):
    """Exact conjugating matrix g for the space's symmetry group.

    hermitian: unitary (I-K)(I+K)^-1 with K anti-Hermitian; sym_real: real
    orthogonal of determinant 1; sym_complex: complex orthogonal of
    determinant 1; full_complex: a random invertible rational matrix.
    """
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    if K is not None:
        return _cayley(K if isinstance(K, Matrix) else Matrix(K))
    rng = rng_for(f"cayley/{desc.code}/{desc.n}", seed)
    while True:
        if desc.kind == "full_complex":
            g = Matrix([[random_rational(rng) for _ in range(desc.n)] for _ in range(desc.n)])
            if g.det() != 0:
                return g
            continue
        K = _random_K(desc, rng)
        try:
            return _cayley(K)
        except ZeroDivisionError:
            continue


def conjugator_inverse(desc, g):
    if desc.kind == "hermitian":
        return g.H
    if desc.kind in ("sym_real", "sym_complex"):
        return g.T
    return inverse_exact(g)


def sample_degenerate(desc, multiplicities, eigenvalues, seed=0):
    """g * diag(eigenvalues repeated by multiplicities) * g^-1, exactly in the space."""
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    mult = tuple(int(m) for m in multiplicities)
    eig = tuple(simplify(e) for e in eigenvalues)
    if sum(mult) != desc.n or any(m < 1 for m in mult):
        raise ValueError(f"multiplicities {mult} are not a partition of {desc.n}")
    if len(eig) != len(mult):
        raise ValueError("need one eigenvalue per part")
    if len(set(eig)) != len(eig):
        raise ValueError(f"eigenvalues must be pairwise distinct, got {eig}")
    if desc.real_field and not all(is_real(e) for e in eig):
        raise ValueError("real space requires real eigenvalues")
    diag = [e for e, m in zip(eig, mult) for _ in range(m)]
    g = cayley_conjugator(desc, seed)
    A = g @ Matrix.diag(diag) @ conjugator_inverse(desc, g)
    if not desc.contains(A):
        raise AssertionError("sampled matrix left its space")
    return DegeneratePoint(A, desc, mult, eig, seed)


def sample_stratum(desc, n_distinct, seed=0):
    """Random point with exactly ``n_distinct`` distinct eigenvalues.

    Multiplicities and eigenvalues are drawn from the seed; the first
    ``n - n_distinct`` surplus copies go to random parts.
    """
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    if not 1 <= n_distinct <= desc.n:
        raise ValueError("number of distinct eigenvalues out of range")
    rng = rng_for(f"stratum/{desc.code}/{desc.n}/{n_distinct}", seed)
    mult = [1] * n_distinct
    for _ in range(desc.n - n_distinct):
        mult[rng.randrange(n_distinct)] += 1
    eig = []
    while len(eig) < n_distinct:
        e = random_rational(rng) if desc.real_field else random_gaussian(rng)
        if e not in eig:
            eig.append(e)
    return sample_degenerate(desc, mult, eig, seed=f"{seed}/{n_distinct}")


# Jordan-form perturbation ------------------------------------------------------


def jordan_block(r, lam):
    return Matrix([[lam if i == j else 1 if j == i + 1 else 0 for j in range(r)] for i in range(r)])


def block_diag(blocks):
    n = sum(b.nrows for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[off + i][off + j] = b[i, j]
        off += b.nrows
    return Matrix(rows)


def _jordan_blocks(A):
    """(start, size, eigenvalue) for each block of a matrix in Jordan form."""
    n = A.nrows
    blocks = []
    start = 0
    for i in range(1, n + 1):
        if i == n or A[i - 1, i] == 0 or A[i, i] != A[i - 1, i - 1]:
            blocks.append((start, i - start, A[start, start]))
            start = i
    return blocks


def jordan_perturb(A, lam, eps):
    """Shift the (1,1)-entry of every maximal Jordan block at ``lam`` by ``eps``."""
    if not isinstance(A, Matrix):
        A = Matrix(A)
    lam, eps = simplify(lam), simplify(eps)
    blocks = [b for b in _jordan_blocks(A) if b[2] == lam]
    if not blocks:
        raise ValueError(f"{lam} is not an eigenvalue")
    r = max(b[1] for b in blocks)
    rows = [list(row) for row in A.rows]
    for start, size, _ in blocks:
        if size == r:
            rows[start][start] = lam + eps
    return Matrix(rows)


# symmetric realizations of Jordan blocks ---------------------------------------


def conj_B(X):
    """Apply E_st -> (E_st + E_s't' + i E_s't - i E_st')/2 linearly, s' = r+1-s."""
    if not isinstance(X, Matrix):
        X = Matrix(X)
    r = X.nrows
    half = Fraction(1, 2)
    out = [[0] * r for _ in range(r)]
    for s in range(r):
        for t in range(r):
            x = X[s, t]
            if x == 0:
                continue
            sp, tp = r - 1 - s, r - 1 - t
            h = x * half
            out[s][t] += h
            out[sp][tp] += h
            out[sp][t] += h * I
            out[s][tp] -= h * I
    return Matrix(out)


def symmetrize_jordan(r, lam):
    """Complex symmetric matrix similar to the Jordan block J_r(lam)."""
    if r < 1:
        raise ValueError("block size must be >= 1")
    return conj_B(jordan_block(r, lam))


def s_perturb(r, lam, eps):
    """Symmetric perturbation of S_r(lam) with eigenvalues lam +- eps and lam^(r-2).

    For even r the subdiagonal entry (m+1, m), m = r/2, receives +eps^2;
    for odd r > 1 the entries (m+1, m) and (m+2, m+1), m = (r-1)/2, receive
    eps^2/2 each.  r = 1 gives the 1x1 matrix lam + eps.
    """
    if r < 1:
        raise ValueError("block size must be >= 1")
    lam, eps = simplify(lam), simplify(eps)
    if r == 1:
        return Matrix([[lam + eps]])
    J = [list(row) for row in jordan_block(r, lam).rows]
    e2 = eps * eps
    if r % 2 == 0:
        m = r // 2
        J[m][m - 1] += e2
    else:
        m = (r - 1) // 2
        J[m][m - 1] += e2 * Fraction(1, 2)
        J[m + 1][m] += e2 * Fraction(1, 2)
    return conj_B(Matrix(J))


def s_perturb_blocks(blocks, eps):
    """Block-diagonal assembly of s_perturb over ``[(r, lam), ...]``."""
    return block_diag([s_perturb(r, lam, eps) for r, lam in blocks])
