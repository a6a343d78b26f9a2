"""Exact dense matrices and sparse exact elimination over Q(i).

Entries of a :class:`Matrix` are scalars (int, Fraction, GaussianRational)
or :class:`MultiPoly`.  Numeric routines (rank, solve, nullspace, inverse)
refuse polynomial entries; :func:`det_exact` accepts both.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations

from .poly import MultiPoly
from .scalars import conj, format_scalar, is_scalar, parse_scalar, simplify

__all__ = [
    "Matrix",
    "Echelon",
    "det_exact",
    "rank_exact",
    "linear_solve_exact",
    "nullspace_exact",
    "inverse_exact",
    "sparse_rank",
    "solve_sparse",
    "nullspace_sparse",
    "charpoly",
    "charpoly_coeffs",
]


def _zero(x):
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return x == 0


def _simp(x):
    if isinstance(x, MultiPoly):
        return x
    return simplify(x)


class Matrix:
    """Immutable rectangular matrix with exact entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(_simp(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n=None):
        return cls([[0] * (m if n is None else n) for _ in range(m)])

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n, i, j):
        """Matrix unit E_{i,j} (0-based)."""
        return cls([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def from_strings(cls, rows):
        return cls([[parse_scalar(x) if isinstance(x, str) else x for x in r] for r in rows])

    def to_strings(self):
        return [[format_scalar(x) for x in r] for r in self.rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def is_numeric(self):
        return all(is_scalar(x) for r in self.rows for x in r)

    def map(self, f):
        return Matrix([[f(x) for x in r] for r in self.rows])

    @property
    def T(self):
        return Matrix(list(zip(*self.rows))) if self.rows else Matrix([])

    def conj(self):
        return self.map(lambda x: x.conjugate() if isinstance(x, MultiPoly) else conj(x))

    @property
    def H(self):
        """Conjugate transpose."""
        return self.conj().T

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(_zero(a - b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.shape)

    def __add__(self, other):
        if not isinstance(other, Matrix) or other.shape != self.shape:
            return NotImplemented
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix) or other.shape != self.shape:
            return NotImplemented
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.map(lambda x: x * c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if not _zero(a) and not _zero(b):
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        # vector
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, vec):
                if not _zero(a) and not _zero(b):
                    acc = acc + a * b
            out.append(acc)
        return out

    def trace(self):
        acc = 0
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        result = Matrix.identity(self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def powers(self, k):
        """[I, A, A^2, ..., A^k]."""
        out = [Matrix.identity(self.nrows)]
        for _ in range(k):
            out.append(out[-1] @ self)
        return out

    def submatrix(self, rows, cols):
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])

    def vec(self):
        """Row-major vectorization."""
        return [x for r in self.rows for x in r]

    def is_symmetric(self):
        return self.is_square() and self == self.T

    def is_hermitian(self):
        return self.is_square() and self == self.H

    def is_zero(self):
        return all(_zero(x) for r in self.rows for x in r)

    def det(self):
        return det_exact(self)

    def __repr__(self):
        return "Matrix(" + repr([[str(x) if is_scalar(x) else repr(x) for x in r] for r in self.rows]) + ")"


# determinants ------------------------------------------------------------


def _det_numeric(rows):
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        inv = Fraction(1) / piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f != 0:
                f = f * inv
                ar, ac = a[r], a[c]
                for j in range(c + 1, n):
                    if ac[j] != 0:
                        ar[j] = ar[j] - f * ac[j]
    return simplify(det)


def _det_minors(rows):
    """Laplace expansion along rows with memoized column-subset minors."""
    n = len(rows)
    layer = {(): 1}
    for i in range(n):
        nxt = {}
        row = rows[i]
        for cols in combinations(range(n), i + 1):
            acc = 0
            for pos, j in enumerate(cols):
                a = row[j]
                if _zero(a):
                    continue
                rest = cols[:pos] + cols[pos + 1:]
                m = layer.get(rest)
                if m is None or _zero(m):
                    continue
                term = a * m
                acc = acc - term if (i + pos) % 2 else acc + term
            nxt[cols] = acc
        layer = nxt
    return layer[tuple(range(n))]


def det_exact(M):
    """Exact determinant; polynomial entries use memoized cofactor expansion."""
    if not isinstance(M, Matrix):
        M = Matrix(M)
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    if M.nrows == 0:
        return 1
    if M.is_numeric():
        return _det_numeric(M.rows)
    return _det_minors(M.rows)


# sparse elimination --------------------------------------------------------


class Echelon:
    """Incrementally built row echelon basis over Q(i).

    Rows are sparse dicts ``{column: value}``.  Each stored pivot row has
    leading entry 1 at its key column and only larger columns otherwise.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Return ``row`` with every pivot column eliminated (a new dict)."""
        row = {c: v for c, v in row.items() if v != 0}
        piv = self.pivots
        heap = [c for c in row if c in piv]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            c = heapq.heappop(heap)
            seen.discard(c)
            f = row.get(c)
            if f is None:
                continue
            prow = piv[c]
            for j, v in prow.items():
                w = row.get(j)
                w = -f * v if w is None else w - f * v
                if w == 0:
                    row.pop(j, None)
                else:
                    row[j] = w
                    if j in piv and j not in seen and j != c:
                        heapq.heappush(heap, j)
                        seen.add(j)
            row.pop(c, None)
        return row

    def add(self, row):
        """Insert a row; return its pivot column, or None if it was dependent."""
        r = self.reduce(row)
        if not r:
            return None
        lead = min(r)
        inv = Fraction(1) / r[lead]
        self.pivots[lead] = {j: simplify(v * inv) for j, v in r.items()}
        self.pivots[lead][lead] = 1
        return lead

    def contains(self, row):
        return not self.reduce(row)

    def rref(self):
        """Fully reduced pivot rows ``{lead: row}``."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            pc = rows[c]
            for d in cols:
                if d >= c:
                    break
                rd = rows[d]
                f = rd.get(c)
                if f is None:
                    continue
                for j, v in pc.items():
                    w = rd.get(j, 0) - f * v
                    if w == 0:
                        rd.pop(j, None)
                    else:
                        rd[j] = w
        return rows


def _sparse_rows(M):
    if not isinstance(M, Matrix):
        M = Matrix(M)
    if not M.is_numeric():
        raise TypeError("numeric (Gaussian-rational) entries required")
    return M, [{j: x for j, x in enumerate(r) if x != 0} for r in M.rows]


def sparse_rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def rank_exact(M):
    """Rank over Q(i)."""
    _, rows = _sparse_rows(M)
    return sparse_rank(rows)


def solve_sparse(rows, ncols, b):
    """Solve ``sum_j rows[i][j] x_j = b[i]`` exactly; free variables set to 0.

    Returns a list of length ``ncols`` or ``None`` when inconsistent.
    """
    if len(rows) != len(b):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    ech = Echelon()
    rhs = ncols
    for r, bi in zip(rows, b):
        row = dict(r)
        if bi != 0:
            row[rhs] = bi
        lead = ech.add(row)
        if lead == rhs:
            return None
    x = [0] * ncols
    for c in sorted(ech.pivots, reverse=True):
        row = ech.pivots[c]
        acc = row.get(rhs, 0)
        for j, v in row.items():
            if j != c and j != rhs:
                if x[j] != 0:
                    acc = acc - v * x[j]
        x[c] = simplify(acc)
    return x


def linear_solve_exact(A, b):
    """Exact solution of ``A x = b`` (free variables 0), or None if inconsistent."""
    A, rows = _sparse_rows(A)
    b = [simplify(parse_scalar(v) if isinstance(v, str) else v) for v in b]
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.nrows}")
    return solve_sparse(rows, A.ncols, b)


def nullspace_sparse(rows, ncols):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    rref = ech.rref()
    basis = []
    for f in range(ncols):
        if f in rref:
            continue
        v = [0] * ncols
        v[f] = 1
        for c, row in rref.items():
            x = row.get(f)
            if x is not None:
                v[c] = simplify(-x)
        basis.append(v)
    return basis


def nullspace_exact(M):
    """Basis of the right kernel ``{x : M x = 0}``."""
    M, rows = _sparse_rows(M)
    return nullspace_sparse(rows, M.ncols)


def inverse_exact(M):
    if not isinstance(M, Matrix):
        M = Matrix(M)
    if not M.is_square():
        raise ValueError("inverse of non-square matrix")
    n = M.nrows
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M.rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = Fraction(1) / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return Matrix([row[n:] for row in a])


def charpoly_coeffs(M):
    """Coefficients ``[c_0, ..., c_n]`` of det(xI - M), low degree first.

    Faddeev-LeVerrier recursion; works for scalar or polynomial entries.
    """
    if not isinstance(M, Matrix):
        M = Matrix(M)
    if not M.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    n = M.nrows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + ident * coeffs[n - k + 1]
        tr = (M @ Mk).trace()
        coeffs[n - k] = _simp(tr * Fraction(-1, k))
    return coeffs


def charpoly(M, var="x"):
    """det(var*I - M) as a MultiPoly (variable ``var`` prepended)."""
    coeffs = charpoly_coeffs(M)
    x = MultiPoly.var((var,), var)
    out = MultiPoly.const((var,), 0)
    for k, c in enumerate(coeffs):
        if not _zero(c):
            out = out + (x ** k) * c
    return out
