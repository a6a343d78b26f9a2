"""Covariants and invariants of the conjugation action, plus weight machinery.

Matrices may be concrete (scalar entries) or symbolic (``MultiPoly`` entries
from :func:`generic_matrix`).  Covariants with values in forms use auxiliary
variables ``x1..xn`` kept separate from the matrix coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .exactmath import I, Matrix, simplify, MultiPoly, det_exact, monomial_basis, nullspace_sparse
from .matspaces import SpaceDescriptor, generic_matrix

__all__ = [
    "xvars",
    "c1",
    "c2",
    "d_invariants",
    "c3",
    "c4",
    "c_full",
    "form_coefficients",
    "coordinate_functions",
    "wedge_P",
    "f_k",
    "laplacian",
    "hessian_quartic",
    "jacobian_pair",
    "binary_quartic",
    "torus_weights",
    "torus_weight",
    "unipotent_generators",
    "u_derivation",
    "u_invariance_check",
    "highest_weight_vectors",
    "c_U",
    "weyl_dim",
]


def xvars(n):
    return tuple(f"x{i + 1}" for i in range(n))


def _mat(A):
    return A.matrix if hasattr(A, "matrix") else A if isinstance(A, Matrix) else Matrix(A)


def _square(A, n=None):
    A = _mat(A)
    if not A.is_square():
        raise ValueError(f"square matrix required, got shape {A.shape}")
    if n is not None and A.nrows != n:
        raise ValueError(f"{n}x{n} matrix required, got {A.nrows}x{A.nrows}")
    return A


# trace-free part and the small invariants ---------------------------------


def c1(A):
    A = _square(A)
    n = A.nrows
    return A - Matrix.identity(n) * (A.trace() * Fraction(1, n))


def c2(A):
    A = _square(A, 3)
    B = c1(A)
    return c1(B @ B)


def d_invariants(A):
    """(tr A, tr(c1(A)^2)/6, det(c1(A))/2) for a 3x3 matrix."""
    A = _square(A, 3)
    B = c1(A)
    d1 = A.trace()
    d2 = (B @ B).trace() * Fraction(1, 6)
    d3 = det_exact(B) * Fraction(1, 2)
    return tuple(v if isinstance(v, MultiPoly) else simplify(v) for v in (d1, d2, d3))


# form-valued covariants -----------------------------------------------------


def _krylov_columns(A, x, m):
    cols = [list(x)]
    for _ in range(m - 1):
        cols.append(A @ cols[-1])
    return cols


def _xvec(n):
    return [MultiPoly.var(xvars(n), v) for v in xvars(n)]


def c_full(A):
    """det(x | Ax | ... | A^(n-1) x), a form of degree n in x1..xn."""
    A = _square(A)
    n = A.nrows
    cols = _krylov_columns(A, _xvec(n), n)
    d = det_exact(Matrix([[cols[j][i] for j in range(n)] for i in range(n)]))
    return d if isinstance(d, MultiPoly) else MultiPoly.const(xvars(n), d)


def c3(A):
    """det(x | Ax | A^2 x) for a 3x3 matrix."""
    return c_full(_square(A, 3))


def c4(A):
    """det of the matrix with rows x^T, x^T A, x^T A^2 (equals c3 of A^T)."""
    A = _square(A, 3)
    return c_full(A.T)


def form_coefficients(form, n):
    """Coefficients of a degree-d form in x1..xn, in grlex-descending monomial order."""
    xs = xvars(n)
    parts = form.coefficients_in(xs)
    d = next(iter(parts)) if parts else None
    deg = sum(d) if d else 0
    return [(a, parts.get(a)) for a in monomial_basis(n, deg)]


def coordinate_functions(form, n, variables=None):
    """Nonzero x-coefficients of a covariant value, as polynomials in the matrix coordinates."""
    out = []
    for a, p in form_coefficients(form, n):
        if p is None or p.is_zero():
            continue
        if variables is not None:
            p = p.with_vars(variables)
        out.append((a, p))
    return out


def wedge_P(A, k):
    """Maximal minors of [vec I | vec A | ... | vec A^(n-k)], row subsets in lex order."""
    A = _square(A)
    n = A.nrows
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}, got {k}")
    m = n - k + 1
    cols = [P.vec() for P in A.powers(m - 1)]
    out = []
    for rows in combinations(range(n * n), m):
        out.append(det_exact(Matrix([[cols[j][r] for j in range(m)] for r in rows])))
    return out


def f_k(A, k):
    """det of rows k+1..n of [A e1 | A^2 e1 | ... | A^(n-k) e1]."""
    A = _square(A)
    n = A.nrows
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    col = list(A.col(0))
    cols = [col]
    for _ in range(n - k - 1):
        cols.append(A @ cols[-1])
    return det_exact(Matrix([[cols[j][i] for j in range(n - k)] for i in range(k, n)]))


# differential operators and binary forms -----------------------------------


def laplacian(p, variables):
    out = MultiPoly.const(p.vars, 0)
    for v in variables:
        out = out + p.diff(v).diff(v)
    return out


def binary_quartic(coeffs, variables=("x", "y")):
    """sum_i coeffs[i] x^(4-i) y^i."""
    if len(coeffs) != 5:
        raise ValueError("a binary quartic has five coefficients")
    return MultiPoly(variables, {(4 - i, i): c for i, c in enumerate(coeffs)})


def hessian_quartic(Q, variables=("x", "y")):
    x, y = variables
    Qxx, Qyy, Qxy = Q.diff(x).diff(x), Q.diff(y).diff(y), Q.diff(x).diff(y)
    return Qxx * Qyy - Qxy * Qxy


def jacobian_pair(Q, R, variables=("x", "y")):
    x, y = variables
    return Q.diff(x) * R.diff(y) - Q.diff(y) * R.diff(x)


# torus weights ------------------------------------------------------------------


def _reduce_weight(v):
    """Integer n-vector modulo the all-ones vector, as its first n-1 entries minus the last."""
    return tuple(a - v[-1] for a in v[:-1])


def torus_weights(n, with_x=True):
    """Weights of full-matrix coordinates (and x1..xn) under diagonal conjugation.

    With (t.f)(A) = f(t^-1 A t), the coordinate a_jk has weight e_k - e_j;
    x_i gets weight -e_i so every covariant value has total weight zero.
    """
    desc = SpaceDescriptor("full_complex", n)
    vs = desc.variables()
    w = {}
    for j in range(n):
        for k in range(n):
            v = [0] * n
            v[k] += 1
            v[j] -= 1
            w[vs[j * n + k]] = _reduce_weight(v)
    if with_x:
        for i, x in enumerate(xvars(n)):
            v = [0] * n
            v[i] = -1
            w[x] = _reduce_weight(v)
    return w


def torus_weight(p, n):
    """Weight in Z^(n-1) of a polynomial in full-matrix coordinates, or None."""
    return p.weight(torus_weights(n))


# unipotent invariance ----------------------------------------------------------


def unipotent_generators(desc):
    """Nilpotent Lie algebra generators of the chosen maximal unipotent subgroup.

    full_complex: E_{j,j+1}.  sym_complex (n = 3): X = E12 - E21 + i(E13 - E31),
    an antisymmetric matrix with X^3 = 0, so exp(tX) = I + tX + t^2 X^2 / 2 is a
    polynomial one-parameter subgroup of SO(3, C).
    """
    n = desc.n
    if desc.kind == "full_complex":
        return [Matrix.unit(n, j, j + 1) for j in range(n - 1)]
    if desc.kind == "sym_complex" and n == 3:
        X = Matrix.unit(3, 0, 1) - Matrix.unit(3, 1, 0) + (Matrix.unit(3, 0, 2) - Matrix.unit(3, 2, 0)) * I
        return [X]
    raise NotImplementedError(f"no unipotent generators for {desc.kind} n={n}")


def u_derivation(p, desc, X):
    """d/dt p(exp(tX) A exp(-tX)) at t = 0, i.e. sum dp/dA_ab [X, A]_ab."""
    G = generic_matrix(desc)
    A = G.matrix
    C = X @ A - A @ X
    n = desc.n
    out = MultiPoly.const(p.vars, 0)
    if desc.symmetric:
        pos = [(j, k) for j in range(n) for k in range(j, n)]
    elif desc.kind == "full_complex":
        pos = [(j, k) for j in range(n) for k in range(n)]
    else:
        raise NotImplementedError("derivation is defined on full and symmetric spaces")
    for v, (j, k) in zip(G.variables, pos):
        dp = p.diff(v)
        if dp.is_zero() or C[j, k] == 0:
            continue
        out = out + dp * C[j, k]
    return out


def _exp_nilpotent(X, t):
    n = X.nrows
    out = Matrix.identity(n)
    term = Matrix.identity(n)
    k = 0
    while True:
        k += 1
        term = (term @ X) * Fraction(1, k)
        if term.is_zero():
            return out
        out = out + term.map(lambda e: e * t ** k)


def u_invariance_check(p, desc, method="derivation"):
    """True iff p is invariant under the chosen maximal unipotent subgroup.

    ``method="derivation"`` tests the Lie algebra action (exactly equivalent
    for unipotent one-parameter groups); ``"substitute"`` plugs in
    A -> g_t A g_t^-1 with a symbolic t and checks t-independence.
    """
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    gens = unipotent_generators(desc)
    if method == "derivation":
        return all(u_derivation(p, desc, X).is_zero() for X in gens)
    if method != "substitute":
        raise ValueError(f"unknown method {method!r}")
    G = generic_matrix(desc)
    n = desc.n
    tvar = "_t"
    t = MultiPoly.var((tvar,), tvar)
    pos = ([(j, k) for j in range(n) for k in range(j, n)] if desc.symmetric
           else [(j, k) for j in range(n) for k in range(n)])
    for X in gens:
        g = _exp_nilpotent(X, t)
        ginv = _exp_nilpotent(X, -t)
        B = g @ G.matrix @ ginv
        mapping = {v: B[j, k] for v, (j, k) in zip(G.variables, pos)}
        q = p.subs(mapping)
        if q.degree_in((tvar,)) > 0:
            return False
    return True


def _coeff_rows(polys):
    """Sparse coefficient rows of ``polys`` over a shared monomial index."""
    index = {}
    rows = []
    for p in polys:
        row = {}
        for e, c in p.terms().items():
            j = index.setdefault(e, len(index))
            row[j] = c
        rows.append(row)
    return rows, index


def highest_weight_vectors(polys, desc):
    """Basis of the U-invariant elements of span(polys)."""
    if not polys:
        return []
    gens = unipotent_generators(desc)
    images = [[u_derivation(p, desc, X) for X in gens] for p in polys]
    # columns = polys, rows = monomial coefficients of all derivation images
    index = {}
    cols = []
    for per in images:
        col = {}
        for gi, q in enumerate(per):
            for e, c in q.terms().items():
                col[index.setdefault((gi, e), len(index))] = c
        cols.append(col)
    rows = [dict() for _ in range(len(index))]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    kernel = nullspace_sparse(rows, len(polys))
    out = []
    for v in kernel:
        acc = MultiPoly.const(polys[0].vars, 0)
        for c, p in zip(v, polys):
            if c != 0:
                acc = acc + p * c
        out.append(acc)
    return out


def c_U(A=None):
    """Highest weight representatives (c1^U, c2^U) of c1 and c2 on full 3x3 matrices.

    Each is found as the U-invariant element of the span of the covariant's
    entry functions.  The pair is scaled so that d3 c1^U = d2 c2^U on points
    of the one-eigenvalue-collision locus, fixing the relative normalization.
    When ``A`` is given, returns the values at A instead of polynomials.
    """
    polys = _c_U_polys()
    if A is None:
        return polys
    desc = SpaceDescriptor("full_complex", 3)
    A = _mat(A)
    pt = dict(zip(desc.variables(), A.vec()))
    return tuple(p.evaluate(pt) for p in polys)


_CU_CACHE = {}


def _c_U_polys():
    if "cU" in _CU_CACHE:
        return _CU_CACHE["cU"]
    desc = SpaceDescriptor("full_complex", 3)
    G = generic_matrix(desc)
    vs = G.variables
    reps = []
    for cov in (c1, c2):
        entries = [e.with_vars(vs) for e in cov(G.matrix).vec()]
        basis = _span_basis(entries)
        hw = highest_weight_vectors(basis, desc)
        if len(hw) != 1:
            raise AssertionError(f"expected one highest weight vector, found {len(hw)}")
        reps.append(hw[0])
    u1, u2 = reps
    # fix the ratio using a point g D(z) g^-1 with D(z) = diag(z, z, -2z)
    from .matspaces import cayley_conjugator

    g = cayley_conjugator(desc, seed="cU")
    from .exactmath import inverse_exact

    A = g @ Matrix.diag([1, 1, -2]) @ inverse_exact(g)
    pt = dict(zip(vs, A.vec()))
    _, d2, d3 = d_invariants(A)
    a, b = u1.evaluate(pt), u2.evaluate(pt)
    if a == 0 or b == 0:
        raise AssertionError("normalization point is degenerate")
    # want d3 * u1 = d2 * s * u2
    s = (d3 * a) / (d2 * b)
    u2 = u2 * s
    # present c1^U with leading coefficient 1
    lead = u1.items()[0][1]
    u1, u2 = u1 / lead, u2 / lead
    _CU_CACHE["cU"] = (u1, u2)
    return u1, u2


def _span_basis(polys):
    """Linearly independent subset of ``polys`` (greedy, order preserving)."""
    from .exactmath import Echelon

    index = {}
    ech = Echelon()
    out = []
    for p in polys:
        row = {}
        for e, c in p.terms().items():
            row[index.setdefault(e, len(index))] = c
        if row and ech.add(row) is not None:
            out.append(p)
    return out


# representation dimensions ------------------------------------------------------


def weyl_dim(n, k):
    """dim of the GL_n / SL_n irreducible with highest weight (n-k, 1^k), by hook-content."""
    if not (isinstance(n, int) and isinstance(k, int)) or n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    shape = [n - k] + [1] * k
    num, den = 1, 1
    for i, row in enumerate(shape):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in shape[i + 1:] if r > j)
            num *= n + j - i
            den *= arm + leg + 1
    return num // den


def dim_forms(nvars, d):
    return comb(nvars + d - 1, d)
