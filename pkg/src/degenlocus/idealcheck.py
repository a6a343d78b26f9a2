"""Degree-by-degree checks of vanishing ideals of 3x3 matrices with a repeated
eigenvalue, using only exact linear algebra in fixed monomial bases."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

from .covariants import (
    c1,
    c2,
    c3,
    c4,
    c_U,
    coordinate_functions,
    d_invariants,
    torus_weight,
    torus_weights,
    wedge_P,
)
from fractions import Fraction

from .exactmath import (
    certified_rank,
    Echelon,
    LaurentPoly,
    Matrix,
    MultiPoly,
    TruncSeries,
    laurent_divide_exact,
    monomial_basis,
    series_from_rational,
    solve_modular,
    solve_sparse,
)
from .matspaces import SpaceDescriptor, generic_matrix, matrix_coordinates, sample_degenerate, sample_stratum

__all__ = [
    "GradedComponent",
    "MembershipCertificate",
    "case_space",
    "case_generators",
    "graded_component",
    "ideal_component_dim",
    "membership_fixed_degree",
    "eval_rank_on_stratum",
    "quotient_hilbert",
    "closed_form_hilbert",
    "multiplicity_series",
    "multiplicity_series_identity",
    "character_series",
    "weight_multiplicity_check",
    "monomial_kernel_check",
    "relations_on_M1_check",
    "span_checks",
    "relation_targets",
    "sym_targets",
]

CASES = ("full", "sym")


def case_space(case):
    if case == "full":
        return SpaceDescriptor("full_complex", 3)
    if case == "sym":
        return SpaceDescriptor("sym_complex", 3)
    raise ValueError(f"case must be one of {CASES}, got {case!r}")


@lru_cache(maxsize=None)
def case_generators(case, which="both"):
    """Coordinate functions of c3 (and c4 in the full case) on the generic 3x3 matrix.

    ``which`` is "c3", "c4" or "both"; in the symmetric case c4 = c3, so
    "both" returns the c3 coordinates only.
    """
    desc = case_space(case)
    G = generic_matrix(desc)
    vs = G.variables
    out = []
    if which in ("c3", "both"):
        out += [p for _, p in coordinate_functions(c3(G.matrix), 3, vs)]
    if which in ("c4", "both") and case == "full":
        out += [p for _, p in coordinate_functions(c4(G.matrix), 3, vs)]
    if which == "c4" and case == "sym":
        out += [p for _, p in coordinate_functions(c4(G.matrix), 3, vs)]
    return tuple(out)


# graded pieces ------------------------------------------------------------------


@dataclass
class GradedComponent:
    degree: int
    variables: tuple
    basis: list
    rows: list
    rank: int

    @property
    def dim(self):
        return self.rank


def _mono_index(nvars, d, reverse=False):
    basis = monomial_basis(nvars, d)
    if reverse:
        basis = basis[::-1]
    return basis, {e: i for i, e in enumerate(basis)}


def _weights_of(variables):
    """Torus weights for full 3x3 coordinates, or None for other variable sets."""
    w = torus_weights(3, with_x=False)
    if all(v in w for v in variables):
        return w
    return None


def _mono_weight(e, wvec):
    dim = len(wvec[0])
    return tuple(sum(a * w[j] for a, w in zip(e, wvec)) for j in range(dim))


def graded_component(generators, d, variables=None, reverse=False, split=True):
    """Degree-d piece of the ideal spanned by the products (monomial) * (generator).

    When the generators are torus-weight vectors the products are grouped by
    weight and ranked block by block; blocks share no monomials, so the rank
    adds up.
    """
    generators = [g for g in generators if not g.is_zero()]
    if variables is None:
        variables = generators[0].vars if generators else ()
    variables = tuple(variables)
    gens = [g.with_vars(variables) for g in generators]
    if reverse:
        gens = gens[::-1]
    nv = len(variables)
    basis, index = _mono_index(nv, d, reverse)
    weights = _weights_of(variables) if split else None
    gweights = None
    if weights is not None:
        gweights = [g.weight(weights) for g in gens]
        if any(w is None for w in gweights):
            gweights = None
    wvec = [weights[v] for v in variables] if gweights is not None else None
    blocks = {}
    for gi, g in enumerate(gens):
        gd = g.degree()
        if gd > d:
            continue
        gt = g.terms()
        for m in monomial_basis(nv, d - gd):
            row = {}
            for e, c in gt.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            key = None if wvec is None else tuple(
                a + b for a, b in zip(gweights[gi], _mono_weight(m, wvec)))
            blocks.setdefault(key, []).append(row)
    rank = 0
    all_rows = []
    for key in sorted(blocks, key=lambda k: (k is None, k)):
        ech = Echelon()
        for r in blocks[key]:
            ech.add(r)
        rank += ech.rank
        all_rows.extend(blocks[key])
    return GradedComponent(d, variables, basis, all_rows, rank)


def ideal_component_dim(generators, d, variables=None, reverse=False, split=True):
    return graded_component(generators, d, variables, reverse, split).rank


def quotient_hilbert(case, d_max, generators=None, reverse=False):
    """dim C[space]_d - dim I_d for d = 0..d_max, by exact ranks."""
    desc = case_space(case)
    gens = list(generators if generators is not None else case_generators(case))
    vs = desc.variables()
    nv = len(vs)
    out = []
    for d in range(d_max + 1):
        total = comb(nv + d - 1, d)
        out.append(total - ideal_component_dim(gens, d, vs, reverse=reverse))
    return out


# ideal membership ---------------------------------------------------------------


@dataclass
class MembershipCertificate:
    target: MultiPoly
    generators: list
    cofactors: list
    cofactor_degree: int
    unknowns: int = 0
    equations: int = 0
    method: str = "exact"
    seconds: float = 0.0

    def combination(self):
        acc = MultiPoly.const(self.target.vars, 0)
        for h, g in zip(self.cofactors, self.generators):
            if not h.is_zero():
                acc = acc + h * g
        return acc

    def verify(self):
        return self.combination() == self.target


def membership_fixed_degree(target, generators, method="exact", split=True):
    """Cofactors h_i of degree D - deg g_i with sum h_i g_i = target, or None.

    ``None`` means no certificate exists with homogeneous cofactors of the
    complementary degree.  For a homogeneous target and homogeneous
    generators this decides membership of the target in the ideal.
    """
    t0 = time.perf_counter()
    variables = target.vars
    for g in generators:
        variables = variables + tuple(v for v in g.vars if v not in variables)
    target = target.with_vars(variables)
    gens = [g.with_vars(variables) for g in generators]
    if not target.is_homogeneous() or not all(g.is_homogeneous() for g in gens):
        raise ValueError("membership_fixed_degree needs homogeneous polynomials")
    D = target.degree()
    nv = len(variables)
    weights = _weights_of(variables) if split else None
    tw = target.weight(weights) if weights is not None else None
    gws = [g.weight(weights) for g in gens] if tw is not None else None
    if gws is not None and any(w is None for w in gws):
        tw = gws = None
    wvec = [weights[v] for v in variables] if tw is not None else None
    # unknowns: (generator index, cofactor monomial)
    unknowns = []
    cols = []
    for gi, g in enumerate(gens):
        gd = g.degree()
        if g.is_zero() or gd > D:
            continue
        gt = g.terms()
        for m in monomial_basis(nv, D - gd):
            if wvec is not None:
                w = tuple(a + b for a, b in zip(gws[gi], _mono_weight(m, wvec)))
                if w != tw:
                    continue
            col = {}
            for e, c in gt.items():
                col[tuple(a + b for a, b in zip(e, m))] = c
            unknowns.append((gi, m))
            cols.append(col)
    row_index = {}
    for col in cols:
        for e in col:
            row_index.setdefault(e, len(row_index))
    for e in target.terms():
        row_index.setdefault(e, len(row_index))
    rows = [dict() for _ in range(len(row_index))]
    for j, col in enumerate(cols):
        for e, c in col.items():
            rows[row_index[e]][j] = c
    b = [0] * len(row_index)
    for e, c in target.terms().items():
        b[row_index[e]] = c
    x = None
    used = "exact"
    if method == "modular":
        status, sol = solve_modular(rows, len(cols), b)
        if status == "ok":
            x, used = sol, "modular"
    if x is None:
        x = solve_sparse(rows, len(cols), b)
    if x is None:
        return None
    terms = [dict() for _ in gens]
    for (gi, m), v in zip(unknowns, x):
        if v != 0:
            terms[gi][m] = v
    cof = [MultiPoly(variables, t) for t in terms]
    cert = MembershipCertificate(target, gens, cof, D - (gens[0].degree() if gens else 0),
                                 len(cols), len(row_index), used, time.perf_counter() - t0)
    if not cert.verify():
        raise ArithmeticError("membership certificate failed exact re-verification")
    cert.seconds = time.perf_counter() - t0
    return cert


def relation_targets():
    """The four degree 4-6 relations among d2, d3, c1^U, c2^U on full 3x3 matrices."""
    desc = case_space("full")
    G = generic_matrix(desc)
    vs = G.variables
    _, d2, d3 = (p.with_vars(vs) if isinstance(p, MultiPoly) else p for p in d_invariants(G.matrix))
    u1, u2 = (p.with_vars(vs) for p in c_U())
    return {
        "d2^3-d3^2": d2 ** 3 - d3 ** 2,
        "d2*c2U-d3*c1U": d2 * u2 - d3 * u1,
        "c2U^2-d2*c1U^2": u2 * u2 - d2 * u1 * u1,
        "d3*c2U-d2^2*c1U": d3 * u2 - d2 * d2 * u1,
    }


def sym_targets():
    """d2^3 - d3^2 on complex symmetric 3x3 matrices."""
    G = generic_matrix(case_space("sym"))
    vs = G.variables
    _, d2, d3 = (p.with_vars(vs) for p in d_invariants(G.matrix))
    return {"d2^3-d3^2": d2 ** 3 - d3 ** 2}


# evaluation ranks on strata -------------------------------------------------------


def _stratum_points(desc, n_distinct, num_points, seed):
    return [sample_stratum(desc, n_distinct, seed=f"{seed}/{i}") for i in range(num_points)]


def eval_rank_on_stratum(desc, n_distinct, d, num_points, seed=0, points=None, monomials=None,
                         method="auto"):
    """Rank of the (points x degree-d monomials) evaluation matrix.

    Points are drawn from the space with ``n_distinct`` distinct eigenvalues.
    ``method="exact"`` runs rational elimination; ``"certified"`` uses the
    modular rank with an exactly verified kernel (rational values only);
    ``"auto"`` picks certified when every value is rational.
    """
    if not isinstance(desc, SpaceDescriptor):
        desc = SpaceDescriptor(*desc)
    vs = desc.variables()
    if monomials is None:
        monomials = monomial_basis(len(vs), d)
    if points is None:
        points = _stratum_points(desc, n_distinct, num_points, seed)
    rows = []
    for pt in points:
        coords = matrix_coordinates(desc, pt.matrix)
        vals = [coords[v] for v in vs]
        row = {}
        for j, e in enumerate(monomials):
            acc = 1
            for v, a in zip(vals, e):
                if a:
                    acc = acc * v ** a
            if acc != 0:
                row[j] = acc
        rows.append(row)
    rational = all(isinstance(v, (int, Fraction)) for r in rows for v in r.values())
    if method == "auto":
        method = "certified" if rational and len(monomials) > 60 else "exact"
    if method == "certified":
        rank, _ = certified_rank(rows, len(monomials))
        if rank is not None:
            return rank
    elif method != "exact":
        raise ValueError(f"unknown method {method!r}")
    ech = Echelon()
    for row in rows:
        ech.add(row)
        if ech.rank == len(monomials):
            break
    return ech.rank


# series -------------------------------------------------------------------------------


def _case_vars(case):
    return ("q1", "q2") if case == "full" else ("q",)


def _Q(case):
    vs = _case_vars(case)
    return LaurentPoly.monomial(vs, (2, 1) if case == "full" else (2,))


def multiplicity_series(case, order=8):
    """(1 - t + t^2 + Q t^2 - Q t^3) / ((1-t)^2 (1-Q t)), Q = q1^2 q2 (full) or q^2 (sym)."""
    vs = _case_vars(case)
    Q = _Q(case)
    num = [1, -1, 1 + Q, -Q]
    return series_from_rational(num, [[1, -1], [1, -1], [1, -Q]], order, vs)


def multiplicity_series_identity(case, order=8):
    """The same series built from its decomposition into simpler fractions."""
    vs = _case_vars(case)
    Q = _Q(case)
    one_minus_t = [1, -1]
    a = series_from_rational([1], [one_minus_t, one_minus_t, [1, -Q]], order, vs)
    if case == "full":
        return a - series_from_rational([0, 1], [one_minus_t], order, vs)
    b = series_from_rational([1], [one_minus_t, [1, -Q]], order, vs) - TruncSeries(vs, [0, 1], order)
    return b * series_from_rational([1], [one_minus_t], order, vs)


def _antisymmetrize_full(c):
    """sum_pi sign(pi) q_pi1^2 q_pi2 c(q_pi1, q_pi2) over S3, q3 = 1/(q1 q2)."""
    vs = ("q1", "q2")
    q1 = LaurentPoly.monomial(vs, (1, 0))
    q2 = LaurentPoly.monomial(vs, (0, 1))
    q3 = LaurentPoly.monomial(vs, (-1, -1))
    qs = (q1, q2, q3)
    total = LaurentPoly(vs)
    for perm in permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        a, b = qs[perm[0]], qs[perm[1]]
        term = a * a * b * c.subs([a, b])
        total = total - term if inv % 2 else total + term
    return total


def character_series(case, order=8):
    """Graded character obtained from the multiplicity series by the Weyl formula.

    Specializing every character variable to 1 gives the Hilbert function.
    """
    M = multiplicity_series(case, order)
    if case == "full":
        vs = ("q1", "q2")
        q1 = LaurentPoly.monomial(vs, (1, 0))
        q2 = LaurentPoly.monomial(vs, (0, 1))
        q3 = LaurentPoly.monomial(vs, (-1, -1))
        delta = (q1 - q2) * (q1 - q3) * (q2 - q3)
        coeffs = [laurent_divide_exact(_antisymmetrize_full(c), delta) for c in M.coeffs]
        return TruncSeries(vs, coeffs, order)
    # sym: q -> s^2 keeps exponents integral; character of weight s^(2j) is
    # (s^(2j+1) - s^-(2j+1)) / (s - 1/s)
    vs = ("s",)
    s = LaurentPoly.monomial(vs, (1,))
    sinv = LaurentPoly.monomial(vs, (-1,))
    coeffs = []
    for c in M.coeffs:
        up = c.subs([s * s])
        down = c.subs([sinv * sinv])
        coeffs.append(laurent_divide_exact(s * up - sinv * down, s - sinv))
    return TruncSeries(vs, coeffs, order)


def closed_form_hilbert(case, order):
    """Expansion of the rational Hilbert series of the quotient ring."""
    if case == "full":
        return series_from_rational([1, 3, 6, -10, 10, -5, 1], [[1, -1]] * 6, order).at_one()
    return series_from_rational([1, 2, 3, -3, 1], [[1, -1]] * 4, order).at_one()


def weight_multiplicity_check(d, num_points=None, seed=0):
    """Per-weight dimensions of C[M1]_d by evaluation ranks vs the character series.

    Returns ``(ok, found, expected)`` with dicts weight -> dimension.
    """
    desc = case_space("full")
    vs = desc.variables()
    w = torus_weights(3, with_x=False)
    wvec = [w[v] for v in vs]
    groups = {}
    for e in monomial_basis(len(vs), d):
        groups.setdefault(_mono_weight(e, wvec), []).append(e)
    biggest = max(len(g) for g in groups.values())
    count = num_points if num_points is not None else max(3 * biggest, 3)
    points = _stratum_points(desc, 2, count, seed=f"wm/{seed}")
    found = {}
    for wt, monos in sorted(groups.items()):
        r = eval_rank_on_stratum(desc, 2, d, count, points=points, monomials=monos)
        if r:
            found[wt] = r
    chi = character_series("full", max(d, 1)).coeffs[d]
    expected = {e: int(c) for e, c in chi.terms.items()}
    return found == expected, found, expected


# the monomial algebra C[z^2, z^3, D, zD] -----------------------------------------------

_IMAGES = ((2, 0), (3, 0), (0, 1), (1, 1))  # x1..x4 -> z^k D^l as (k, l)
_BINOMIALS = (
    ({(3, 0, 0, 0): 1, (0, 2, 0, 0): -1}),
    ({(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}),
    ({(0, 0, 0, 2): 1, (1, 0, 2, 0): -1}),
    ({(0, 1, 0, 1): 1, (2, 0, 1, 0): -1}),
)


def _image(e):
    return (sum(a * k for a, (k, _) in zip(e, _IMAGES)), sum(a * l for a, (_, l) in zip(e, _IMAGES)))


def _fiber(k, l):
    """Monomials x^e in x1..x4 whose image is z^k D^l."""
    out = []
    for e4 in range(l + 1):
        e3 = l - e4
        rest = k - e4
        if rest < 0:
            continue
        for e2 in range(rest // 3 + 1):
            r = rest - 3 * e2
            if r % 2 == 0:
                out.append((r // 2, e2, e3, e4))
    return out


def _standard_basis_element(k, l):
    if (k, l) == (1, 0):
        return None
    if k == 1:
        return (0, 0, l - 1, 1)
    if k % 2 == 0:
        return (k // 2, 0, l, 0)
    return ((k - 3) // 2, 1, l, 0)


def monomial_kernel_check(bound=12):
    """Per (k, l) with k + l <= bound: quotient by the four binomials has the
    dimension of the image piece, and the standard monomial basis maps onto it.

    Returns ``(ok, table)`` with table[(k, l)] = (quotient dim, expected).
    """
    table = {}
    ok = True
    for tot in range(bound + 1):
        for k in range(tot + 1):
            l = tot - k
            fiber = _fiber(k, l)
            index = {e: i for i, e in enumerate(fiber)}
            ech = Echelon()
            for b in _BINOMIALS:
                bimg = _image(next(iter(b)))
                dk, dl = k - bimg[0], l - bimg[1]
                if dk < 0 or dl < 0:
                    continue
                for m in _fiber(dk, dl):
                    ech.add({index[tuple(a + c for a, c in zip(e, m))]: c for e, c in b.items()})
            qdim = len(fiber) - ech.rank
            expected = 0 if (k, l) == (1, 0) else 1
            base = _standard_basis_element(k, l)
            if base is not None:
                if _image(base) != (k, l) or ech.contains({index[base]: 1}):
                    ok = False
            table[(k, l)] = (qdim, expected)
            ok = ok and qdim == expected
    return ok, table


# relations on the locus of one repeated eigenvalue ---------------------------------------


def _relations_at(A, with_u=False):
    out = {}
    out["c3=0"] = c3(A).is_zero()
    out["c4=0"] = c4(A).is_zero()
    _, d2, d3 = d_invariants(A)
    out["d2^3=d3^2"] = d2 ** 3 == d3 ** 2
    out["d3*c1=d2*c2"] = c1(A) * d3 == c2(A) * d2
    if with_u:
        u1, u2 = c_U(A)
        out["d3*c1U=d2*c2U"] = d3 * u1 == d2 * u2
    return out


def relations_on_M1_check(seed=0, samples=50):
    """Relations on random matrices with exactly two distinct eigenvalues, both cases.

    Also evaluates the negative control diag(1, 2, 3), which must violate
    d2^3 = d3^2.  Returns a dict of per-check booleans.
    """
    report = {}
    for case in CASES:
        desc = case_space(case)
        ok = True
        for i in range(samples):
            pt = sample_stratum(desc, 2, seed=f"rel/{seed}/{i}")
            res = _relations_at(pt.matrix, with_u=(case == "full"))
            ok = ok and all(res.values())
        report[f"{case}:relations"] = ok
    ctrl = _relations_at(Matrix.diag([1, 2, 3]))
    report["control:diag(1,2,3) violates d2^3=d3^2"] = not ctrl["d2^3=d3^2"]
    return report


# span checks -------------------------------------------------------------------------------


def _stack_rank(polys, variables):
    index = {}
    ech = Echelon()
    for p in polys:
        row = {}
        for e, c in p.with_vars(variables).terms().items():
            row[index.setdefault(e, len(index))] = c
        ech.add(row)
    return ech.rank


def span_checks(case):
    """Ranks of the c3/c4 coordinate span, the wedge span, and their union."""
    desc = case_space(case)
    G = generic_matrix(desc)
    vs = G.variables
    cov = list(case_generators(case))
    wedge = [p for p in wedge_P(G.matrix, 1) if isinstance(p, MultiPoly) and not p.is_zero()]
    return {
        "covariant_rank": _stack_rank(cov, vs),
        "wedge_rank": _stack_rank(wedge, vs),
        "union_rank": _stack_rank(cov + wedge, vs),
        "wedge_count": comb(9, 3),
    }
