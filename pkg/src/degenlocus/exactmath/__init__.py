"""Exact scalars, sparse polynomials, linear algebra and truncated series."""

from .linalg import (
    Echelon,
    Matrix,
    charpoly,
    charpoly_coeffs,
    nullspace_sparse,
    det_exact,
    inverse_exact,
    linear_solve_exact,
    nullspace_exact,
    rank_exact,
    solve_sparse,
    sparse_rank,
)
from .modular import certified_rank, rank_mod, rational_reconstruct, solve_modular
from .poly import MultiPoly, monomial_basis, poly_vars
from .scalars import (
    GaussianRational,
    I,
    conj,
    format_scalar,
    imag_part,
    is_real,
    parse_scalar,
    real_part,
    simplify,
)
from .series import LaurentPoly, TruncSeries, laurent_divide_exact, series_from_rational

ExactMatrix = Matrix

__all__ = [
    "Echelon", "certified_rank", "charpoly", "charpoly_coeffs", "nullspace_sparse", "ExactMatrix", "GaussianRational", "I", "LaurentPoly", "Matrix", "MultiPoly",
    "TruncSeries", "conj", "det_exact", "format_scalar", "imag_part", "inverse_exact", "is_real",
    "laurent_divide_exact", "linear_solve_exact", "monomial_basis", "nullspace_exact",
    "parse_scalar", "poly_vars", "rank_exact", "rank_mod", "rational_reconstruct", "real_part",
    "series_from_rational", "simplify", "solve_modular", "solve_sparse", "sparse_rank",
]
