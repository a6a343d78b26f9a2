from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus.exactmath import rank_exact, solve_sparse, Matrix
from degenlocus.exactmath.modular import (
    certified_rank, crt_pair, is_prime, prime_stream, rational_reconstruct, solve_modular,
)
from strategies import rationals


def test_primes():
    assert is_prime((1 << 31) - 1)
    assert not is_prime(561) and not is_prime(1)
    ps = [p for _, p in zip(range(3), prime_stream())]
    assert ps == sorted(ps, reverse=True) and all(is_prime(p) for p in ps)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_crt(a, b):
    m1, m2 = 1000003, 998244353
    x, m = crt_pair(a % m1, m1, b % m2, m2)
    assert x % m1 == a % m1 and x % m2 == b % m2 and m == m1 * m2


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_reconstruction_inverts_reduction(n, d):
    m = 2 ** 61 - 1
    q = Fraction(n, d)
    r = q.numerator * pow(q.denominator, -1, m) % m
    assert rational_reconstruct(r, m) == q


sparse_rows = st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.dictionaries(st.integers(0, n - 1), rationals.filter(bool), max_size=n), min_size=1, max_size=8)))


def _dense(rows, n):
    return Matrix([[r.get(j, 0) for j in range(n)] for r in rows])


@settings(max_examples=60)
@given(sparse_rows)
def test_certified_rank_matches_exact(data):
    n, rows = data
    rank, kernel = certified_rank(rows, n)
    assert rank == rank_exact(_dense(rows, n))
    assert len(kernel) == n - rank


@settings(max_examples=60)
@given(sparse_rows, st.data())
def test_modular_solve_matches_exact(data, draw):
    n, rows = data
    b = draw.draw(st.lists(rationals, min_size=len(rows), max_size=len(rows)))
    status, x = solve_modular(rows, n, b)
    exact = solve_sparse(rows, n, b)
    if exact is None:
        assert status in ("inconsistent", "failed")
    else:
        assert status == "ok"
        assert all(sum(v * x[j] for j, v in r.items()) == bi for r, bi in zip(rows, b))
