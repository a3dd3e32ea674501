import itertools
from math import factorial, prod

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modlie import springer as S


def _span(vectors, q):
    out = {tuple([0] * len(vectors[0]))} if vectors else set()
    for v in vectors:
        out = {tuple((a + c * b) % q for a, b in zip(u, v)) for u in out for c in range(q)}
    return frozenset(out)


def brute_stable_flags(lam, q):
    """Count complete flags over the prime field F_q with x F_i inside F_(i-1), by enumerating chains."""
    x = S.jordan_matrix(lam)
    n = len(x)
    vectors = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    image = {v: tuple(int(a) for a in x @ np.array(v) % q) for v in vectors}
    image[tuple([0] * n)] = tuple([0] * n)

    def extend(chain_gens, prev):
        current = _span(chain_gens, q) if chain_gens else frozenset({tuple([0] * n)})
        if len(chain_gens) == n:
            return 1
        total = 0
        seen = set()
        for v in vectors:
            if v in current:
                continue
            nxt = _span(chain_gens + [v], q)
            if nxt in seen:
                continue
            seen.add(nxt)
            if all(image[u] in current for u in nxt):
                total += extend(chain_gens + [v], nxt)
        return total

    return extend([], None)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1)])
@pytest.mark.parametrize("q", [2, 3])
def test_point_count_matches_chain_enumeration(lam, q):
    assert S.point_count(lam, q) == brute_stable_flags(lam, q)


def test_point_count_examples():
    assert all(S.point_count((3,), q) == 1 for q in S.Q_GRID)
    assert S.point_count((1, 1, 1), 2) == 21
    assert S.point_count((2, 1), 2) == 5
    with pytest.raises(ValueError):
        S.point_count((2, 2, 1), 2)
    with pytest.raises(ValueError):
        S.point_count((2, 1), 6)


def test_orbit_dim_examples():
    assert S.orbit_dim((1, 1, 1)) == 0
    for n in range(1, 6):
        assert S.orbit_dim((n,)) == n * n - n
    assert S.orbit_dim((2, 1)) == 4


def test_orbit_dim_by_centralizer():
    # dim O = n^2 - dim of the centralizer of x in gl_n
    for n in range(1, 5):
        for lam in S.partitions(n):
            x = S.jordan_matrix(lam)
            comm = np.zeros((n * n, n * n), dtype=np.int64)
            for k in range(n * n):
                e = np.zeros(n * n, dtype=np.int64)
                e[k] = 1
                y = e.reshape(n, n)
                comm[:, k] = (x @ y - y @ x).reshape(-1)
            centralizer = n * n - np.linalg.matrix_rank(comm)
            assert S.orbit_dim(lam) == n * n - centralizer


def test_springer_dim_examples():
    assert S.springer_fiber_dim((4,)) == 0
    assert S.springer_fiber_dim((1, 1, 1, 1)) == 6
    assert S.springer_fiber_dim((2, 1)) == 1


def test_cohomology_examples():
    assert S.cohomology_total_dim((3,)) == 1
    assert S.cohomology_total_dim((1, 1, 1)) == 6
    assert S.cohomology_total_dim((2, 1)) == 3
    assert S.poincare_fit((1, 1, 1)).coefficients == (1, 2, 2, 1)
    assert S.poincare_fit((2, 1)).pretty() == "2q + 1"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fit_properties(n):
    for lam in S.partitions(n):
        fit = S.poincare_fit(lam)
        assert all(c >= 0 for c in fit.coefficients)
        assert fit.degree == S.springer_fiber_dim(lam) == S.springer_fiber_dim_via_transpose(lam)
        assert fit.total_dim == factorial(n) // prod(factorial(x) for x in lam)
        assert fit.coefficients[0] == 1


@given(st.integers(1, 9).flatmap(lambda n: st.sampled_from(S.partitions(n))))
def test_transpose_involution_and_dominance(lam):
    assert S.transpose(S.transpose(lam)) == lam
    n = sum(lam)
    assert S.dominates((n,), lam) and S.dominates(lam, (1,) * n)
    # transposition reverses dominance
    for mu in S.partitions(n):
        assert S.dominates(lam, mu) == S.dominates(S.transpose(mu), S.transpose(lam))


def test_partition_parsing():
    assert S.partition("1,2") == (2, 1)
    with pytest.raises(ValueError):
        S.partition([2, 0])


@pytest.mark.parametrize("q", [4, 8, 9])
def test_finite_field_axioms(q):
    F = S.GF(q)
    elems = range(q)
    for a in elems:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
    for a, b, c in itertools.product(elems, repeat=3):
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
        assert F.mul[F.mul[a, b], c] == F.mul[a, F.mul[b, c]]
