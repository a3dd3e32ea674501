import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from modlie import fplinalg as F
from modlie.envalg import RestrictedLie, baby_verma, central_operators, pchar, weyl_module


def small_matrices(p):
    return st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
        lambda s: hnp.arrays(np.int64, s, elements=st.integers(0, p - 1))
    )


def brute_kernel_size(a, p):
    cols = a.shape[1]
    return sum(1 for v in itertools.product(range(p), repeat=cols) if not np.any(a @ np.array(v) % p))


def test_rank_nullspace_examples():
    r, ns = F.rank_nullspace(np.zeros((3, 3), dtype=np.int64), 5)
    assert r == 0 and len(ns) == 3
    r, ns = F.rank_nullspace(np.eye(4, dtype=np.int64), 5)
    assert r == 4 and len(ns) == 0
    a = np.array([[1, 2], [2, 4]])
    r, ns = F.rank_nullspace(a, 5)
    assert r == 1
    assert ns.tolist() == [[3, 1]]
    assert not np.any(a @ ns[0] % 5)


@given(small_matrices(3))
def test_nullspace_against_enumeration(a):
    p = 3
    r, ns = F.rank_nullspace(a, p)
    assert r + len(ns) == a.shape[1]
    assert brute_kernel_size(a, p) == p ** len(ns)
    for v in ns:
        assert not np.any(a @ v % p)


@given(hnp.arrays(np.int64, (4, 4), elements=st.integers(0, 4)))
def test_inverse(a):
    p = 5
    if F.rank(a, p) == 4:
        inv = F.inverse(a, p)
        assert np.array_equal(F.matmul(a, inv, p), np.eye(4, dtype=np.int64))
    else:
        with pytest.raises(np.linalg.LinAlgError):
            F.inverse(a, p)


def test_matmul_large_p_path():
    p = 2**31 - 1
    a = np.full((3, 3), p - 1, dtype=np.int64)
    expected = (np.array(a, dtype=object) @ np.array(a, dtype=object)) % p
    assert F.matmul(a, a, p).tolist() == expected.tolist()


def _sl2_trivialish(p=5):
    lie = RestrictedLie(2, p)
    return lie, baby_verma(lie, pchar((1, 1), p), (0,))


def test_spin_examples():
    lie, Z = _sl2_trivialish()
    top = np.zeros(5, dtype=np.int64)
    top[0] = 1
    assert len(F.spin(Z, top)) == 5  # the highest weight vector generates Z
    zero_mod = F.AlgebraModule(5, {"a": np.zeros((3, 3), dtype=np.int64)})
    assert len(F.spin(zero_mod, np.array([1, 2, 0]))) == 1
    with pytest.raises(ValueError):
        F.spin(zero_mod, np.zeros(3, dtype=np.int64))


def test_composition_factors_examples():
    lie, Z = _sl2_trivialish()
    dims = sorted(m.dim for m, _ in F.composition_factors(Z, 0))
    assert dims == [1, 4]
    L4 = next(m for m, _ in F.composition_factors(Z, 0) if m.dim == 4)
    assert F.composition_factors(L4, 3)[0][1] == 1 and F.is_irreducible(L4)
    twice = F.composition_factors(F.direct_sum(L4, L4), 1)
    assert len(twice) == 1 and twice[0][1] == 2 and twice[0][0].dim == 4


def test_composition_factors_of_zero_action():
    mod = F.AlgebraModule(5, {"a": np.zeros((3, 3), dtype=np.int64)})
    (factor, mult), = F.composition_factors(mod, 0)
    assert factor.dim == 1 and mult == 3


@pytest.mark.parametrize("part", [(1, 1), (2,)])
@given(lam=st.integers(0, 4))
def test_factor_dims_sum_and_seed_independence(part, lam):
    p = 5
    lie = RestrictedLie(2, p)
    Z = baby_verma(lie, pchar(part, p), (lam,))
    runs = [F.composition_factors(Z, seed) for seed in (0, 1, 2)]
    for run in runs:
        assert sum(m.dim * k for m, k in run) == Z.dim
    base = runs[0]
    for other in runs[1:]:
        assert len(other) == len(base)
        for m, k in base:
            assert any(k == k2 and F.are_isomorphic(m, m2) for m2, k2 in other)


def test_are_isomorphic_examples():
    lie, Z = _sl2_trivialish()
    f = {m.dim: m for m, _ in F.composition_factors(Z, 0)}
    assert F.are_isomorphic(Z, Z)
    assert not F.are_isomorphic(f[1], f[4])
    # a change of basis is detected as isomorphic
    P = np.array([[1, 2, 0, 4], [0, 1, 0, 3], [0, 0, 1, 2], [0, 0, 0, 3]])
    Pinv = F.inverse(P, 5)
    conj = F.AlgebraModule(5, {k: F.matmul(Pinv, F.matmul(v, P, 5), 5) for k, v in f[4].gens.items()})
    assert F.are_isomorphic(f[4], conj)
    with pytest.raises(ValueError):
        F.are_isomorphic(f[4], F.AlgebraModule(5, {"x": np.eye(4, dtype=np.int64)}))


def test_hom_space_of_simple_is_scalars():
    lie, Z = _sl2_trivialish()
    L4 = next(m for m, _ in F.composition_factors(Z, 0) if m.dim == 4)
    assert len(F.hom_space(L4, L4)) == 1


def test_generalized_eigenspace_examples():
    p = 7
    assert len(F.generalized_eigenspace(3 * np.eye(4, dtype=np.int64), 3, p)) == 4
    assert len(F.generalized_eigenspace(np.diag([2, 5]), 2, p)) == 1
    jordan = np.array([[2, 1], [0, 2]])
    assert len(F.generalized_eigenspace(jordan, 2, p)) == 2
    assert len(F.nullspace((jordan - 2 * np.eye(2, dtype=np.int64)) % p, p)) == 1


def test_casimir_eigenspace_on_tensor():
    p = 5
    lie = RestrictedLie(2, p)
    T = F.tensor(weyl_module(lie, (1,)), baby_verma(lie, pchar((1, 1), p), (0,)))
    (C,) = central_operators(lie, T)
    # C_2 acts on a highest weight vector of weight m by m(m+2)/2
    c = lambda m: m * (m + 2) * pow(2, -1, p) % p
    a, b = F.generalized_eigenspace(C, c(1), p), F.generalized_eigenspace(C, c(-1), p)
    assert len(a) == 5 and len(a) + len(b) == 10


@given(hnp.arrays(np.int64, (5, 5), elements=st.integers(0, 4)))
def test_generalized_eigenspaces_independent(a):
    p = 5
    spaces = [F.generalized_eigenspace(a, c, p) for c in range(p)]
    stacked = np.vstack([s for s in spaces if len(s)]) if any(len(s) for s in spaces) else np.zeros((0, 5))
    total = sum(len(s) for s in spaces)
    assert F.rank(stacked, p) == total
    # the characteristic polynomial splits iff the spaces fill everything
    assert total <= 5


def test_mixed_primes_rejected():
    a = F.AlgebraModule(3, {"x": np.eye(2, dtype=np.int64)})
    b = F.AlgebraModule(5, {"x": np.eye(2, dtype=np.int64)})
    with pytest.raises(ValueError):
        F.tensor(a, b)
    with pytest.raises(ValueError):
        F.direct_sum(a, b)
