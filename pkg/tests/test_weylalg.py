import itertools
from functools import lru_cache
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie import weylalg as W
from modlie.fplinalg import matmul, matpow

W_ = W.WeylAlgElement


# ------------------------------------------------------------- oracles


@lru_cache(maxsize=None)
def _normal_order(word: tuple[str, ...]) -> tuple:
    """Normal-order a word in x_i / d_i with the single rule d_i x_i = x_i d_i + 1."""
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a[0] == "d" and b[0] == "x":
            swapped = word[:k] + (b, a) + word[k + 2 :]
            terms = dict(_normal_order(swapped))
            if a[1:] == b[1:]:
                for key, c in _normal_order(word[:k] + word[k + 2 :]):
                    terms[key] = terms.get(key, 0) + c
            return tuple(sorted(terms.items()))
    return (("".join(sorted(word)) and tuple(word) or (), 1),)


def word_product(a, b):
    """Product computed by rewriting words, then reading off exponents."""
    p, n = a.p, a.n
    acc = {}
    for (J, I), c in a.terms.items():
        for (K, L), e in b.terms.items():
            word = []
            for i in range(n):
                word += [f"x{i}"] * J[i]
            for i in range(n):
                word += [f"d{i}"] * I[i]
            for i in range(n):
                word += [f"x{i}"] * K[i]
            for i in range(n):
                word += [f"d{i}"] * L[i]
            for w, f in _normal_order(tuple(word)):
                xs = tuple(sum(1 for g in w if g == f"x{i}") for i in range(n))
                ds = tuple(sum(1 for g in w if g == f"d{i}") for i in range(n))
                acc[xs, ds] = acc.get((xs, ds), 0) + c * e * f
    return W_(p, n, acc)


def elements(p, n, max_deg=3, max_terms=3):
    """Random elements of total degree at most max_deg."""
    exps = st.tuples(*[st.integers(0, max_deg)] * n)
    keys = st.tuples(exps, exps).filter(lambda k: sum(k[0]) + sum(k[1]) <= max_deg)
    return st.dictionaries(keys, st.integers(1, p - 1), max_size=max_terms).map(lambda t: W_(p, n, t))


def jacobson_rank1(p, a):
    """p-curvature of d + a on O(A^1): a^p + d^(p-1) a."""
    out = {}
    for (k,), c in a.items():
        out[(p * k,)] = (out.get((p * k,), 0) + pow(c, p, p)) % p
        if k >= p - 1:
            key = (k - p + 1,)
            out[key] = (out.get(key, 0) + c * factorial(k) // factorial(k - p + 1)) % p
    return {k: v for k, v in out.items() if v}


# ------------------------------------------------------------- algebra


def test_basic_relations():
    p = 5
    x, d = W_.x(p, 1, 1), W_.d(p, 1, 1)
    assert d * x == x * d + 1
    assert W.commutator(d, x) == 1
    assert (d**p) * x == x * d**p
    assert W.is_central(x**p) and W.is_central(d**p)
    assert not W.is_central(x * d)
    p = 3
    x, d = W_.x(p, 1, 1), W_.d(p, 1, 1)
    assert (d + x) ** 3 == x**3 + d**3


def test_two_variables_commute():
    p = 3
    x1, d2 = W_.x(p, 2, 1), W_.d(p, 2, 2)
    assert W.commutator(x1, d2) == 0
    assert W.commutator(W_.d(p, 2, 1), x1) == 1


@settings(max_examples=40)
@given(elements(5, 1), elements(5, 1))
def test_product_matches_word_rewriting_n1(a, b):
    assert a * b == word_product(a, b)


@settings(max_examples=30)
@given(elements(3, 2, max_deg=4), elements(3, 2, max_deg=4))
def test_product_matches_word_rewriting_n2(a, b):
    assert a * b == word_product(a, b)


@settings(max_examples=30)
@given(elements(3, 2, max_deg=4), elements(3, 2, max_deg=4), elements(3, 2, max_deg=4))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a - a == 0


@settings(max_examples=30)
@given(elements(5, 1), elements(5, 1), st.dictionaries(st.tuples(st.integers(0, 12)), st.integers(1, 4), max_size=3))
def test_action_is_a_representation(a, b, f):
    assert W.act_on_poly(a * b, f) == W.act_on_poly(a, W.act_on_poly(b, f))


@settings(max_examples=40)
@given(elements(3, 2, max_deg=6))
def test_centrality_criteria_agree(a):
    W.is_central(a)  # raises when the two criteria disagree


@settings(max_examples=30)
@given(st.dictionaries(st.tuples(st.sampled_from([(0, 0), (3, 0), (0, 3), (3, 3)]), st.sampled_from([(0, 0), (3, 0), (0, 3)])),
                       st.integers(1, 2), min_size=1, max_size=3))
def test_p_th_powers_are_central(terms):
    a = W_(3, 2, terms)
    assert W.is_central(a)


@settings(max_examples=30)
@given(elements(5, 1), elements(5, 1))
def test_symbols(a, b):
    if a and b:
        assert W.symbol(a * b) == W.symbol(a) * W.symbol(b)
    assert W.poisson_compatible(a, b)


def test_poisson_sign():
    p = 5
    x, d = W.symbol(W_.x(p, 1, 1)), W.symbol(W_.d(p, 1, 1))
    assert W.poisson(d, x) == W.CommPoly.make(p, 1, {((0,), (0,)): 1})


def test_faithfulness():
    p = 3
    x, d = W_.x(p, 1, 1), W_.d(p, 1, 1)
    assert W.faithfulness_witness(x * d) == (1,)
    # d^p kills every polynomial: the action on O is not faithful
    assert W.faithfulness_witness(d**p) is None


def test_errors():
    with pytest.raises(W.DegreeCapError):
        W_.x(3, 1, 1, 13)
    with pytest.raises(W.DegreeCapError):
        W_.x(3, 1, 1, 7) * W_.x(3, 1, 1, 7)
    with pytest.raises(ValueError):
        W_.x(3, 1, 1) * W_.x(5, 1, 1)
    with pytest.raises(ValueError):
        W_.x(3, 1, 1) + W_.x(3, 2, 1)
    with pytest.raises(ValueError):
        W_(3, 1, {((-1,), (0,)): 1})


# --------------------------------------------------------------- iota


def test_iota_examples():
    p = 3
    x, d = W_.x(p, 1, 1), W_.d(p, 1, 1)
    assert W.iota(p, 1, {1: {(0,): 1}}) == d**p
    assert W.iota(p, 1, {1: {(1,): 1}}) == x**3 * d**3


vector_fields = st.dictionaries(
    st.integers(1, 2),
    st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda K: sum(K) <= 2), st.integers(1, 2),
                    min_size=1, max_size=2),
    min_size=1,
    max_size=2,
)


@settings(max_examples=15)
@given(vector_fields, vector_fields)
def test_iota_properties(v1, v2):
    p, n = 3, 2
    i1, i2 = W.iota(p, n, v1), W.iota(p, n, v2)
    assert W.is_central(i1)
    # iota(D) kills O: D^p and D^[p] agree as derivations
    for K in itertools.product(range(4), repeat=n):
        assert W.act_on_poly(i1, {K: 1}) == {}
    total = {i: dict(v1.get(i, {})) for i in (1, 2)}
    for i, g in v2.items():
        for K, c in g.items():
            total[i][K] = (total[i].get(K, 0) + c) % p
    total = {i: {K: c for K, c in g.items() if c} for i, g in total.items()}
    assert W.iota(p, n, total) == i1 + i2


def test_iota_semilinear():
    p = 3
    x = W_.x(p, 1, 1)
    assert W.iota(p, 1, {1: {(1,): 1}}) == x**p * W.iota(p, 1, {1: {(0,): 1}})


# -------------------------------------------------------- point modules


@pytest.mark.parametrize("p,a,omega", [(3, (1,), (0,)), (5, (2,), (3,)), (3, (0, 2), (1, 0))])
def test_point_module(p, a, omega):
    pt = W.PointData(p, a, omega)
    M = W.point_module(pt)
    n = len(a)
    assert M.dim == p**n
    eye = np.eye(M.dim, dtype=np.int64)
    for i in range(n):
        X, D = M[f"x{i + 1}"], M[f"d{i + 1}"]
        assert np.array_equal((matmul(D, X, p) - matmul(X, D, p)) % p, eye)
        assert np.array_equal(matpow(X, p, p), pow(a[i], p, p) * eye % p)
        assert np.array_equal(matpow(D, p, p), pow(omega[i], p, p) * eye % p)
    assert W.verify_matrix_algebra(pt)


def test_element_matrix_is_multiplicative():
    pt = W.PointData(3, (2,), (1,))
    M = W.point_module(pt)
    x, d = W_.x(3, 1, 1), W_.d(3, 1, 1)
    a, b = x * d + 2, d**2 + x
    assert np.array_equal(W.element_matrix(M, a * b), matmul(W.element_matrix(M, a), W.element_matrix(M, b), 3))


def test_point_data_validation():
    with pytest.raises(ValueError):
        W.PointData(3, (1, 2), (0,))
    assert W.PointData(3, (4,), (-1,)).omega == (2,)


# --------------------------------------------------------- p-curvature


def test_p_curvature_examples():
    assert W.p_curvature(3, [[[{(1,): 1}]]]) == [[[{(3,): 1}]]]
    assert W.p_curvature(5, [[[{(0,): 2}]]]) == [[[{(0,): 2}]]]
    assert W.p_curvature(3, [[[{}]]]) == [[[{}]]]
    # a^(p-1) derivative term
    assert W.p_curvature(3, [[[{(2,): 1}]]]) == [[[{(6,): 1, (0,): 2}]]]


@settings(max_examples=30)
@given(st.sampled_from([3, 5]), st.dictionaries(st.tuples(st.integers(0, 3)), st.integers(1, 4), max_size=3))
def test_rank1_matches_jacobson(p, a):
    a = {k: c % p for k, c in a.items() if c % p}
    assert W.p_curvature(p, [[[a]]]) == [[[jacobson_rank1(p, a)]]]


def test_rank2_nilpotent_connection():
    # d + N with N a constant nilpotent matrix: psi = N^p = 0
    A = [[[{}, {(0,): 1}], [{}, {}]]]
    assert W.p_curvature(3, A) == [[[{}, {}], [{}, {}]]]


def test_non_flat_rejected():
    with pytest.raises(W.FlatnessError):
        W.p_curvature(3, [[[{(0, 1): 1}]], [[{}]]])
