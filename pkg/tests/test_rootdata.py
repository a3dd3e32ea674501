import itertools

import pytest
from hypothesis import given, strategies as st

from modlie import rootdata as R

A1, A2 = R.root_datum("A1"), R.root_datum("A2")


def test_basic_invariants():
    for rank in (1, 2, 3):
        rd = R.root_datum(f"A{rank}")
        n = rank + 1
        assert rd.num_positive_roots == n * (n - 1) // 2
        assert rd.coxeter_number == n
        for i in range(rank):
            simple = tuple(int(j == i) for j in range(rank))
            assert rd.pair(rd.rho, simple) == 1
        direct = 1
        for a in rd.positive_roots:
            direct *= sum(a)  # <rho, alpha-check> is the height
        assert rd.R == direct


def test_R_values():
    # prod of heights of positive roots
    assert A1.R == 1
    assert A2.R == 2
    assert R.root_datum("A3").R == 12


def test_fundamental_pairing():
    for i in range(1, 3):
        a = A2.simple_root(i)
        # <alpha_i, alpha_j-check> recovers the Cartan matrix
        for j in range(2):
            coroot = tuple(int(k == j) for k in range(2))
            assert A2.pair(a, coroot) == A2.cartan[j][i - 1]


def test_dot_action_examples():
    assert R.dot_action(A1, (), (4,)) == (4,)
    assert R.dot_action(A1, (1,), (0,)) == (-2,)
    assert R.dot_action(A2, (2,), (1, -2)) == (0, 0)


def test_invalid_reflection():
    with pytest.raises(ValueError):
        R.dot_action(A2, (3,), (0, 0))


def test_weyl_group_sizes():
    assert len(R.weyl_group(A1)) == 2
    assert len(R.weyl_group(A2)) == 6
    assert len(R.weyl_group(R.root_datum("A3"))) == 24
    assert R.length(A2, R.longest_element(A2)) == 3


def test_reduced_words_agree():
    weights = list(itertools.product(range(-3, 4), repeat=2))
    for lam in weights:
        assert R.act(A2, (1, 2, 1), lam) == R.act(A2, (2, 1, 2), lam)


@given(
    st.lists(st.integers(1, 2), max_size=6),
    st.lists(st.integers(1, 2), max_size=6),
    st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
)
def test_dot_action_is_an_action(w1, w2, lam):
    w1, w2 = tuple(w1), tuple(w2)
    assert R.dot_action(A2, w1 + w2, lam) == R.dot_action(A2, w1, R.dot_action(A2, w2, lam))


def test_alcove_examples():
    assert R.alcove_position(A1, (0,), 5).region == "interior"
    pos = R.alcove_position(A1, (-1,), 5)
    assert pos.region == "wall" and not pos.regular
    pos = R.alcove_position(A2, (3, 3), 5)
    # <4 rho, theta-check> = 8 > 5: outside the fundamental alcove, but regular
    assert pos.region == "exterior" and pos.regular
    assert R.alcove_position(A2, pos.representative, 5).region == "interior"


def test_alcove_requires_p_above_h():
    with pytest.raises(ValueError):
        R.alcove_position(A2, (0, 0), 3)
    with pytest.raises(ValueError):
        R.restricted_linkage_class(A1, (0,), 2)


def test_fundamental_alcove_closure():
    assert R.fundamental_alcove_closure(A1, 5) == [(-1,), (0,), (1,), (2,), (3,), (4,)]
    pts = R.fundamental_alcove_closure(A2, 5)
    assert len(pts) == 21
    assert all(a + b + 2 <= 5 and a >= -1 and b >= -1 for a, b in pts)


def test_alcove_closure_of_other_alcove():
    # 3 = s . 0 + 5 lies in the neighbouring alcove; its closure has the same size
    pts = R.alcove_closure(A1, (3,), 5)
    assert len(pts) == 6 and (3,) in pts
    with pytest.raises(ValueError):
        R.alcove_closure(A1, (4,), 5)


def test_linkage_examples():
    assert R.restricted_linkage_class(A1, (0,), 5) == [(0,), (3,)]
    assert R.restricted_linkage_class(A1, (-1,), 5) == [(4,)]
    assert set(R.restricted_linkage_class(A2, (0, 0), 5)) == {(0, 0), (0, 2), (2, 0), (3, 1), (1, 3), (3, 3)}


@pytest.mark.parametrize("label", ["A1", "A2"])
@pytest.mark.parametrize("p", [5, 7])
def test_linkage_sizes_exhaustive(label, p):
    rd = R.root_datum(label)
    order = len(R.weyl_group(rd))
    for lam in R.restricted_weights(rd, p):
        cls = R.restricted_linkage_class(rd, lam, p)
        if R.is_regular(rd, lam, p):
            assert len(cls) == order
        else:
            assert len(cls) < order


@given(st.tuples(st.integers(-15, 15), st.integers(-15, 15)), st.sampled_from([5, 7]))
def test_linkage_is_dot_stable(lam, p):
    cls = set(R.restricted_linkage_class(A2, lam, p))
    for mu in cls:
        for w in R.weyl_group(A2):
            assert tuple(x % p for x in R.dot_action(A2, w, mu)) in cls


def test_dominant_conjugate():
    lam, w = R.dominant_conjugate(A2, (-3, 1))
    assert all(x >= 0 for x in lam)
    assert R.act(A2, w, (-3, 1)) == lam
