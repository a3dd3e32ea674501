"""Root systems of type A, Weyl groups, the dot action and alcove geometry.

Weights are integer tuples in the fundamental-weight basis, so the pairing
with a coroot is a dot product with the coroot's simple-coroot coordinates
(the systems here are simply laced).  Weyl words are tuples of 1-based simple
reflection indices, read right to left: ``(1, 2)`` means ``s_1 s_2``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

import numpy as np

Weight = tuple[int, ...]
WeylWord = tuple[int, ...]


def _cartan_type_a(rank: int) -> np.ndarray:
    c = 2 * np.eye(rank, dtype=int)
    for i in range(rank - 1):
        c[i, i + 1] = c[i + 1, i] = -1
    return c


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    # positive roots in simple-root coordinates; equal to coroot coordinates
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def coxeter_number(self) -> int:
        return self.rank + 1

    @property
    def n(self) -> int:
        """Size of the matrices in the defining representation of sl(n)."""
        return self.rank + 1

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Weight:
        """alpha_i (1-based) in fundamental-weight coordinates."""
        c = self.cartan
        return tuple(c[j][i - 1] for j in range(self.rank))

    def root_weight(self, root: tuple[int, ...]) -> Weight:
        """Convert simple-root coordinates to fundamental-weight coordinates."""
        c = np.array(self.cartan)
        return tuple(int(x) for x in c @ np.array(root))

    def pair(self, lam, coroot: tuple[int, ...]):
        """<lam, coroot> for a coroot given in simple-coroot coordinates."""
        return sum(a * b for a, b in zip(lam, coroot))

    @property
    def R(self) -> int:
        """prod over positive roots of <rho, alpha-check>."""
        return prod(self.pair(self.rho, a) for a in self.positive_roots)

    @property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    def validate_weight(self, lam) -> Weight:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise ValueError(f"weight {lam} has wrong length for {self.label}")
        return lam


def _positive_roots(cartan: np.ndarray) -> tuple[tuple[int, ...], ...]:
    # closure of simple roots under simple reflections, kept positive
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(r):
                # <beta, alpha_i-check> = sum_j beta_j C_ji
                k = sum(beta[j] * cartan[j][i] for j in range(r))
                gamma = list(beta)
                gamma[i] -= int(k)
                gamma = tuple(gamma)
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in roots:
                    roots.add(gamma)
                    new.append(gamma)
        frontier = new
    return tuple(sorted(roots, key=lambda a: (sum(a), tuple(-x for x in a))))


@lru_cache(maxsize=None)
def root_datum(label: str) -> RootDatum:
    """Build the root datum for a label such as ``"A1"`` or ``"A2"``."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*_?(\d+)\s*", label)
    if not m or m.group(1).upper() != "A":
        raise ValueError(f"unsupported root datum {label!r}; only type A_n")
    rank = int(m.group(2))
    if rank < 1:
        raise ValueError("rank must be positive")
    c = _cartan_type_a(rank)
    return RootDatum("A", rank, tuple(map(tuple, c.tolist())), _positive_roots(c))


def reflect(rd: RootDatum, i: int, lam) -> Weight:
    if not 1 <= i <= rd.rank:
        raise ValueError(f"invalid reflection index {i} for {rd.label}")
    k = lam[i - 1]
    a = rd.simple_root(i)
    return tuple(x - k * y for x, y in zip(lam, a))


def act(rd: RootDatum, w: WeylWord, lam) -> Weight:
    """Linear action of the Weyl group element represented by ``w``."""
    lam = tuple(lam)
    for i in reversed(tuple(w)):
        lam = reflect(rd, i, lam)
    return lam


def dot_action(rd: RootDatum, w: WeylWord, lam) -> Weight:
    """w . lam = w(lam + rho) - rho."""
    lam = rd.validate_weight(lam)
    shifted = tuple(x + 1 for x in lam)
    return tuple(x - 1 for x in act(rd, w, shifted))


@lru_cache(maxsize=None)
def weyl_group(rd: RootDatum) -> tuple[WeylWord, ...]:
    """One reduced word per element of W, shortest first (BFS on the rho orbit)."""
    seen = {rd.rho: ()}
    order = [()]
    frontier = [rd.rho]
    while frontier:
        new = []
        for v in frontier:
            for i in range(1, rd.rank + 1):
                if v[i - 1] > 0:
                    u = reflect(rd, i, v)
                    if u not in seen:
                        seen[u] = (i,) + seen[v]
                        order.append(seen[u])
                        new.append(u)
        frontier = new
    return tuple(order)


def length(rd: RootDatum, w: WeylWord) -> int:
    """Coxeter length: number of positive roots sent negative."""
    image = act(rd, w, rd.rho)
    return sum(1 for a in rd.positive_roots if rd.pair(image, a) < 0)


def longest_element(rd: RootDatum) -> WeylWord:
    return weyl_group(rd)[-1]


def dominant_conjugate(rd: RootDatum, lam) -> tuple[Weight, WeylWord]:
    """Return (lam^+, w) with w(lam) = lam^+ dominant."""
    lam = tuple(lam)
    word: list[int] = []
    while True:
        for i in range(1, rd.rank + 1):
            if lam[i - 1] < 0:
                lam = reflect(rd, i, lam)
                word.insert(0, i)
                break
        else:
            return lam, tuple(word)


# ---------------------------------------------------------------- alcoves


def _require_p(rd: RootDatum, p: int) -> None:
    if p <= rd.coxeter_number:
        raise ValueError(f"need p > h = {rd.coxeter_number} for {rd.label}, got p={p}")


@dataclass(frozen=True)
class AlcovePosition:
    weight: Weight
    region: str  # "interior", "wall" or "exterior" of the fundamental alcove
    walls: tuple[tuple[tuple[int, ...], int], ...]  # (root, k) with <lam+rho, root> = k p
    regular: bool  # no affine wall through lam+rho
    representative: Weight  # W_aff-dot representative in the closed fundamental alcove


def _affine_reduce(rd: RootDatum, mu, p: int):
    """Move mu (a rho-shifted weight) into the closed fundamental alcove.

    Returns (image, f) where f maps a rho-shifted weight in the closed fundamental
    alcove back to the alcove of mu.  The map is affine: f(x) = w x + t.
    """
    mu = tuple(mu)
    theta = rd.highest_root
    theta_w = rd.root_weight(theta)
    steps = []  # each step is ("s", i) or ("aff",)
    while True:
        for i in range(1, rd.rank + 1):
            if mu[i - 1] < 0:
                mu = reflect(rd, i, mu)
                steps.append(("s", i))
                break
        else:
            k = rd.pair(mu, theta)
            if k > p:
                mu = tuple(x - (k - p) * y for x, y in zip(mu, theta_w))
                steps.append(("aff",))
                continue
            break

    def back(x):
        x = tuple(x)
        for step in reversed(steps):
            if step[0] == "s":
                x = reflect(rd, step[1], x)
            else:
                k = rd.pair(x, theta)
                x = tuple(a - (k - p) * b for a, b in zip(x, theta_w))
        return x

    return mu, back


def alcove_position(rd: RootDatum, lam, p: int) -> AlcovePosition:
    _require_p(rd, p)
    lam = rd.validate_weight(lam)
    mu = tuple(x + 1 for x in lam)
    pairings = [(a, rd.pair(mu, a)) for a in rd.positive_roots]
    walls = tuple((a, v // p) for a, v in pairings if v % p == 0)
    if all(0 < v < p for _, v in pairings):
        region = "interior"
    elif all(0 <= v <= p for _, v in pairings):
        region = "wall"
    else:
        region = "exterior"
    red, _ = _affine_reduce(rd, mu, p)
    return AlcovePosition(
        weight=lam,
        region=region,
        walls=walls,
        regular=not walls,
        representative=tuple(x - 1 for x in red),
    )


def is_regular(rd: RootDatum, lam, p: int) -> bool:
    return alcove_position(rd, lam, p).regular


def fundamental_alcove_closure(rd: RootDatum, p: int) -> list[Weight]:
    """All integral lam with 0 <= <lam+rho, alpha-check> <= p for every alpha > 0."""
    _require_p(rd, p)
    out = []
    for mu in itertools.product(range(p + 1), repeat=rd.rank):
        if all(0 <= rd.pair(mu, a) <= p for a in rd.positive_roots):
            out.append(tuple(x - 1 for x in mu))
    return sorted(out)


def alcove_closure(rd: RootDatum, lam, p: int) -> list[Weight]:
    """Integral weights in the closure of the alcove containing lam + rho.

    lam must be regular so that its alcove is well defined.
    """
    lam = rd.validate_weight(lam)
    if not is_regular(rd, lam, p):
        raise ValueError(f"{lam} lies on a wall; its alcove is not unique")
    mu = tuple(x + 1 for x in lam)
    _, back = _affine_reduce(rd, mu, p)
    pts = [tuple(x - 1 for x in back(tuple(y + 1 for y in nu)))
           for nu in fundamental_alcove_closure(rd, p)]
    return sorted(pts)


def restricted_linkage_class(rd: RootDatum, lam, p: int) -> list[Weight]:
    """Restricted weights congruent mod p*Lambda to some w . lam."""
    _require_p(rd, p)
    lam = rd.validate_weight(lam)
    return sorted({tuple(x % p for x in dot_action(rd, w, lam)) for w in weyl_group(rd)})


def restricted_weights(rd: RootDatum, p: int) -> list[Weight]:
    return list(itertools.product(range(p), repeat=rd.rank))
