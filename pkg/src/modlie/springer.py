"""Type-A nilpotent orbits and Springer fibers.

The total cohomology of a Springer fiber is obtained here in two unrelated
ways: by counting F_q-points of the fiber (complete flags stable under a
nilpotent Jordan matrix) and fitting a polynomial in q, and by the
multinomial n!/prod(lambda_i!).  The module refuses to answer if they differ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

Partition = tuple[int, ...]

# prime powers usable as sample points; enough for degree 6 plus one spare
Q_GRID = (2, 3, 4, 5, 7, 8, 9, 11)
MAX_N = 4


def partition(parts) -> Partition:
    if isinstance(parts, str):
        parts = [int(x) for x in parts.replace(" ", "").split(",") if x]
    lam = tuple(sorted((int(x) for x in parts), reverse=True))
    if not lam or lam[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {parts!r}")
    return lam


def partitions(n: int) -> list[Partition]:
    out = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(min(remaining, largest), 0, -1):
            rec(remaining - k, k, acc + [k])

    rec(n, n, [])
    return out


def transpose(lam: Partition) -> Partition:
    lam = partition(lam)
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def dominates(lam: Partition, mu: Partition) -> bool:
    """Dominance order lam >= mu (partitions of the same n)."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same integer")
    a = list(itertools.accumulate(lam))
    b = list(itertools.accumulate(mu))
    a += [a[-1]] * (len(b) - len(a))
    b += [b[-1]] * (len(a) - len(b))
    return all(x >= y for x, y in zip(a, b))


def orbit_dim(lam: Partition) -> int:
    """Dimension of the nilpotent orbit of Jordan type lam in gl_n / sl_n."""
    lam = partition(lam)
    n = sum(lam)
    return n * n - sum(x * x for x in transpose(lam))


def flag_dim(n: int) -> int:
    return n * (n - 1) // 2


def springer_fiber_dim(lam: Partition) -> int:
    lam = partition(lam)
    od = orbit_dim(lam)
    if od % 2:
        raise ValueError("orbit dimension must be even")
    return flag_dim(sum(lam)) - od // 2


def springer_fiber_dim_via_transpose(lam: Partition) -> int:
    return sum(comb(x, 2) for x in transpose(lam))


def multinomial(lam: Partition) -> int:
    lam = partition(lam)
    return factorial(sum(lam)) // prod(factorial(x) for x in lam)


def jordan_matrix(lam: Partition) -> np.ndarray:
    """Nilpotent upper-triangular Jordan matrix with block sizes lam."""
    lam = partition(lam)
    n = sum(lam)
    x = np.zeros((n, n), dtype=np.int64)
    start = 0
    for b in lam:
        for i in range(start, start + b - 1):
            x[i, i + 1] = 1
        start += b
    return x


# ------------------------------------------------------------ finite fields


def _factor_prime_power(q: int) -> tuple[int, int]:
    for ell in range(2, q + 1):
        if q % ell == 0:
            k, r = 0, q
            while r % ell == 0:
                r //= ell
                k += 1
            if r != 1:
                break
            return ell, k
    raise ValueError(f"{q} is not a prime power")


class GF:
    """GF(q) with elements 0..q-1 read as base-ell digit vectors (polynomials)."""

    def __init__(self, q: int):
        self.q = q
        self.ell, self.k = _factor_prime_power(q)
        ell, k = self.ell, self.k
        modulus = self._irreducible(ell, k)
        digits = [self._digits(a) for a in range(q)]
        self.add = np.zeros((q, q), dtype=np.int64)
        self.mul = np.zeros((q, q), dtype=np.int64)
        for a, b in itertools.product(range(q), repeat=2):
            self.add[a, b] = self._num([(x + y) % ell for x, y in zip(digits[a], digits[b])])
            self.mul[a, b] = self._num(self._polymulmod(digits[a], digits[b], modulus))
        self.neg = np.array([int(np.nonzero(self.add[a] == 0)[0][0]) for a in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.nonzero(self.mul[a] == 1)[0][0])

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.ell)
            a //= self.ell
        return out

    def _num(self, digits):
        return sum(d * self.ell**i for i, d in enumerate(digits))

    def _polymulmod(self, a, b, modulus):
        ell, k = self.ell, self.k
        prodc = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prodc[i + j] = (prodc[i + j] + x * y) % ell
        # modulus is monic of degree k, given as its k low coefficients
        for deg in range(2 * k - 2, k - 1, -1):
            c = prodc[deg]
            if c:
                prodc[deg] = 0
                for i, m in enumerate(modulus):
                    prodc[deg - k + i] = (prodc[deg - k + i] - c * m) % ell
        return prodc[:k]

    @staticmethod
    def _irreducible(ell, k):
        if k == 1:
            return [0]
        for low in itertools.product(range(ell), repeat=k):
            coeffs = list(low) + [1]
            # no roots and (for k <= 3) that is enough; k = 4 would need more
            if all(sum(c * pow(x, i, ell) for i, c in enumerate(coeffs)) % ell for x in range(ell)):
                if k <= 3:
                    return list(low)
        raise ValueError(f"no irreducible polynomial search implemented for degree {k}")


def _kernel(F: GF, x: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    n = len(x)
    m = [list(row) for row in x]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv[m[r][c]]
        m[r] = [int(F.mul[inv, v]) for v in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [int(F.add[a, F.neg[F.mul[f, b]]]) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(F.neg[m[i][f]])
        basis.append(v)
    return basis


def _lines(F: GF, basis: list[list[int]]):
    k = len(basis)
    n = len(basis[0]) if basis else 0
    for lead in range(k):
        for tail in itertools.product(range(F.q), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            v = [0] * n
            for c, b in zip(coeffs, basis):
                if c:
                    v = [int(F.add[a, F.mul[c, y]]) for a, y in zip(v, b)]
            yield v


@lru_cache(maxsize=None)
def _count_stable_flags(q: int, x: tuple[tuple[int, ...], ...]) -> int:
    n = len(x)
    if n <= 1:
        return 1
    F = _field(q)
    total = 0
    for v in _lines(F, _kernel(F, x)):
        i0 = next(i for i, a in enumerate(v) if a)
        inv = F.inv[v[i0]]
        v = [int(F.mul[inv, a]) for a in v]
        keep = [j for j in range(n) if j != i0]
        # induced map on V / <v> in the basis of the images of e_j, j != i0
        cols = []
        for j in keep:
            col = [x[i][j] for i in range(n)]
            t = col[i0]
            col = [int(F.add[a, F.neg[F.mul[t, b]]]) for a, b in zip(col, v)]
            cols.append([col[i] for i in keep])
        xbar = tuple(tuple(cols[c][r] for c in range(n - 1)) for r in range(n - 1))
        total += _count_stable_flags(q, xbar)
    return total


@lru_cache(maxsize=None)
def _field(q: int) -> GF:
    return GF(q)


def point_count(lam: Partition, q: int) -> int:
    """Number of F_q-rational complete flags F with x F_i inside F_{i-1}."""
    lam = partition(lam)
    if sum(lam) > MAX_N:
        raise ValueError(f"point counting is limited to n <= {MAX_N}")
    if q not in Q_GRID:
        raise ValueError(f"q must be one of {Q_GRID}")
    x = jordan_matrix(lam)
    return _count_stable_flags(q, tuple(tuple(int(a) for a in row) for row in x))


@dataclass(frozen=True)
class PoincareFit:
    partition: Partition
    samples: tuple[tuple[int, int], ...]
    coefficients: tuple[int, ...]  # constant term first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def total_dim(self) -> int:
        return sum(self.coefficients)

    def __call__(self, q) -> int:
        return sum(c * q**i for i, c in enumerate(self.coefficients))

    def pretty(self) -> str:
        terms = []
        for i in reversed(range(len(self.coefficients))):
            c = self.coefficients[i]
            if c == 0:
                continue
            mon = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mon)
        return " + ".join(terms) or "0"


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        f = m[c][c]
        m[c] = [v / f for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                g = m[i][c]
                m[i] = [a - g * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def poincare_fit(lam: Partition) -> PoincareFit:
    """Fit point counts to a polynomial of degree dim B_x and check all samples."""
    lam = partition(lam)
    deg = springer_fiber_dim(lam)
    qs = Q_GRID[: max(4, deg + 2)]
    samples = tuple((q, point_count(lam, q)) for q in qs)
    fit_pts = samples[: deg + 1]
    coeffs = _solve_exact(
        [[Fraction(q) ** i for i in range(deg + 1)] for q, _ in fit_pts],
        [Fraction(c) for _, c in fit_pts],
    )
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError(f"non-integral point-count polynomial for {lam}: {coeffs}")
    fit = PoincareFit(lam, samples, tuple(int(c) for c in coeffs))
    for q, c in samples:
        if fit(q) != c:
            raise ArithmeticError(f"point counts for {lam} are not a degree-{deg} polynomial (q={q})")
    return fit


def cohomology_total_dim(lam: Partition) -> int:
    fit = poincare_fit(lam)
    closed = multinomial(lam)
    if fit.total_dim != closed:
        raise ArithmeticError(
            f"Springer oracles disagree for {lam}: point count gives {fit.total_dim}, multinomial {closed}"
        )
    return closed
