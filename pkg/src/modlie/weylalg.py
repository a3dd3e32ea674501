"""Crystalline differential operators on affine n-space over F_p.

Elements are normal-ordered sums c x^J d^I with every x to the left of every
d.  Products use the Leibniz rule
d^I x^K = sum_T prod_i C(I_i, T_i) K_i!/(K_i - T_i)! x^(K-T) d^(I-T).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, perm
from typing import Mapping, Sequence

import numpy as np

from .fplinalg import AlgebraModule, matmul, rank

Exp = tuple[int, ...]
Key = tuple[Exp, Exp]  # (J, I) for x^J d^I

DEGREE_CAP_FACTOR = 4


class DegreeCapError(ValueError):
    pass


class FlatnessError(ValueError):
    pass


def _add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class WeylAlgElement:
    """sum c_{J,I} x^J d^I over F_p in n variables; zero coefficients are never stored."""

    __slots__ = ("p", "n", "terms")

    def __init__(self, p: int, n: int, terms: Mapping[Key, int] | None = None):
        self.p, self.n = p, n
        clean: dict[Key, int] = {}
        cap = DEGREE_CAP_FACTOR * p
        for (J, I), c in (terms or {}).items():
            c %= p
            if not c:
                continue
            J, I = tuple(int(x) for x in J), tuple(int(x) for x in I)
            if len(J) != n or len(I) != n or min(J + I, default=0) < 0:
                raise ValueError(f"bad exponent pair {(J, I)}")
            if sum(J) + sum(I) > cap:
                raise DegreeCapError(f"total degree {sum(J) + sum(I)} exceeds the cap {cap}")
            clean[J, I] = (clean.get((J, I), 0) + c) % p
        self.terms = {k: v for k, v in clean.items() if v}

    # -- constructors
    @classmethod
    def const(cls, p: int, n: int, c: int = 1) -> "WeylAlgElement":
        z = (0,) * n
        return cls(p, n, {(z, z): c})

    @classmethod
    def x(cls, p: int, n: int, i: int, e: int = 1) -> "WeylAlgElement":
        """x_i^e with i 1-based."""
        J = tuple(e if k == i - 1 else 0 for k in range(n))
        return cls(p, n, {(J, (0,) * n): 1})

    @classmethod
    def d(cls, p: int, n: int, i: int, e: int = 1) -> "WeylAlgElement":
        I = tuple(e if k == i - 1 else 0 for k in range(n))
        return cls(p, n, {((0,) * n, I): 1})

    @classmethod
    def monomial(cls, p: int, J: Exp, I: Exp, c: int = 1) -> "WeylAlgElement":
        return cls(p, len(J), {(tuple(J), tuple(I)): c})

    @classmethod
    def from_poly(cls, p: int, n: int, f: Mapping[Exp, int]) -> "WeylAlgElement":
        z = (0,) * n
        return cls(p, n, {(J, z): c for J, c in f.items()})

    # -- arithmetic
    def _check(self, other: "WeylAlgElement") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError(f"mismatched algebras {(self.p, self.n)} and {(other.p, other.n)}")

    def _coerce(self, other) -> "WeylAlgElement":
        if isinstance(other, int):
            return WeylAlgElement.const(self.p, self.n, other)
        self._check(other)
        return other

    def __add__(self, other) -> "WeylAlgElement":
        other = self._coerce(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return WeylAlgElement(self.p, self.n, t)

    __radd__ = __add__

    def __neg__(self) -> "WeylAlgElement":
        return WeylAlgElement(self.p, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "WeylAlgElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WeylAlgElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WeylAlgElement":
        if isinstance(other, int):
            return WeylAlgElement(self.p, self.n, {k: c * other for k, c in self.terms.items()})
        return mul(self, other)

    def __rmul__(self, other: int) -> "WeylAlgElement":
        return self * other

    def __pow__(self, e: int) -> "WeylAlgElement":
        out = WeylAlgElement.const(self.p, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = WeylAlgElement.const(self.p, self.n, other)
        return isinstance(other, WeylAlgElement) and (self.p, self.n) == (other.p, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- gradings
    @property
    def order(self) -> int:
        """Order in d; -1 for zero."""
        return max((sum(I) for _, I in self.terms), default=-1)

    @property
    def degree(self) -> int:
        return max((sum(J) + sum(I) for J, I in self.terms), default=-1)

    def is_polynomial(self) -> bool:
        return all(not any(I) for _, I in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (J, I), c in sorted(self.terms.items()):
            mon = "".join(f"x{i + 1}^{e}" for i, e in enumerate(J) if e)
            mon += "".join(f"d{i + 1}^{e}" for i, e in enumerate(I) if e)
            parts.append(f"{c}{'*' + mon if mon else ''}")
        return " + ".join(parts)


def _leibniz(I: Exp, K: Exp, p: int) -> list[tuple[Exp, Exp, int]]:
    """d^I x^K as a list of (K - T, I - T, coefficient)."""
    out = []
    for T in itertools.product(*(range(min(a, b) + 1) for a, b in zip(I, K))):
        c = 1
        for a, b, t in zip(I, K, T):
            c = c * comb(a, t) * perm(b, t) % p
            if not c:
                break
        if c:
            out.append((tuple(b - t for b, t in zip(K, T)), tuple(a - t for a, t in zip(I, T)), c))
    return out


def mul(a: WeylAlgElement, b: WeylAlgElement) -> WeylAlgElement:
    """Normal-ordered product."""
    a._check(b)
    p = a.p
    acc: dict[Key, int] = {}
    for (J, I), c in a.terms.items():
        for (K, L), e in b.terms.items():
            for K2, I2, f in _leibniz(I, K, p):
                key = (_add(J, K2), _add(I2, L))
                acc[key] = (acc.get(key, 0) + c * e * f) % p
    return WeylAlgElement(p, a.n, acc)


def commutator(a: WeylAlgElement, b: WeylAlgElement) -> WeylAlgElement:
    return a * b - b * a


# ------------------------------------------------------------ symbols


@dataclass(frozen=True)
class CommPoly:
    """Commutative polynomial sum c x^J xi^I over F_p."""

    p: int
    n: int
    terms: tuple[tuple[Key, int], ...]

    @classmethod
    def make(cls, p: int, n: int, terms: Mapping[Key, int]) -> "CommPoly":
        return cls(p, n, tuple(sorted((k, c % p) for k, c in terms.items() if c % p)))

    def as_dict(self) -> dict[Key, int]:
        return dict(self.terms)

    def __mul__(self, other: "CommPoly") -> "CommPoly":
        acc: dict[Key, int] = {}
        for (J, I), c in self.terms:
            for (K, L), e in other.terms:
                key = (_add(J, K), _add(I, L))
                acc[key] = acc.get(key, 0) + c * e
        return CommPoly.make(self.p, self.n, acc)

    def derivative(self, var: str, i: int) -> "CommPoly":
        """d/dx_i (var='x') or d/dxi_i (var='xi'), 0-based i."""
        acc: dict[Key, int] = {}
        for (J, I), c in self.terms:
            e = J if var == "x" else I
            if not e[i]:
                continue
            new = tuple(v - (k == i) for k, v in enumerate(e))
            key = (new, I) if var == "x" else (J, new)
            acc[key] = acc.get(key, 0) + c * e[i]
        return CommPoly.make(self.p, self.n, acc)

    def __add__(self, other: "CommPoly") -> "CommPoly":
        acc = self.as_dict()
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return CommPoly.make(self.p, self.n, acc)

    def __neg__(self) -> "CommPoly":
        return CommPoly.make(self.p, self.n, {k: -c for k, c in self.terms})


def principal_part(a: WeylAlgElement, order: int) -> CommPoly:
    """Terms of d-order exactly ``order`` read as a polynomial in (x, xi)."""
    return CommPoly.make(a.p, a.n, {(J, I): c for (J, I), c in a.terms.items() if sum(I) == order})


def symbol(a: WeylAlgElement) -> CommPoly:
    """Image in gr D = O(T^*X): the top-order part."""
    return principal_part(a, a.order)


def poisson(f: CommPoly, g: CommPoly) -> CommPoly:
    """{f, g} = sum_i df/dxi_i dg/dx_i - df/dx_i dg/dxi_i, so that {xi, x} = 1 like [d, x]."""
    out = CommPoly.make(f.p, f.n, {})
    for i in range(f.n):
        out = out + f.derivative("xi", i) * g.derivative("x", i) + -(f.derivative("x", i) * g.derivative("xi", i))
    return out


def poisson_compatible(a: WeylAlgElement, b: WeylAlgElement) -> bool:
    """The order n_a + n_b - 1 part of [a, b] equals {symbol(a), symbol(b)}."""
    if not a or not b:
        return True
    c = commutator(a, b)
    return principal_part(c, a.order + b.order - 1) == poisson(symbol(a), symbol(b))


# ------------------------------------------------------ action on O(A^n)


Poly = dict[Exp, int]


def act_on_poly(a: WeylAlgElement, f: Mapping[Exp, int]) -> Poly:
    """Standard action: x_i multiplies, d_i differentiates."""
    p = a.p
    acc: Poly = {}
    for (J, I), c in a.terms.items():
        for K, e in f.items():
            coeff = c * e
            for k, i in zip(K, I):
                coeff = coeff * perm(k, i) % p
                if not coeff:
                    break
            if coeff:
                key = _add(J, tuple(k - i for k, i in zip(K, I)))
                acc[key] = (acc.get(key, 0) + coeff) % p
    return {k: v for k, v in acc.items() if v}


def faithfulness_witness(a: WeylAlgElement) -> Exp | None:
    """A monomial x^K with a . x^K != 0, searched among K in {0..p-1}^n."""
    for K in itertools.product(range(a.p), repeat=a.n):
        if act_on_poly(a, {K: 1}):
            return K
    return None


# ------------------------------------------------------ p-structure


VectorField = Mapping[int, Mapping[Exp, int]]  # 1-based i -> polynomial coefficient of d_i


def vector_field(p: int, n: int, vf: VectorField) -> WeylAlgElement:
    out = WeylAlgElement(p, n)
    for i, g in vf.items():
        out = out + WeylAlgElement.from_poly(p, n, g) * WeylAlgElement.d(p, n, i)
    return out


def p_power_field(p: int, n: int, vf: VectorField) -> dict[int, Poly]:
    """The vector field D^[p] whose j-th coefficient is D^p(x_j)."""
    Dp = vector_field(p, n, vf) ** p
    out = {}
    for j in range(1, n + 1):
        xj = tuple(int(k == j - 1) for k in range(n))
        g = act_on_poly(Dp, {xj: 1})
        if g:
            out[j] = g
    return out


def iota(p: int, n: int, vf: VectorField) -> WeylAlgElement:
    """iota(D) = D^p - D^[p]."""
    D = vector_field(p, n, vf)
    return D**p - vector_field(p, n, p_power_field(p, n, vf))


def structurally_central(a: WeylAlgElement) -> bool:
    return all(e % a.p == 0 for J, I in a.terms for e in J + I)


def is_central(a: WeylAlgElement) -> bool:
    """[a, x_i] = [a, d_i] = 0 for all i; must agree with the exponent criterion."""
    gens = [WeylAlgElement.x(a.p, a.n, i) for i in range(1, a.n + 1)]
    gens += [WeylAlgElement.d(a.p, a.n, i) for i in range(1, a.n + 1)]
    central = all(not commutator(a, g) for g in gens)
    if central != structurally_central(a):
        raise AssertionError(f"centrality test disagrees with the exponent criterion on {a}")
    return central


# -------------------------------------------------------- point modules


@dataclass(frozen=True)
class PointData:
    """A point a of A^n and a covector omega (the values omega(d_i))."""

    p: int
    a: tuple[int, ...]
    omega: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.omega):
            raise ValueError("point and covector have different lengths")
        object.__setattr__(self, "a", tuple(int(x) % self.p for x in self.a))
        object.__setattr__(self, "omega", tuple(int(x) % self.p for x in self.omega))

    @property
    def n(self) -> int:
        return len(self.a)


def point_module(pt: PointData) -> AlgebraModule:
    """The p^n-dimensional module on d^I delta, I in {0..p-1}^n.

    (x_k - a_k) d^I = -I_k d^(I - e_k) and d_k^p acts by omega_k^p.
    """
    p, n = pt.p, pt.n
    basis = list(itertools.product(range(p), repeat=n))
    pos = {I: k for k, I in enumerate(basis)}
    dim = len(basis)
    gens = {}
    for k in range(n):
        X = np.zeros((dim, dim), dtype=np.int64)
        D = np.zeros((dim, dim), dtype=np.int64)
        for col, I in enumerate(basis):
            X[col, col] = pt.a[k]
            if I[k]:
                lower = tuple(v - (t == k) for t, v in enumerate(I))
                X[pos[lower], col] = -I[k]
            if I[k] < p - 1:
                D[pos[tuple(v + (t == k) for t, v in enumerate(I))], col] = 1
            else:
                wrap = tuple(0 if t == k else v for t, v in enumerate(I))
                D[pos[wrap], col] = pow(pt.omega[k], p, p)
        gens[f"x{k + 1}"] = X % p
        gens[f"d{k + 1}"] = D % p
    name = f"delta(a={pt.a},omega={pt.omega})"
    return AlgebraModule(p, gens, name=name)


def element_matrix(mod: AlgebraModule, a: WeylAlgElement) -> np.ndarray:
    """Matrix of a normal-ordered element on a module with generators x_i, d_i."""
    p = mod.p
    out = np.zeros((mod.dim, mod.dim), dtype=np.int64)
    for (J, I), c in a.terms.items():
        word = []
        for i, e in enumerate(J):
            word += [f"x{i + 1}"] * e
        for i, e in enumerate(I):
            word += [f"d{i + 1}"] * e
        out = (out + c * mod.word(word)) % p
    return out


def verify_matrix_algebra(pt: PointData) -> bool:
    """The p^(2n) monomials x^J d^I with J, I < p act by independent matrices."""
    mod = point_module(pt)
    p, n = pt.p, pt.n
    xs = [mod[f"x{i + 1}"] for i in range(n)]
    ds = [mod[f"d{i + 1}"] for i in range(n)]

    def powers(m):
        out = [np.eye(mod.dim, dtype=np.int64)]
        for _ in range(p - 1):
            out.append(matmul(out[-1], m, p))
        return out

    xp, dp = [powers(m) for m in xs], [powers(m) for m in ds]
    rows = []
    for J in itertools.product(range(p), repeat=n):
        XJ = np.eye(mod.dim, dtype=np.int64)
        for i, e in enumerate(J):
            XJ = matmul(XJ, xp[i][e], p)
        for I in itertools.product(range(p), repeat=n):
            M = XJ
            for i, e in enumerate(I):
                M = matmul(M, dp[i][e], p)
            rows.append(M.reshape(-1))
    return rank(np.array(rows), p) == p ** (2 * n)


# ----------------------------------------------------------- p-curvature


WMatrix = list[list[WeylAlgElement]]


def _wmatmul(a: WMatrix, b: WMatrix) -> WMatrix:
    r = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(r)), WeylAlgElement(a[0][0].p, a[0][0].n))
             for j in range(r)] for i in range(r)]


def _wsub(a: WMatrix, b: WMatrix) -> WMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _is_zero(a: WMatrix) -> bool:
    return all(not x for row in a for x in row)


def _connection(p: int, A: Sequence[Sequence[Sequence[Mapping[Exp, int]]]]) -> list[WMatrix]:
    n = len(A)
    out = []
    for i, Ai in enumerate(A):
        r = len(Ai)
        m = [[WeylAlgElement.from_poly(p, n, Ai[s][t]) for t in range(r)] for s in range(r)]
        for s in range(r):
            m[s][s] = m[s][s] + WeylAlgElement.d(p, n, i + 1)
        out.append(m)
    return out


def p_curvature(p: int, A: Sequence[Sequence[Sequence[Mapping[Exp, int]]]]) -> list[list[list[Poly]]]:
    """psi_i = (d_i + A_i)^p - d_i^p for the connection d + sum A_i dx_i on O^r.

    A[i] is an r x r matrix of polynomials (dicts exponent -> coefficient).
    """
    nabla = _connection(p, A)
    n = len(nabla)
    for i, j in itertools.combinations(range(n), 2):
        if not _is_zero(_wsub(_wmatmul(nabla[i], nabla[j]), _wmatmul(nabla[j], nabla[i]))):
            raise FlatnessError(f"connection is not flat in directions {i + 1}, {j + 1}")
    psis = []
    for i in range(n):
        power = nabla[i]
        for _ in range(p - 1):
            power = _wmatmul(power, nabla[i])
        r = len(power)
        dp = WeylAlgElement.d(p, n, i + 1, p)
        for s in range(r):
            power[s][s] = power[s][s] - dp
        if not all(x.is_polynomial() for row in power for x in row):
            raise ArithmeticError("p-curvature is not O-linear")
        for j in range(n):
            if not _is_zero(_wsub(_wmatmul(power, nabla[j]), _wmatmul(nabla[j], power))):
                raise ArithmeticError("p-curvature is not parallel")
        psis.append(power)
    return [[[{J: c for (J, _), c in x.terms.items()} for x in row] for row in psi] for psi in psis]
