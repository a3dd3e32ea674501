"""Restricted sl(n) over F_p with its Chevalley basis, and p-characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .. import springer
from ..fplinalg import matpow
from ..rootdata import RootDatum, root_datum


def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


@dataclass(frozen=True)
class Basis:
    """One Chevalley basis element: kind is 'f', 'h' or 'e'."""

    kind: str
    label: tuple[int, ...]  # (i, j) with i < j for root vectors, (i,) for h_i

    @property
    def name(self) -> str:
        return self.kind + "".join(str(x) for x in self.label)


@dataclass(frozen=True, eq=False)
class RestrictedLie:
    """sl(n) over F_p with basis ordered f's (by height), h's, e's."""

    n: int
    p: int
    rd: RootDatum = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rd", root_datum(f"A{self.n - 1}"))
        if self.p <= self.rd.coxeter_number:
            raise ValueError(f"need p > h = {self.n}, got p = {self.p}")

    @cached_property
    def roots(self) -> tuple[tuple[int, int], ...]:
        """Positive roots eps_i - eps_j as 0-based (i, j), ordered by height."""
        pairs = [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]
        return tuple(sorted(pairs, key=lambda ij: (ij[1] - ij[0], ij[0])))

    @cached_property
    def basis(self) -> tuple[Basis, ...]:
        fs = [Basis("f", (i + 1, j + 1)) for i, j in self.roots]
        hs = [Basis("h", (i + 1,)) for i in range(self.n - 1)]
        es = [Basis("e", (i + 1, j + 1)) for i, j in self.roots]
        return tuple(fs + hs + es)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.basis)

    @cached_property
    def index(self) -> dict[str, int]:
        return {b.name: k for k, b in enumerate(self.basis)}

    @property
    def num_f(self) -> int:
        return len(self.roots)

    @cached_property
    def matrices(self) -> tuple[np.ndarray, ...]:
        """Integer n x n matrices of the basis (defining representation)."""
        out = []
        for b in self.basis:
            if b.kind == "f":
                i, j = b.label
                out.append(_unit(self.n, j - 1, i - 1))
            elif b.kind == "e":
                i, j = b.label
                out.append(_unit(self.n, i - 1, j - 1))
            else:
                (i,) = b.label
                out.append(_unit(self.n, i - 1, i - 1) - _unit(self.n, i, i))
        return tuple(out)

    def decompose(self, m: np.ndarray) -> dict[int, int]:
        """Coordinates (over Z) of a trace-zero matrix in the basis."""
        m = np.asarray(m, dtype=np.int64)
        if int(np.trace(m)) != 0:
            raise ValueError("matrix is not trace-free")
        out: dict[int, int] = {}
        for k, b in enumerate(self.basis):
            if b.kind == "f":
                i, j = b.label
                c = int(m[j - 1, i - 1])
            elif b.kind == "e":
                i, j = b.label
                c = int(m[i - 1, j - 1])
            else:
                (i,) = b.label
                c = int(np.trace(m[:i, :i]))
            if c:
                out[k] = c
        return out

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, int]]:
        mats = self.matrices
        sc = {}
        for a, x in enumerate(mats):
            for b, y in enumerate(mats):
                sc[a, b] = self.decompose(x @ y - y @ x)
        return sc

    def bracket(self, a: int, b: int) -> dict[int, int]:
        return self.structure_constants[a, b]

    def p_power(self, k: int) -> dict[int, int]:
        """Coordinates of x^[p] for basis element k (matrix p-th power, mod p)."""
        m = matpow(self.matrices[k] % self.p, self.p, self.p)
        # lift to a trace-zero integer representative before decomposing
        m = np.where(m > self.p // 2, m - self.p, m)
        return {i: c % self.p for i, c in self.decompose(m).items() if c % self.p}

    def simple_h(self, i: int) -> int:
        return self.index[f"h{i}"]

    def weight_of_f(self, k: int) -> tuple[int, ...]:
        """Weight (fundamental coordinates) of f-basis element k, i.e. -root."""
        i, j = self.roots[k]
        root = tuple(1 if i <= t < j else 0 for t in range(self.n - 1))
        w = self.rd.root_weight(root)
        return tuple(-x for x in w)

    def gl_unit_action(self) -> list[list[dict[int, int]]]:
        """E_ij of gl_n as combinations of sl_n basis elements, identity acting by 0.

        Diagonal units use E_ii - I/n; coefficients are reduced mod p.
        """
        n, p = self.n, self.p
        inv_n = pow(n, -1, p)
        out = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i < j:
                    out[i][j] = {self.index[f"e{i + 1}{j + 1}"]: 1}
                elif i > j:
                    out[i][j] = {self.index[f"f{j + 1}{i + 1}"]: 1}
                else:
                    # diag(delta_i - 1/n) = sum_k c_k h_k, c_k = [k >= i] - k/n
                    coeffs = {}
                    for k in range(1, n):
                        c = (1 if k >= i + 1 else 0) - k * inv_n
                        if c % p:
                            coeffs[self.simple_h(k)] = c % p
                    out[i][j] = coeffs
        return out


@dataclass(frozen=True)
class PChar:
    """Nilpotent p-character chi = trace pairing with a Jordan matrix in n^+."""

    partition: tuple[int, ...]
    p: int

    @cached_property
    def matrix(self) -> np.ndarray:
        return springer.jordan_matrix(self.partition)

    @property
    def n(self) -> int:
        return sum(self.partition)

    def value(self, lie: RestrictedLie, k: int) -> int:
        """chi(x_k) = tr(x . x_k) mod p."""
        return int(np.trace(self.matrix @ lie.matrices[k])) % self.p

    def values(self, lie: RestrictedLie) -> tuple[int, ...]:
        return tuple(self.value(lie, k) for k in range(len(lie.basis)))

    def f_values(self, lie: RestrictedLie) -> tuple[int, ...]:
        return tuple(self.value(lie, k) for k in range(lie.num_f))

    def vanishes_on_borel(self, lie: RestrictedLie) -> bool:
        return all(self.value(lie, k) == 0 for k, b in enumerate(lie.basis) if b.kind != "f")

    def is_nilpotent(self) -> bool:
        """Invariant polynomials of positive degree vanish on the matrix."""
        x = self.matrix
        return not np.any(np.linalg.matrix_power(x, self.n))

    @property
    def springer_dim(self) -> int:
        return springer.springer_fiber_dim(self.partition)

    @property
    def label(self) -> str:
        return ",".join(str(x) for x in self.partition)


def pchar(partition, p: int) -> PChar:
    return PChar(springer.partition(partition), p)


def restricted_lie(rd_or_n, p: int) -> RestrictedLie:
    n = rd_or_n.n if isinstance(rd_or_n, RootDatum) else int(rd_or_n)
    return RestrictedLie(n, p)
