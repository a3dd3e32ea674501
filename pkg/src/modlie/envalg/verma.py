"""Baby Verma modules Z_chi(mu) = U_chi(g) (x)_{U(b)} k_mu by PBW straightening.

A basis vector is an exponent tuple ``a`` standing for
``f_1^a_1 f_2^a_2 ... f_N^a_N v_mu`` with the f's ordered by height and
``0 <= a_k < p``.  The action of a basis element y on a monomial ``f_l m'``
(``l`` the first nonzero slot) comes from ``y f_l = f_l y + [y, f_l]``; the
leading f is pushed in by ``f_k f_l = f_l f_k + [f_k, f_l]`` whenever k > l.
Since ``[f_k, f_l]`` has larger height than f_l, every recursion strictly
shortens the monomial.  ``f_k^p`` is central and acts by ``chi(f_k)^p``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..fplinalg import AlgebraModule
from .lie import PChar, RestrictedLie

Vec = dict[tuple[int, ...], int]


def _axpy(acc: Vec, c: int, vec: Vec, p: int) -> None:
    for m, v in vec.items():
        x = (acc.get(m, 0) + c * v) % p
        if x:
            acc[m] = x
        else:
            acc.pop(m, None)


class Straightener:
    """Lazy action of sl(n) on a baby Verma module."""

    def __init__(self, lie: RestrictedLie, chi_f: tuple[int, ...], mu: tuple[int, ...]):
        self.lie = lie
        self.p = lie.p
        self.N = lie.num_f
        self.chi_pow = tuple(pow(c, self.p, self.p) for c in chi_f)
        self.mu = tuple(int(x) % self.p for x in mu)
        self._h_value = {}
        for k, b in enumerate(lie.basis):
            if b.kind == "h":
                self._h_value[k] = self.mu[b.label[0] - 1]
        self.act = lru_cache(maxsize=None)(self._act)
        self.act_f = lru_cache(maxsize=None)(self._act_f)

    # -- helpers
    def act_vec(self, y: int, vec: Vec) -> Vec:
        out: Vec = {}
        for m, c in vec.items():
            _axpy(out, c, self.act(y, m), self.p)
        return out

    def act_elem(self, elem: dict[int, int], vec: Vec) -> Vec:
        out: Vec = {}
        for y, c in elem.items():
            if c % self.p:
                _axpy(out, c, self.act_vec(y, vec), self.p)
        return out

    def _act_f(self, k: int, m: tuple[int, ...]) -> Vec:
        p = self.p
        first = next((l for l in range(k) if m[l]), None)
        if first is None:
            new = list(m)
            new[k] += 1
            coeff = 1
            if new[k] == p:
                new[k] = 0
                coeff = self.chi_pow[k]
            return {tuple(new): coeff} if coeff else {}
        l = first
        rest = list(m)
        rest[l] -= 1
        rest = tuple(rest)
        out: Vec = {}
        for mm, c in self.act_f(k, rest).items():
            _axpy(out, c, self.act_f(l, mm), p)
        br = self.lie.bracket(k, l)
        for y, c in br.items():
            _axpy(out, c, self.act(y, rest), p)
        return out

    def _act(self, y: int, m: tuple[int, ...]) -> Vec:
        p = self.p
        if y < self.N:
            return self.act_f(y, m)
        first = next((l for l in range(self.N) if m[l]), None)
        if first is None:
            if y in self._h_value:
                c = self._h_value[y]
                return {m: c} if c else {}
            return {}  # e's kill the highest weight vector
        l = first
        rest = list(m)
        rest[l] -= 1
        rest = tuple(rest)
        out: Vec = {}
        for mm, c in self.act(y, rest).items():
            _axpy(out, c, self.act_f(l, mm), p)
        for z, c in self.lie.bracket(y, l).items():
            _axpy(out, c, self.act(z, rest), p)
        return out

    # -- module
    def monomials(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.p), repeat=self.N))

    def weight(self, m: tuple[int, ...]) -> tuple[int, ...]:
        w = list(self.mu)
        for k, a in enumerate(m):
            for t, x in enumerate(self.lie.weight_of_f(k)):
                w[t] += a * x
        return tuple(x % self.p for x in w)

    def module(self) -> AlgebraModule:
        mons = self.monomials()
        pos = {m: i for i, m in enumerate(mons)}
        d = len(mons)
        gens = {}
        for y, b in enumerate(self.lie.basis):
            mat = np.zeros((d, d), dtype=np.int64)
            for m in mons:
                col = pos[m]
                for mm, c in self.act(y, m).items():
                    mat[pos[mm], col] = c
            gens[b.name] = mat
        return AlgebraModule(self.p, gens)


def _check_chi(lie: RestrictedLie, chi: PChar) -> None:
    if chi.p != lie.p or chi.n != lie.n:
        raise ValueError("p-character does not match the Lie algebra")
    if not chi.vanishes_on_borel(lie):
        raise ValueError("chi must vanish on the upper Borel subalgebra")


def baby_verma(lie: RestrictedLie, chi: PChar, mu) -> AlgebraModule:
    """Z_chi(mu) on the PBW basis of U_chi(n^-), dimension p^|positive roots|."""
    _check_chi(lie, chi)
    mu = lie.rd.validate_weight(mu)
    st = Straightener(lie, chi.f_values(lie), mu)
    mod = st.module()
    mod.name = f"Z_{chi.label}({','.join(map(str, mu))})"
    return mod


def baby_verma_weights(lie: RestrictedLie, mu) -> list[tuple[int, ...]]:
    """h-weights (mod p) of the PBW basis vectors, in module order."""
    st = Straightener(lie, (0,) * lie.num_f, mu)
    return [st.weight(m) for m in st.monomials()]
