"""Weyl modules V(nu) and induced modules H^0(nu) over F_p.

The characteristic-zero irreducible of highest weight nu sits inside the
polynomial functions on the exterior powers: products of nu_i coordinates of
Lambda^i.  The lattice U_Z(n^-) v spanned by divided powers of lowering
operators on the highest weight vector v is the Kostant Z-form, and its
reduction mod p is the Weyl module.  H^0(nu) is the dual of V(-w0 nu).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..eulerbwb import weyl_euler_char
from ..fplinalg import AlgebraModule
from ..rootdata import dominant_conjugate
from .lie import RestrictedLie

# ambient spaces beyond this size are refused
MAX_AMBIENT = 4000


class UnsupportedWeightError(ValueError):
    pass


def _wedge_action(n: int, i: int, mat: np.ndarray) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Integer matrix of a gl_n element on Lambda^i Z^n in the basis of sorted subsets."""
    subsets = list(itertools.combinations(range(n), i))
    pos = {s: k for k, s in enumerate(subsets)}
    out = np.zeros((len(subsets), len(subsets)), dtype=np.int64)
    for col, s in enumerate(subsets):
        for slot, b in enumerate(s):
            for a in range(n):
                c = int(mat[a, b])
                if not c:
                    continue
                t = list(s)
                t[slot] = a
                if len(set(t)) < i:
                    continue
                # sign of the sorting permutation
                inv = sum(1 for x, y in itertools.combinations(t, 2) if x > y)
                out[pos[tuple(sorted(t))], col] += c * (-1) ** inv
    return subsets, out


class _Ambient:
    """Polynomials of multidegree nu in the coordinates of Lambda^1, ..., Lambda^{n-1}."""

    def __init__(self, lie: RestrictedLie, nu: tuple[int, ...]):
        n = lie.n
        self.blocks = []  # (start, size) of each exterior power's variables
        self.var_mats = []  # per basis element: block-diagonal action on the variables
        self.var_weight = []
        start = 0
        sizes = []
        for i in range(1, n):
            subsets = list(itertools.combinations(range(n), i))
            self.blocks.append((start, len(subsets)))
            sizes.append(len(subsets))
            for s in subsets:
                # weight of e_S in fundamental coordinates: <eps_S, alpha_k-check>
                self.var_weight.append(tuple(int(k in s) - int(k + 1 in s) for k in range(n - 1)))
            start += len(subsets)
        self.nvars = start
        for mat in lie.matrices:
            big = np.zeros((start, start), dtype=np.int64)
            for i, (s0, size) in zip(range(1, n), self.blocks):
                _, m = _wedge_action(n, i, mat)
                big[s0 : s0 + size, s0 : s0 + size] = m
            self.var_mats.append(big)
        per_block = []
        for (s0, size), d in zip(self.blocks, nu):
            mons = [c for c in itertools.combinations_with_replacement(range(s0, s0 + size), d)]
            per_block.append(mons)
        monomials = []
        for combo in itertools.product(*per_block):
            e = [0] * self.nvars
            for part in combo:
                for v in part:
                    e[v] += 1
            monomials.append(tuple(e))
        if len(monomials) > MAX_AMBIENT:
            raise UnsupportedWeightError(f"ambient space of dimension {len(monomials)} is too large")
        self.monomials = monomials
        self.pos = {m: k for k, m in enumerate(monomials)}
        self.mats = [self._derivation(vm) for vm in self.var_mats]

    def _derivation(self, vm: np.ndarray) -> np.ndarray:
        d = len(self.monomials)
        out = np.zeros((d, d), dtype=np.int64)
        for col, m in enumerate(self.monomials):
            for v, e in enumerate(m):
                if not e:
                    continue
                for u in np.nonzero(vm[:, v])[0]:
                    new = list(m)
                    new[v] -= 1
                    new[u] += 1
                    out[self.pos[tuple(new)], col] += e * int(vm[u, v])
        return out

    def weight(self, k: int) -> tuple[int, ...]:
        m = self.monomials[k]
        r = len(self.var_weight[0])
        return tuple(sum(e * self.var_weight[v][t] for v, e in enumerate(m)) for t in range(r))


# ------------------------------------------------------ integer lattices


def _echelon(vectors: list[list[int]]) -> list[list[int]]:
    """Integer row echelon basis of the Z-span (Euclid on each pivot column)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    for c in range(ncols):
        active = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[c] else rest).append(r)
            active = nxt
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = [-a for a in piv]
            out.append(piv)
        rows = [r for r in rest if any(r)]
    return out


def _coordinates(basis: list[list[int]], vec: list[int]) -> list[int]:
    """Integer coordinates of vec in an echelon basis; raises if vec is outside the lattice."""
    vec = list(vec)
    coords = []
    for row in basis:
        c = next(i for i, a in enumerate(row) if a)
        q, r = divmod(vec[c], row[c])
        if r:
            raise ArithmeticError("vector is not in the lattice")
        coords.append(q)
        if q:
            vec = [a - q * b for a, b in zip(vec, row)]
    if any(vec):
        raise ArithmeticError("vector is not in the lattice")
    return coords


@lru_cache(maxsize=None)
def _kostant_form(n: int, p: int, nu: tuple[int, ...]):
    lie = RestrictedLie(n, p)
    amb = _Ambient(lie, nu)
    top = [0] * amb.nvars
    for (s0, _), d in zip(amb.blocks, nu):
        top[s0] += d  # e_1 ^ ... ^ e_i is the first subset of each block
    d = len(amb.monomials)
    v = np.zeros(d, dtype=np.int64)
    v[amb.pos[tuple(top)]] = 1

    # spanning set of U_Z(n^-) v: ordered products of divided powers, reduced to a lattice basis
    span = [v]
    for k in reversed(range(lie.num_f)):
        f = amb.mats[k]
        new = []
        for w in span:
            u = w.copy()
            a = 0
            while np.any(u):
                new.append(u)
                a += 1
                u = f @ u
                if np.any(u % a):
                    raise ArithmeticError("divided power is not integral")
                u = u // a
        span = _group_and_reduce(amb, new)

    groups = _split_by_weight(amb, span)
    weights = sorted(groups, reverse=True)
    basis, wts = [], []
    for w in weights:
        for row in groups[w]:
            basis.append(row)
            wts.append(w)
    index_ranges = {}
    start = 0
    for w in weights:
        index_ranges[w] = (start, start + len(groups[w]))
        start += len(groups[w])

    dim = len(basis)
    gens = {}
    for k, b in enumerate(lie.basis):
        mat = np.zeros((dim, dim), dtype=np.int64)
        x = amb.mats[k]
        for col, vec in enumerate(basis):
            img = [int(a) for a in x @ np.array(vec, dtype=np.int64)]
            if not any(img):
                continue
            tw = amb.weight(next(i for i, a in enumerate(img) if a))
            lo, hi = index_ranges[tw]
            coords = _coordinates(groups[tw], img)
            mat[lo:hi, col] = coords
        gens[b.name] = mat % p
    return gens, tuple(wts)


def _split_by_weight(amb: _Ambient, vectors) -> dict[tuple[int, ...], list[list[int]]]:
    groups: dict[tuple[int, ...], list[list[int]]] = {}
    for vec in vectors:
        vec = [int(a) for a in vec]
        nz = next(i for i, a in enumerate(vec) if a)
        groups.setdefault(amb.weight(nz), []).append(vec)
    return {w: _echelon(vs) for w, vs in groups.items()}


def _group_and_reduce(amb: _Ambient, vectors) -> list[np.ndarray]:
    out = []
    for rows in _split_by_weight(amb, vectors).values():
        out.extend(np.array(r, dtype=np.int64) for r in rows)
    return out


def _dominant(lie: RestrictedLie, nu) -> tuple[int, ...]:
    nu = lie.rd.validate_weight(nu)
    return dominant_conjugate(lie.rd, nu)[0]


def weyl_module_weights(lie: RestrictedLie, nu, dual: bool = True) -> tuple[tuple[int, ...], ...]:
    """Integral weights of the basis of weyl_module(lie, nu, dual), in module order."""
    plus = _dominant(lie, nu)
    if dual:
        star = tuple(reversed(plus))
        _, wts = _kostant_form(lie.n, lie.p, star)
        return tuple(tuple(-x for x in w) for w in wts)
    return _kostant_form(lie.n, lie.p, plus)[1]


def weyl_module(lie: RestrictedLie, nu, dual: bool = True) -> AlgebraModule:
    """Reduction mod p of the Kostant Z-form of highest weight nu^+.

    With ``dual`` (the default) the result is H^0(nu^+) = V(-w0 nu^+)^*; both
    have the Weyl character, so dimensions agree either way.
    """
    plus = _dominant(lie, nu)
    if any(x > lie.p - 1 for x in plus):
        raise UnsupportedWeightError(f"dominant weight {plus} is not restricted for p={lie.p}")
    target = tuple(reversed(plus)) if dual else plus  # -w0 reverses coordinates in type A
    gens, wts = _kostant_form(lie.n, lie.p, target)
    expected = weyl_euler_char(lie.rd, target)
    if len(wts) != expected:
        raise ArithmeticError(f"Z-form has rank {len(wts)}, Weyl dimension is {expected}")
    mod = AlgebraModule(lie.p, {k: v.copy() for k, v in gens.items()})
    if dual:
        mod = mod.contragredient()
        mod.name = f"H0({','.join(map(str, plus))})"
    else:
        mod.name = f"V({','.join(map(str, plus))})"
    return mod
