"""Gelfand invariants of gl_n acting on sl_n-modules (identity acting by zero)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..fplinalg import AlgebraModule, matmul
from .lie import RestrictedLie
from .verma import Straightener


class BracketRelationError(ValueError):
    pass


def check_bracket_relations(lie: RestrictedLie, mod: AlgebraModule) -> None:
    p = lie.p
    for a, na in enumerate(lie.names):
        for b in range(a + 1, len(lie.names)):
            nb = lie.names[b]
            lhs = (matmul(mod[na], mod[nb], p) - matmul(mod[nb], mod[na], p)) % p
            rhs = np.zeros_like(lhs)
            for k, c in lie.bracket(a, b).items():
                rhs = (rhs + c * mod[lie.names[k]]) % p
            if not np.array_equal(lhs, rhs):
                raise BracketRelationError(f"[{na}, {nb}] is not represented correctly")


def _unit_operators(lie: RestrictedLie, mod: AlgebraModule) -> list[list[np.ndarray]]:
    p = lie.p
    units = lie.gl_unit_action()
    zero = np.zeros((mod.dim, mod.dim), dtype=np.int64)
    ops = []
    for row in units:
        ops_row = []
        for elem in row:
            m = zero.copy()
            for k, c in elem.items():
                m = (m + c * mod[lie.names[k]]) % p
            ops_row.append(m)
        ops.append(ops_row)
    return ops


def central_operators(lie: RestrictedLie, mod: AlgebraModule, check: bool = True) -> list[np.ndarray]:
    """Matrices of C_k = sum E_{i1 i2} E_{i2 i3} ... E_{ik i1}, k = 2..n."""
    if check:
        check_bracket_relations(lie, mod)
    p, n = lie.p, lie.n
    E = _unit_operators(lie, mod)
    power = E
    out = []
    for k in range(2, n + 1):
        power = [
            [sum((matmul(power[i][l], E[l][j], p) for l in range(n)), np.zeros_like(E[0][0])) % p
             for j in range(n)]
            for i in range(n)
        ]
        out.append(sum((power[i][i] for i in range(n)), np.zeros_like(E[0][0])) % p)
    return out


@lru_cache(maxsize=None)
def _scalars(n: int, p: int, mu: tuple[int, ...]) -> tuple[int, ...]:
    lie = RestrictedLie(n, p)
    st = Straightener(lie, (0,) * lie.num_f, mu)
    units = lie.gl_unit_action()
    top = (0,) * lie.num_f
    out = []
    for k in range(2, n + 1):
        total: dict = {}
        for start in range(n):
            # E_{i1 i2} ... E_{ik i1} v, applied right to left as a walk from i1 back to i1
            vecs = {start: {top: 1}}
            for _ in range(k):
                nxt: dict[int, dict] = {}
                for j, vec in vecs.items():
                    for i in range(n):
                        # apply E_{i j}
                        w = st.act_elem(units[i][j], vec)
                        if w:
                            acc = nxt.setdefault(i, {})
                            for m, c in w.items():
                                x = (acc.get(m, 0) + c) % p
                                if x:
                                    acc[m] = x
                                else:
                                    acc.pop(m)
                vecs = nxt
            for m, c in vecs.get(start, {}).items():
                total[m] = (total.get(m, 0) + c) % p
        extra = {m: c for m, c in total.items() if m != top and c}
        if extra:
            raise ArithmeticError("Gelfand invariant did not act by a scalar on the top vector")
        out.append(total.get(top, 0))
    return tuple(out)


def central_scalars(lie: RestrictedLie, mu) -> tuple[int, ...]:
    """Eigenvalues of C_2..C_n on a highest weight vector of weight mu (mod p)."""
    mu = tuple(int(x) % lie.p for x in lie.rd.validate_weight(mu))
    return _scalars(lie.n, lie.p, mu)
