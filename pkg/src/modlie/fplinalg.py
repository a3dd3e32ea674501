"""Dense linear algebra over F_p and Meataxe-style module analysis.

Matrices are numpy int64 arrays with entries in ``0..p-1``; the prime travels
alongside as an explicit argument.  Modules act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# float64 matmul is exact while every partial sum stays below 2**53
_FLOAT_EXACT = 2**52


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[-1]
    if k * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.remainder(out, p).astype(np.int64)
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object) % p).astype(np.int64)


def matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            result = matmul(result, base, p)
        e >>= 1
        if e:
            base = matmul(base, base, p)
    return result


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    m = as_fp(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : a v = 0} as the rows of the returned array."""
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def rank_nullspace(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    ns = nullspace(a, p)
    return np.asarray(a).shape[1] - len(ns), ns


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    r, pivots = rref(np.hstack([as_fp(a, p), np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular mod p")
    return r[:, n:]


def row_space(vectors: np.ndarray, p: int) -> np.ndarray:
    if len(vectors) == 0:
        return np.zeros((0, np.asarray(vectors).shape[-1]), dtype=np.int64)
    return rref(vectors, p)[0]


def extend_to_basis(sub: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``sub`` (independent) followed by unit vectors completing a basis."""
    d = sub.shape[1]
    _, pivots = rref(sub, p)
    extra = [c for c in range(d) if c not in set(pivots)]
    unit = np.eye(d, dtype=np.int64)[extra]
    return np.vstack([sub, unit]) if len(sub) else unit


def generalized_eigenspace(op: np.ndarray, c: int, p: int) -> np.ndarray:
    """Rows spanning ker (op - c I)^d with d = dim."""
    d = op.shape[0]
    a = (op - c * np.eye(d, dtype=np.int64)) % p
    return nullspace(matpow(a, d, p), p)


def eigenvalues(op: np.ndarray, p: int) -> list[int]:
    """Eigenvalues of ``op`` lying in F_p."""
    d = op.shape[0]
    eye = np.eye(d, dtype=np.int64)
    return [c for c in range(p) if rank((op - c * eye) % p, p) < d]


# ------------------------------------------------------------------ modules


@dataclass
class AlgebraModule:
    """A finite-dimensional module given by matrices for named generators."""

    p: int
    gens: dict[str, np.ndarray]
    dim: int = field(init=False)
    name: str = ""

    def __post_init__(self):
        dims = {g.shape for g in self.gens.values()}
        if len(dims) > 1:
            raise ValueError(f"generator matrices have mixed shapes {dims}")
        if dims:
            (shape,) = dims
            if shape[0] != shape[1]:
                raise ValueError("generator matrices must be square")
            self.dim = shape[0]
        else:
            raise ValueError("a module needs at least one generator")
        self.gens = {k: as_fp(v, self.p) for k, v in self.gens.items()}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.gens)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.gens[name]

    def transpose(self) -> "AlgebraModule":
        return AlgebraModule(self.p, {k: v.T.copy() for k, v in self.gens.items()}, name=self.name + "^T")

    def contragredient(self) -> "AlgebraModule":
        """Dual module for a Lie algebra action: x acts by -x^T."""
        return AlgebraModule(self.p, {k: (-v.T) % self.p for k, v in self.gens.items()}, name=self.name + "*")

    def restrict(self, basis: np.ndarray) -> "AlgebraModule":
        """Action on the invariant subspace spanned by the rows of ``basis``."""
        sub, _ = _block_action(self, row_space(basis, self.p))
        return sub

    def quotient(self, basis: np.ndarray) -> "AlgebraModule":
        _, quo = _block_action(self, row_space(basis, self.p))
        return quo

    def word(self, word: Sequence[str]) -> np.ndarray:
        """Matrix of the product of generators, applied right to left."""
        m = np.eye(self.dim, dtype=np.int64)
        for g in word:
            m = matmul(m, self.gens[g], self.p)
        return m


def _check_same_p(*mods: AlgebraModule) -> int:
    ps = {m.p for m in mods}
    if len(ps) != 1:
        raise ValueError(f"modules over different primes: {sorted(ps)}")
    return ps.pop()


def _block_action(mod: AlgebraModule, sub: np.ndarray):
    p, d = mod.p, mod.dim
    k = len(sub)
    basis = extend_to_basis(sub, p)  # rows
    P = basis.T  # columns are basis vectors
    Pinv = inverse(P, p)
    subs, quos = {}, {}
    for name, g in mod.gens.items():
        conj = matmul(Pinv, matmul(g, P, p), p)
        if k and k < d and np.any(conj[k:, :k]):
            raise ValueError("subspace is not invariant under " + name)
        subs[name] = conj[:k, :k]
        quos[name] = conj[k:, k:]
    s = AlgebraModule(p, subs, name=mod.name + "|sub") if k else None
    q = AlgebraModule(p, quos, name=mod.name + "|quo") if k < d else None
    return s, q


def direct_sum(a: AlgebraModule, b: AlgebraModule) -> AlgebraModule:
    p = _check_same_p(a, b)
    if set(a.names) != set(b.names):
        raise ValueError("generator sets differ")
    gens = {}
    for k in a.names:
        m = np.zeros((a.dim + b.dim,) * 2, dtype=np.int64)
        m[: a.dim, : a.dim] = a[k]
        m[a.dim :, a.dim :] = b[k]
        gens[k] = m
    return AlgebraModule(p, gens, name=f"({a.name}+{b.name})")


def tensor(a: AlgebraModule, b: AlgebraModule) -> AlgebraModule:
    """Tensor product of Lie algebra modules: x acts by x (x) 1 + 1 (x) x."""
    p = _check_same_p(a, b)
    if set(a.names) != set(b.names):
        raise ValueError("generator sets differ")
    ia = np.eye(a.dim, dtype=np.int64)
    ib = np.eye(b.dim, dtype=np.int64)
    gens = {k: (np.kron(a[k], ib) + np.kron(ia, b[k])) % p for k in a.names}
    return AlgebraModule(p, gens, name=f"{a.name}(x){b.name}")


def spin(mod: AlgebraModule, v, gens: Mapping[str, np.ndarray] | None = None) -> np.ndarray:
    """Rows (in RREF) spanning the smallest generator-stable subspace containing v."""
    p = mod.p
    v = as_fp(v, p)
    if v.ndim == 1:
        v = v[None, :]
    if not np.any(v):
        raise ValueError("cannot spin the zero vector")
    mats = list((gens or mod.gens).values())
    basis = row_space(v, p)
    new = basis
    while len(new):
        images = np.vstack([matmul(new, g.T, p) for g in mats])
        stacked = np.vstack([basis, images])
        nb = row_space(stacked, p)
        if len(nb) == len(basis):
            break
        # only the vectors outside the old span need to be pushed again
        new = _new_directions(basis, nb, p)
        basis = nb
    return basis


def _new_directions(old: np.ndarray, new: np.ndarray, p: int) -> np.ndarray:
    if len(old) == 0:
        return new
    _, piv_old = rref(old, p)
    _, piv_new = rref(new, p)
    fresh = [i for i, c in enumerate(piv_new) if c not in set(piv_old)]
    # RREF rows of the larger space at fresh pivots complement the old space
    return new[fresh]


class _Echelon:
    """Incrementally maintained RREF basis."""

    def __init__(self, d: int, p: int):
        self.p = p
        self.rows = np.zeros((0, d), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = as_fp(v, self.p)
        if self.pivots:
            v = (v - v[self.pivots] @ self.rows) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = v * pow(int(v[c]), -1, self.p) % self.p
        if self.pivots:
            self.rows = (self.rows - np.outer(self.rows[:, c], v)) % self.p
        self.rows = np.vstack([self.rows, v])
        self.pivots.append(c)
        return True


# ------------------------------------------------------------------ Meataxe


class _Rng:
    def __init__(self, seed: int):
        self.gen = np.random.default_rng(seed)

    def randint(self, lo, hi):
        return int(self.gen.integers(lo, hi))


def _random_element(mod: AlgebraModule, rng: _Rng, max_len: int = 3) -> np.ndarray:
    p, names = mod.p, mod.names
    out = np.zeros((mod.dim, mod.dim), dtype=np.int64)
    for _ in range(rng.randint(2, 2 + len(names))):
        word = [names[rng.randint(0, len(names))] for _ in range(rng.randint(1, max_len + 1))]
        out = (out + rng.randint(1, p) * mod.word(word)) % p
    return out


def _projective_points(basis: np.ndarray, p: int) -> Iterable[np.ndarray]:
    k = len(basis)
    for lead in range(k):
        for tail in np.ndindex(*([p] * (k - lead - 1))):
            coeffs = np.zeros(k, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            yield coeffs @ basis % p


def find_submodule(mod: AlgebraModule, rng: _Rng, max_tries: int = 200, max_kernel: int = 3):
    """Return a proper nonzero submodule basis, or None once irreducibility is certified.

    Norton's criterion: for a singular algebra element t, the module is irreducible
    iff every nonzero vector of ker t spins to the whole module and one nonzero
    vector of ker t^T spins to the whole dual.
    """
    p, d = mod.p, mod.dim
    if d == 1:
        return None
    eye = np.eye(d, dtype=np.int64)
    for _ in range(max_tries):
        theta = _random_element(mod, rng)
        best = None
        for c in range(p):
            a = (theta - c * eye) % p
            ns = nullspace(a, p)
            if len(ns) and (best is None or len(ns) < len(best[1])):
                best = (a, ns)
        if best is None:
            continue
        a, ns = best
        sub = spin(mod, ns[0])
        if len(sub) < d:
            return sub
        if len(ns) > max_kernel:
            continue
        if len(ns) > 1:
            for v in _projective_points(ns, p):
                sub = spin(mod, v)
                if len(sub) < d:
                    return sub
        dual = mod.transpose()
        w = nullspace(a.T % p, p)[0]
        dsub = spin(dual, w)
        if len(dsub) < d:
            # annihilator of a proper dual submodule is a proper submodule
            return nullspace(dsub, p)
        return None
    raise RuntimeError(f"Meataxe found neither a split nor a certificate in {max_tries} tries")


def is_irreducible(mod: AlgebraModule, seed: int = 0) -> bool:
    return find_submodule(mod, _Rng(seed)) is None


def composition_series_factors(mod: AlgebraModule, seed: int = 0) -> list[AlgebraModule]:
    """Simple subquotients of a composition series, bottom first."""
    rng = _Rng(seed)
    out: list[AlgebraModule] = []
    stack = [mod]
    # depth-first, submodule before quotient
    while stack:
        m = stack.pop()
        sub = find_submodule(m, rng)
        if sub is None:
            out.append(m)
            continue
        s, q = _block_action(m, row_space(sub, m.p))
        stack.append(q)
        stack.append(s)
    return out


def composition_factors(mod: AlgebraModule, seed: int = 0) -> list[tuple[AlgebraModule, int]]:
    """Composition factors up to isomorphism, with multiplicities."""
    groups: list[list] = []
    for f in composition_series_factors(mod, seed):
        for g in groups:
            if are_isomorphic(g[0], f, seed=seed):
                g[1] += 1
                break
        else:
            groups.append([f, 1])
    return [(m, k) for m, k in groups]


# -------------------------------------------------------------- isomorphism


def _intertwiner_by_spinning(m: AlgebraModule, n: AlgebraModule, rng: _Rng, tries: int = 50):
    """Try to decide M ~ N by spinning matched kernel vectors.

    Returns True/False when decided, None when M was not cyclic on the chosen vectors.
    """
    p, d = m.p, m.dim
    eye = np.eye(d, dtype=np.int64)
    names = m.names
    for _ in range(tries):
        rng_state = rng.gen.bit_generator.state
        tm = _random_element(m, rng)
        rng.gen.bit_generator.state = rng_state
        tn = _random_element(n, rng)
        for c in range(p):
            km = nullspace((tm - c * eye) % p, p)
            kn = nullspace((tn - c * eye) % p, p)
            if len(km) != len(kn):
                return False
            if len(km) != 1:
                continue
            # spin, recording the words that produce a basis
            v, w = km[0], kn[0]
            vs, ws = [v], [w]
            ech = _Echelon(d, p)
            ech.add(v)
            i = 0
            while i < len(vs) and ech.rank < d:
                for g in names:
                    nv = matmul(m[g], vs[i][:, None], p)[:, 0]
                    if ech.add(nv):
                        vs.append(nv)
                        ws.append(matmul(n[g], ws[i][:, None], p)[:, 0])
                i += 1
            if ech.rank < d:
                break  # v does not generate M; try another element
            A = np.array(vs).T
            B = np.array(ws).T
            try:
                phi = matmul(B, inverse(A, p), p)
            except np.linalg.LinAlgError:
                return False
            if rank(phi, p) < d:
                return False
            return all(np.array_equal(matmul(phi, m[g], p), matmul(n[g], phi, p)) for g in names)
    return None


def hom_space(m: AlgebraModule, n: AlgebraModule) -> np.ndarray:
    """Basis (rows, flattened dim_N x dim_M matrices) of module maps M -> N."""
    p = _check_same_p(m, n)
    dm, dn = m.dim, n.dim
    blocks = []
    for g in m.names:
        # vec(N X - X M) with row-major flattening of X
        blocks.append((np.kron(n[g], np.eye(dm, dtype=np.int64)) - np.kron(np.eye(dn, dtype=np.int64), m[g].T)) % p)
    return nullspace(np.vstack(blocks), p)


def are_isomorphic(m: AlgebraModule, n: AlgebraModule, seed: int = 0) -> bool:
    _check_same_p(m, n)
    if set(m.names) != set(n.names):
        raise ValueError("modules have different generator sets")
    if m.dim != n.dim:
        return False
    p, d = m.p, m.dim
    for g in m.names:
        if rank(m[g], p) != rank(n[g], p):
            return False
    decided = _intertwiner_by_spinning(m, n, _Rng(seed))
    if decided is not None:
        return decided
    if d > 40:
        raise RuntimeError("isomorphism test undecided for a large non-cyclic module")
    hom = hom_space(m, n)
    k = len(hom)
    if k == 0:
        return False
    if p**k <= 4096:
        for coeffs in np.ndindex(*([p] * k)):
            if any(coeffs):
                x = (np.array(coeffs) @ hom % p).reshape(d, d)
                if rank(x, p) == d:
                    return True
        return False
    rng = _Rng(seed)
    for _ in range(200):
        coeffs = np.array([rng.randint(0, p) for _ in range(k)])
        x = (coeffs @ hom % p).reshape(d, d)
        if rank(x, p) == d:
            return True
    raise RuntimeError("isomorphism test inconclusive")
