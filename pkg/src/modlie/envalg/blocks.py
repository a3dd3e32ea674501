"""Blocks of U_chi(sl_n): simples, translation functors and dimension polynomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .. import springer
from ..eulerbwb import PolyQ
from ..fplinalg import (
    AlgebraModule,
    are_isomorphic,
    composition_factors,
    matmul,
    matpow,
    nullspace,
    eigenvalues,
    tensor,
)
from ..rootdata import Weight, alcove_closure, is_regular, restricted_linkage_class
from .center import central_operators, central_scalars
from .lie import PChar, RestrictedLie
from .verma import baby_verma
from .weylmod import weyl_module, weyl_module_weights


class CentralSeparationError(RuntimeError):
    """Gelfand invariants do not tell apart two linkage classes that occur."""


class FitError(ArithmeticError):
    pass


# ------------------------------------------------------------ utilities


def _power_minus(op: np.ndarray, c: int, e: int, p: int) -> np.ndarray:
    return matpow((op - c * np.eye(op.shape[0], dtype=np.int64)) % p, e, p)


def joint_generalized_eigenspace(ops: list[np.ndarray], values, p: int) -> np.ndarray:
    """Rows spanning the intersection of ker (op_k - c_k)^d over k."""
    d = ops[0].shape[0]
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    stacked = np.vstack([_power_minus(op, c, d, p) for op, c in zip(ops, values)])
    return nullspace(stacked, p)


def _submodule(mod: AlgebraModule, rows: np.ndarray) -> AlgebraModule:
    if len(rows) == mod.dim:
        return mod
    if len(rows) == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return AlgebraModule(mod.p, {k: empty for k in mod.names})
    return mod.restrict(rows)


def frobenius_center_defect(lie: RestrictedLie, mod: AlgebraModule, chi: PChar) -> list[str]:
    """Basis elements x where x^p - x^[p] is not the scalar chi(x)^p."""
    p = lie.p
    bad = []
    eye = np.eye(mod.dim, dtype=np.int64)
    for k, name in enumerate(lie.names):
        lhs = matpow(mod[name], p, p)
        for j, c in lie.p_power(k).items():
            lhs = (lhs - c * mod[lie.names[j]]) % p
        if not np.array_equal(lhs, pow(chi.value(lie, k), p, p) * eye % p):
            bad.append(name)
    return bad


def highest_weights(lie: RestrictedLie, mod: AlgebraModule) -> list[Weight]:
    """Weights (mod p) carried by nonzero n^+-invariant h-eigenvectors."""
    p = lie.p
    es = [mod[b.name] for b in lie.basis if b.kind == "e"]
    inv = nullspace(np.vstack(es), p)  # rows
    if len(inv) == 0:
        return []
    hs = [mod[f"h{i}"] for i in range(1, lie.n)]
    cols = inv.T
    h_on = [matmul(h, cols, p) for h in hs]
    out = []
    for w in itertools.product(range(p), repeat=lie.n - 1):
        stacked = np.vstack([(hc - c * cols) % p for hc, c in zip(h_on, w)])
        if len(nullspace(stacked, p)):
            out.append(tuple(w))
    return out


def kw_codim(chi: PChar) -> int:
    return springer.flag_dim(chi.n) - chi.springer_dim


def kw_check(mod: AlgebraModule, chi: PChar) -> bool:
    """p^(dim B - dim B_chi) divides dim M."""
    return mod.dim % chi.p ** kw_codim(chi) == 0


# ------------------------------------------------------------ translation


@dataclass(frozen=True)
class SeparationReport:
    target: tuple[int, ...]
    classes: dict[tuple[Weight, ...], tuple[int, ...]]


def check_separation(lie: RestrictedLie, lam, weights) -> SeparationReport:
    """Central scalar tuples of the linkage classes of lam + nu must be pairwise distinct."""
    rd, p = lie.rd, lie.p
    classes: dict[tuple[Weight, ...], tuple[int, ...]] = {}
    for nu in sorted(set(weights)):
        shifted = tuple(a + b for a, b in zip(lam, nu))
        cls = tuple(restricted_linkage_class(rd, shifted, p))
        if cls not in classes:
            classes[cls] = central_scalars(lie, shifted)
    seen: dict[tuple[int, ...], tuple[Weight, ...]] = {}
    for cls, t in classes.items():
        if t in seen:
            raise CentralSeparationError(
                f"linkage classes {seen[t]} and {cls} share central scalars {t} at p={p}"
            )
        seen[t] = cls
    return SeparationReport(central_scalars(lie, lam), classes)


def translate(lie: RestrictedLie, mod: AlgebraModule, lam, mu, check: bool = True) -> AlgebraModule:
    """T_lam^mu(M): the generalized central-character component of V_{mu-lam} (x) M at mu."""
    rd, p = lie.rd, lie.p
    lam, mu = rd.validate_weight(lam), rd.validate_weight(mu)
    nu = tuple(a - b for a, b in zip(mu, lam))
    V = weyl_module(lie, nu)
    check_separation(lie, lam, weyl_module_weights(lie, nu))
    source = central_scalars(lie, lam)
    if check:
        ops_m = central_operators(lie, mod)
        if len(joint_generalized_eigenspace(ops_m, source, p)) != mod.dim:
            raise ValueError(f"module does not have generalized central character {lam}")
    T = tensor(V, mod)
    ops = central_operators(lie, T, check=check)
    rows = joint_generalized_eigenspace(ops, central_scalars(lie, mu), p)
    out = _submodule(T, rows)
    out.name = f"T_{lam}^{mu}({mod.name})"
    return out


@dataclass(frozen=True)
class KostantReport:
    operator_spectra: tuple[tuple[int, ...], ...]
    predicted: tuple[tuple[int, ...], ...]
    contained: bool
    annihilated: bool

    @property
    def ok(self) -> bool:
        return self.contained and self.annihilated


def kostant_check(lie: RestrictedLie, nu, mod: AlgebraModule, lam) -> KostantReport:
    """Spectrum of each C_k on V_nu (x) M lies in {c_k(lam + weight)}, and
    prod over weights (C_k - c_k(lam + weight)) vanishes."""
    p = lie.p
    V = weyl_module(lie, nu)
    weights = weyl_module_weights(lie, nu)
    T = tensor(V, mod)
    ops = central_operators(lie, T)
    per_weight = [central_scalars(lie, tuple(a + b for a, b in zip(lam, w))) for w in weights]
    spectra, predicted = [], []
    contained = annihilated = True
    for k, op in enumerate(ops):
        spectrum = tuple(eigenvalues(op, p))
        pred = tuple(sorted({t[k] for t in per_weight}))
        spectra.append(spectrum)
        predicted.append(pred)
        contained &= set(spectrum) <= set(pred)
        prod = np.eye(T.dim, dtype=np.int64)
        for t in per_weight:
            prod = matmul(prod, (op - t[k] * np.eye(T.dim, dtype=np.int64)) % p, p)
        annihilated &= not np.any(prod)
    return KostantReport(tuple(spectra), tuple(predicted), contained, annihilated)


# ----------------------------------------------------------------- blocks


@dataclass
class SimpleInfo:
    module: AlgebraModule
    highest_weights: tuple[Weight, ...]
    sources: list[Weight] = field(default_factory=list)  # baby Vermas containing it

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class BlockReport:
    n: int
    p: int
    chi: PChar
    lam: Weight
    linkage_class: tuple[Weight, ...]
    simples: list[SimpleInfo]
    springer_prediction: int
    kw_codim: int

    @property
    def count(self) -> int:
        return len(self.simples)

    @property
    def count_matches(self) -> bool:
        return self.count == self.springer_prediction

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.simples]

    @property
    def kw_verdicts(self) -> list[bool]:
        return [kw_check(s.module, self.chi) for s in self.simples]

    @property
    def highest_weight_set(self) -> set[Weight]:
        return {w for s in self.simples for w in s.highest_weights}


def simples_in_block(lie: RestrictedLie, chi: PChar, lam, seed: int = 0) -> BlockReport:
    """All simple U_chi-modules with central character lam, up to isomorphism."""
    rd, p = lie.rd, lie.p
    lam = rd.validate_weight(lam)
    if not is_regular(rd, lam, p):
        raise ValueError(f"{lam} is singular for p={p}; only regular blocks are supported")
    linkage = tuple(restricted_linkage_class(rd, lam, p))
    simples: list[SimpleInfo] = []
    for mu in linkage:
        Z = baby_verma(lie, chi, mu)
        for factor, _mult in composition_factors(Z, seed):
            match = next(
                (s for s in simples if s.dim == factor.dim and are_isomorphic(s.module, factor, seed)),
                None,
            )
            if match is None:
                hw = tuple(highest_weights(lie, factor))
                if not hw:
                    raise AssertionError("simple module without an n^+-invariant weight vector")
                if not set(hw) <= set(linkage):
                    raise AssertionError(f"highest weights {hw} escape the linkage class {linkage}")
                match = SimpleInfo(factor, hw)
                simples.append(match)
            if mu not in match.sources:
                match.sources.append(mu)
    simples.sort(key=lambda s: (s.highest_weights, s.dim))
    for s in simples:
        s.module.name = f"L_{chi.label}({';'.join(','.join(map(str, w)) for w in s.highest_weights)})"
    return BlockReport(
        n=lie.n,
        p=p,
        chi=chi,
        lam=lam,
        linkage_class=linkage,
        simples=simples,
        springer_prediction=springer.cohomology_total_dim(chi.partition),
        kw_codim=kw_codim(chi),
    )


# ---------------------------------------------------- dimension polynomials


@dataclass(frozen=True)
class DimensionPolynomial:
    samples: tuple[tuple[Weight, int], ...]
    d: PolyQ
    d0: PolyQ
    degree_bound: int
    R: int
    grid: tuple[Weight, ...]

    @property
    def degree(self) -> int:
        return self.d.degree

    @property
    def within_degree_bound(self) -> bool:
        return self.degree <= self.degree_bound

    @property
    def denominators_ok(self) -> bool:
        """R d^0 has integer coefficients."""
        return self.d0.scale(self.R).has_integer_coefficients()

    @property
    def integral_on_grid(self) -> bool:
        return all(self.d0(g).denominator == 1 for g in self.grid)


def _monomials(rank: int, degree: int) -> list[tuple[int, ...]]:
    return sorted(
        (e for e in itertools.product(range(degree + 1), repeat=rank) if sum(e) <= degree),
        key=lambda e: (sum(e), e),
    )


def fit_polynomial(rank: int, samples, degree: int) -> PolyQ:
    """Exact polynomial of total degree <= degree through all samples."""
    mons = _monomials(rank, degree)
    A = sympy.Matrix([[sympy.prod([sympy.Integer(x) ** e for x, e in zip(pt, mon)]) for mon in mons]
                      for pt, _ in samples])
    b = sympy.Matrix([v for _, v in samples])
    if A.rank() < len(mons):
        raise FitError(f"{len(samples)} samples do not determine a degree-{degree} polynomial")
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise FitError(f"no polynomial of degree {degree} fits the samples") from exc
    if params.shape[0]:
        raise FitError("fit is underdetermined")
    poly = PolyQ.from_terms(rank, {mon: Fraction(int(c.p), int(c.q)) for mon, c in zip(mons, sol)})
    for pt, v in samples:
        if poly(pt) != v:
            raise FitError(f"nonzero residual at {pt}")
    return poly


def _grid(rank: int, size: int = 10) -> tuple[Weight, ...]:
    pts = sorted(itertools.product(range(-5, 6), repeat=rank), key=lambda w: (sum(map(abs, w)), w))
    return tuple(pts[:size])


def dimension_polynomial(lie: RestrictedLie, chi: PChar, lam, mod: AlgebraModule) -> DimensionPolynomial:
    """Fit mu -> dim T_lam^mu(M) over the closed alcove of lam."""
    rd, p = lie.rd, lie.p
    lam = rd.validate_weight(lam)
    samples = tuple((mu, translate(lie, mod, lam, mu).dim) for mu in alcove_closure(rd, lam, p))
    bound = chi.springer_dim
    d = fit_polynomial(rd.rank, samples, bound)
    N = rd.num_positive_roots
    d0 = d.substitute([p * s - r for s, r in zip(d.symbols, rd.rho)]).scale(Fraction(1, p**N))
    return DimensionPolynomial(samples, d, d0, bound, rd.R, _grid(rd.rank))
