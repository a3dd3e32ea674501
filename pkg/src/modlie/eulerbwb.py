"""Euler characteristics of line bundles on full flag varieties (characteristic zero).

chi(O_lam) is the Weyl dimension polynomial evaluated at lam; Borel-Weil-Bott
places the whole cohomology in one degree.  Classes in K(B) are formal sums
of line bundles and their Euler characteristics are polynomials in a twist mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import sympy

from .rootdata import RootDatum, Weight, dominant_conjugate, length, root_datum


# ------------------------------------------------------------------ PolyQ


def _symbols(rank: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"mu1:{rank + 1}")


@dataclass(frozen=True, eq=False)
class PolyQ:
    """Exact polynomial with rational coefficients in weight coordinates mu_1..mu_r."""

    rank: int
    poly: sympy.Poly

    @classmethod
    def from_expr(cls, rank: int, expr) -> "PolyQ":
        return cls(rank, sympy.Poly(expr, *_symbols(rank), domain=sympy.QQ))

    @classmethod
    def from_terms(cls, rank: int, terms: Mapping[tuple[int, ...], Fraction]) -> "PolyQ":
        syms = _symbols(rank)
        expr = sum(
            (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(s**e for s, e in zip(syms, mon)))
             for mon, c in terms.items()),
            sympy.Integer(0),
        )
        return cls.from_expr(rank, expr)

    @property
    def symbols(self) -> tuple[sympy.Symbol, ...]:
        return _symbols(self.rank)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return -1 if self.poly.is_zero else self.poly.total_degree()

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for mon, c in self.poly.terms():
            c = sympy.Rational(c)
            out[tuple(int(e) for e in mon)] = Fraction(int(c.p), int(c.q))
        return out

    def __call__(self, weight) -> Fraction:
        weight = tuple(weight)
        if len(weight) != self.rank:
            raise ValueError("evaluation point has the wrong length")
        vals = [sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in weight]
        v = sympy.Rational(self.poly.eval(dict(zip(self.symbols, vals))))
        return Fraction(int(v.p), int(v.q))

    def __add__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ(self.rank, self.poly + other.poly)

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ(self.rank, self.poly - other.poly)

    def scale(self, c) -> "PolyQ":
        c = Fraction(c)
        return PolyQ(self.rank, self.poly * sympy.Rational(c.numerator, c.denominator))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQ) and self.rank == other.rank and (self.poly - other.poly).is_zero

    def __hash__(self):
        return hash((self.rank, tuple(sorted(self.terms().items()))))

    def substitute(self, images) -> "PolyQ":
        """Precompose with mu_i -> images[i] (sympy expressions in the same symbols)."""
        expr = self.poly.as_expr().subs(dict(zip(self.symbols, images)), simultaneous=True)
        return PolyQ.from_expr(self.rank, sympy.expand(expr))

    def affine_precompose(self, scale, shift) -> "PolyQ":
        """mu -> (mu + shift) / scale."""
        s = sympy.Rational(Fraction(scale).numerator, Fraction(scale).denominator)
        return self.substitute([(x + int(t)) / s for x, t in zip(self.symbols, shift)])

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms().values())

    def to_json(self) -> list:
        return [[list(mon), f"{c.numerator}/{c.denominator}"] for mon, c in sorted(self.terms().items())]

    @classmethod
    def from_json(cls, rank: int, data) -> "PolyQ":
        return cls.from_terms(rank, {tuple(mon): Fraction(c) for mon, c in data})

    def __repr__(self) -> str:
        return f"PolyQ({self.poly.as_expr()})"


# ----------------------------------------------------------- Weyl formula


def _rd(rd) -> RootDatum:
    return root_datum(rd) if isinstance(rd, str) else rd


def weyl_euler_char(rd, lam) -> int:
    """prod <lam+rho, a> / prod <rho, a> over positive coroots."""
    rd = _rd(rd)
    lam = rd.validate_weight(lam)
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for a in rd.positive_roots:
        num *= Fraction(rd.pair(shifted, a), rd.pair(rd.rho, a))
    if num.denominator != 1:
        raise ArithmeticError(f"Weyl dimension formula is not integral at {lam}")
    return int(num)


@lru_cache(maxsize=None)
def weyl_poly(rd) -> PolyQ:
    """mu -> chi(O_mu) as a polynomial of degree |positive roots|."""
    rd = _rd(rd)
    syms = _symbols(rd.rank)
    expr = sympy.Integer(1)
    for a in rd.positive_roots:
        expr *= sum((c * (s + 1) for c, s in zip(a, syms)), sympy.Integer(0))
    return PolyQ.from_expr(rd.rank, sympy.expand(expr / rd.R))


# ----------------------------------------------------------------- KClass


class SupportDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class KClass:
    """Formal integer combination of line bundles O_lam, with optional support dimension.

    In a presentation, negative terms stand on the kernel side: the class
    P - N is read as the cokernel of N -> P.
    """

    terms: tuple[tuple[Weight, int], ...]
    support_dim: int | None = None

    @classmethod
    def make(cls, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]], support_dim=None) -> "KClass":
        acc: dict[Weight, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for lam, c in items:
            lam = tuple(int(x) for x in lam)
            acc[lam] = acc.get(lam, 0) + int(c)
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v)), support_dim)

    @classmethod
    def line(cls, lam, mult: int = 1) -> "KClass":
        return cls.make({tuple(lam): mult})

    @classmethod
    def unit(cls, rank: int) -> "KClass":
        return cls.line((0,) * rank)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass.make(list(self.terms) + list(other.terms))

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass.make(list(self.terms) + [(l, -c) for l, c in other.terms])

    def __rmul__(self, k: int) -> "KClass":
        return KClass.make([(l, k * c) for l, c in self.terms], self.support_dim)

    def twist(self, mu) -> "KClass":
        """Tensor with O_mu."""
        mu = tuple(mu)
        return KClass.make([(tuple(a + b for a, b in zip(l, mu)), c) for l, c in self.terms], self.support_dim)


def euler_poly(rd, c: KClass) -> PolyQ:
    """mu -> chi(F (x) O_mu) for the class of F."""
    rd = _rd(rd)
    base = weyl_poly(rd)
    syms = _symbols(rd.rank)
    total = PolyQ.from_expr(rd.rank, 0)
    for lam, k in c.terms:
        lam = rd.validate_weight(lam)
        total = total + base.substitute([s + x for s, x in zip(syms, lam)]).scale(k)
    if total.degree > rd.num_positive_roots:
        raise ArithmeticError("Euler polynomial exceeds the dimension of the flag variety")
    if c.support_dim is not None and total.degree > c.support_dim:
        raise SupportDimensionError(
            f"degree {total.degree} exceeds the declared support dimension {c.support_dim}"
        )
    return total


def euler_char(rd, c: KClass) -> int:
    return sum(k * weyl_euler_char(rd, lam) for lam, k in c.terms)


# -------------------------------------------------------------------- BWB


@dataclass(frozen=True)
class Vanishing:
    """All cohomology of the line bundle vanishes."""

    weight: Weight


@dataclass(frozen=True)
class BWB:
    weight: Weight
    degree: int
    dominant: Weight  # w . lam
    dim: int


def bwb(rd, lam) -> Vanishing | BWB:
    """Borel-Weil-Bott for O_lam on G/B in characteristic zero."""
    rd = _rd(rd)
    lam = rd.validate_weight(lam)
    shifted = tuple(x + 1 for x in lam)
    if any(rd.pair(shifted, a) == 0 for a in rd.positive_roots):
        return Vanishing(lam)
    dom, w = dominant_conjugate(rd, shifted)
    wlam = tuple(x - 1 for x in dom)
    return BWB(lam, length(rd, w), wlam, weyl_euler_char(rd, wlam))


def line_cohomology(rd, lam) -> dict[int, int]:
    r = bwb(rd, lam)
    return {} if isinstance(r, Vanishing) else {r.degree: r.dim}


# ------------------------------------------------------- exact sequences


@dataclass(frozen=True)
class SequenceCohomology:
    """Per-degree dimensions, or None when the long exact sequences do not decide them."""

    degrees: dict[int, int] | None
    euler: int

    @property
    def determined(self) -> bool:
        return self.degrees is not None


def _graded_pieces(rd, c: KClass) -> list[dict[int, int]]:
    # P - N read as cone(N -> P): N contributes shifted down by one degree
    out = []
    for lam, k in c.terms:
        coh = line_cohomology(rd, lam)
        if k > 0:
            out.append({d: k * v for d, v in coh.items()})
        else:
            out.append({d - 1: -k * v for d, v in coh.items()})
    return [g for g in out if g]


def _combine(pieces: list[dict[int, int]]) -> dict[int, int] | None:
    # a differential can only connect two different pieces in adjacent degrees
    for a, ga in enumerate(pieces):
        for b, gb in enumerate(pieces):
            if a != b and any(d + 1 in gb for d in ga):
                return None
    out: dict[int, int] = {}
    for g in pieces:
        for d, v in g.items():
            out[d] = out.get(d, 0) + v
    return out


def cohomology_from_sequence(rd, pieces: list[KClass]) -> SequenceCohomology:
    """Cohomology of a sheaf filtered with the given graded pieces.

    Each piece is itself a presentation by line bundles.  The answer is exact
    when no two contributions sit in adjacent degrees; otherwise only the
    Euler characteristic is returned.
    """
    rd = _rd(rd)
    euler = sum(euler_char(rd, c) for c in pieces)
    graded = []
    for c in pieces:
        inner = _combine(_graded_pieces(rd, c))
        if inner is None:
            return SequenceCohomology(None, euler)
        if inner:
            graded.append(inner)
    total = _combine(graded)
    if total is not None:
        total = {d: v for d, v in sorted(total.items()) if v}
        if sum((-1) ** d * v for d, v in total.items()) != euler:
            raise ArithmeticError("cohomology does not reproduce the Euler characteristic")
    return SequenceCohomology(total, euler)


# ---------------------------------------------------- identities and checks


def frobenius_identity_check(rd, nu, p: int) -> bool:
    """chi(O_{p nu + mu}) == p^N chi(O_{nu + (mu + (1-p) rho)/p}) as polynomials in mu."""
    rd = _rd(rd)
    nu = rd.validate_weight(nu)
    lhs = euler_poly(rd, KClass.line(tuple(p * x for x in nu)))
    base = euler_poly(rd, KClass.line(nu))
    shift = tuple((1 - p) * r for r in rd.rho)
    rhs = base.affine_precompose(p, shift).scale(p ** rd.num_positive_roots)
    if lhs != rhs:
        return False
    # at mu = p lam - rho the right side is p^N chi(O_{nu + lam - rho})
    for lam in [(0,) * rd.rank, rd.rho, tuple(2 * x for x in rd.rho)]:
        mu = tuple(p * a - r for a, r in zip(lam, rd.rho))
        shifted = tuple(a + b - r for a, b, r in zip(nu, lam, rd.rho))
        if lhs(mu) != p ** rd.num_positive_roots * weyl_euler_char(rd, shifted):
            return False
    return True


def serre_check(rd, lam) -> bool:
    """chi(O_lam) == (-1)^N chi(O_{-lam - 2 rho})."""
    rd = _rd(rd)
    lam = rd.validate_weight(lam)
    dual = tuple(-x - 2 for x in lam)
    return weyl_euler_char(rd, lam) == (-1) ** rd.num_positive_roots * weyl_euler_char(rd, dual)
