"""Exponential polynomials: finite sums of base**n * poly(n).

Over the rationals these are exactly the sequences of linear recurrences
whose characteristic roots are rational; extraction from a recurrence
solves an exact linear system in the binomial basis, whose matrix is
invertible because an exponential polynomial vanishing on enough
consecutive points vanishes everywhere.

The characteristic-p half of the module mirrors the same notions over a
prime field, where n ranges over residues and bases over units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import IrrationalRoots
from .lrs import Lrs
from .matrix import solve_linear
from .poly import UniPoly, rational_roots
from .scalars import FpScalar


def binomial_basis_poly(j: int) -> UniPoly:
    """C(n + j - 1, j - 1) as a polynomial in n, degree j - 1 (j >= 1)."""
    if j < 1:
        raise ValueError("binomial basis index starts at 1")
    poly = UniPoly([Fraction(1)])
    for t in range(1, j):
        poly = poly * UniPoly([Fraction(t), Fraction(1)])
    return poly.scale(Fraction(1, factorial(j - 1)))


class ExpPoly:
    """A rational exponential polynomial sum(base**n * q_base(n))."""

    __slots__ = ("terms", "valid_from")

    def __init__(self, terms, valid_from: int = 0):
        cleaned = {}
        for base, poly in terms.items():
            base = Fraction(base)
            if base == 0:
                raise ValueError("base 0 is not allowed")
            if not isinstance(poly, UniPoly):
                poly = UniPoly([Fraction(c) for c in poly])
            if not poly.is_zero:
                cleaned[base] = poly
        self.terms = cleaned
        self.valid_from = valid_from

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls({})

    @property
    def bases(self) -> list[Fraction]:
        return sorted(self.terms)

    @property
    def degree(self) -> int:
        """Largest polynomial degree across bases (-1 when zero)."""
        return max((p.degree for p in self.terms.values()), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def eval_at(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("defined on nonnegative indices")
        total = Fraction(0)
        for base, poly in self.terms.items():
            total += base**n * poly(Fraction(n))
        return total

    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        merged = dict(self.terms)
        for base, poly in other.terms.items():
            merged[base] = merged.get(base, UniPoly([])) + poly
        return ExpPoly(merged, max(self.valid_from, other.valid_from))

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out: dict[Fraction, UniPoly] = {}
        for b1, p1 in self.terms.items():
            for b2, p2 in other.terms.items():
                base = b1 * b2
                out[base] = out.get(base, UniPoly([])) + p1 * p2
        return ExpPoly(out, max(self.valid_from, other.valid_from))

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        parts = [f"{base}^n * ({poly!r})" for base, poly in sorted(self.terms.items())]
        return "ExpPoly(" + " + ".join(parts) + ")"


def coeff_sum(q: ExpPoly, k: int) -> Fraction:
    """S_k: the sum over all bases of the coefficient of n**k."""
    if k < 0:
        raise ValueError("coefficient index must be >= 0")
    total = Fraction(0)
    for poly in q.terms.values():
        c = poly.coefficient(k)
        if c is not None:
            total += c
    return total


def from_lrs(sequence: Lrs, spot_check: int = 20) -> ExpPoly:
    """Exact exponential-polynomial form of a recurrent sequence.

    Requires every characteristic root to be rational; otherwise raises
    IrrationalRoots carrying the characteristic polynomial.  Zero roots only
    shift finitely many initial terms, so the result is valid from the
    recurrence order onward (stored in valid_from).
    """
    k = sequence.order
    if k == 0:
        return ExpPoly({}, valid_from=0)
    charpoly = sequence.characteristic_polynomial()
    roots = rational_roots(charpoly)
    if sum(roots.values()) != k:
        raise IrrationalRoots(charpoly)
    nonzero = sorted((lam, mult) for lam, mult in roots.items() if lam != 0)
    unknowns = sum(mult for _, mult in nonzero)
    start = k
    if unknowns == 0:
        # nilpotent recurrence: every term from position k on is zero
        return ExpPoly({}, valid_from=start)
    values = sequence.terms(start + unknowns + spot_check)
    columns = [(lam, j) for lam, mult in nonzero for j in range(1, mult + 1)]
    rows = []
    for n in range(start, start + unknowns):
        rows.append([comb(n + j - 1, j - 1) * lam**n for (lam, j) in columns])
    alphas = solve_linear(rows, values[start:start + unknowns])
    terms: dict[Fraction, UniPoly] = {}
    for alpha, (lam, j) in zip(alphas, columns):
        contribution = binomial_basis_poly(j).scale(alpha)
        terms[lam] = terms.get(lam, UniPoly([])) + contribution
    result = ExpPoly(terms, valid_from=start)
    for n in range(start, len(values)):
        assert result.eval_at(n) == values[n], "extracted form must reproduce the sequence"
    return result


# ---------------------------------------------------------------------------
# generable sequences: closure recipes


@dataclass(frozen=True)
class ConstantSeq:
    value: Fraction


@dataclass(frozen=True)
class LinearSeq:
    """The sequence n itself."""


@dataclass(frozen=True)
class ExponentialSeq:
    base: Fraction


@dataclass(frozen=True)
class GeometricSumSeq:
    """(base**n - 1) / (base - 1), the partial sums of powers."""

    base: Fraction


@dataclass(frozen=True)
class SumSeq:
    children: tuple


@dataclass(frozen=True)
class ProductSeq:
    children: tuple


def realize(recipe) -> ExpPoly:
    """Build the exponential polynomial a recipe denotes."""
    if isinstance(recipe, ConstantSeq):
        return ExpPoly({Fraction(1): UniPoly([Fraction(recipe.value)])})
    if isinstance(recipe, LinearSeq):
        return ExpPoly({Fraction(1): UniPoly([Fraction(0), Fraction(1)])})
    if isinstance(recipe, ExponentialSeq):
        base = Fraction(recipe.base)
        if base == 0:
            raise ValueError("exponential base must be nonzero")
        return ExpPoly({base: UniPoly([Fraction(1)])})
    if isinstance(recipe, GeometricSumSeq):
        base = Fraction(recipe.base)
        if base == 1:
            raise ValueError("geometric sum of base 1 is the linear sequence; use LinearSeq")
        if base == 0:
            raise ValueError("geometric sum base must be nonzero")
        c = Fraction(1, base - 1)
        return ExpPoly({base: UniPoly([c]), Fraction(1): UniPoly([-c])})
    if isinstance(recipe, SumSeq):
        total = ExpPoly.zero()
        for child in recipe.children:
            total = total + realize(child)
        return total
    if isinstance(recipe, ProductSeq):
        total = ExpPoly({Fraction(1): UniPoly([Fraction(1)])})
        for child in recipe.children:
            total = total * realize(child)
        return total
    raise TypeError(f"not a recipe: {recipe!r}")


# ---------------------------------------------------------------------------
# denominator test against a finitely generated semiring


@dataclass(frozen=True)
class CoeffSumEntry:
    k: int
    value: Fraction
    ok: bool
    offending_primes: tuple[int, ...]


def coeff_sums_in_semiring(q: ExpPoly, generators, ks=None) -> list[CoeffSumEntry]:
    """Check each S_k against the denominators a generated semiring allows.

    Any element produced from the generators by adding and multiplying has a
    denominator whose primes divide some generator's denominator.  A prime
    in the denominator of S_k outside that set certifies S_k is not in the
    semiring; this is a necessary condition only.
    """
    from .scalars import factorize

    allowed: set[int] = set()
    for g in generators:
        g = Fraction(g)
        allowed.update(factorize(g.denominator))
    if ks is None:
        ks = range(q.degree + 1) if not q.is_zero else range(1)
    out = []
    for k in ks:
        s = coeff_sum(q, k)
        bad = tuple(sorted(p for p in factorize(s.denominator) if p not in allowed)) if s else ()
        out.append(CoeffSumEntry(k=k, value=s, ok=not bad, offending_primes=bad))
    return out


# ---------------------------------------------------------------------------
# characteristic p


class FpExpPoly:
    """sum(base**n * q_base(n mod p)) over F_p, bases in the unit group."""

    __slots__ = ("modulus", "terms")

    def __init__(self, modulus: int, terms):
        self.modulus = modulus
        cleaned: dict[int, UniPoly] = {}
        for base, poly in terms.items():
            base = int(base) % modulus
            if base == 0:
                raise ValueError("base 0 is not a unit")
            if not isinstance(poly, UniPoly):
                poly = UniPoly([FpScalar(int(c), modulus) for c in poly])
            if any(not isinstance(c, FpScalar) or c.modulus != modulus for c in poly.coeffs):
                raise ValueError("coefficients must live in the same prime field")
            if not poly.is_zero:
                cleaned[base] = cleaned.get(base, UniPoly([])) + poly
        self.terms = {b: p for b, p in cleaned.items() if not p.is_zero}

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.terms.values()), default=-1)

    def eval_at(self, n: int) -> FpScalar:
        p = self.modulus
        total = FpScalar(0, p)
        for base, poly in self.terms.items():
            total = total + FpScalar(pow(base, n, p), p) * poly(FpScalar(n, p))
        return total

    def __eq__(self, other):
        if isinstance(other, FpExpPoly):
            return self.modulus == other.modulus and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        parts = [f"{base}^n * ({poly!r})" for base, poly in sorted(self.terms.items())]
        return f"FpExpPoly(mod {self.modulus}: " + (" + ".join(parts) or "0") + ")"


def fp_coeff_sum(q: FpExpPoly, k: int) -> FpScalar:
    total = FpScalar(0, q.modulus)
    for poly in q.terms.values():
        c = poly.coefficient(k)
        if c is not None:
            total = total + c
    return total


def minimal_degree_reduce(q: FpExpPoly) -> FpExpPoly:
    """Reduce every coefficient polynomial modulo x**p - x.

    Over F_p the argument of the polynomial only takes the p residue values,
    on which x**p equals x, so the reduction never changes the sequence and
    brings every degree below p.
    """
    p = q.modulus
    xp_minus_x = UniPoly(
        [FpScalar(0, p), FpScalar(-1, p)] + [FpScalar(0, p)] * (p - 2) + [FpScalar(1, p)]
    )
    reduced = {}
    for base, poly in q.terms.items():
        _, rem = poly.divrem(xp_minus_x)
        if not rem.is_zero:
            reduced[base] = rem
    return FpExpPoly(p, reduced)


def charp_sum_invariants(q: FpExpPoly, q2: FpExpPoly) -> bool:
    """Necessary conditions for two forms to induce the same F_p sequence:
    equal S_0, and for each r in 1..p-1 equal sums of S_k over k congruent
    to r modulo p-1 (k >= 1)."""
    if q.modulus != q2.modulus:
        raise ValueError("moduli differ")
    p = q.modulus
    if fp_coeff_sum(q, 0) != fp_coeff_sum(q2, 0):
        return False
    top = max(q.degree, q2.degree)
    for r in range(1, p):
        s1 = FpScalar(0, p)
        s2 = FpScalar(0, p)
        k = r
        while k <= top:
            s1 = s1 + fp_coeff_sum(q, k)
            s2 = s2 + fp_coeff_sum(q2, k)
            k += p - 1
        if s1 != s2:
            return False
    return True


def is_pointwise_representable_mod_p(prefix) -> bool:
    """Can the prefix values be a function of n mod p alone?

    The prefix must be FpScalar values of a common modulus p and at least
    2p long so every residue class is observed twice.
    """
    prefix = list(prefix)
    if not prefix:
        raise ValueError("empty prefix")
    p = prefix[0].modulus
    if any(x.modulus != p for x in prefix):
        raise ValueError("mixed moduli")
    if len(prefix) < 2 * p:
        raise ValueError(f"need at least {2 * p} terms to judge periodicity mod {p}")
    for i, x in enumerate(prefix):
        if x != prefix[i % p]:
            return False
    return True
