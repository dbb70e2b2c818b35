"""Dense univariate polynomials over an exact field.

Coefficients are either fractions.Fraction or scalars.FpScalar; the two
kinds must not be mixed inside one polynomial.  The zero polynomial is the
empty coefficient list, so the leading coefficient is nonzero whenever the
polynomial is nonzero.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import PsfwbError
from .scalars import DEFAULT_FACTOR_CEILING, divisors


def _zero_like(x):
    return x - x


def _one_like(x):
    return x / x


class UniPoly:
    """A univariate polynomial, coefficients listed lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int):
        """Coefficient of x**k, or None on the zero polynomial (degree unknown domain)."""
        if k < 0:
            raise ValueError("negative degree")
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.coeffs:
            return _zero_like(self.coeffs[0])
        return None

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly([])
        zero = _zero_like(self.coeffs[0])
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def scale(self, c):
        return UniPoly([c * a for a in self.coeffs])

    def divrem(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Quotient and remainder with deg(rem) < deg(other)."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return UniPoly([]), UniPoly([])
        zero = _zero_like(other.leading)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([]), UniPoly(rem)
        quot = [zero] * (dq + 1)
        inv_lead = _one_like(other.leading) / other.leading
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree] * inv_lead
            quot[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - c * b
        return UniPoly(quot), UniPoly(rem)

    def __call__(self, x):
        if self.is_zero:
            return _zero_like(x)
        acc = _zero_like(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*x^{i}" if i else f"{c}")
        return "UniPoly(" + " + ".join(parts) + ")"


def _clear_denominators(coeffs: tuple[Fraction, ...]) -> list[int]:
    mult = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * mult) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return [c // g for c in ints] if g > 1 else ints


def rational_roots(p: UniPoly, ceiling: int = DEFAULT_FACTOR_CEILING) -> dict[Fraction, int]:
    """All rational roots of a nonzero polynomial over Q, with multiplicities.

    Candidates come from the integer factor pairs of the cleared-denominator
    trailing and leading coefficients, so no rational root is missed;
    multiplicities are confirmed by repeated exact deflation.
    """
    if p.is_zero:
        raise ValueError("rational_roots of the zero polynomial")
    if not all(isinstance(c, Fraction) for c in p.coeffs):
        raise PsfwbError("rational_roots expects a polynomial over Q")
    roots: dict[Fraction, int] = {}
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots[Fraction(0)] = shift
    q = UniPoly(coeffs)
    if q.degree < 1:
        return roots
    ints = _clear_denominators(q.coeffs)
    trailing, leading = abs(ints[0]), abs(ints[-1])
    candidates = set()
    for a in divisors(trailing, ceiling):
        for b in divisors(leading, ceiling):
            candidates.add(Fraction(a, b))
            candidates.add(Fraction(-a, b))
    for r in sorted(candidates):
        mult = 0
        while not q.is_zero and q.degree >= 1 and not q(r):
            q, rem = q.divrem(UniPoly([-r, Fraction(1)]))
            assert rem.is_zero
            mult += 1
        if mult:
            roots[r] = mult
    return roots
