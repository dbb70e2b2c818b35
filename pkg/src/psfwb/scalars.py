"""Exact scalar helpers: prime fields, factorisation, exact roots.

Rational arithmetic throughout the package uses fractions.Fraction, which
is exact, arbitrary precision, and always stored in lowest terms with a
positive denominator.  This module adds the pieces Fraction does not
provide: prime-field scalars, prime factorisation of rationals, and exact
n-th roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DEFAULT_FACTOR_CEILING = 10**6


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division.

    Raises FactorBoundExceeded if a factor above `ceiling` would be needed,
    except that a remaining prime cofactor is accepted whenever it is the
    only factor left (a single large prime is still a valid factorisation).
    """
    from .errors import FactorBoundExceeded

    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    out: dict[int, int] = {}
    rest = n
    p = 2
    while p * p <= rest:
        if p > ceiling:
            raise FactorBoundExceeded(rest, ceiling)
        while rest % p == 0:
            out[p] = out.get(p, 0) + 1
            rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        # rest is prime (no divisor up to sqrt), regardless of its size
        out[rest] = out.get(rest, 0) + 1
    return out


def divisors(n: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    out = [1]
    for p, e in factorize(n, ceiling).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def prime_support(r: Fraction, ceiling: int = DEFAULT_FACTOR_CEILING) -> tuple[int, dict[int, int]]:
    """Sign and prime exponent map of a nonzero rational.

    Returns (sign, {prime: exponent}) with negative exponents for primes of
    the denominator.  r == sign * prod(p**e).
    """
    if r == 0:
        raise ValueError("prime_support of zero is undefined")
    sign = -1 if r < 0 else 1
    support: dict[int, int] = {}
    for p, e in factorize(abs(r.numerator), ceiling).items():
        support[p] = e
    for p, e in factorize(r.denominator, ceiling).items():
        support[p] = support.get(p, 0) - e
    return sign, {p: e for p, e in support.items() if e}


def iroot(n: int, k: int) -> int | None:
    """Exact k-th root of n >= 0, or None when n is not a perfect k-th power."""
    if n < 0 or k < 1:
        raise ValueError("iroot expects n >= 0 and k >= 1")
    if n in (0, 1) or k == 1:
        return n
    # Newton iteration on integers, then verify.
    x = 1 << (-(-n.bit_length() // k))  # 2**ceil(bits/k) >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def fraction_nth_root(q: Fraction, k: int) -> Fraction | None:
    """Exact rational k-th root of q, or None if there is none.

    For even k a negative q has no real rational root.
    """
    if k < 1:
        raise ValueError("root index must be >= 1")
    if q == 0:
        return Fraction(0)
    sign = -1 if q < 0 else 1
    if sign < 0 and k % 2 == 0:
        return None
    num = iroot(abs(q.numerator), k)
    if num is None:
        return None
    den = iroot(q.denominator, k)
    if den is None:
        return None
    return Fraction(sign * num, den)


@dataclass(frozen=True)
class FpScalar:
    """An element of the prime field F_p."""

    residue: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _check(self, other: "FpScalar") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")

    def __add__(self, other):
        if not isinstance(other, FpScalar):
            return NotImplemented
        self._check(other)
        return FpScalar(self.residue + other.residue, self.modulus)

    def __sub__(self, other):
        if not isinstance(other, FpScalar):
            return NotImplemented
        self._check(other)
        return FpScalar(self.residue - other.residue, self.modulus)

    def __neg__(self):
        return FpScalar(-self.residue, self.modulus)

    def __mul__(self, other):
        if not isinstance(other, FpScalar):
            return NotImplemented
        self._check(other)
        return FpScalar(self.residue * other.residue, self.modulus)

    def __truediv__(self, other):
        if not isinstance(other, FpScalar):
            return NotImplemented
        self._check(other)
        if other.residue == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(self.residue * pow(other.residue, -1, self.modulus), self.modulus)

    def __pow__(self, e: int):
        if e < 0 and self.residue == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return FpScalar(pow(self.residue, e, self.modulus), self.modulus)

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"


def fp(value: int, p: int) -> FpScalar:
    return FpScalar(value, p)


def reduce_mod_p(r: Fraction, p: int) -> FpScalar:
    """Image of a rational with p-free denominator in F_p."""
    if r.denominator % p == 0:
        raise ZeroDivisionError(f"{r} has no image mod {p}")
    return FpScalar(r.numerator * pow(r.denominator, -1, p), p)
