"""Linearly recurrent sequences over the rationals.

A sequence is carried in two interchangeable forms: a one-letter weighted
automaton (initial row, square matrix, final column) and a minimal
recurrence a[n+k] = c[k-1] a[n+k-1] + ... + c[0] a[n] with its initial
terms.  Construction from either form derives the other, so both are
always available and kept consistent.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientData
from .matrix import RatMatrix, rank, solve_linear
from .poly import UniPoly
from .wa import WeightedAutomaton


def hankel_rank(prefix) -> int:
    """Rank of the Hankel matrix filled from a finite prefix."""
    prefix = [Fraction(x) for x in prefix]
    length = len(prefix)
    if length == 0:
        return 0
    cols = (length + 1) // 2
    rows = length - cols + 1
    return rank([[prefix[i + j] for j in range(cols)] for i in range(rows)])


def one_letter_terms(a: WeightedAutomaton, n: int) -> list[Fraction]:
    """First n values a(eps), a(x), a(xx), ... of a one-letter automaton."""
    if len(a.alphabet) != 1:
        raise ValueError("expected a one-letter alphabet")
    m = a.matrix(a.alphabet[0])
    vec = a.initial
    out = []
    for _ in range(n):
        out.append(sum((x * f for x, f in zip(vec, a.final)), Fraction(0)))
        vec = tuple(
            sum((vec[i] * m.entries[i][j] for i in range(a.dim)), Fraction(0))
            for j in range(a.dim)
        )
    return out


def _fit_recurrence(prefix, k: int):
    """Coefficients of an order-k recurrence fitting the whole prefix, or None."""
    rows = []
    rhs = []
    for n in range(len(prefix) - k):
        rows.append([prefix[n + i] for i in range(k)])
        rhs.append(prefix[n + k])
    if not rows:
        return None
    try:
        coeffs = solve_linear(rows, rhs)
    except ValueError:
        return None
    return tuple(coeffs)


def minimal_recurrence(prefix, verify_horizon: int = 2) -> tuple[int, tuple[Fraction, ...]]:
    """Smallest-order recurrence consistent with every window of the prefix.

    The first 2k terms determine an order-k recurrence; the prefix must
    additionally be at least verify_horizon terms longer than that, or
    InsufficientData is raised rather than guessing.  The all-zero prefix
    has order 0.
    """
    prefix = [Fraction(x) for x in prefix]
    length = len(prefix)
    if length == 0:
        raise InsufficientData("empty prefix")
    if not any(prefix):
        if length < verify_horizon:
            raise InsufficientData(f"all-zero prefix of length {length} is too short to call")
        return 0, ()
    for k in range(1, length):
        coeffs = _fit_recurrence(prefix, k)
        if coeffs is not None:
            if length < 2 * k + verify_horizon:
                raise InsufficientData(
                    f"order {k} needs a prefix of length >= {2 * k + verify_horizon}, got {length}"
                )
            assert k == hankel_rank(prefix), "minimal order must equal the Hankel rank"
            return k, coeffs
    raise InsufficientData(f"no recurrence of order < {length} fits the prefix")


class Lrs:
    """A linearly recurrent sequence presented by recurrence and automaton."""

    def __init__(self, coefficients, initial_terms, wa_form: WeightedAutomaton | None = None):
        self.coefficients = tuple(Fraction(c) for c in coefficients)
        self.initial_terms = tuple(Fraction(t) for t in initial_terms)
        if len(self.coefficients) != len(self.initial_terms):
            raise ValueError("need exactly one initial term per coefficient")
        self.wa_form = wa_form if wa_form is not None else self._companion_wa()
        if wa_form is not None:
            self._assert_consistent()

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def _companion_wa(self) -> WeightedAutomaton:
        k = self.order
        rows = [[Fraction(0)] * k for _ in range(k)]
        for j in range(k - 1):
            rows[j + 1][j] = Fraction(1)
        for i in range(k):
            rows[i][k - 1] = self.coefficients[i]
        final = [Fraction(0)] * k
        if k:
            final[0] = Fraction(1)
        return WeightedAutomaton(
            dim=k,
            alphabet=("a",),
            transitions={"a": RatMatrix.from_rows(rows) if k else RatMatrix.zeros(0, 0)},
            initial=self.initial_terms,
            final=tuple(final),
        )

    def _assert_consistent(self):
        horizon = 2 * max(self.wa_form.dim, self.order) + 2
        assert self.terms(horizon) == one_letter_terms(self.wa_form, horizon), \
            "recurrence form and automaton form disagree"

    def terms(self, n: int) -> list[Fraction]:
        """The first n terms."""
        k = self.order
        out = list(self.initial_terms[:n])
        while len(out) < n:
            nxt = sum(
                (c * t for c, t in zip(self.coefficients, out[-k:])), Fraction(0)
            ) if k else Fraction(0)
            out.append(nxt)
        return out

    def characteristic_polynomial(self) -> UniPoly:
        """x^k - c[k-1] x^(k-1) - ... - c[0]."""
        coeffs = [-c for c in self.coefficients] + [Fraction(1)]
        return UniPoly(coeffs)

    @classmethod
    def from_recurrence(cls, coefficients, initial_terms) -> "Lrs":
        return cls(coefficients, initial_terms)

    @classmethod
    def from_1letter_wa(cls, a: WeightedAutomaton) -> "Lrs":
        """Recover the minimal recurrence of a one-letter automaton's series.

        The order is at most dim, so the first 2*dim + 2 terms pin the
        recurrence down; it is then re-checked against directly generated
        terms through a horizon of 4*dim.
        """
        fit_window = 2 * a.dim + 2
        horizon = max(4 * a.dim, fit_window)
        prefix = one_letter_terms(a, horizon)
        k, coeffs = minimal_recurrence(prefix[:fit_window], verify_horizon=2)
        assert k <= a.dim, "recurrence order exceeds the automaton dimension"
        seq = cls(coeffs, prefix[:k], wa_form=a)
        assert seq.terms(horizon) == prefix, "recovered recurrence fails past the fitting window"
        return seq
