"""Shared generators for the randomized property tests."""

from fractions import Fraction

from psfwb.eps import ExpPoly
from psfwb.matrix import RatMatrix
from psfwb.poly import UniPoly
from psfwb.wa import WeightedAutomaton


def random_wa(rng, dim, alphabet, lo=-2, hi=2):
    transitions = {
        s: RatMatrix.from_rows(
            [[Fraction(rng.randint(lo, hi)) for _ in range(dim)] for _ in range(dim)]
        )
        for s in alphabet
    }
    initial = tuple(Fraction(rng.randint(lo, hi)) for _ in range(dim))
    final = tuple(Fraction(rng.randint(lo, hi)) for _ in range(dim))
    return WeightedAutomaton(
        dim=dim, alphabet=tuple(alphabet),
        transitions=transitions, initial=initial, final=final,
    )


def random_word(rng, alphabet, max_length, min_length=0):
    n = rng.randint(min_length, max_length)
    return tuple(rng.choice(alphabet) for _ in range(n))


def all_words(alphabet, max_length):
    frontier = [()]
    for w in frontier:
        yield w
        if len(w) < max_length:
            frontier.extend(w + (s,) for s in alphabet)


def random_fraction(rng, span=4):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_exppoly(rng, max_bases=3, max_degree=3):
    base_pool = [Fraction(2), Fraction(3), Fraction(-1), Fraction(1, 2), Fraction(5, 3), Fraction(1)]
    rng.shuffle(base_pool)
    terms = {}
    for base in base_pool[: rng.randint(1, max_bases)]:
        coeffs = [random_fraction(rng) for _ in range(rng.randint(1, max_degree + 1))]
        poly = UniPoly(coeffs)
        if not poly.is_zero:
            terms[base] = poly
    if not terms:
        terms[Fraction(2)] = UniPoly([Fraction(1)])
    return ExpPoly(terms, valid_from=0)
