from fractions import Fraction

import pytest

from psfwb import (
    CycleOfLengthAtLeastTwo,
    Permutation,
    RatMatrix,
    RootOfRational,
    WeightedAutomaton,
    group_membership,
    is_polynomially_ambiguous,
    prime_support_report,
    psf_characteristic_roots,
    to_weighted_automaton,
    triangularize_power,
    trim,
)
from psfwb.ambiguity import cycle_lcm_exponent, default_power_exponent
from psfwb.fixtures import fixture_by_slug
from psfwb.wa import matrix_of_word, underlying_nfa

from helpers import all_words, random_wa


def test_polynomial_ambiguity_examples():
    assert is_polynomially_ambiguous(fixture_by_slug("word-length").build())
    assert is_polynomially_ambiguous(fixture_by_slug("parity-switch").build())
    assert is_polynomially_ambiguous(fixture_by_slug("staged-doubling").build())
    assert not is_polynomially_ambiguous(fixture_by_slug("complete-digraph").build())


def _has_double_loop(a: WeightedAutomaton) -> bool:
    """Brute force: some trim state admits two distinct runs on one word."""
    t = trim(a)
    if t.dim == 0:
        return False
    nfa = underlying_nfa(t)
    counts = {}
    for sym in nfa.alphabet:
        mat = [[0] * t.dim for _ in range(t.dim)]
        for (i, j) in nfa.edges[sym]:
            mat[i][j] = 1
        counts[sym] = mat
    identity = [[1 if i == j else 0 for j in range(t.dim)] for i in range(t.dim)]
    frontier = [identity]
    for _ in range(t.dim * t.dim):
        nxt = []
        for m in frontier:
            for sym in nfa.alphabet:
                prod = [
                    [
                        sum(m[i][k] * counts[sym][k][j] for k in range(t.dim))
                        for j in range(t.dim)
                    ]
                    for i in range(t.dim)
                ]
                if any(prod[i][i] >= 2 for i in range(t.dim)):
                    return True
                nxt.append(prod)
        frontier = nxt
    return False


def test_polynomial_ambiguity_matches_double_run_search(rng):
    seen_both = set()
    for _ in range(50):
        dim = rng.randint(1, 3)
        sigma = ("a", "b")[: rng.randint(1, 2)]
        a = random_wa(rng, dim, sigma, lo=0, hi=1)
        verdict = is_polynomially_ambiguous(a)
        assert verdict == (not _has_double_loop(a))
        seen_both.add(verdict)
    assert seen_both == {True, False}


def test_triangularize_staged_doubling():
    a = fixture_by_slug("staged-doubling").build()
    result = triangularize_power(a, "ab")
    assert result.exponent == 6
    assert result.matrix.is_upper_triangular()
    assert result.diagonal == (64, 64, 1)
    for entry in result.diagonal:
        assert entry.denominator == 1
        n = int(entry)
        assert n > 0 and n & (n - 1) == 0
    assert result.matrix.entries == (
        (Fraction(64), Fraction(384), Fraction(642)),
        (Fraction(0), Fraction(64), Fraction(126)),
        (Fraction(0), Fraction(0), Fraction(1)),
    )


def test_triangularize_is_a_conjugation():
    lower = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[1, 0], [1, 1]])},
        initial=(1, 1), final=(1, 1),
    )
    result = triangularize_power(lower, "a")
    assert result.permutation.images == (1, 0)
    m = matrix_of_word(lower, "a").pow(result.exponent)
    p = result.permutation.matrix()
    pinv = result.permutation.inverse().matrix()
    assert (p * m * pinv).entries == result.matrix.entries
    assert result.diagonal == result.matrix.diagonal()

    for k in (1, 2, 3):
        powered = m.pow(k)
        assert sum(d**k for d in result.diagonal) == sum(
            powered[i, i] for i in range(2)
        )


def test_triangularize_diagonal_input_identity_permutation():
    diag = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[2, 0], [0, 3]])},
        initial=(1, 1), final=(1, 1),
    )
    result = triangularize_power(diag, "a")
    assert result.exponent == 2
    assert result.permutation.images == (0, 1)
    assert result.diagonal == (4, 9)


def test_triangularize_rejects_eda():
    eda = fixture_by_slug("complete-digraph").build()
    with pytest.raises(CycleOfLengthAtLeastTwo) as exc:
        triangularize_power(eda, "a")
    assert sorted(exc.value.states) == [0, 1]


def test_default_power_exponent_guard():
    assert default_power_exponent(3) == 6
    assert default_power_exponent(0) == 1
    with pytest.raises(ValueError):
        default_power_exponent(8)
    with pytest.raises(ValueError):
        triangularize_power(
            fixture_by_slug("staged-doubling").build(), "ab", exponent=0
        )


def test_cycle_lcm_exponent():
    a = fixture_by_slug("staged-doubling").build()
    assert cycle_lcm_exponent(a, "ab") == 1
    b = fixture_by_slug("word-length").build()
    assert cycle_lcm_exponent(b, "a") == 1
    # a permutation matrix swapping two states has one 2-cycle
    swap = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[0, 1], [1, 0]])},
        initial=(1, 0), final=(1, 0),
    )
    assert cycle_lcm_exponent(swap, "a") == 2
    result = triangularize_power(swap, "a", exponent=2)
    assert result.diagonal == (1, 1)


def test_root_normalisation():
    assert RootOfRational.normalized(64, 6) == RootOfRational(Fraction(2), 1)
    assert RootOfRational.normalized(Fraction(8, 27), 3) == RootOfRational(Fraction(2, 3), 1)
    assert RootOfRational.normalized(4, 2) == RootOfRational(Fraction(2), 1)
    assert RootOfRational.normalized(64, 4) == RootOfRational(Fraction(8), 2)
    assert RootOfRational.normalized(2, 2) == RootOfRational(Fraction(2), 2)
    assert RootOfRational.normalized(-8, 3) == RootOfRational(Fraction(-2), 1)
    assert RootOfRational.normalized(1, 12) == RootOfRational(Fraction(1), 1)
    assert RootOfRational(Fraction(2), 1).is_rational()
    assert not RootOfRational(Fraction(2), 2).is_rational()
    with pytest.raises(ValueError):
        RootOfRational.normalized(2, 0)


def test_psf_characteristic_roots_examples():
    machine = fixture_by_slug("run-length-product").build()
    wa = trim(to_weighted_automaton(machine))
    roots = psf_characteristic_roots(wa, "aab")
    assert RootOfRational(Fraction(2), 1) in roots
    assert all(r.is_rational() for r in roots)

    nilpotent = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[0, 1], [0, 0]])},
        initial=(1, 0), final=(0, 1),
    )
    assert psf_characteristic_roots(nilpotent, "a") == []

    b = fixture_by_slug("word-length").build()
    assert psf_characteristic_roots(b, "a") == [RootOfRational(Fraction(1), 1)]


def test_group_membership_examples():
    assert group_membership(8, [2])
    assert not group_membership(3, [2])
    assert group_membership(6, [2, 3])
    # the group contains inverses
    assert group_membership(Fraction(1, 2), [2])
    assert group_membership(Fraction(9, 8), [2, 3])
    # sign bookkeeping
    assert not group_membership(-2, [2])
    assert group_membership(-2, [-2])
    assert group_membership(4, [-2])
    assert not group_membership(2, [-2])
    assert group_membership(1, [])
    assert not group_membership(2, [])
    with pytest.raises(ValueError):
        group_membership(0, [2])
    with pytest.raises(ValueError):
        group_membership(2, [0])


def test_group_membership_closure(rng):
    pool = [Fraction(2), Fraction(3), Fraction(-5), Fraction(7, 2)]
    for _ in range(40):
        gens = rng.sample(pool, rng.randint(1, 3))
        x = Fraction(1)
        for g in gens:
            x *= g ** rng.randint(-3, 3)
        assert group_membership(x, gens)


def test_prime_support_report_examples():
    report = prime_support_report([2, 3, 4, 5, 6, 7])
    assert report.union == (2, 3, 5, 7)
    assert prime_support_report([1]).union == ()
    report = prime_support_report([12, Fraction(1, 10)])
    assert report.per_value == ((2, 3), (2, 5))
    assert report.union == (2, 3, 5)


def test_root_support_grows_with_run_length():
    machine = fixture_by_slug("run-length-product").build()
    wa = trim(to_weighted_automaton(machine))
    bases = []
    for k in range(2, 8):
        roots = psf_characteristic_roots(wa, "a" * k + "b")
        bases.extend(r.base for r in roots if r.base != 1)
    support = prime_support_report(bases)
    assert set(support.union) >= {2, 3, 5, 7}
