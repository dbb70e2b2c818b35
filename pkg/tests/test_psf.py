from fractions import Fraction

import pytest

from psfwb import (
    PsfElement,
    RatMatrix,
    WeightedAutomaton,
    ccra_obstruction_report,
    example24_formula_check,
    extract_generators,
    from_lrs,
    group_membership,
    is_polynomially_ambiguous,
    pa_obstruction_report,
    psf_element_ccra,
    psf_element_wa,
    pump_modulus,
    subsample,
    to_weighted_automaton,
    trim,
)
from psfwb.ambiguity import default_power_exponent
from psfwb.eps import coeff_sums_in_semiring
from psfwb.fixtures import fixture_by_slug
from psfwb.poly import rational_roots
from psfwb.psf import position_sum_coefficients, random_witnesses
from psfwb.scalars import prime_support
from psfwb.wa import evaluate as wa_evaluate

from helpers import random_word


CCRA_SLUGS = (
    "geometric-sum",
    "affine-product",
    "flow-split",
    "bit-position-powers",
    "run-length-product",
    "cubic-counter",
)

PA_WA_SLUGS = ("parity-switch", "word-length", "staged-doubling", "binary-value")


def test_element_examples():
    a = fixture_by_slug("parity-switch").build()
    e = psf_element_wa(a, "", "a", "")
    assert [e.term(n) for n in range(5)] == [1, 2, 9, 8, 81]
    assert e.source == "wa"

    runs = fixture_by_slug("run-length-product").build()
    e = psf_element_ccra(runs, "", "aab", "")
    assert [e.term(n) for n in range(4)] == [1, 2, 4, 8]
    assert e.source == "ccra"
    charpoly = e.sequence.characteristic_polynomial()
    assert rational_roots(charpoly) == {Fraction(2): 1}

    bits = fixture_by_slug("bit-position-powers").build()
    e = psf_element_ccra(bits, "", "1", "")
    assert [e.term(n) for n in range(5)] == [0, 2, 6, 14, 30]
    assert e.sequence.order <= 3


def test_element_term_zero_is_uv_value(rng):
    a = fixture_by_slug("binary-value").build()
    for _ in range(15):
        u = random_word(rng, a.alphabet, 4)
        w = random_word(rng, a.alphabet, 4, min_length=1)
        v = random_word(rng, a.alphabet, 4)
        e = psf_element_wa(a, u, w, v)
        assert e.term(0) == wa_evaluate(a, u + v)
        assert e.term(2) == wa_evaluate(a, u + w * 2 + v)


def test_element_requires_nonempty_period():
    a = fixture_by_slug("word-length").build()
    with pytest.raises(ValueError):
        psf_element_wa(a, "a", "", "a")
    with pytest.raises(ValueError):
        psf_element_ccra(fixture_by_slug("geometric-sum").build(), "", "", "")


def test_element_of_nilpotent_period():
    shift = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[0, 1], [0, 0]])},
        initial=(1, 0), final=(1, 0),
    )
    e = psf_element_wa(shift, "", "aa", "")
    assert [e.term(n) for n in range(4)] == [1, 0, 0, 0]


def test_subsample_examples():
    a = fixture_by_slug("parity-switch").build()
    e = psf_element_wa(a, "", "a", "")
    sub2 = subsample(e, 2)
    assert sub2.terms(3) == [9, 81, 729]

    sub1 = subsample(e, 1)
    assert sub1.terms(5) == [e.term(n + 1) for n in range(5)]

    zero = WeightedAutomaton(
        dim=1, alphabet=("a",),
        transitions={"a": RatMatrix.identity(1)},
        initial=(0,), final=(1,),
    )
    e = psf_element_wa(zero, "", "a", "")
    assert subsample(e, 3).order == 0

    with pytest.raises(ValueError):
        subsample(e, 0)


def test_route_equivalence(rng):
    for slug in ("geometric-sum", "bit-position-powers"):
        machine = fixture_by_slug(slug).build()
        wa = to_weighted_automaton(machine)
        for _ in range(6):
            u = random_word(rng, machine.alphabet, 4)
            w = random_word(rng, machine.alphabet, 4, min_length=1)
            v = random_word(rng, machine.alphabet, 4)
            via_ccra = psf_element_ccra(machine, u, w, v)
            via_wa = psf_element_wa(wa, u, w, v)
            assert via_ccra.sequence.coefficients == via_wa.sequence.coefficients
            assert via_ccra.sequence.initial_terms == via_wa.sequence.initial_terms


def test_register_machines_pass_coefficient_sum_test(rng):
    # end to end: every register-machine fixture, sampled witnesses,
    # subsampling at the structural pump modulus; the extracted form must
    # have well-behaved bases and pass every coefficient-sum check
    for slug in CCRA_SLUGS:
        machine = fixture_by_slug(slug).build()
        gens = extract_generators(machine)
        allowed: set[int] = set()
        for g in gens:
            if g:
                _, supp = prime_support(Fraction(g).denominator)
                allowed |= set(supp)
        m = pump_modulus(machine).structural_value
        witnesses = random_witnesses(rng, machine.alphabet, 4, max_length=5)
        witnesses.append(((), tuple(machine.alphabet[0]), ()))
        for u, w, v in witnesses:
            element = psf_element_ccra(machine, u, w, v)
            q = from_lrs(subsample(element, m))
            for base in q.bases:
                if base == 1:
                    continue
                assert base > 0
                _, supp = prime_support(base.denominator) if base.denominator > 1 else (1, {})
                assert set(supp) <= allowed
            for entry in coeff_sums_in_semiring(q, gens):
                assert entry.ok, (slug, (u, w, v), entry)


def test_ambiguous_automata_roots_stay_in_weight_group(rng):
    for slug in PA_WA_SLUGS:
        a = trim(fixture_by_slug(slug).build())
        assert is_polynomially_ambiguous(a)
        weights = set()
        for sym in a.alphabet:
            m = a.matrix(sym)
            weights |= {m[i, j] for i in range(a.dim) for j in range(a.dim) if m[i, j]}
        exponent = default_power_exponent(a.dim)
        for _ in range(6):
            u = random_word(rng, a.alphabet, 4)
            w = random_word(rng, a.alphabet, 4, min_length=1)
            v = random_word(rng, a.alphabet, 4)
            element = psf_element_wa(a, u, w, v)
            charpoly = element.sequence.characteristic_polynomial()
            for root in rational_roots(charpoly):
                if root == 0:
                    continue
                assert group_membership(root**exponent, weights), (slug, (u, w, v), root)


def test_ccra_obstruction_report_examples():
    geo_wa = to_weighted_automaton(fixture_by_slug("geometric-sum").build())
    report = ccra_obstruction_report(
        geo_wa, [("", "a", "")], m=1, candidate_gens=[0, 1, 3], ks=[0]
    )
    assert not report.obstructed
    assert report.offending_primes == frozenset()
    assert report.witnesses[0].coeff_sums[0].value == 1

    staged = fixture_by_slug("staged-doubling").build()
    report = ccra_obstruction_report(
        staged, [("", "aab", "")], m=1, candidate_gens=[1, 2], ks=[0, 1]
    )
    assert report.obstructed
    assert report.offending_primes == frozenset({3})
    by_k = {entry.k: entry for entry in report.witnesses[0].coeff_sums}
    assert by_k[1].value == Fraction(32, 3)

    zero = WeightedAutomaton(
        dim=1, alphabet=("a",),
        transitions={"a": RatMatrix.identity(1)},
        initial=(0,), final=(1,),
    )
    report = ccra_obstruction_report(zero, [("", "a", "")], m=1, candidate_gens=[1], ks=[0, 1])
    assert not report.obstructed
    assert all(e.value == 0 for e in report.witnesses[0].coeff_sums)


def test_obstruction_modulus_family():
    # the offending prime 3 survives any subsampling modulus it does not
    # divide twice over; exercise m = 1 and m = 2
    staged = fixture_by_slug("staged-doubling").build()
    for m, expected_s1 in ((1, Fraction(32, 3)), (2, Fraction(256, 3))):
        report = ccra_obstruction_report(
            staged, [("", "aab", "")], m=m, candidate_gens=[1, 2], ks=[1]
        )
        assert report.obstructed
        assert report.offending_primes == frozenset({3})
        assert report.witnesses[0].coeff_sums[0].value == expected_s1


def test_pa_obstruction_report_examples():
    runs = fixture_by_slug("run-length-product").build()
    witnesses = [("", "a" * k + "b", "") for k in range(2, 6)]
    report = pa_obstruction_report(runs, witnesses)
    assert report.obstructed
    roots = [entry.roots for entry in report.entries]
    assert roots == [(2,), (3,), (4,), (5,)]
    assert report.joint_support == frozenset({2, 3, 5})
    assert report.support_trace[0] < report.joint_support

    a = fixture_by_slug("parity-switch").build()
    report = pa_obstruction_report(a, [("", "a", ""), ("a", "a", ""), ("", "aa", "")])
    assert not report.obstructed
    assert report.joint_support == frozenset({2, 3})
    assert all(set(e.roots) <= {-3, -2, 2, 3, 9, 4} for e in report.entries)

    zero = WeightedAutomaton(
        dim=1, alphabet=("a",),
        transitions={"a": RatMatrix.identity(1)},
        initial=(0,), final=(1,),
    )
    report = pa_obstruction_report(zero, [("", "a", "")])
    assert not report.obstructed
    assert report.joint_support == frozenset()


def test_pa_obstruction_skips_irrational_witnesses():
    fib = WeightedAutomaton(
        dim=2, alphabet=("a",),
        transitions={"a": RatMatrix.from_rows([[0, 1], [1, 1]])},
        initial=(1, 0), final=(0, 1),
    )
    report = pa_obstruction_report(fib, [("", "a", "")])
    assert report.entries[0].skipped
    assert report.entries[0].roots == ()
    assert "irrational" in report.entries[0].note
    assert not report.obstructed


def test_position_sum_examples():
    assert position_sum_coefficients("", "01", "") == (1, 1, 0)
    assert example24_formula_check("", "01", "")

    assert position_sum_coefficients("1", "0", "") == (0, 0, 1)
    assert example24_formula_check("1", "0", "")

    assert position_sum_coefficients("0", "00", "0") == (0, 0, 0)
    assert example24_formula_check("0", "00", "0")

    quadratic, _, _ = position_sum_coefficients("", "1", "")
    assert quadratic == Fraction(1, 2)

    with pytest.raises(ValueError):
        example24_formula_check("", "ab", "")


def test_position_sum_random(rng):
    for _ in range(20):
        u = random_word(rng, ("0", "1"), 6)
        w = random_word(rng, ("0", "1"), 6, min_length=1)
        v = random_word(rng, ("0", "1"), 6)
        assert example24_formula_check(u, w, v)
        for coeff in position_sum_coefficients(u, w, v):
            assert coeff.denominator in (1, 2)


def test_random_witnesses_shape(rng):
    triples = random_witnesses(rng, ("a", "b"), 25, max_length=5)
    assert len(triples) == 25
    for u, w, v in triples:
        assert len(w) >= 1
        for word in (u, w, v):
            assert len(word) <= 5
            assert set(word) <= {"a", "b"}
