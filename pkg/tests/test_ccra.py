from fractions import Fraction

import pytest

from psfwb import (
    BudgetExceeded,
    Ccra,
    CopylessViolation,
    PolyMap,
    classify_registers,
    compose_word,
    difference_ccra,
    equivalence_ccra,
    extract_generators,
    pump_modulus,
    to_weighted_automaton,
    zeroness_ccra,
)
from psfwb.ccra import compose_word_from, evaluate, run
from psfwb.exprtree import Const, Prod, Sum, Var, is_copyless
from psfwb.fixtures import fixture_by_slug
from psfwb.matrix import row_times_matrix
from psfwb.wa import evaluate as wa_evaluate
from psfwb.wa import matrix_of_word, zeroness

from helpers import all_words, random_word


HALF = Fraction(1, 2)


def zero_ccra() -> Ccra:
    keep = PolyMap(1, (Var(0),))
    return Ccra(
        states=("q",),
        initial_state="q",
        register_count=1,
        alphabet=("a",),
        delta={("q", "a"): ("q", keep)},
        mu=(0,),
        nu={"q": Const(Fraction(0))},
    )


def geometric_sum_variant() -> Ccra:
    # same outputs as the geometric-sum machine, via a power register:
    # y = 3**n after n letters, output (y - 1) / 2
    update = PolyMap(2, (Const(Fraction(0)), Prod((Const(Fraction(3)), Var(1)))))
    nu = Prod((Const(HALF), Sum((Var(1), Const(Fraction(-1))))))
    return Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("a",),
        delta={("q", "a"): ("q", update)},
        mu=(0, 1),
        nu={"q": nu},
    )


def test_evaluate_examples():
    geo = fixture_by_slug("geometric-sum").build()
    assert evaluate(geo, "aaa") == 13
    assert evaluate(geo, "") == 0
    assert [evaluate(geo, "a" * n) for n in range(5)] == [0, 1, 4, 13, 40]

    bits = fixture_by_slug("bit-position-powers").build()
    assert evaluate(bits, "11") == 6
    assert evaluate(bits, "101") == 10

    runs = fixture_by_slug("run-length-product").build()
    assert evaluate(runs, "aab" * 3) == 8
    assert evaluate(runs, "aabaab") == 4

    cubic = fixture_by_slug("cubic-counter").build()
    assert evaluate(cubic, "aa") == 13

    affine = fixture_by_slug("affine-product").build()
    assert evaluate(affine, "a") == 45

    flow = fixture_by_slug("flow-split").build()
    assert evaluate(flow, "aa") == Fraction(47, 4)

    with pytest.raises(KeyError):
        evaluate(geo, "b")


def test_run_trail():
    geo = fixture_by_slug("geometric-sum").build()
    trail = run(geo, "aa")
    assert trail == [("q", (Fraction(0),)), ("q", (Fraction(1),)), ("q", (Fraction(4),))]


def test_constructor_rejects_bad_shapes():
    keep = PolyMap(1, (Var(0),))
    base = dict(
        states=("q",),
        initial_state="q",
        register_count=1,
        alphabet=("a",),
        delta={("q", "a"): ("q", keep)},
        mu=(0,),
        nu={"q": Var(0)},
    )
    Ccra(**base)

    with pytest.raises(ValueError):
        Ccra(**{**base, "states": ("q", "q")})
    with pytest.raises(ValueError):
        Ccra(**{**base, "initial_state": "missing"})
    with pytest.raises(ValueError):
        Ccra(**{**base, "mu": (0, 0)})
    with pytest.raises(ValueError):
        Ccra(**{**base, "delta": {}})
    with pytest.raises(ValueError):
        Ccra(**{**base, "nu": {"q": Var(3)}})


def test_constructor_rejects_copyless_violations():
    # y + 1, y, z reads register 1 in two different components
    bad = PolyMap(3, (Sum((Var(1), Const(Fraction(1)))), Var(1), Var(2)))
    with pytest.raises(CopylessViolation) as exc:
        Ccra(
            states=("q",),
            initial_state="q",
            register_count=3,
            alphabet=("a",),
            delta={("q", "a"): ("q", bad)},
            mu=(0, 0, 0),
            nu={"q": Var(0)},
        )
    assert exc.value.offender == (1,)

    keep = PolyMap(1, (Var(0),))
    with pytest.raises(CopylessViolation):
        Ccra(
            states=("q",),
            initial_state="q",
            register_count=1,
            alphabet=("a",),
            delta={("q", "a"): ("q", keep)},
            mu=(0,),
            nu={"q": Prod((Var(0), Var(0)))},
        )


def test_extract_generators_examples():
    geo = fixture_by_slug("geometric-sum").build()
    assert extract_generators(geo) == {0, 1, 3}

    bits = fixture_by_slug("bit-position-powers").build()
    assert extract_generators(bits) == {0, 1, 2, HALF}

    assert extract_generators(zero_ccra()) == {0}


def test_compose_word_examples():
    geo = fixture_by_slug("geometric-sum").build()
    end, net = compose_word(geo, "aa")["q"]
    assert end == "q"
    for x in (Fraction(0), Fraction(1), Fraction(-5), Fraction(2, 7)):
        assert net.apply([x]) == [9 * x + 4]

    # a single letter composes to that letter's own update
    runs = fixture_by_slug("run-length-product").build()
    for symbol in runs.alphabet:
        composed = compose_word(runs, symbol)
        for q in runs.states:
            target, update = runs.step(q, symbol)
            ctarget, cupdate = composed[q]
            assert ctarget == target
            assert cupdate.apply([3, 5]) == update.apply([3, 5])

    with pytest.raises(ValueError):
        compose_word(geo, "")


def test_compose_word_matches_stepwise(rng):
    runs = fixture_by_slug("run-length-product").build()
    _, net = compose_word(runs, "aab")["q"]
    for _ in range(100):
        vec = [Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))]
        stepwise = list(vec)
        q = "q"
        for symbol in "aab":
            q, update = runs.step(q, symbol)
            stepwise = list(update.apply(stepwise))
        assert list(net.apply(vec)) == stepwise


def test_compose_word_composition_property(rng):
    bits = fixture_by_slug("bit-position-powers").build()
    for _ in range(30):
        u = random_word(rng, bits.alphabet, 4, min_length=1)
        v = random_word(rng, bits.alphabet, 4, min_length=1)
        whole = compose_word(bits, u + v)
        for q in bits.states:
            q1, map_u = compose_word_from(bits, q, u)
            q2, map_v = compose_word_from(bits, q1, v)
            qw, map_w = whole[q]
            assert qw == q2
            assert is_copyless(map_w)
            vec = [Fraction(rng.randint(-4, 4)) for _ in range(bits.register_count)]
            assert map_w.apply(vec) == map_v.apply(map_u.apply(vec))


def test_to_weighted_automaton_examples():
    geo = fixture_by_slug("geometric-sum").build()
    wa = to_weighted_automaton(geo)
    assert wa.dim == 2
    for n in range(11):
        assert wa_evaluate(wa, "a" * n) == evaluate(geo, "a" * n)

    bits = fixture_by_slug("bit-position-powers").build()
    wa = to_weighted_automaton(bits)
    assert wa.dim == 4
    for word in all_words(("0", "1"), 8):
        assert wa_evaluate(wa, word) == evaluate(bits, word)

    ok, _ = zeroness(to_weighted_automaton(zero_ccra()))
    assert ok


def test_translation_monomial_invariant(rng):
    bits = fixture_by_slug("bit-position-powers").build()
    wa = to_weighted_automaton(bits)
    d = bits.register_count
    for _ in range(25):
        word = random_word(rng, bits.alphabet, 6)
        state, values = run(bits, word)[-1]
        forward = row_times_matrix(wa.initial, matrix_of_word(wa, word))
        block = 1 << d
        offset = bits.state_index(state) * block
        for mask in range(block):
            expected = Fraction(1)
            for i in range(d):
                if mask >> i & 1:
                    expected *= values[i]
            assert forward[offset + mask] == expected


def test_translation_budget():
    affine = fixture_by_slug("affine-product").build()
    with pytest.raises(BudgetExceeded) as exc:
        to_weighted_automaton(affine, budget=4)
    assert exc.value.required == 8
    assert exc.value.budget == 4
    with pytest.raises(BudgetExceeded):
        zeroness_ccra(affine, budget=4)


def test_zeroness_ccra_examples():
    ok, witness = zeroness_ccra(zero_ccra())
    assert ok and witness is None

    geo = fixture_by_slug("geometric-sum").build()
    ok, witness = zeroness_ccra(geo)
    assert not ok
    assert witness == ("a",)
    assert evaluate(geo, witness) == 1

    ok, _ = zeroness_ccra(difference_ccra(geo, geo))
    assert ok


def test_zeroness_ccra_matches_exhaustive():
    candidates = [
        zero_ccra(),
        fixture_by_slug("geometric-sum").build(),
        fixture_by_slug("run-length-product").build(),
        fixture_by_slug("bit-position-powers").build(),
    ]
    # a two-state machine that outputs 0 until the control leaves the start
    keep = PolyMap(1, (Var(0),))
    candidates.append(
        Ccra(
            states=("s", "t"),
            initial_state="s",
            register_count=1,
            alphabet=("a",),
            delta={("s", "a"): ("t", keep), ("t", "a"): ("t", keep)},
            mu=(5,),
            nu={"s": Const(Fraction(0)), "t": Var(0)},
        )
    )
    for machine in candidates:
        dim = len(machine.states) * (1 << machine.register_count)
        ok, witness = zeroness_ccra(machine)
        exhaustive = all(
            evaluate(machine, w) == 0 for w in all_words(machine.alphabet, dim - 1)
        )
        assert ok == exhaustive
        if not ok:
            assert evaluate(machine, witness) != 0
            assert len(witness) <= dim - 1


def test_equivalence_ccra_examples():
    geo = fixture_by_slug("geometric-sum").build()
    ok, _ = equivalence_ccra(geo, geo)
    assert ok

    variant = geometric_sum_variant()
    for n in range(8):
        assert evaluate(variant, "a" * n) == evaluate(geo, "a" * n)
    ok, _ = equivalence_ccra(geo, variant)
    assert ok

    bits = fixture_by_slug("bit-position-powers").build()
    skewed = Ccra(
        states=bits.states,
        initial_state=bits.initial_state,
        register_count=bits.register_count,
        alphabet=bits.alphabet,
        delta=bits.delta,
        mu=bits.mu,
        nu={"q": Prod((Var(1), Var(0)))},
    )
    ok, counterexample = equivalence_ccra(bits, skewed)
    assert not ok
    assert counterexample == ("1",)
    assert evaluate(bits, counterexample) == 2
    assert evaluate(skewed, counterexample) == 4

    with pytest.raises(ValueError):
        equivalence_ccra(geo, bits)


def test_difference_ccra_pointwise(rng):
    geo = fixture_by_slug("geometric-sum").build()
    variant = geometric_sum_variant()
    diff = difference_ccra(geo, variant)
    assert diff.register_count == 3
    for n in range(8):
        assert evaluate(diff, "a" * n) == 0
    cubic = fixture_by_slug("cubic-counter").build()
    diff = difference_ccra(geo, cubic)
    for _ in range(20):
        w = random_word(rng, ("a",), 7)
        assert evaluate(diff, w) == evaluate(geo, w) - evaluate(cubic, w)


def test_classify_registers_examples():
    flow = fixture_by_slug("flow-split").build()
    report = classify_registers(flow)
    assert report.constant == (1,)
    assert report.updating == (0, 2)
    assert report.neither == ()
    assert report.flow_edges == ((0, 0), (1, 0), (2, 2))

    geo = fixture_by_slug("geometric-sum").build()
    report = classify_registers(geo)
    assert report.updating == (0,)
    assert report.constant == () and report.neither == ()

    with pytest.raises(ValueError):
        classify_registers(fixture_by_slug("run-length-product").build())


def test_classification_after_composition():
    # x := y + 1 reads only the constant register y, so x already counts
    # as updating; one composition step makes both targets constant
    chain_update = PolyMap(2, (Sum((Var(1), Const(Fraction(1)))), Const(Fraction(5))))
    chain = Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("a",),
        delta={("q", "a"): ("q", chain_update)},
        mu=(0, 0),
        nu={"q": Var(0)},
    )
    report = classify_registers(chain)
    assert report.constant == (1,)
    assert report.updating == (0,)
    assert report.neither == ()
    assert report.flow_edges == ((1, 0),)

    _, squared = compose_word(chain, "aa")["q"]
    composed = Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("a",),
        delta={("q", "a"): ("q", squared)},
        mu=(0, 0),
        nu={"q": Var(0)},
    )
    report = classify_registers(composed)
    assert report.constant == (0, 1)
    assert report.updating == () and report.neither == ()


def test_classify_register_swap_is_neither():
    swap = PolyMap(2, (Var(1), Var(0)))
    machine = Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("a",),
        delta={("q", "a"): ("q", swap)},
        mu=(1, 2),
        nu={"q": Var(0)},
    )
    report = classify_registers(machine)
    assert report.constant == () and report.updating == ()
    assert report.neither == (0, 1)
    assert report.flow_edges == ((0, 1), (1, 0))


def test_pump_modulus_examples():
    import math

    geo = fixture_by_slug("geometric-sum").build()
    pm = pump_modulus(geo)
    assert pm.paper_value == 720
    assert pm.structural_value == 1

    for slug in ("bit-position-powers", "run-length-product"):
        pm = pump_modulus(fixture_by_slug(slug).build())
        assert pm.paper_value == math.factorial(10)
        assert pm.structural_value == 1


def test_pump_modulus_sees_cycles():
    import math

    # control swaps two states and the update swaps two registers, so
    # both cycle structures contribute a factor of 2
    swap = PolyMap(2, (Var(1), Var(0)))
    machine = Ccra(
        states=("A", "B"),
        initial_state="A",
        register_count=2,
        alphabet=("a",),
        delta={("A", "a"): ("B", swap), ("B", "a"): ("A", swap)},
        mu=(1, 2),
        nu={"A": Var(0), "B": Var(1)},
    )
    pm = pump_modulus(machine)
    assert pm.paper_value == math.factorial(10) * 2
    assert pm.structural_value == 4


def test_translation_agreement_on_random_words(rng):
    for slug in ("geometric-sum", "affine-product", "bit-position-powers", "run-length-product"):
        machine = fixture_by_slug(slug).build()
        wa = to_weighted_automaton(machine)
        for _ in range(60):
            w = random_word(rng, machine.alphabet, 12)
            assert wa_evaluate(wa, w) == evaluate(machine, w)
