"""Bundled example machines.

Every fixture is a small machine with a documented headline value, used by
the test suite and materialised on disk by the command line `examples`
command.  Builders construct fresh objects so callers can mutate nothing
shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ccra import Ccra, evaluate as ccra_evaluate
from .eps import FpExpPoly
from .errors import PsfwbError
from .exprtree import Const, PolyMap, Prod, Sum, Var, ZERO
from .lrs import Lrs
from .matrix import RatMatrix
from .wa import WeightedAutomaton, evaluate as wa_evaluate

HALF = Fraction(1, 2)


def _wa(alphabet, rows_by_symbol, initial, final) -> WeightedAutomaton:
    transitions = {a: RatMatrix.from_rows(rows) for a, rows in rows_by_symbol.items()}
    dim = len(initial)
    return WeightedAutomaton(
        dim=dim,
        alphabet=tuple(alphabet),
        transitions=transitions,
        initial=tuple(Fraction(x) for x in initial),
        final=tuple(Fraction(x) for x in final),
    )


# ---------------------------------------------------------------------------
# weighted automata


def parity_switch_wa() -> WeightedAutomaton:
    """Value 3**n on even-length words, 2**n on odd-length ones.

    Two disjoint two-state loops; the loop entered at an accepting state
    contributes on even lengths, the other on odd lengths.
    """
    rows = [
        [0, 2, 0, 0],
        [2, 0, 0, 0],
        [0, 0, 0, 3],
        [0, 0, 3, 0],
    ]
    return _wa("a", {"a": rows}, initial=(1, 0, 1, 0), final=(0, 1, 1, 0))


def word_length_wa() -> WeightedAutomaton:
    """Value |w|: one run per position of the word."""
    return _wa("a", {"a": [[1, 1], [0, 1]]}, initial=(1, 0), final=(0, 1))


def staged_doubling_wa() -> WeightedAutomaton:
    """On (a^k b)^l the value is sum over j <= l of j * k * 2**(j*k).

    Polynomially ambiguous: runs are determined by which b-step drops from
    the middle state to the final one.
    """
    m_a = [[2, 2, 0], [0, 2, 0], [0, 0, 1]]
    m_b = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    return _wa("ab", {"a": m_a, "b": m_b}, initial=(1, 0, 0), final=(0, 0, 1))


def binary_value_wa() -> WeightedAutomaton:
    """Value of the word read as a binary numeral, least significant bit first."""
    m = {b: [[1, 0], [int(b), 2]] for b in "01"}
    return _wa("01", m, initial=(0, 1), final=(1, 0))


def complete_digraph_wa() -> WeightedAutomaton:
    """2**(n-1) runs on a**n: every state reaches every state each step.

    Exponentially ambiguous, the stock counterexample for procedures that
    require polynomial ambiguity.
    """
    ones = [[1, 1], [1, 1]]
    return _wa("a", {"a": ones}, initial=(1, 0), final=(0, 1))


# ---------------------------------------------------------------------------
# copyless register machines


def _unary_ccra(updates: PolyMap, mu, nu_tree) -> Ccra:
    return Ccra(
        states=("q",),
        initial_state="q",
        register_count=len(mu),
        alphabet=("a",),
        delta={("q", "a"): ("q", updates)},
        mu=tuple(Fraction(x) for x in mu),
        nu={"q": nu_tree},
    )


def linear_counter_lrs() -> Lrs:
    """a_n = n as the order-2 recurrence a_{n+2} = 2 a_{n+1} - a_n.

    The register form (x, y) -> (x + y, y) reads y in two components, so
    it lives here as a plain sequence rather than a copyless machine.
    """
    return Lrs((Fraction(-1), Fraction(2)), (Fraction(0), Fraction(1)))


def geometric_sum_ccra() -> Ccra:
    """f(a**n) = 1 + 3 + ... + 3**(n-1) via x -> 3x + 1."""
    update = PolyMap(1, (Sum((Prod((Const(Fraction(3)), Var(0))), Const(Fraction(1)))),))
    return _unary_ccra(update, mu=(0,), nu_tree=Var(0))


def affine_product_ccra() -> Ccra:
    """Output xy + z with x -> 5x + 1, y -> y + 1, z -> 3z from (1, 6, 1)."""
    update = PolyMap(
        3,
        (
            Sum((Prod((Const(Fraction(5)), Var(0))), Const(Fraction(1)))),
            Sum((Var(1), Const(Fraction(1)))),
            Prod((Const(Fraction(3)), Var(2))),
        ),
    )
    nu = Sum((Prod((Var(0), Var(1))), Var(2)))
    return _unary_ccra(update, mu=(1, 6, 1), nu_tree=nu)


def flow_split_ccra() -> Ccra:
    """x -> 2x + y, y -> 4, z -> z/2 + 1, output x + z.

    y is a constant register (reset every step); x and z keep updating.
    """
    update = PolyMap(
        3,
        (
            Sum((Prod((Const(Fraction(2)), Var(0))), Var(1))),
            Const(Fraction(4)),
            Sum((Prod((Const(HALF), Var(2))), Const(Fraction(1)))),
        ),
    )
    nu = Sum((Var(0), Var(2)))
    return _unary_ccra(update, mu=(1, 1, 1), nu_tree=nu)


def bit_position_powers_ccra() -> Ccra:
    """f(w) = sum of 2**i over the 1-based positions i holding a 1.

    x doubles on every letter, y accumulates position weights scaled so
    that the output y * x / 2 lands on the power sum.
    """
    double_x = Prod((Const(Fraction(2)), Var(0)))
    y_shift = Prod((Const(HALF), Var(1)))
    on_one = PolyMap(2, (double_x, Sum((y_shift, Const(Fraction(1))))))
    on_zero = PolyMap(2, (double_x, y_shift))
    nu = Prod((Var(1), Var(0), Const(HALF)))
    return Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("0", "1"),
        delta={("q", "1"): ("q", on_one), ("q", "0"): ("q", on_zero)},
        mu=(Fraction(2), Fraction(0)),
        nu={"q": nu},
    )


def run_length_product_ccra() -> Ccra:
    """f((a**k b)**n) = k**n: y counts the a-run, b folds it into x."""
    on_a = PolyMap(2, (Var(0), Sum((Var(1), Const(Fraction(1))))))
    on_b = PolyMap(2, (Prod((Var(0), Var(1))), ZERO))
    return Ccra(
        states=("q",),
        initial_state="q",
        register_count=2,
        alphabet=("a", "b"),
        delta={("q", "a"): ("q", on_a), ("q", "b"): ("q", on_b)},
        mu=(Fraction(1), Fraction(0)),
        nu={"q": Var(0)},
    )


def cubic_counter_ccra() -> Ccra:
    """f(a**n) = n**3 + n**2 + 1 via three unit counters and output xyz + 1."""
    bump = lambda i: Sum((Var(i), Const(Fraction(1))))
    update = PolyMap(3, (bump(0), bump(1), bump(2)))
    nu = Sum((Prod((Var(0), Var(1), Var(2))), Const(Fraction(1))))
    return _unary_ccra(update, mu=(0, 0, 1), nu_tree=nu)


# ---------------------------------------------------------------------------
# exponential polynomials over a prime field


def cubic_counter_mod3() -> FpExpPoly:
    """n**3 + n**2 + 1 over F_3; reduces to the degree-2 form n**2 + n + 1."""
    return FpExpPoly(3, {1: [1, 0, 1, 1]})


# ---------------------------------------------------------------------------
# the registry


@dataclass(frozen=True)
class Fixture:
    slug: str
    kind: str  # wa | ccra | sequence | exppoly
    description: str
    headline_input: str  # a word, or an index for exppoly fixtures
    headline_value: str  # exact rendering of the expected output
    build: object = field(repr=False)
    register_names: tuple[str, ...] = ()


FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        slug="parity-switch",
        kind="wa",
        description="3**n on even-length words over {a}, 2**n on odd ones",
        headline_input="aa",
        headline_value="9",
        build=parity_switch_wa,
    ),
    Fixture(
        slug="word-length",
        kind="wa",
        description="the length of the word, one accepting run per position",
        headline_input="aaa",
        headline_value="3",
        build=word_length_wa,
    ),
    Fixture(
        slug="geometric-sum",
        kind="ccra",
        description="1 + 3 + ... + 3**(n-1) on a**n through x -> 3x + 1",
        headline_input="aaa",
        headline_value="13",
        build=geometric_sum_ccra,
        register_names=("x",),
    ),
    Fixture(
        slug="affine-product",
        kind="ccra",
        description="output xy + z over three independent affine registers",
        headline_input="a",
        headline_value="45",
        build=affine_product_ccra,
        register_names=("x", "y", "z"),
    ),
    Fixture(
        slug="flow-split",
        kind="ccra",
        description="x -> 2x + y with constant feeder y and halving counter z",
        headline_input="aa",
        headline_value="47/4",
        build=flow_split_ccra,
        register_names=("x", "y", "z"),
    ),
    Fixture(
        slug="staged-doubling",
        kind="wa",
        description="sum of j*k*2**(j*k) on (a**k b)**l, polynomially ambiguous",
        headline_input="aab",
        headline_value="8",
        build=staged_doubling_wa,
    ),
    Fixture(
        slug="bit-position-powers",
        kind="ccra",
        description="sum of 2**i over 1-based positions i carrying a 1",
        headline_input="101",
        headline_value="10",
        build=bit_position_powers_ccra,
        register_names=("x", "y"),
    ),
    Fixture(
        slug="run-length-product",
        kind="ccra",
        description="k**n on (a**k b)**n, multiplying out run lengths",
        headline_input="aabaab",
        headline_value="4",
        build=run_length_product_ccra,
        register_names=("x", "y"),
    ),
    Fixture(
        slug="cubic-counter-mod3",
        kind="exppoly",
        description="n**3 + n**2 + 1 over F_3, reducible to degree 2",
        headline_input="2",
        headline_value="1",
        build=cubic_counter_mod3,
    ),
    Fixture(
        slug="linear-counter",
        kind="sequence",
        description="a_n = n as the recurrence a_{n+2} = 2 a_{n+1} - a_n",
        headline_input="4",
        headline_value="4",
        build=linear_counter_lrs,
    ),
    Fixture(
        slug="binary-value",
        kind="wa",
        description="the word read as a binary numeral, least significant bit first",
        headline_input="011",
        headline_value="6",
        build=binary_value_wa,
    ),
    Fixture(
        slug="complete-digraph",
        kind="wa",
        description="2**(n-1) accepting runs on a**n, exponentially ambiguous",
        headline_input="aa",
        headline_value="2",
        build=complete_digraph_wa,
    ),
    Fixture(
        slug="cubic-counter",
        kind="ccra",
        description="n**3 + n**2 + 1 on a**n over the rationals",
        headline_input="aa",
        headline_value="13",
        build=cubic_counter_ccra,
        register_names=("x", "y", "z"),
    ),
)


def fixture_by_slug(slug: str) -> Fixture:
    for fix in FIXTURES:
        if fix.slug == slug:
            return fix
    known = ", ".join(f.slug for f in FIXTURES)
    raise PsfwbError(f"no example named {slug!r}; known: {known}")


def fixture_file_text(fix: Fixture) -> str:
    """The fixture rendered in its interchange format."""
    from .formats import dumps

    obj = fix.build()
    if fix.kind == "ccra" and fix.register_names:
        return dumps(obj, register_names=fix.register_names)
    return dumps(obj)


def headline_actual(fix: Fixture) -> str:
    """Recompute the documented headline value from the built object."""
    obj = fix.build()
    if fix.kind == "wa":
        return str(wa_evaluate(obj, fix.headline_input))
    if fix.kind == "ccra":
        return str(ccra_evaluate(obj, fix.headline_input))
    if fix.kind == "sequence":
        n = int(fix.headline_input)
        return str(obj.terms(n + 1)[n])
    if fix.kind == "exppoly":
        return str(obj.eval_at(int(fix.headline_input)).residue)
    raise ValueError(f"unknown fixture kind {fix.kind!r}")
