"""Pumping families: the sequences n -> f(u w^n v) attached to a word function.

Every triple (u, w, v) with w nonempty induces one such sequence.  For a
weighted automaton the sequence is itself a one-letter automaton; for a
register machine it is recovered from direct evaluations.  Two obstruction
pipelines sit on top: one tests the coefficient-sum consequence of register
recognisability, the other the finite-root-support consequence of polynomial
ambiguity.  Both give necessary conditions, so a report can only ever say
OBSTRUCTED or "not obstructed by this test", never "recognisable".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ccra import Ccra, evaluate as ccra_evaluate, to_weighted_automaton
from .eps import CoeffSumEntry, ExpPoly, coeff_sums_in_semiring, from_lrs
from .lrs import Lrs, minimal_recurrence
from .matrix import matrix_times_col, row_times_matrix
from .poly import rational_roots
from .scalars import prime_support
from .wa import WeightedAutomaton, Word, as_word, evaluate as wa_evaluate, matrix_of_word

# Translated cross-checks are only attempted below this dimension.
DESK_TRANSLATION_BUDGET = 1 << 9


@dataclass(frozen=True)
class PsfElement:
    """One member of the pumping family of a word function."""

    u: Word
    w: Word
    v: Word
    sequence: Lrs
    source: str

    def term(self, n: int) -> Fraction:
        return self.sequence.terms(n + 1)[n]


def _require_period(w: Word) -> Word:
    w = as_word(w)
    if not w:
        raise ValueError("the pumped word w must be nonempty")
    return w


def psf_element_wa(a: WeightedAutomaton, u, w, v) -> PsfElement:
    """The sequence n -> a(u w^n v) as an exact one-letter automaton.

    Initial row I*M(u), transition M(w), final column M(v)*F.  The first
    few terms are asserted against direct evaluation.
    """
    u, v = as_word(u), as_word(v)
    w = _require_period(w)
    row = row_times_matrix(a.initial, matrix_of_word(a, u))
    step = matrix_of_word(a, w)
    col = matrix_times_col(matrix_of_word(a, v), a.final)
    one_letter = WeightedAutomaton(
        dim=a.dim,
        alphabet=("a",),
        transitions={"a": step},
        initial=tuple(row),
        final=tuple(col),
    )
    seq = Lrs.from_1letter_wa(one_letter)
    for n in range(7):
        direct = wa_evaluate(a, u + w * n + v)
        assert seq.terms(n + 1)[n] == direct, "pumping sequence disagrees with direct evaluation"
    return PsfElement(u=u, w=w, v=v, sequence=seq, source="wa")


def psf_element_ccra(c: Ccra, u, w, v, horizon: int | None = None) -> PsfElement:
    """The sequence n -> c(u w^n v), recovered from direct evaluations.

    The recurrence is fitted to the first `horizon` terms and must be
    consistent with all of them; when the machine is small enough to
    translate, the result is cross-checked against the automaton route.
    """
    u, v = as_word(u), as_word(v)
    w = _require_period(w)
    translated_dim = len(c.states) * (1 << c.register_count)
    if horizon is None:
        horizon = max(4 * min(translated_dim, 8) + 2, 10)
    terms = [ccra_evaluate(c, u + w * n + v) for n in range(horizon)]
    k, coeffs = minimal_recurrence(terms, verify_horizon=2)
    seq = Lrs(coeffs, terms[:k])
    if translated_dim <= DESK_TRANSLATION_BUDGET:
        via_wa = psf_element_wa(to_weighted_automaton(c), u, w, v)
        assert via_wa.sequence.coefficients == seq.coefficients
        assert via_wa.sequence.initial_terms == seq.initial_terms
    return PsfElement(u=u, w=w, v=v, sequence=seq, source="ccra")


def subsample(e: PsfElement, m: int) -> Lrs:
    """The sequence h(n) = g(m(n+1)) of a pumping sequence g.

    Exact on the automaton form: the transition becomes M(w)^m and the
    initial row is advanced by one extra factor of M(w)^m, so term n is
    g at exponent m(n+1).
    """
    if m < 1:
        raise ValueError("subsampling modulus must be at least 1")
    a = e.sequence.wa_form
    step = a.matrix(a.alphabet[0]).pow(m)
    advanced = row_times_matrix(a.initial, step)
    return Lrs.from_1letter_wa(
        WeightedAutomaton(
            dim=a.dim,
            alphabet=("a",),
            transitions={"a": step},
            initial=tuple(advanced),
            final=a.final,
        )
    )


# ---------------------------------------------------------------------------
# obstruction pipeline: coefficient sums against a candidate semiring


@dataclass(frozen=True)
class CcraObstructionWitness:
    u: Word
    w: Word
    v: Word
    exppoly: ExpPoly
    coeff_sums: tuple[CoeffSumEntry, ...]

    @property
    def offending_primes(self) -> frozenset:
        found = set()
        for entry in self.coeff_sums:
            found |= set(entry.offending_primes)
        return frozenset(found)


@dataclass(frozen=True)
class CcraObstructionReport:
    witnesses: tuple[CcraObstructionWitness, ...]
    modulus: int
    offending_primes: frozenset
    obstructed: bool


def ccra_obstruction_report(
    f: WeightedAutomaton,
    witnesses,
    m: int,
    candidate_gens,
    ks,
) -> CcraObstructionReport:
    """Test the coefficient-sum consequence of register recognisability.

    For each witness (u, w, v) the subsampled sequence g(m(n+1)) is put in
    exponential-polynomial form and its degree-k coefficient sums are checked
    against the denominators the candidate generators can produce.  Any
    offending prime contradicts recognisability over the candidate semiring
    with this subsampling modulus.
    """
    entries = []
    offending: set = set()
    for u, w, v in witnesses:
        element = psf_element_wa(f, u, w, v)
        q = from_lrs(subsample(element, m))
        sums = tuple(coeff_sums_in_semiring(q, candidate_gens, ks=list(ks)))
        witness = CcraObstructionWitness(
            u=as_word(u), w=as_word(w), v=as_word(v), exppoly=q, coeff_sums=sums
        )
        entries.append(witness)
        offending |= set(witness.offending_primes)
    return CcraObstructionReport(
        witnesses=tuple(entries),
        modulus=m,
        offending_primes=frozenset(offending),
        obstructed=bool(offending),
    )


# ---------------------------------------------------------------------------
# obstruction pipeline: characteristic-root support against finite generation


@dataclass(frozen=True)
class PaWitnessEntry:
    u: Word
    w: Word
    v: Word
    roots: tuple[Fraction, ...]
    skipped: bool
    note: str


@dataclass(frozen=True)
class PaObstructionReport:
    entries: tuple[PaWitnessEntry, ...]
    support_trace: tuple[frozenset, ...]
    joint_support: frozenset
    obstructed: bool


def pa_obstruction_report(f, witnesses, horizon: int | None = None) -> PaObstructionReport:
    """Test the finite-root-support consequence of polynomial ambiguity.

    Collects the nonzero rational characteristic roots of each witness
    sequence.  If the joint prime support of the roots keeps growing as
    witnesses are added, no finitely generated group can contain every root,
    which rules out recognition by a polynomially ambiguous automaton.
    Witnesses with irrational roots are recorded but skipped.
    """
    entries = []
    trace = []
    support: set = set()
    baseline: frozenset | None = None
    for u, w, v in witnesses:
        if isinstance(f, Ccra):
            element = psf_element_ccra(f, u, w, v, horizon=horizon)
        else:
            element = psf_element_wa(f, u, w, v)
        charpoly = element.sequence.characteristic_polynomial()
        roots = rational_roots(charpoly)
        total = sum(roots.values())
        if total < charpoly.degree:
            entries.append(
                PaWitnessEntry(
                    u=as_word(u), w=as_word(w), v=as_word(v),
                    roots=(), skipped=True,
                    note="irrational characteristic roots; witness skipped",
                )
            )
            trace.append(frozenset(support))
            continue
        nonzero = tuple(sorted(r for r in roots if r != 0))
        for root in nonzero:
            _, exponents = prime_support(root)
            support |= {p for p, e in exponents.items() if e}
        entries.append(
            PaWitnessEntry(u=as_word(u), w=as_word(w), v=as_word(v),
                           roots=nonzero, skipped=False, note="")
        )
        trace.append(frozenset(support))
        if baseline is None:
            baseline = frozenset(support)
    joint = frozenset(support)
    obstructed = baseline is not None and joint > baseline
    return PaObstructionReport(
        entries=tuple(entries),
        support_trace=tuple(trace),
        joint_support=joint,
        obstructed=obstructed,
    )


# ---------------------------------------------------------------------------
# the position-sum closed form


def _position_sum(word: Word) -> Fraction:
    return Fraction(sum(i for i, letter in enumerate(word, start=1) if letter == "1"))


def position_sum_coefficients(u, w, v) -> tuple[Fraction, Fraction, Fraction]:
    """Quadratic, linear and constant coefficients of n -> f(u w^n v).

    f sums the 1-based positions of the 1-letters.  Splitting the word into
    the prefix, the n pumped copies and the suffix gives a quadratic in n
    whose coefficients stay in the half-integers.
    """
    u, w, v = as_word(u), as_word(w), as_word(v)
    r, t = len(u), len(w)
    ones_w = [j for j, letter in enumerate(w, start=1) if letter == "1"]
    ones_v = [j for j, letter in enumerate(v, start=1) if letter == "1"]
    quadratic = Fraction(t, 2) * len(ones_w)
    linear = (
        sum((Fraction(r + j) for j in ones_w), Fraction(0))
        - Fraction(t, 2) * len(ones_w)
        + Fraction(t) * len(ones_v)
    )
    constant = _position_sum(u) + sum((Fraction(r + j) for j in ones_v), Fraction(0))
    return quadratic, linear, constant


def example24_formula_check(u, w, v, horizon: int = 10) -> bool:
    """Compare the position-sum closed form against direct evaluation.

    True when the quadratic reproduces f(u w^n v) for all n up to the
    horizon and every coefficient is a half-integer.
    """
    u, w, v = as_word(u), as_word(w), as_word(v)
    for letters in (u, w, v):
        if any(letter not in ("0", "1") for letter in letters):
            raise ValueError("position-sum words must be over 0/1")
    a2, a1, a0 = position_sum_coefficients(u, w, v)
    if any(coeff.denominator not in (1, 2) for coeff in (a2, a1, a0)):
        return False
    for n in range(horizon + 1):
        direct = _position_sum(u + w * n + v)
        if a2 * n * n + a1 * n + a0 != direct:
            return False
    return True


def random_witnesses(rng, alphabet, count: int, max_length: int = 8):
    """Random (u, w, v) triples with w nonempty, for sampling a family."""
    letters = list(alphabet)
    out = []
    for _ in range(count):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_length)))
        w = tuple(rng.choice(letters) for _ in range(rng.randint(1, max_length)))
        v = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_length)))
        out.append((u, w, v))
    return out
