"""Copyless cost register automata over the rationals.

A machine has a deterministic finite control, a bank of registers holding
rationals, one polynomial update map per transition, and an output tree per
state.  Copylessness is a joint condition: inside one update map every
register is read at most once across all components, and each output tree
reads every register at most once.  That restriction is what makes the
translation to a weighted automaton over squarefree monomials work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .errors import BudgetExceeded, CopylessViolation
from .exprtree import (
    ExprTree,
    PolyMap,
    Prod,
    Sum,
    Var,
    compose_maps,
    evaluate as eval_tree,
    expand_squarefree,
    is_copyless,
    is_copyless_tree,
    neg,
    substitute,
    tree_constants,
    var_occurrences,
)
from .matrix import RatMatrix
from .wa import WeightedAutomaton, Word, as_word
from .wa import zeroness as wa_zeroness


@dataclass(frozen=True, eq=False)
class Ccra:
    states: tuple[str, ...]
    initial_state: str
    register_count: int
    alphabet: tuple[str, ...]
    delta: dict  # (state, symbol) -> (next_state, PolyMap)
    mu: tuple[Fraction, ...]  # initial register values
    nu: dict  # state -> ExprTree, the output on acceptance in that state

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "mu", tuple(Fraction(x) for x in self.mu))
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state name")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbol")
        if self.initial_state not in self.states:
            raise ValueError("initial state is not a state")
        if len(self.mu) != self.register_count:
            raise ValueError("initial register vector has the wrong length")
        expected = {(q, a) for q in self.states for a in self.alphabet}
        if set(self.delta) != expected:
            raise ValueError("delta must be total: one entry per (state, symbol)")
        for (q, a), (target, update) in self.delta.items():
            if target not in self.states:
                raise ValueError(f"transition from ({q!r}, {a!r}) leaves the state set")
            if not isinstance(update, PolyMap) or update.arity != self.register_count:
                raise ValueError(f"update at ({q!r}, {a!r}) must be a PolyMap over all registers")
            report = is_copyless(update)
            if not report:
                raise CopylessViolation(
                    f"update at ({q!r}, {a!r}) reads registers "
                    f"{list(report.duplicated)} more than once",
                    offender=report.duplicated,
                )
        if set(self.nu) != set(self.states):
            raise ValueError("nu must assign an output tree to every state")
        for q, tree in self.nu.items():
            if not isinstance(tree, ExprTree):
                raise ValueError(f"output of {q!r} is not an expression tree")
            occ = var_occurrences(tree)
            if any(v >= self.register_count for v in occ):
                raise ValueError(f"output of {q!r} reads a register that does not exist")
            if not is_copyless_tree(tree):
                dup = tuple(sorted({v for v in occ if occ.count(v) > 1}))
                raise CopylessViolation(
                    f"output of {q!r} reads registers {list(dup)} more than once",
                    offender=dup,
                )

    def state_index(self, q: str) -> int:
        return self.states.index(q)

    def step(self, q: str, symbol: str):
        return self.delta[(q, symbol)]


def run(c: Ccra, word) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Configurations visited on a word, starting pair included."""
    q = c.initial_state
    values = list(c.mu)
    trail = [(q, tuple(values))]
    for symbol in as_word(word):
        q, update = c.step(q, symbol)
        values = update.apply(values)
        trail.append((q, tuple(values)))
    return trail


def evaluate(c: Ccra, word) -> Fraction:
    q = c.initial_state
    values = list(c.mu)
    for symbol in as_word(word):
        q, update = c.step(q, symbol)
        values = update.apply(values)
    return eval_tree(c.nu[q], values)


def extract_generators(c: Ccra) -> set[Fraction]:
    """Every rational constant the machine mentions: initial values, update
    coefficients and output coefficients.  All outputs live in the subsemiring
    these generate."""
    found = set(c.mu)
    for _, update in c.delta.values():
        for comp in update.components:
            found |= tree_constants(comp)
    for tree in c.nu.values():
        found |= tree_constants(tree)
    return found


def compose_word_from(c: Ccra, state: str, word) -> tuple[str, PolyMap]:
    """Net effect of a word from one state: end state and composed update."""
    q = state
    net = PolyMap.identity(c.register_count)
    for symbol in as_word(word):
        q, update = c.step(q, symbol)
        net = compose_maps(update, net)
    return q, net


def compose_word(c: Ccra, word) -> dict[str, tuple[str, PolyMap]]:
    """Net effect of a nonempty word from every state.

    Maps each state q to the state reached by reading the word from q and
    the single copyless update realising the whole read.
    """
    letters = as_word(word)
    if not letters:
        raise ValueError("compose_word needs a nonempty word")
    return {q: compose_word_from(c, q, letters) for q in c.states}


# ---------------------------------------------------------------------------
# translation to a weighted automaton


def _subset_products(update: PolyMap, mask: int) -> dict[frozenset, Fraction]:
    """Squarefree expansion of the product of the components selected by mask."""
    picked = [update.components[i] for i in range(update.arity) if mask >> i & 1]
    if not picked:
        return {frozenset(): Fraction(1)}
    tree = picked[0] if len(picked) == 1 else Prod(tuple(picked))
    return expand_squarefree(tree, update.arity)


def _mask_of(subset: frozenset) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << i
    return mask


def to_weighted_automaton(c: Ccra, budget: int = 1 << 20) -> WeightedAutomaton:
    """Equivalent weighted automaton on squarefree register monomials.

    Coordinate (q, S) carries the product of the registers in S while the
    control sits in q; copylessness keeps every product squarefree, so
    |Q| * 2**registers coordinates suffice.  That size is checked against
    the budget before any matrix is built.
    """
    d = c.register_count
    block = 1 << d
    dim = len(c.states) * block
    if dim > budget:
        raise BudgetExceeded(required=dim, budget=budget)

    def coord(state_idx: int, mask: int) -> int:
        return state_idx * block + mask

    initial = [Fraction(0)] * dim
    q0 = c.state_index(c.initial_state)
    for mask in range(block):
        value = Fraction(1)
        for i in range(d):
            if mask >> i & 1:
                value *= c.mu[i]
        initial[coord(q0, mask)] = value

    final = [Fraction(0)] * dim
    for q in c.states:
        qi = c.state_index(q)
        for subset, coeff in expand_squarefree(c.nu[q], d).items():
            final[coord(qi, _mask_of(subset))] = coeff

    transitions = {}
    for symbol in c.alphabet:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for q in c.states:
            qi = c.state_index(q)
            target, update = c.step(q, symbol)
            ti = c.state_index(target)
            for target_mask in range(block):
                col = coord(ti, target_mask)
                for subset, coeff in _subset_products(update, target_mask).items():
                    if coeff:
                        rows[coord(qi, _mask_of(subset))][col] += coeff
        transitions[symbol] = RatMatrix.from_rows(rows)

    return WeightedAutomaton(
        dim=dim,
        alphabet=c.alphabet,
        transitions=transitions,
        initial=tuple(initial),
        final=tuple(final),
    )


def zeroness_ccra(c: Ccra, budget: int = 1 << 20) -> tuple[bool, Word | None]:
    """Does the machine output 0 on every word?  Witness on failure.

    Goes through the weighted automaton, so the budget caps the translated
    dimension |Q| * 2**registers.
    """
    return wa_zeroness(to_weighted_automaton(c, budget))


def _shift_tree(tree: ExprTree, offset: int, arity: int) -> ExprTree:
    return substitute(tree, tuple(Var(i + offset) for i in range(arity)))


def difference_ccra(a: Ccra, b: Ccra) -> Ccra:
    """A machine computing a(w) - b(w), on the shared alphabet."""
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("difference needs identical alphabets")
    alphabet = a.alphabet
    da, db = a.register_count, b.register_count
    names = {}
    states = []
    for qa in a.states:
        for qb in b.states:
            names[(qa, qb)] = f"{qa}|{qb}"
            states.append(f"{qa}|{qb}")
    delta = {}
    for qa in a.states:
        for qb in b.states:
            for symbol in alphabet:
                ta, ua = a.step(qa, symbol)
                tb, ub = b.step(qb, symbol)
                components = tuple(ua.components) + tuple(
                    _shift_tree(comp, da, db) for comp in ub.components
                )
                delta[(names[(qa, qb)], symbol)] = (
                    names[(ta, tb)],
                    PolyMap(da + db, components),
                )
    nu = {}
    for qa in a.states:
        for qb in b.states:
            nu[names[(qa, qb)]] = Sum((a.nu[qa], neg(_shift_tree(b.nu[qb], da, db))))
    return Ccra(
        states=tuple(states),
        initial_state=names[(a.initial_state, b.initial_state)],
        register_count=da + db,
        alphabet=alphabet,
        delta=delta,
        mu=a.mu + b.mu,
        nu=nu,
    )


def equivalence_ccra(a: Ccra, b: Ccra, budget: int = 1 << 20) -> tuple[bool, Word | None]:
    """Do two machines agree on every word?  Counterexample on failure."""
    return zeroness_ccra(difference_ccra(a, b), budget)


# ---------------------------------------------------------------------------
# register classification on a one-letter, one-state loop


@dataclass(frozen=True)
class RegisterClassification:
    constant: tuple[int, ...]
    updating: tuple[int, ...]
    neither: tuple[int, ...]
    flow_edges: tuple[tuple[int, int], ...]  # (source, reader)


def classify_registers(c: Ccra) -> RegisterClassification:
    """Sort registers of a single-state, single-letter loop by update shape.

    constant: the new value reads no register at all;
    updating: the new value reads only the register itself, besides
              registers already known constant;
    neither:  everything else.
    The flow edge u -> v means component v reads u; joint copylessness
    bounds every register's out-degree by one.
    """
    if len(c.states) != 1 or len(c.alphabet) != 1:
        raise ValueError("classification is defined for one state and one letter")
    _, update = c.step(c.states[0], c.alphabet[0])
    reads = [sorted(set(var_occurrences(comp))) for comp in update.components]
    constant = [i for i, r in enumerate(reads) if not r]
    constant_set = set(constant)
    updating = [
        i
        for i, r in enumerate(reads)
        if r and set(r) <= {i} | constant_set and i not in constant_set
    ]
    neither = [i for i in range(update.arity) if i not in constant_set and i not in set(updating)]
    edges = []
    out_degree = [0] * update.arity
    for v, r in enumerate(reads):
        for u in r:
            edges.append((u, v))
            out_degree[u] += 1
    assert all(n <= 1 for n in out_degree), "copylessness bounds flow out-degree by one"
    return RegisterClassification(
        constant=tuple(constant),
        updating=tuple(updating),
        neither=tuple(neither),
        flow_edges=tuple(sorted(edges)),
    )


# ---------------------------------------------------------------------------
# pumping modulus


@dataclass(frozen=True)
class PumpModulus:
    paper_value: int  # (4r + 2)! * s!, a blanket bound from counts alone
    structural_value: int  # lcm of control cycles times lcm of flow cycles


def _cycle_lengths(n: int, succ_sets) -> set[int]:
    from .ambiguity import _elementary_cycle_lengths

    return _elementary_cycle_lengths(n, succ_sets)


def pump_modulus(c: Ccra) -> PumpModulus:
    """Two moduli m such that long enough runs repeat with period dividing m.

    The blanket value only counts registers r and states s.  The structural
    value multiplies the lcm of elementary cycle lengths of the control
    graph by the lcm of elementary cycle lengths of the register flow graph
    (edge u -> v when some letter's component v reads u).
    """
    r = c.register_count
    s = len(c.states)
    paper_value = factorial(4 * r + 2) * factorial(s)

    control_succ = [set() for _ in c.states]
    for (q, _symbol), (target, _update) in c.delta.items():
        control_succ[c.state_index(q)].add(c.state_index(target))
    control_lengths = _cycle_lengths(len(c.states), control_succ)

    flow_succ = [set() for _ in range(r)]
    for _, update in c.delta.values():
        for v, comp in enumerate(update.components):
            for u in set(var_occurrences(comp)):
                flow_succ[u].add(v)
    flow_lengths = _cycle_lengths(r, flow_succ)

    structural = lcm(*control_lengths, 1) * lcm(*flow_lengths, 1)
    return PumpModulus(paper_value=paper_value, structural_value=structural)
