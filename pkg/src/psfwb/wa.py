"""Weighted automata over the rationals.

An automaton assigns to a word the value  initial^T M(w1) ... M(wn) final.
Zero-weight transitions do not exist in the underlying NFA, which is what
run counting, trimming and the ambiguity tests operate on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .matrix import RatMatrix, dot, row_times_matrix

Word = tuple[str, ...]


def as_word(w) -> Word:
    """Normalise a word: a string is a sequence of one-character symbols."""
    return tuple(w)


@dataclass(frozen=True, eq=False)
class WeightedAutomaton:
    dim: int
    alphabet: tuple[str, ...]
    transitions: dict  # symbol -> RatMatrix, dim x dim
    initial: tuple[Fraction, ...]
    final: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", tuple(Fraction(x) for x in self.initial))
        object.__setattr__(self, "final", tuple(Fraction(x) for x in self.final))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbol")
        if set(self.transitions) != set(self.alphabet):
            raise ValueError("transitions must cover exactly the alphabet")
        for a, m in self.transitions.items():
            if not isinstance(m, RatMatrix) or m.rows != self.dim or m.cols != self.dim:
                raise ValueError(f"transition matrix for {a!r} has wrong shape")
        if len(self.initial) != self.dim or len(self.final) != self.dim:
            raise ValueError("initial/final vector length must equal dim")

    def matrix(self, symbol: str) -> RatMatrix:
        return self.transitions[symbol]

    def __eq__(self, other):
        if not isinstance(other, WeightedAutomaton):
            return NotImplemented
        return (self.dim, self.alphabet, self.initial, self.final) == \
            (other.dim, other.alphabet, other.initial, other.final) and \
            all(self.transitions[a] == other.transitions[a] for a in self.alphabet)


def evaluate(a: WeightedAutomaton, word) -> Fraction:
    vec = a.initial
    for symbol in as_word(word):
        vec = row_times_matrix(vec, a.matrix(symbol))
    return dot(vec, a.final)


def matrix_of_word(a: WeightedAutomaton, word) -> RatMatrix:
    m = RatMatrix.identity(a.dim)
    for symbol in as_word(word):
        m = m * a.matrix(symbol)
    return m


@dataclass(frozen=True)
class Nfa:
    """The support automaton: only where the weights are nonzero."""

    dim: int
    alphabet: tuple[str, ...]
    edges: dict  # symbol -> frozenset[(i, j)]
    initial: frozenset
    final: frozenset

    def successors(self, state: int, symbol: str):
        return [j for (i, j) in self.edges[symbol] if i == state]


def underlying_nfa(a: WeightedAutomaton) -> Nfa:
    edges = {
        sym: frozenset(
            (i, j)
            for i in range(a.dim)
            for j in range(a.dim)
            if a.matrix(sym)[i, j]
        )
        for sym in a.alphabet
    }
    return Nfa(
        dim=a.dim,
        alphabet=a.alphabet,
        edges=edges,
        initial=frozenset(i for i in range(a.dim) if a.initial[i]),
        final=frozenset(i for i in range(a.dim) if a.final[i]),
    )


def run_count(a: WeightedAutomaton, word) -> int:
    """Number of accepting runs of the underlying NFA on the word."""
    nfa = underlying_nfa(a)
    counts = [1 if i in nfa.initial else 0 for i in range(a.dim)]
    for symbol in as_word(word):
        nxt = [0] * a.dim
        for (i, j) in nfa.edges[symbol]:
            nxt[j] += counts[i]
        counts = nxt
    return sum(counts[i] for i in nfa.final)


def _reachable(nfa: Nfa, start: frozenset, forward: bool) -> set[int]:
    seen = set(start)
    todo = deque(start)
    while todo:
        s = todo.popleft()
        for edge_set in nfa.edges.values():
            for (i, j) in edge_set:
                src, dst = (i, j) if forward else (j, i)
                if src == s and dst not in seen:
                    seen.add(dst)
                    todo.append(dst)
    return seen


def trim(a: WeightedAutomaton) -> WeightedAutomaton:
    """Restrict to states both reachable from the support of initial and
    co-reachable from the support of final."""
    nfa = underlying_nfa(a)
    useful = sorted(_reachable(nfa, nfa.initial, True) & _reachable(nfa, nfa.final, False))
    index = {s: i for i, s in enumerate(useful)}
    dim = len(useful)
    transitions = {
        sym: RatMatrix.from_rows(
            [[a.matrix(sym)[i, j] for j in useful] for i in useful]
        ) if dim else RatMatrix.zeros(0, 0)
        for sym in a.alphabet
    }
    return WeightedAutomaton(
        dim=dim,
        alphabet=a.alphabet,
        transitions=transitions,
        initial=tuple(a.initial[s] for s in useful),
        final=tuple(a.final[s] for s in useful),
    )


def difference(a: WeightedAutomaton, b: WeightedAutomaton) -> WeightedAutomaton:
    """Automaton computing a(w) - b(w), as a direct sum with negated final block."""
    if a.alphabet != b.alphabet:
        raise ValueError("difference needs a common alphabet")
    dim = a.dim + b.dim
    zero = Fraction(0)
    transitions = {}
    for sym in a.alphabet:
        ma, mb = a.matrix(sym), b.matrix(sym)
        rows = []
        for i in range(a.dim):
            rows.append(list(ma.entries[i]) + [zero] * b.dim)
        for i in range(b.dim):
            rows.append([zero] * a.dim + list(mb.entries[i]))
        transitions[sym] = RatMatrix.from_rows(rows) if dim else RatMatrix.zeros(0, 0)
    return WeightedAutomaton(
        dim=dim,
        alphabet=a.alphabet,
        transitions=transitions,
        initial=a.initial + b.initial,
        final=a.final + tuple(-x for x in b.final),
    )


def zeroness(a: WeightedAutomaton) -> tuple[bool, Word | None]:
    """Decide whether a(w) = 0 for every word.

    Saturates the space spanned by the forward vectors initial^T M(w) under
    right multiplication by the letter matrices.  When the automaton is not
    zero, returns a shortest witness (ties broken by alphabet order as
    listed); the witness length is at most dim - 1.
    """
    if a.dim == 0:
        return True, None
    basis: list[list[Fraction]] = []   # reduced echelon rows
    pivots: list[int] = []

    def residual(vec):
        vec = list(vec)
        for row, p in zip(basis, pivots):
            if vec[p]:
                f = vec[p]
                vec = [x - f * y for x, y in zip(vec, row)]
        return vec

    def insert(vec) -> bool:
        vec = residual(vec)
        p = next((i for i, x in enumerate(vec) if x), None)
        if p is None:
            return False
        inv = 1 / vec[p]
        vec = [x * inv for x in vec]
        for i, (row, q) in enumerate(zip(basis, pivots)):
            if row[p]:
                basis[i] = [x - row[p] * y for x, y in zip(row, vec)]
        basis.append(vec)
        pivots.append(p)
        return True

    queue: deque[tuple[Word, tuple[Fraction, ...]]] = deque()
    if insert(a.initial):
        if dot(a.initial, a.final):
            return False, ()
        queue.append(((), a.initial))
    while queue:
        word, vec = queue.popleft()
        for sym in a.alphabet:
            nxt = row_times_matrix(vec, a.matrix(sym))
            if insert(nxt):
                extended = word + (sym,)
                if dot(nxt, a.final):
                    return False, extended
                queue.append((extended, nxt))
    return True, None


def equivalence(a: WeightedAutomaton, b: WeightedAutomaton) -> tuple[bool, Word | None]:
    """Decide a(w) = b(w) for all words; the counterexample, if any, is a
    shortest word where the values differ (length <= dim(a) + dim(b) - 1)."""
    return zeroness(difference(a, b))
