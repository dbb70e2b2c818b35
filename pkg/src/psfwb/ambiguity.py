"""Ambiguity analysis and the cycle structure of matrix powers.

An NFA has polynomially bounded run counts exactly when no state carries
two distinct runs over a common word back to itself.  That pattern is
detected on the pair-product automaton: it exists iff some strongly
connected component of the product contains both a diagonal pair and an
off-diagonal pair.

For polynomially ambiguous automata, a suitable power of any word matrix
can be permuted to upper triangular form because only self-loops close
cycles in its support graph; the nonzero diagonal entries are then
products of transition weights up to the root index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .errors import CycleOfLengthAtLeastTwo
from .matrix import Permutation, RatMatrix
from .scalars import DEFAULT_FACTOR_CEILING, divisors, fraction_nth_root, prime_support
from .wa import WeightedAutomaton, matrix_of_word, trim, underlying_nfa


def _strongly_connected_components(n: int, succ) -> list[list[int]]:
    """Iterative Tarjan; succ(v) lists successor vertices."""
    index = {}
    low = {}
    on_stack = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def is_polynomially_ambiguous(a: WeightedAutomaton) -> bool:
    """True iff the trimmed support NFA has polynomially bounded run counts."""
    t = trim(a)
    if t.dim == 0:
        return True
    nfa = underlying_nfa(t)
    d = t.dim
    # pair product on the trimmed automaton; vertex (i, j) encoded as i * d + j
    succ_sets: list[set[int]] = [set() for _ in range(d * d)]
    for sym in nfa.alphabet:
        edges = nfa.edges[sym]
        for (i1, j1) in edges:
            for (i2, j2) in edges:
                succ_sets[i1 * d + i2].add(j1 * d + j2)

    def succ(v):
        return succ_sets[v]

    for comp in _strongly_connected_components(d * d, succ):
        has_diagonal = any(v // d == v % d for v in comp)
        has_off = any(v // d != v % d for v in comp)
        # both kinds in one component forces a cycle through the diagonal
        # that splits into two distinct equal-word runs
        if has_diagonal and has_off:
            return False
    return True


@dataclass(frozen=True)
class TriangularizationResult:
    exponent: int
    permutation: Permutation
    matrix: RatMatrix
    diagonal: tuple[Fraction, ...]


def default_power_exponent(dim: int) -> int:
    """dim! — every cycle length of a dim-state graph divides it."""
    if dim > 7:
        raise ValueError(
            f"dim! is impractically large for dim={dim}; pass an explicit exponent "
            "(cycle_lcm_exponent gives a valid smaller one)"
        )
    return factorial(max(dim, 1))


def _elementary_cycle_lengths(n: int, succ_sets) -> set[int]:
    """Lengths of all simple cycles; DFS restricted to vertices >= the root."""
    lengths: set[int] = set()
    for root in range(n):
        # paths root -> v using intermediate vertices > root
        stack = [(root, 0, {root})]
        while stack:
            v, depth, seen = stack.pop()
            for w in succ_sets[v]:
                if w == root:
                    lengths.add(depth + 1)
                elif w > root and w not in seen:
                    stack.append((w, depth + 1, seen | {w}))
    return lengths


def cycle_lcm_exponent(a: WeightedAutomaton, word) -> int:
    """lcm of the simple cycle lengths in the support graph of M(word).

    Every closed-cycle length of that graph divides the result, which makes
    it a valid (often far smaller) substitute for dim!.
    """
    m = matrix_of_word(a, word)
    succ_sets = [
        {j for j in range(a.dim) if m[i, j]}
        for i in range(a.dim)
    ]
    lengths = _elementary_cycle_lengths(a.dim, succ_sets)
    return lcm(*lengths) if lengths else 1


def triangularize_power(a: WeightedAutomaton, word, exponent: int | None = None) -> TriangularizationResult:
    """Permute M(word)**exponent (default dim!) to upper triangular form.

    Expects a trim, polynomially ambiguous automaton.  If the support graph
    of the power still has a cycle through two or more states, the input
    violates that precondition (or the exponent is too small) and
    CycleOfLengthAtLeastTwo is raised.
    """
    if exponent is None:
        exponent = default_power_exponent(a.dim)
    if exponent < 1:
        raise ValueError("exponent must be >= 1")
    m = matrix_of_word(a, word).pow(exponent)
    d = a.dim

    succ_sets = [
        {j for j in range(d) if j != i and m[i, j]}
        for i in range(d)
    ]
    for comp in _strongly_connected_components(d, lambda v: succ_sets[v]):
        if len(comp) > 1:
            raise CycleOfLengthAtLeastTwo(comp)

    # Kahn topological order, preferring small original indices for determinism
    indegree = [0] * d
    for i in range(d):
        for j in succ_sets[i]:
            indegree[j] += 1
    available = sorted(i for i in range(d) if indegree[i] == 0)
    order: list[int] = []
    while available:
        v = available.pop(0)
        order.append(v)
        changed = False
        for w in succ_sets[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                available.append(w)
                changed = True
        if changed:
            available.sort()
    assert len(order) == d

    images = [0] * d
    for pos, old in enumerate(order):
        images[old] = pos
    sigma = Permutation(tuple(images))
    tri = RatMatrix.from_rows([[m[order[i], order[j]] for j in range(d)] for i in range(d)])
    assert tri.is_upper_triangular()
    return TriangularizationResult(
        exponent=exponent,
        permutation=sigma,
        matrix=tri,
        diagonal=tri.diagonal(),
    )


@dataclass(frozen=True, order=True)
class RootOfRational:
    """The real number base**(1/index), kept symbolic unless it is rational."""

    base: Fraction
    index: int

    @classmethod
    def normalized(cls, base, index: int) -> "RootOfRational":
        """Reduce the index as far as an exact rational root allows."""
        base = Fraction(base)
        if index < 1:
            raise ValueError("root index must be >= 1")
        for g in sorted(divisors(index), reverse=True):
            r = fraction_nth_root(base, g)
            if r is not None:
                return cls(r, index // g)
        return cls(base, index)

    def is_rational(self) -> bool:
        return self.index == 1


def psf_characteristic_roots(a: WeightedAutomaton, word, exponent: int | None = None) -> list[RootOfRational]:
    """Normalised index-th roots of the nonzero diagonal entries of the
    triangularised power of M(word); these are the candidate growth bases of
    the word's pumping sequences."""
    result = triangularize_power(a, word, exponent)
    seen = {
        RootOfRational.normalized(delta, result.exponent)
        for delta in result.diagonal
        if delta
    }
    return sorted(seen)


def _integer_system_solvable(rows: list[list[int]], rhs: list[int]) -> bool:
    """Does rows * x = rhs have an integer solution ?

    Diagonalises with unimodular row and column operations (row operations
    mirrored on the right-hand side), then checks divisibility.
    """
    a = [list(r) for r in rows]
    b = list(rhs)
    m = len(a)
    n = len(a[0]) if m else 0
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        b[t], b[bi] = b[bi], b[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(t + 1, m):
            q = a[i][t] // a[t][t]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                b[i] -= q * b[t]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, n):
            q = a[t][j] // a[t][t]
            if q:
                for row in a:
                    row[j] -= q * row[t]
            if a[t][j]:
                dirty = True
        if not dirty:
            t += 1
    for i in range(m):
        if i < t:
            if b[i] % a[i][i]:
                return False
        elif b[i]:
            return False
    return True


def group_membership(x: Fraction, generators, ceiling: int = DEFAULT_FACTOR_CEILING) -> bool:
    """Is x in the multiplicative subgroup of Q* generated by the generators?

    Works on prime exponent vectors: membership is an integer linear system
    over the joint prime support, with one extra parity row for the sign.
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 is not in the multiplicative group Q*")
    gens = [Fraction(g) for g in generators]
    if any(g == 0 for g in gens):
        raise ValueError("generators must be nonzero")
    sign_x, supp_x = prime_support(x, ceiling)
    gen_data = [prime_support(g, ceiling) for g in gens]
    primes = sorted(set(supp_x) | {p for _, s in gen_data for p in s})
    rows = []
    for p in primes:
        rows.append([s.get(p, 0) for _, s in gen_data] + [0])
    # parity row: product of generator signs must match sign(x); the final
    # auxiliary column absorbs even contributions
    rows.append([0 if sg > 0 else 1 for sg, _ in gen_data] + [2])
    rhs = [supp_x.get(p, 0) for p in primes] + [0 if sign_x > 0 else 1]
    return _integer_system_solvable(rows, rhs)


@dataclass(frozen=True)
class SupportReport:
    values: tuple[Fraction, ...]
    per_value: tuple[tuple[int, ...], ...]
    union: tuple[int, ...]


def prime_support_report(values, ceiling: int = DEFAULT_FACTOR_CEILING) -> SupportReport:
    """Primes dividing numerator or denominator of each nonzero value."""
    vals = tuple(Fraction(v) for v in values)
    per_value = []
    union: set[int] = set()
    for v in vals:
        if v == 0:
            per_value.append(())
            continue
        _, supp = prime_support(v, ceiling)
        ps = tuple(sorted(supp))
        per_value.append(ps)
        union.update(ps)
    return SupportReport(vals, tuple(per_value), tuple(sorted(union)))
