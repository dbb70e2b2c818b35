"""Forall-exists boolean formulas and their register-machine encoding.

A formula here always has the shape
forall x1 exists y1 ... forall xk exists yk . matrix(x, y)
with a quantifier-free matrix over node kinds var/not/and (richer
connectives are desugared on construction).  Validity of such a formula
is equivalent to the existence of a word on which a certain copyless
register machine outputs a nonzero value: the machine reads blocks of 2k
bits separated by '#', checks that the universal bits walk a binary
counter from all-zeros to all-ones, and multiplies a flag register by
the 0/1 value of the matrix on every block.  Decision procedures at both
ends (brute-force quantifier expansion, candidate-word enumeration) keep
each other honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ccra import Ccra
from .errors import CopyPoolExhausted, FormatError
from .exprtree import (
    Const,
    ExprTree,
    PolyMap,
    Prod,
    Sum,
    Var,
    ZERO,
    evaluate as tree_evaluate,
    neg,
)

# ---------------------------------------------------------------------------
# boolean circuits


class BoolNode:
    __slots__ = ()


@dataclass(frozen=True)
class BVar(BoolNode):
    name: str


@dataclass(frozen=True)
class BNot(BoolNode):
    inner: BoolNode


@dataclass(frozen=True)
class BAnd(BoolNode):
    left: BoolNode
    right: BoolNode


@dataclass(frozen=True)
class BOr(BoolNode):
    """Convenience node for enumeration; desugar before arithmetising."""

    left: BoolNode
    right: BoolNode


def b_or(a: BoolNode, b: BoolNode) -> BoolNode:
    return BNot(BAnd(BNot(a), BNot(b)))


def b_implies(a: BoolNode, b: BoolNode) -> BoolNode:
    return BNot(BAnd(a, BNot(b)))


def b_iff(a: BoolNode, b: BoolNode) -> BoolNode:
    return BAnd(BNot(BAnd(a, BNot(b))), BNot(BAnd(b, BNot(a))))


def b_and_all(parts) -> BoolNode:
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    acc = parts[0]
    for part in parts[1:]:
        acc = BAnd(acc, part)
    return acc


def desugar(node: BoolNode) -> BoolNode:
    """Rewrite any BOr nodes into var/not/and form."""
    if isinstance(node, BVar):
        return node
    if isinstance(node, BNot):
        return BNot(desugar(node.inner))
    if isinstance(node, BAnd):
        return BAnd(desugar(node.left), desugar(node.right))
    if isinstance(node, BOr):
        return b_or(desugar(node.left), desugar(node.right))
    raise TypeError(f"not a circuit node: {node!r}")


def circuit_size(node: BoolNode) -> int:
    if isinstance(node, BVar):
        return 1
    if isinstance(node, BNot):
        return 1 + circuit_size(node.inner)
    if isinstance(node, (BAnd, BOr)):
        return 1 + circuit_size(node.left) + circuit_size(node.right)
    raise TypeError(f"not a circuit node: {node!r}")


def circuit_variables(node: BoolNode) -> set[str]:
    if isinstance(node, BVar):
        return {node.name}
    if isinstance(node, BNot):
        return circuit_variables(node.inner)
    if isinstance(node, (BAnd, BOr)):
        return circuit_variables(node.left) | circuit_variables(node.right)
    raise TypeError(f"not a circuit node: {node!r}")


def circuit_truth(node: BoolNode, assignment: dict) -> int:
    if isinstance(node, BVar):
        return 1 if assignment[node.name] else 0
    if isinstance(node, BNot):
        return 1 - circuit_truth(node.inner, assignment)
    if isinstance(node, BAnd):
        return circuit_truth(node.left, assignment) & circuit_truth(node.right, assignment)
    if isinstance(node, BOr):
        return circuit_truth(node.left, assignment) | circuit_truth(node.right, assignment)
    raise TypeError(f"not a circuit node: {node!r}")


def _assert_core(node: BoolNode):
    if isinstance(node, BVar):
        return
    if isinstance(node, BNot):
        _assert_core(node.inner)
        return
    if isinstance(node, BAnd):
        _assert_core(node.left)
        _assert_core(node.right)
        return
    raise ValueError("matrix must use var/not/and only; desugar richer connectives first")


# ---------------------------------------------------------------------------
# the quantified formula


def xvar(i: int) -> str:
    return f"x{i}"


def yvar(i: int) -> str:
    return f"y{i}"


def primed(name: str) -> str:
    return name + "'"


@dataclass(frozen=True)
class Qbf:
    """Strictly alternating forall-exists formula with a var/not/and matrix."""

    k: int
    matrix: BoolNode

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one quantifier pair")
        _assert_core(self.matrix)
        allowed = {xvar(i) for i in range(1, self.k + 1)}
        allowed |= {yvar(i) for i in range(1, self.k + 1)}
        stray = circuit_variables(self.matrix) - allowed
        if stray:
            raise ValueError(f"matrix uses unbound variables: {sorted(stray)}")


def brute_force_qbf(q: Qbf) -> bool:
    """Exact validity by expanding every quantifier.  Desk-scale only."""
    if 2 * q.k > 20:
        raise ValueError("brute force capped at 20 quantified variables")

    order = []
    for i in range(1, q.k + 1):
        order.append(("forall", xvar(i)))
        order.append(("exists", yvar(i)))

    def walk(pos: int, assignment: dict) -> bool:
        if pos == len(order):
            return circuit_truth(q.matrix, assignment) == 1
        quant, name = order[pos]
        results = []
        for bit in (0, 1):
            assignment[name] = bit
            results.append(walk(pos + 1, assignment))
            del assignment[name]
        return all(results) if quant == "forall" else any(results)

    return walk(0, {})


# ---------------------------------------------------------------------------
# parsing and normalisation


def _parse_matrix_tokens(tokens: list[str], bound: dict) -> BoolNode:
    pos = 0

    def next_node() -> BoolNode:
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("matrix ended before all operands were read", line=2)
        token = tokens[pos]
        pos += 1
        if token == "not":
            return BNot(next_node())
        if token == "and":
            return BAnd(next_node(), next_node())
        if token == "or":
            return b_or(next_node(), next_node())
        if token == "implies":
            return b_implies(next_node(), next_node())
        if token == "iff":
            return b_iff(next_node(), next_node())
        if token in bound:
            return BVar(bound[token])
        raise FormatError(f"unknown matrix token {token!r} at position {pos}", line=2)

    node = next_node()
    if pos != len(tokens):
        raise FormatError(f"trailing matrix tokens from position {pos + 1}", line=2)
    return node


def _rename_matrix(node: BoolNode, mapping: dict) -> BoolNode:
    if isinstance(node, BVar):
        return BVar(mapping[node.name])
    if isinstance(node, BNot):
        return BNot(_rename_matrix(node.inner, mapping))
    if isinstance(node, BAnd):
        return BAnd(_rename_matrix(node.left, mapping), _rename_matrix(node.right, mapping))
    raise TypeError(f"not a circuit node: {node!r}")


def parse_and_normalize(text: str) -> Qbf:
    """Parse a two-line formula and force strict forall-exists alternation.

    Line 1 is either the canonical "forall-exists k=<n>" or an explicit
    quantifier prefix ("forall a exists b ...").  Line 2 is the matrix in
    prefix notation over and/or/not/implies/iff and the bound variables.
    Explicit prefixes are padded with dummy variables (never used in the
    matrix, hence neutral for validity) until the alternation is strict,
    and variables are renamed positionally to x1, y1, ..., xk, yk.
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if len(lines) != 2:
        raise FormatError("expected exactly two nonempty lines (prefix, matrix)", line=1)
    head, matrix_line = lines

    tokens = head.split()
    if tokens and tokens[0] == "forall-exists":
        if len(tokens) != 2 or not tokens[1].startswith("k="):
            raise FormatError("expected 'forall-exists k=<n>'", line=1)
        try:
            k = int(tokens[1][2:])
        except ValueError:
            raise FormatError("expected 'forall-exists k=<n>'", line=1) from None
        if k < 1:
            raise FormatError("k must be at least 1", line=1)
        names = {}
        for i in range(1, k + 1):
            names[xvar(i)] = xvar(i)
            names[yvar(i)] = yvar(i)
        matrix = _parse_matrix_tokens(matrix_line.split(), names)
        return Qbf(k=k, matrix=matrix)

    if len(tokens) % 2 != 0 or not tokens:
        raise FormatError("prefix must be quantifier/variable pairs", line=1)
    declared = []
    for quant, name in zip(tokens[::2], tokens[1::2]):
        if quant not in ("forall", "exists"):
            raise FormatError(f"unknown quantifier {quant!r}", line=1)
        if name in ("forall", "exists") or name in (n for _, n in declared):
            raise FormatError(f"bad or repeated variable {name!r}", line=1)
        declared.append((quant, name))

    # Pad to strict forall-exists alternation with unused dummies.  A dummy
    # quantifier binds a variable the matrix never reads, so validity is
    # untouched.
    padded = []
    expect = "forall"
    for quant, name in declared:
        while quant != expect:
            padded.append((expect, None))
            expect = "exists" if expect == "forall" else "forall"
        padded.append((quant, name))
        expect = "exists" if expect == "forall" else "forall"
    if expect == "exists":
        padded.append(("exists", None))
    k = len(padded) // 2

    mapping = {}
    for slot, (quant, name) in enumerate(padded):
        canonical = xvar(slot // 2 + 1) if quant == "forall" else yvar(slot // 2 + 1)
        if name is not None:
            mapping[name] = canonical
    raw_matrix = _parse_matrix_tokens(matrix_line.split(), {n: n for n in mapping})
    matrix = _rename_matrix(raw_matrix, mapping)
    return Qbf(k=k, matrix=matrix)


def render_qbf(q: Qbf) -> str:
    """Canonical two-line text form (matrix in prefix notation)."""
    parts = []

    def walk(node: BoolNode):
        if isinstance(node, BVar):
            parts.append(node.name)
        elif isinstance(node, BNot):
            parts.append("not")
            walk(node.inner)
        elif isinstance(node, BAnd):
            parts.append("and")
            walk(node.left)
            walk(node.right)

    walk(q.matrix)
    return f"forall-exists k={q.k}\n{' '.join(parts)}\n"


# ---------------------------------------------------------------------------
# formula -> polynomial


class CopyPool:
    """Hands out register slots, at most `copies` per variable name."""

    def __init__(self, copies: int, slot_of):
        self.copies = copies
        self.slot_of = slot_of
        self.used: dict[str, int] = {}

    def take(self, name: str) -> int:
        j = self.used.get(name, 0)
        if j >= self.copies:
            raise CopyPoolExhausted(variable=name, copies=self.copies)
        self.used[name] = j + 1
        return self.slot_of(name, j)


def dense_slot_of(variables, copies: int):
    """Slot function packing copies contiguously per sorted variable name."""
    ranks = {name: idx for idx, name in enumerate(sorted(variables))}
    return lambda name, j: ranks[name] * copies + j


def formula_to_polynomial(circuit: BoolNode, copies: int, slot_of=None):
    """Arithmetise a circuit: not -> (1 - p), and -> product, var -> register.

    Every variable leaf consumes a fresh copy from the pool, so the tree
    reads each register at most once.  On 0/1 inputs with all copies of a
    variable set alike the tree evaluates to the circuit's truth value.
    Returns the tree and the per-variable copy counts actually consumed.
    """
    _assert_core(circuit)
    if slot_of is None:
        slot_of = dense_slot_of(circuit_variables(circuit), copies)
    pool = CopyPool(copies, slot_of)

    def build(node: BoolNode) -> ExprTree:
        if isinstance(node, BVar):
            return Var(pool.take(node.name))
        if isinstance(node, BNot):
            return Sum((Const(Fraction(1)), neg(build(node.inner))))
        return Prod((build(node.left), build(node.right)))

    tree = build(circuit)
    return tree, dict(pool.used)


def polynomial_truth(circuit: BoolNode, assignment: dict, copies: int | None = None) -> Fraction:
    """Evaluate the arithmetised circuit on a 0/1 assignment, copies set alike."""
    core = desugar(circuit)
    if copies is None:
        copies = circuit_size(core)
    names = sorted(circuit_variables(core))
    slot_of = dense_slot_of(names, copies)
    tree, _ = formula_to_polynomial(core, copies, slot_of=slot_of)
    values = [Fraction(0)] * (len(names) * copies)
    for name in names:
        bit = Fraction(1 if assignment[name] else 0)
        for j in range(copies):
            values[slot_of(name, j)] = bit
    return tree_evaluate(tree, values)


# ---------------------------------------------------------------------------
# the counter formulas


@dataclass(frozen=True)
class CounterFormulas:
    start: BoolNode
    end: BoolNode
    step: BoolNode


def counter_formulas(k: int) -> CounterFormulas:
    """Circuits driving a k-bit counter over the universal variables.

    start: all x bits are 0.  end: all x bits are 1.  step: the primed x
    bits read the unprimed ones incremented by one, where xk is the least
    significant bit; x and y bits strictly below the flipped position must
    be preserved, the remaining y bits are unconstrained.
    """
    if k < 1:
        raise ValueError("need at least one counter bit")
    start = b_and_all(BNot(BVar(xvar(i))) for i in range(1, k + 1))
    end = b_and_all(BVar(xvar(i)) for i in range(1, k + 1))

    implications = []
    for i in range(1, k + 1):
        cond_parts = [BNot(BVar(xvar(i)))]
        cond_parts.extend(BVar(xvar(j)) for j in range(i + 1, k + 1))
        cond = b_and_all(cond_parts)
        then_parts = [BVar(primed(xvar(i)))]
        then_parts.extend(BNot(BVar(primed(xvar(j)))) for j in range(i + 1, k + 1))
        for j in range(1, i):
            then_parts.append(b_iff(BVar(xvar(j)), BVar(primed(xvar(j)))))
            then_parts.append(b_iff(BVar(yvar(j)), BVar(primed(yvar(j)))))
        implications.append(b_implies(cond, b_and_all(then_parts)))
    return CounterFormulas(start=start, end=end, step=b_and_all(implications))


# ---------------------------------------------------------------------------
# the reduction


@dataclass(frozen=True)
class RegisterLayout:
    """Names the register banks of the reduction machine.

    Four banks of ell copies of the 2k block variables (the current block
    read three ways, plus the previous block) and one flag register.
    Within a copy the slots run x1..xk then y1..yk.
    """

    k: int
    ell: int

    @property
    def bank_width(self) -> int:
        return 2 * self.k * self.ell

    @property
    def register_count(self) -> int:
        return 4 * self.bank_width + 1

    @property
    def flag(self) -> int:
        return 4 * self.bank_width

    def bank_offset(self, bank: str) -> int:
        order = {"current": 0, "checker": 1, "keeper": 2, "previous": 3}
        return order[bank] * self.bank_width

    def var_slot(self, name: str) -> int:
        base = name.rstrip("'")
        idx = int(base[1:])
        if not 1 <= idx <= self.k:
            raise ValueError(f"variable {name!r} out of range")
        return idx - 1 if base[0] == "x" else self.k + idx - 1

    def slot(self, bank: str, copy: int, name: str) -> int:
        return self.bank_offset(bank) + copy * 2 * self.k + self.var_slot(name)

    def register_name(self, index: int) -> str:
        if index == self.flag:
            return "flag"
        bank_names = ["current", "checker", "keeper", "previous"]
        bank, rest = divmod(index, self.bank_width)
        copy, slot = divmod(rest, 2 * self.k)
        base = xvar(slot + 1) if slot < self.k else yvar(slot - self.k + 1)
        return f"{bank_names[bank]}{copy}_{base}"


@dataclass(frozen=True)
class ReductionOutput:
    ccra: Ccra
    ell: int
    layout: RegisterLayout


def qbf_to_ccra(q: Qbf) -> ReductionOutput:
    """Encode validity as nonzero-ness of a copyless register machine.

    The machine has guessing states p0..p2k (first block) and q0..q2k
    (later blocks).  Reading a bit stores it in every copy of the matching
    slot of the current/checker/keeper banks; reading '#' folds the block
    checks into the flag register, moves the keeper bank into the previous
    bank and zeroes the rest.  The output at q0 is flag times end(previous),
    so the machine is identically zero exactly when no block sequence runs
    the counter from all-zeros to all-ones with every block satisfying the
    matrix.
    """
    k = q.k
    counter = counter_formulas(k)
    ell = max(
        circuit_size(counter.start),
        circuit_size(counter.end),
        circuit_size(counter.step),
        circuit_size(q.matrix),
    )
    layout = RegisterLayout(k=k, ell=ell)
    d = layout.register_count

    def keep_all() -> list[ExprTree]:
        return [Var(i) for i in range(d)]

    def bit_map(position: int, bit: int) -> PolyMap:
        components = keep_all()
        value = Const(Fraction(bit))
        for bank in ("current", "checker", "keeper"):
            for copy in range(ell):
                base = layout.bank_offset(bank) + copy * 2 * k
                components[base + position] = value
        return PolyMap(d, tuple(components))

    def block_check_map(check_circuit: BoolNode, unprimed_bank: str) -> PolyMap:
        """The '#' update: flag *= checks, previous := keeper, banks reset.

        The check circuit reads primed variables from the checker bank and
        unprimed ones from unprimed_bank; the matrix reads the current
        bank.  The banks involved are pairwise disjoint, so the update is
        copyless as long as each arithmetised tree is.
        """

        def check_slots(name: str, j: int) -> int:
            bank = "checker" if name.endswith("'") else unprimed_bank
            return layout.slot(bank, j, name)

        check_tree, _ = formula_to_polynomial(check_circuit, ell, slot_of=check_slots)
        matrix_tree, _ = formula_to_polynomial(
            q.matrix, ell, slot_of=lambda name, j: layout.slot("current", j, name)
        )
        components: list[ExprTree] = [ZERO] * d
        for i in range(layout.bank_width):
            components[layout.bank_offset("previous") + i] = Var(layout.bank_offset("keeper") + i)
        components[layout.flag] = Prod((Var(layout.flag), check_tree, matrix_tree))
        return PolyMap(d, tuple(components))

    def trap_map() -> PolyMap:
        components = keep_all()
        components[layout.flag] = ZERO
        return PolyMap(d, tuple(components))

    p_states = [f"p{i}" for i in range(2 * k + 1)]
    q_states = [f"q{i}" for i in range(2 * k + 1)]
    states = tuple(p_states + q_states)
    alphabet = ("0", "1", "#")

    delta = {}
    for row in (p_states, q_states):
        for i in range(2 * k):
            for bit in (0, 1):
                delta[(row[i], str(bit))] = (row[i + 1], bit_map(i, bit))
    # After the first block the counter must sit at all-zeros; after any
    # later block it must extend the previous one by a single increment.
    delta[(p_states[2 * k], "#")] = (q_states[0], block_check_map(counter.start, "checker"))
    delta[(q_states[2 * k], "#")] = (q_states[0], block_check_map(counter.step, "previous"))

    # Any off-pattern read kills the flag for good: the flag only ever gets
    # multiplied afterwards, and every nonzero output tree has it as a
    # factor.
    trap = trap_map()
    for state in states:
        for symbol in alphabet:
            if (state, symbol) not in delta:
                delta[(state, symbol)] = (state, trap)

    end_tree, _ = formula_to_polynomial(
        counter.end, ell, slot_of=lambda name, j: layout.slot("previous", j, name)
    )
    nu = {state: ZERO for state in states}
    nu[q_states[0]] = Prod((Var(layout.flag), end_tree))

    machine = Ccra(
        states=states,
        initial_state=p_states[0],
        register_count=d,
        alphabet=alphabet,
        delta=delta,
        mu=tuple(Fraction(1) for _ in range(d)),
        nu=nu,
    )
    assert len(machine.states) == 4 * k + 2
    assert machine.register_count == 8 * ell * k + 1
    return ReductionOutput(ccra=machine, ell=ell, layout=layout)


# ---------------------------------------------------------------------------
# deciding validity through the machine


def counter_value_bits(k: int, value: int) -> list[int]:
    """Block bits x1..xk for a counter value, with xk least significant."""
    return [(value >> (k - i)) & 1 for i in range(1, k + 1)]


def candidate_words(k: int):
    """All words whose universal bits walk the counter 0 .. 2^k - 1.

    Each block contributes k forced x bits, k free y bits and a '#'; every
    combination of the free bits across all 2^k blocks yields one word.
    Any word the reduction machine accepts has this shape, so validity
    only needs a search over these.
    """
    blocks = 1 << k
    x_parts = [counter_value_bits(k, value) for value in range(blocks)]

    def extend(prefix: tuple, value: int):
        if value == blocks:
            yield prefix
            return
        for choice in range(1 << k):
            letters = [str(b) for b in x_parts[value]]
            letters.extend(str((choice >> (k - i)) & 1) for i in range(1, k + 1))
            letters.append("#")
            yield from extend(prefix + tuple(letters), value + 1)

    yield from extend((), 0)


def decide_via_ccra(q: Qbf) -> tuple[bool, tuple | None]:
    """Validity via the reduction machine, checked against brute force.

    Searches the candidate words block by block, sharing common prefixes
    and dropping branches whose flag register is already zero (the flag is
    only ever multiplied, so such branches cannot output a nonzero value).
    Returns the verdict and a witness word when one exists.
    """
    if q.k > 2:
        raise ValueError("candidate enumeration capped at k = 2")
    reduction = qbf_to_ccra(q)
    machine, layout = reduction.ccra, reduction.layout
    k = q.k
    blocks = 1 << k
    x_parts = [counter_value_bits(k, value) for value in range(blocks)]
    y_parts = [
        tuple((choice >> (k - i)) & 1 for i in range(1, k + 1)) for choice in range(1 << k)
    ]

    def run_block(state, values, value, y_bits):
        letters = tuple(str(b) for b in x_parts[value] + list(y_bits)) + ("#",)
        for letter in letters:
            state, update = machine.step(state, letter)
            values = update.apply(values)
        return state, tuple(values), letters

    frontier = [(machine.initial_state, tuple(machine.mu), ())]
    for value in range(blocks):
        seen = set()
        advanced = []
        for state, values, word in frontier:
            for y_bits in y_parts:
                state2, values2, letters = run_block(state, list(values), value, y_bits)
                if values2[layout.flag] == 0:
                    continue
                key = (state2, values2)
                if key in seen:
                    continue
                seen.add(key)
                advanced.append((state2, values2, word + letters))
        frontier = advanced
        if not frontier:
            break

    verdict, witness = False, None
    for state, values, word in frontier:
        if tree_evaluate(machine.nu[state], values) != 0:
            verdict, witness = True, word
            break
    assert verdict == brute_force_qbf(q), "machine route disagrees with brute force"
    return verdict, witness


# ---------------------------------------------------------------------------
# circuit generation for exhaustive desk-scale suites


def enumerate_circuits(max_nodes: int, variables, include_or: bool = True):
    """Every circuit with at most max_nodes nodes over the given variables.

    Grammar: var | not C | and C C (| or C C).  BOr nodes must go through
    desugar before any path that requires var/not/and form.
    """
    variables = list(variables)
    by_size: dict[int, list[BoolNode]] = {1: [BVar(name) for name in variables]}
    for size in range(2, max_nodes + 1):
        bucket: list[BoolNode] = []
        bucket.extend(BNot(inner) for inner in by_size.get(size - 1, ()))
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            for left in by_size.get(left_size, ()):
                for right in by_size.get(right_size, ()):
                    bucket.append(BAnd(left, right))
                    if include_or:
                        bucket.append(BOr(left, right))
        by_size[size] = bucket
    for size in range(1, max_nodes + 1):
        yield from by_size.get(size, ())


def random_circuit(rng, variables, max_nodes: int) -> BoolNode:
    """A random circuit of at most max_nodes nodes over var/not/and/or."""
    variables = list(variables)
    budget = rng.randint(1, max_nodes)

    def grow(limit: int) -> BoolNode:
        if limit <= 1:
            return BVar(rng.choice(variables))
        kind = rng.choice(["var", "not", "and", "or"])
        if kind == "var":
            return BVar(rng.choice(variables))
        if kind == "not":
            return BNot(grow(limit - 1))
        split = rng.randint(1, limit - 2) if limit > 2 else 1
        left = grow(split)
        right = grow(limit - 1 - split)
        return BAnd(left, right) if kind == "and" else BOr(left, right)

    return grow(budget)


def random_qbf(rng, k: int, max_nodes: int) -> Qbf:
    """A random formula over the canonical variables, matrix desugared."""
    names = [xvar(i) for i in range(1, k + 1)] + [yvar(i) for i in range(1, k + 1)]
    return Qbf(k=k, matrix=desugar(random_circuit(rng, names, max_nodes)))
