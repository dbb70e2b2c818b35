"""Plain-text serialisation for every object kind the workbench handles.

Each file starts with the header line "psfwb-format <kind> v1" where kind
is one of wa / ccra / qbf / sequence / exppoly / report.  Rationals are
written exactly as num or num/den.  Register updates are written as
parenthesised expressions over the named registers; loading re-checks the
copyless restriction and rejects offenders by name.  Files written by
dumps() reload to equal objects and re-serialise byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ccra import Ccra
from .eps import ExpPoly, FpExpPoly
from .errors import CopylessViolation, FormatError
from .exprtree import (
    Const,
    ExprTree,
    PolyMap,
    Prod,
    Sum,
    Var,
    is_copyless,
    is_copyless_tree,
    render_tree,
    var_occurrences,
)
from .lrs import Lrs
from .poly import UniPoly
from .qbf import Qbf, parse_and_normalize, render_qbf
from .wa import WeightedAutomaton
from .matrix import RatMatrix

HEADER_PREFIX = "psfwb-format"
VERSION = "v1"
KINDS = ("wa", "ccra", "qbf", "sequence", "exppoly", "report")

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[()*+]))"
)


@dataclass(frozen=True)
class CcraFile:
    """A register machine together with its on-disk register names."""

    ccra: Ccra
    register_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "register_names", tuple(self.register_names))
        if len(self.register_names) != self.ccra.register_count:
            raise ValueError("one name per register required")
        if len(set(self.register_names)) != len(self.register_names):
            raise ValueError("register names must be distinct")
        for name in self.register_names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid register name {name!r}")


@dataclass(frozen=True)
class Report:
    """Free-form command output preserved verbatim."""

    body: str


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {token!r}", line=line) from None


def _rational_row(tokens, line: int) -> tuple[Fraction, ...]:
    return tuple(_rational(t, line) for t in tokens)


def render_rational(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# expressions


def parse_expression(text: str, register_index: dict, line: int) -> ExprTree:
    """Parse +/* expressions with parentheses over rationals and names."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FormatError(f"bad expression near {text[pos:].strip()!r}", line=line)
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    cursor = 0

    def peek():
        return tokens[cursor] if cursor < len(tokens) else (None, None)

    def take():
        nonlocal cursor
        tok = peek()
        cursor += 1
        return tok

    def atom() -> ExprTree:
        kind, value = take()
        if kind == "num":
            return Const(_rational(value, line))
        if kind == "name":
            if value not in register_index:
                raise FormatError(f"unknown register {value!r}", line=line)
            return Var(register_index[value])
        if kind == "op" and value == "(":
            inner = summation()
            kind2, value2 = take()
            if (kind2, value2) != ("op", ")"):
                raise FormatError("missing closing parenthesis", line=line)
            return inner
        raise FormatError(f"expected a value, got {value!r}", line=line)

    def product() -> ExprTree:
        parts = [atom()]
        while peek() == ("op", "*"):
            take()
            parts.append(atom())
        return parts[0] if len(parts) == 1 else Prod(tuple(parts))

    def summation() -> ExprTree:
        parts = [product()]
        while peek() == ("op", "+"):
            take()
            parts.append(product())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    if not tokens:
        raise FormatError("empty expression", line=line)
    tree = summation()
    if cursor != len(tokens):
        raise FormatError(f"trailing tokens after expression: {tokens[cursor:]!r}", line=line)
    return tree


# ---------------------------------------------------------------------------
# line reader


class _Lines:
    def __init__(self, text: str):
        self.raw = text.splitlines()
        self.pos = 0

    @property
    def line_no(self) -> int:
        return self.pos  # 1-based number of the line just taken

    def take(self, context: str) -> str:
        while self.pos < len(self.raw):
            line = self.raw[self.pos]
            self.pos += 1
            if line.strip():
                return line.strip()
        raise FormatError(f"file ended while reading {context}", line=len(self.raw))

    def done(self) -> bool:
        return all(not line.strip() for line in self.raw[self.pos:])


def _fields(line: str, label: str, line_no: int) -> list[str]:
    parts = line.split()
    if not parts or parts[0] != label:
        raise FormatError(f"expected a {label!r} line, got {line!r}", line=line_no)
    return parts[1:]


def detect_kind(text: str) -> str:
    first = text.lstrip().splitlines()[0].strip() if text.strip() else ""
    parts = first.split()
    if len(parts) != 3 or parts[0] != HEADER_PREFIX or parts[2] != VERSION:
        raise FormatError(f"missing header '{HEADER_PREFIX} <kind> {VERSION}'", line=1)
    if parts[1] not in KINDS:
        raise FormatError(f"unknown kind {parts[1]!r}", line=1)
    return parts[1]


# ---------------------------------------------------------------------------
# weighted automata


def _dump_wa(a: WeightedAutomaton) -> str:
    out = [f"{HEADER_PREFIX} wa {VERSION}"]
    out.append(f"dim {a.dim}")
    out.append("alphabet " + " ".join(a.alphabet))
    out.append("initial " + " ".join(render_rational(x) for x in a.initial))
    out.append("final " + " ".join(render_rational(x) for x in a.final))
    for symbol in a.alphabet:
        out.append(f"matrix {symbol}")
        m = a.matrix(symbol)
        for i in range(a.dim):
            out.append(" ".join(render_rational(m[i, j]) for j in range(a.dim)))
    return "\n".join(out) + "\n"


def _load_wa(lines: _Lines) -> WeightedAutomaton:
    dim_fields = _fields(lines.take("dim"), "dim", lines.line_no)
    if len(dim_fields) != 1 or not dim_fields[0].isdigit():
        raise FormatError("dim takes one nonnegative integer", line=lines.line_no)
    dim = int(dim_fields[0])
    alphabet = tuple(_fields(lines.take("alphabet"), "alphabet", lines.line_no))
    initial = _rational_row(_fields(lines.take("initial"), "initial", lines.line_no), lines.line_no)
    final = _rational_row(_fields(lines.take("final"), "final", lines.line_no), lines.line_no)
    if len(initial) != dim or len(final) != dim:
        raise FormatError("initial/final vectors must have dim entries", line=lines.line_no)
    transitions = {}
    for _ in alphabet:
        fields = _fields(lines.take("matrix"), "matrix", lines.line_no)
        if len(fields) != 1:
            raise FormatError("matrix takes one symbol", line=lines.line_no)
        symbol = fields[0]
        if symbol not in alphabet or symbol in transitions:
            raise FormatError(f"unexpected matrix symbol {symbol!r}", line=lines.line_no)
        rows = []
        for _ in range(dim):
            row = _rational_row(lines.take("matrix row").split(), lines.line_no)
            if len(row) != dim:
                raise FormatError(f"matrix row needs {dim} entries", line=lines.line_no)
            rows.append(row)
        transitions[symbol] = RatMatrix.from_rows(rows)
    if not lines.done():
        raise FormatError("unexpected content after the automaton", line=lines.pos + 1)
    return WeightedAutomaton(
        dim=dim, alphabet=alphabet, transitions=transitions, initial=initial, final=final
    )


# ---------------------------------------------------------------------------
# register machines


def _dump_ccra(cf: CcraFile) -> str:
    c, names = cf.ccra, cf.register_names
    out = [f"{HEADER_PREFIX} ccra {VERSION}"]
    out.append("states " + " ".join(c.states))
    out.append(f"initial {c.initial_state}")
    out.append("registers " + " ".join(names))
    out.append("values " + " ".join(render_rational(x) for x in c.mu))
    out.append("alphabet " + " ".join(c.alphabet))
    for state in c.states:
        for symbol in c.alphabet:
            target, update = c.delta[(state, symbol)]
            out.append(f"update {state} {symbol} -> {target}")
            for i, name in enumerate(names):
                out.append(f"  {name} := {render_tree(update.components[i], names)}")
    for state in c.states:
        out.append(f"output {state} := {render_tree(c.nu[state], names)}")
    return "\n".join(out) + "\n"


def _check_copyless_map(update: PolyMap, names, state, symbol, line: int):
    report = is_copyless(update)
    if report.ok:
        return
    offenders = ", ".join(names[i] for i in report.duplicated)
    shown = [
        f"{names[i]} := {render_tree(comp, names)}"
        for i, comp in enumerate(update.components)
        if any(v in report.duplicated for v in var_occurrences(comp))
    ]
    raise CopylessViolation(
        f"update at ({state!r}, {symbol!r}) ending on line {line} reads "
        f"{offenders} more than once: " + "; ".join(shown),
        offender=report.duplicated,
    )


def _load_ccra(lines: _Lines) -> CcraFile:
    states = tuple(_fields(lines.take("states"), "states", lines.line_no))
    initial_fields = _fields(lines.take("initial"), "initial", lines.line_no)
    if len(initial_fields) != 1:
        raise FormatError("initial takes one state", line=lines.line_no)
    initial_state = initial_fields[0]
    names = tuple(_fields(lines.take("registers"), "registers", lines.line_no))
    for name in names:
        if not _NAME_RE.match(name):
            raise FormatError(f"invalid register name {name!r}", line=lines.line_no)
    if len(set(names)) != len(names):
        raise FormatError("register names must be distinct", line=lines.line_no)
    index = {name: i for i, name in enumerate(names)}
    mu = _rational_row(_fields(lines.take("values"), "values", lines.line_no), lines.line_no)
    if len(mu) != len(names):
        raise FormatError("values must list one rational per register", line=lines.line_no)
    alphabet = tuple(_fields(lines.take("alphabet"), "alphabet", lines.line_no))

    delta = {}
    for _ in range(len(states) * len(alphabet)):
        fields = _fields(lines.take("update"), "update", lines.line_no)
        if len(fields) != 4 or fields[2] != "->":
            raise FormatError("expected 'update <state> <symbol> -> <state>'", line=lines.line_no)
        state, symbol, _, target = fields
        if state not in states or target not in states:
            raise FormatError(f"unknown state in update {state!r} -> {target!r}", line=lines.line_no)
        if symbol not in alphabet:
            raise FormatError(f"unknown symbol {symbol!r}", line=lines.line_no)
        if (state, symbol) in delta:
            raise FormatError(f"duplicate update for ({state!r}, {symbol!r})", line=lines.line_no)
        components: list[ExprTree] = []
        for name in names:
            line = lines.take("register update")
            line_no = lines.line_no
            if ":=" not in line:
                raise FormatError("expected '<register> := <expression>'", line=line_no)
            lhs, rhs = line.split(":=", 1)
            if lhs.strip() != name:
                raise FormatError(
                    f"updates must list registers in declared order; expected {name!r}, "
                    f"got {lhs.strip()!r}",
                    line=line_no,
                )
            components.append(parse_expression(rhs.strip(), index, line_no))
        update = PolyMap(len(names), tuple(components))
        _check_copyless_map(update, names, state, symbol, lines.line_no)
        delta[(state, symbol)] = (target, update)

    nu = {}
    for _ in states:
        line = lines.take("output")
        line_no = lines.line_no
        fields = line.split(":=", 1)
        head = fields[0].split()
        if len(fields) != 2 or len(head) != 2 or head[0] != "output":
            raise FormatError("expected 'output <state> := <expression>'", line=line_no)
        state = head[1]
        if state not in states or state in nu:
            raise FormatError(f"bad or repeated output state {state!r}", line=line_no)
        tree = parse_expression(fields[1].strip(), index, line_no)
        if not is_copyless_tree(tree):
            occ = var_occurrences(tree)
            dup = sorted({v for v in occ if occ.count(v) > 1})
            raise CopylessViolation(
                f"output of {state!r} on line {line_no} reads "
                + ", ".join(names[v] for v in dup)
                + f" more than once: {render_tree(tree, names)}",
                offender=tuple(dup),
            )
        nu[state] = tree
    if not lines.done():
        raise FormatError("unexpected content after the machine", line=lines.pos + 1)

    machine = Ccra(
        states=states,
        initial_state=initial_state,
        register_count=len(names),
        alphabet=alphabet,
        delta=delta,
        mu=mu,
        nu=nu,
    )
    return CcraFile(ccra=machine, register_names=names)


# ---------------------------------------------------------------------------
# sequences


def _dump_sequence(seq: Lrs) -> str:
    out = [f"{HEADER_PREFIX} sequence {VERSION}"]
    out.append(f"order {len(seq.coefficients)}")
    out.append(
        ("coefficients " + " ".join(render_rational(c) for c in seq.coefficients)).rstrip()
    )
    out.append(("initial " + " ".join(render_rational(x) for x in seq.initial_terms)).rstrip())
    return "\n".join(out) + "\n"


def _load_sequence(lines: _Lines) -> Lrs:
    order_fields = _fields(lines.take("order"), "order", lines.line_no)
    if len(order_fields) != 1 or not order_fields[0].isdigit():
        raise FormatError("order takes one nonnegative integer", line=lines.line_no)
    order = int(order_fields[0])
    coeffs = _rational_row(
        _fields(lines.take("coefficients"), "coefficients", lines.line_no), lines.line_no
    )
    initial = _rational_row(_fields(lines.take("initial"), "initial", lines.line_no), lines.line_no)
    if len(coeffs) != order or len(initial) != order:
        raise FormatError("coefficients and initial must list `order` entries", line=lines.line_no)
    if not lines.done():
        raise FormatError("unexpected content after the sequence", line=lines.pos + 1)
    return Lrs(coeffs, initial)


# ---------------------------------------------------------------------------
# exponential polynomials


def _dump_exppoly(q) -> str:
    out = [f"{HEADER_PREFIX} exppoly {VERSION}"]
    if isinstance(q, FpExpPoly):
        out.append(f"modulus {q.modulus}")
        for base in sorted(q.terms):
            coeffs = " ".join(str(c.residue) for c in q.terms[base].coeffs)
            out.append(f"term {base} : {coeffs}")
    elif isinstance(q, ExpPoly):
        out.append("modulus none")
        out.append(f"valid-from {q.valid_from}")
        for base in sorted(q.terms):
            coeffs = " ".join(render_rational(c) for c in q.terms[base].coeffs)
            out.append(f"term {render_rational(base)} : {coeffs}")
    else:
        raise TypeError(f"not an exponential polynomial: {q!r}")
    return "\n".join(out) + "\n"


def _load_exppoly(lines: _Lines):
    mod_fields = _fields(lines.take("modulus"), "modulus", lines.line_no)
    if len(mod_fields) != 1:
        raise FormatError("modulus takes one value", line=lines.line_no)
    modulus = mod_fields[0]

    def term_lines():
        while not lines.done():
            line = lines.take("term")
            fields = line.split()
            if len(fields) < 3 or fields[0] != "term" or fields[2] != ":":
                raise FormatError("expected 'term <base> : <coefficients>'", line=lines.line_no)
            yield fields[1], fields[3:], lines.line_no

    if modulus == "none":
        vf_fields = _fields(lines.take("valid-from"), "valid-from", lines.line_no)
        if len(vf_fields) != 1 or not vf_fields[0].isdigit():
            raise FormatError("valid-from takes one nonnegative integer", line=lines.line_no)
        valid_from = int(vf_fields[0])
        terms = {}
        for base_text, coeff_text, line_no in term_lines():
            base = _rational(base_text, line_no)
            if base in terms:
                raise FormatError(f"repeated base {base_text}", line=line_no)
            terms[base] = UniPoly(_rational_row(coeff_text, line_no))
        return ExpPoly(terms, valid_from=valid_from)

    if not modulus.isdigit():
        raise FormatError("modulus must be 'none' or a prime", line=lines.line_no)
    p = int(modulus)
    terms = {}
    for base_text, coeff_text, line_no in term_lines():
        try:
            base = int(base_text)
            coeffs = [int(c) for c in coeff_text]
        except ValueError:
            raise FormatError("prime-field terms use integer entries", line=line_no) from None
        if base % p in terms:
            raise FormatError(f"repeated base {base_text}", line=line_no)
        terms[base % p] = coeffs
    try:
        return FpExpPoly(p, terms)
    except ValueError as exc:
        raise FormatError(str(exc), line=lines.line_no) from None


# ---------------------------------------------------------------------------
# quantified formulas and reports


def _dump_qbf(q: Qbf) -> str:
    return f"{HEADER_PREFIX} qbf {VERSION}\n" + render_qbf(q)


def _load_qbf(lines: _Lines) -> Qbf:
    rest = "\n".join(lines.raw[lines.pos:])
    lines.pos = len(lines.raw)
    return parse_and_normalize(rest)


def load_qbf_text(text: str) -> Qbf:
    """A formula file with or without the psfwb-format header line."""
    stripped = text.lstrip()
    if stripped.startswith(HEADER_PREFIX):
        obj = loads(text)
        if not isinstance(obj, Qbf):
            raise FormatError("expected a qbf file")
        return obj
    return parse_and_normalize(text)


def _dump_report(r: Report) -> str:
    body = r.body if r.body.endswith("\n") or not r.body else r.body + "\n"
    return f"{HEADER_PREFIX} report {VERSION}\n" + body


def _load_report(lines: _Lines) -> Report:
    body = "\n".join(lines.raw[lines.pos:])
    lines.pos = len(lines.raw)
    return Report(body=body + "\n" if body else "")


# ---------------------------------------------------------------------------
# public entry points


def loads(text: str):
    """Parse any workbench file, dispatching on its header."""
    kind = detect_kind(text)
    lines = _Lines(text)
    lines.take("header")
    loader = {
        "wa": _load_wa,
        "ccra": _load_ccra,
        "sequence": _load_sequence,
        "exppoly": _load_exppoly,
        "qbf": _load_qbf,
        "report": _load_report,
    }[kind]
    return loader(lines)


def dumps(obj, register_names=None) -> str:
    """Serialise a workbench object to its canonical text form."""
    if isinstance(obj, WeightedAutomaton):
        return _dump_wa(obj)
    if isinstance(obj, CcraFile):
        return _dump_ccra(obj)
    if isinstance(obj, Ccra):
        names = register_names or tuple(f"r{i}" for i in range(obj.register_count))
        return _dump_ccra(CcraFile(ccra=obj, register_names=names))
    if isinstance(obj, Lrs):
        return _dump_sequence(obj)
    if isinstance(obj, (ExpPoly, FpExpPoly)):
        return _dump_exppoly(obj)
    if isinstance(obj, Qbf):
        return _dump_qbf(obj)
    if isinstance(obj, Report):
        return _dump_report(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def load_path(path) -> object:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


def save_path(path, obj, register_names=None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(obj, register_names=register_names))
