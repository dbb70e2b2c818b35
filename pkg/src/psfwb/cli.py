"""Command line front end.

Every command reads machine descriptions from files in the documented text
format and prints either plain ``key: value`` records or, with
``--json-lines``, one JSON object per record.  Commands that produce a new
machine or sequence print it in the same file format, so outputs can be fed
back in.  Exit status is 0 for a completed run (whatever the verdict), 1 for
a domain error such as a malformed file, and 2 for bad usage.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .ambiguity import is_polynomially_ambiguous, triangularize_power
from .ccra import Ccra, evaluate as ccra_evaluate, to_weighted_automaton, zeroness_ccra, equivalence_ccra
from .eps import ExpPoly, FpExpPoly, coeff_sums_in_semiring, fp_coeff_sum, from_lrs, minimal_degree_reduce
from .errors import PsfwbError
from .fixtures import FIXTURES, fixture_by_slug, fixture_file_text
from .formats import CcraFile, Report, dumps, load_path
from .lrs import Lrs
from .psf import (
    ccra_obstruction_report,
    pa_obstruction_report,
    psf_element_ccra,
    psf_element_wa,
    random_witnesses,
    subsample,
)
from .qbf import Qbf, brute_force_qbf, decide_via_ccra, qbf_to_ccra
from .wa import WeightedAutomaton, evaluate as wa_evaluate, zeroness, equivalence

DEFAULT_SEED = 1789


# ---------------------------------------------------------------------------
# rendering


def _word_str(word) -> str:
    return "".join(word) if word else "eps"


def _value_str(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (frozenset, set)):
        return " ".join(str(v) for v in sorted(value)) or "none"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value) or "none"
    if value is None:
        return "none"
    return str(value)


def _jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (frozenset, set)):
        return [_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


class Emitter:
    """Uniform output: text records or JSON lines."""

    def __init__(self, json_lines: bool):
        self.json_lines = json_lines
        self._printed = False

    def record(self, **fields):
        if self.json_lines:
            print(json.dumps({k: _jsonable(v) for k, v in fields.items()}))
            return
        if self._printed:
            print()
        self._printed = True
        for key, value in fields.items():
            if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
                print(f"{key}:")
                for row in value:
                    print("  " + " ".join(str(x) for x in row))
            else:
                print(f"{key}: {_value_str(value)}")

    def block(self, text: str, **fields):
        """A verbatim file body, tagged with extra fields in JSON mode."""
        if self.json_lines:
            fields["text"] = text
            print(json.dumps({k: _jsonable(v) for k, v in fields.items()}))
        else:
            sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument helpers


def _word_arg(text: str) -> tuple:
    return () if text == "eps" else tuple(text)


def _triple_arg(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise PsfwbError(f"expected a triple u,w,v, got {text!r}")
    return tuple(_word_arg(p) for p in parts)


def _fractions_arg(text: str) -> list:
    try:
        return [Fraction(part) for part in text.split(",") if part]
    except ValueError:
        raise PsfwbError(f"bad rational list {text!r}") from None


def _ints_arg(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise PsfwbError(f"bad integer list {text!r}") from None


def _load(path: str):
    try:
        return load_path(path)
    except OSError as exc:
        raise PsfwbError(f"cannot read {path}: {exc.strerror or exc}") from None


def _as_machine(obj):
    """Accept a weighted automaton or a register machine file."""
    if isinstance(obj, CcraFile):
        return obj.ccra
    if isinstance(obj, (WeightedAutomaton, Ccra)):
        return obj
    raise PsfwbError(f"expected an automaton file, got {_kind_name(obj)}")


def _as_wa(obj, budget: int) -> WeightedAutomaton:
    machine = _as_machine(obj)
    if isinstance(machine, Ccra):
        return to_weighted_automaton(machine, budget=budget)
    return machine


def _kind_name(obj) -> str:
    if isinstance(obj, WeightedAutomaton):
        return "wa"
    if isinstance(obj, (Ccra, CcraFile)):
        return "ccra"
    if isinstance(obj, Lrs):
        return "sequence"
    if isinstance(obj, (ExpPoly, FpExpPoly)):
        return "exppoly"
    if isinstance(obj, Qbf):
        return "qbf"
    if isinstance(obj, Report):
        return "report"
    return type(obj).__name__


def _gather_witnesses(args, alphabet) -> list:
    explicit = [_triple_arg(t) for t in (args.witness or [])]
    if args.random:
        import random

        rng = random.Random(args.seed)
        explicit.extend(random_witnesses(rng, alphabet, args.random, max_length=args.max_length))
    if not explicit:
        raise PsfwbError("no witnesses: pass --witness u,w,v or --random N")
    return explicit


def _sequence_of(obj, path: str) -> Lrs:
    if isinstance(obj, Lrs):
        return obj
    if isinstance(obj, WeightedAutomaton):
        if len(obj.alphabet) != 1:
            raise PsfwbError(f"{path}: automaton alphabet must have one letter to read it as a sequence")
        return Lrs.from_1letter_wa(obj)
    raise PsfwbError(f"{path}: expected a sequence or one-letter automaton file")


# ---------------------------------------------------------------------------
# commands


def _cmd_eval(args, out: Emitter) -> int:
    obj = _load(args.file)
    if isinstance(obj, WeightedAutomaton):
        value = wa_evaluate(obj, _word_arg(args.input))
    elif isinstance(obj, CcraFile):
        value = ccra_evaluate(obj.ccra, _word_arg(args.input))
    elif isinstance(obj, Lrs):
        n = int(args.input)
        if n < 0:
            raise PsfwbError("sequence index must be nonnegative")
        value = obj.terms(n + 1)[n]
    elif isinstance(obj, (ExpPoly, FpExpPoly)):
        value = obj.eval_at(int(args.input))
        if isinstance(obj, FpExpPoly):
            out.record(input=args.input, residue=value.residue, modulus=obj.modulus)
            return 0
    else:
        raise PsfwbError(f"eval does not apply to a {_kind_name(obj)} file")
    out.record(input=args.input, value=value)
    return 0


def _cmd_zeroness(args, out: Emitter) -> int:
    obj = _load(args.file)
    machine = _as_machine(obj)
    if isinstance(machine, Ccra):
        zero, witness = zeroness_ccra(machine, budget=args.budget)
    else:
        zero, witness = zeroness(machine)
    out.record(zero=zero, witness=_word_str(witness) if witness is not None else None)
    return 0


def _cmd_equivalence(args, out: Emitter) -> int:
    left = _as_machine(_load(args.left))
    right = _as_machine(_load(args.right))
    if isinstance(left, Ccra) and isinstance(right, Ccra):
        same, counterexample = equivalence_ccra(left, right, budget=args.budget)
    elif isinstance(left, WeightedAutomaton) and isinstance(right, WeightedAutomaton):
        same, counterexample = equivalence(left, right)
    else:
        same, counterexample = equivalence(
            _as_wa(left, args.budget), _as_wa(right, args.budget)
        )
    out.record(
        equivalent=same,
        counterexample=_word_str(counterexample) if counterexample is not None else None,
    )
    return 0


def _cmd_translate(args, out: Emitter) -> int:
    obj = _load(args.file)
    if not isinstance(obj, CcraFile):
        raise PsfwbError("translate expects a register machine file")
    automaton = to_weighted_automaton(obj.ccra, budget=args.budget)
    out.block(dumps(automaton), dim=automaton.dim)
    return 0


def _cmd_ambiguity(args, out: Emitter) -> int:
    automaton = _load(args.file)
    if not isinstance(automaton, WeightedAutomaton):
        raise PsfwbError("ambiguity expects a weighted automaton file")
    out.record(polynomially_ambiguous=is_polynomially_ambiguous(automaton))
    return 0


def _cmd_triangularize(args, out: Emitter) -> int:
    automaton = _load(args.file)
    if not isinstance(automaton, WeightedAutomaton):
        raise PsfwbError("triangularize expects a weighted automaton file")
    result = triangularize_power(automaton, _word_arg(args.word), exponent=args.exponent)
    out.record(
        exponent=result.exponent,
        permutation=result.permutation.images,
        diagonal=result.diagonal,
        matrix=[[str(x) for x in row] for row in result.matrix.entries],
    )
    return 0


def _element(obj, triple, horizon):
    u, w, v = triple
    if isinstance(obj, CcraFile):
        return psf_element_ccra(obj.ccra, u, w, v, horizon=horizon)
    if isinstance(obj, WeightedAutomaton):
        return psf_element_wa(obj, u, w, v)
    raise PsfwbError("expected an automaton file")


def _emit_sequence(out: Emitter, sequence: Lrs, **fields):
    out.block(
        dumps(sequence),
        order=sequence.order,
        coefficients=sequence.coefficients,
        initial=sequence.initial_terms,
        **fields,
    )


def _cmd_psf(args, out: Emitter) -> int:
    element = _element(_load(args.file), _triple_arg(args.triple), args.horizon)
    _emit_sequence(
        out,
        element.sequence,
        source=element.source,
        u=_word_str(element.u),
        w=_word_str(element.w),
        v=_word_str(element.v),
    )
    return 0


def _cmd_subsample(args, out: Emitter) -> int:
    element = _element(_load(args.file), _triple_arg(args.triple), args.horizon)
    if args.modulus < 1:
        raise PsfwbError("subsampling modulus must be positive")
    _emit_sequence(out, subsample(element, args.modulus), modulus=args.modulus)
    return 0


def _cmd_exppoly(args, out: Emitter) -> int:
    sequence = _sequence_of(_load(args.file), args.file)
    q = from_lrs(sequence)
    out.block(dumps(q), bases=q.bases, degree=q.degree, valid_from=q.valid_from)
    return 0


def _cmd_coeffsums(args, out: Emitter) -> int:
    obj = _load(args.file)
    if isinstance(obj, FpExpPoly):
        reduced = minimal_degree_reduce(obj)
        for k in args.ks if args.ks is not None else range(reduced.degree + 1):
            out.record(k=k, residue=fp_coeff_sum(reduced, k).residue, modulus=obj.modulus)
        return 0
    if isinstance(obj, ExpPoly):
        q = obj
    else:
        q = from_lrs(_sequence_of(obj, args.file))
    if args.generators is None:
        raise PsfwbError("coeffsums over the rationals needs --generators")
    for entry in coeff_sums_in_semiring(q, args.generators, ks=args.ks):
        out.record(
            k=entry.k,
            value=entry.value,
            in_semiring=entry.ok,
            offending_primes=entry.offending_primes,
        )
    return 0


def _cmd_obstruct_ccra(args, out: Emitter) -> int:
    automaton = _as_wa(_load(args.file), args.budget)
    witnesses = _gather_witnesses(args, automaton.alphabet)
    if args.generators is None:
        raise PsfwbError("obstruct-ccra needs --generators for the candidate semiring")
    report = ccra_obstruction_report(automaton, witnesses, args.modulus, args.generators, args.ks)
    for witness in report.witnesses:
        out.record(
            u=_word_str(witness.u),
            w=_word_str(witness.w),
            v=_word_str(witness.v),
            bases=witness.exppoly.bases,
            coeff_sums=[str(e.value) for e in witness.coeff_sums],
            offending_primes=witness.offending_primes,
        )
    out.record(
        modulus=report.modulus,
        offending_primes=report.offending_primes,
        obstructed=report.obstructed,
    )
    return 0


def _cmd_obstruct_pa(args, out: Emitter) -> int:
    obj = _load(args.file)
    machine = _as_machine(obj)
    witnesses = _gather_witnesses(args, machine.alphabet)
    report = pa_obstruction_report(machine, witnesses, horizon=args.horizon)
    for entry, support in zip(report.entries, report.support_trace):
        out.record(
            u=_word_str(entry.u),
            w=_word_str(entry.w),
            v=_word_str(entry.v),
            roots=entry.roots,
            skipped=entry.skipped,
            note=entry.note or None,
            support_so_far=support,
        )
    out.record(joint_support=report.joint_support, obstructed=report.obstructed)
    return 0


def _cmd_qbf2ccra(args, out: Emitter) -> int:
    quantified = _load_qbf(args.file)
    reduction = qbf_to_ccra(quantified)
    names = tuple(
        reduction.layout.register_name(i)
        for i in range(reduction.layout.register_count)
    )
    out.block(
        dumps(reduction.ccra, register_names=names),
        states=len(reduction.ccra.states),
        registers=reduction.layout.register_count,
        circuit_bound=reduction.ell,
    )
    return 0


def _load_qbf(path: str) -> Qbf:
    from .formats import load_qbf_text

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PsfwbError(f"cannot read {path}: {exc.strerror or exc}") from None
    return load_qbf_text(text)


def _cmd_qbf_solve(args, out: Emitter) -> int:
    quantified = _load_qbf(args.file)
    if quantified.k <= 2:
        valid, word = decide_via_ccra(quantified)
        method = "register-machine"
        witness = _word_str(word) if word is not None else None
    else:
        valid = brute_force_qbf(quantified)
        method = "truth-table"
        witness = None
    out.record(
        verdict="VALID" if valid else "INVALID",
        valid=valid,
        witness=witness,
        method=method,
    )
    return 0


def _cmd_examples(args, out: Emitter) -> int:
    if args.slug:
        fixture = fixture_by_slug(args.slug)
        out.block(fixture_file_text(fixture), slug=fixture.slug, kind=fixture.kind)
        return 0
    if args.dir:
        target = Path(args.dir)
        target.mkdir(parents=True, exist_ok=True)
        for fixture in FIXTURES:
            path = target / f"{fixture.slug}.psfwb"
            path.write_text(fixture_file_text(fixture))
            out.record(slug=fixture.slug, kind=fixture.kind, path=str(path))
        return 0
    for fixture in FIXTURES:
        out.record(
            slug=fixture.slug,
            kind=fixture.kind,
            input=fixture.headline_input,
            value=fixture.headline_value,
            description=fixture.description,
        )
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-lines", action="store_true", help="one JSON object per record")

    witnessy = argparse.ArgumentParser(add_help=False)
    witnessy.add_argument("--witness", action="append", metavar="U,W,V",
                          help="witness triple; 'eps' denotes the empty word (repeatable)")
    witnessy.add_argument("--random", type=int, default=0, metavar="N",
                          help="append N random witnesses")
    witnessy.add_argument("--seed", type=int, default=DEFAULT_SEED)
    witnessy.add_argument("--max-length", type=int, default=8)

    parser = argparse.ArgumentParser(
        prog="psfwb",
        description="exact workbench for weighted automata and copyless register machines",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("eval", parents=[common], help="evaluate a machine, sequence, or closed form")
    p.add_argument("file")
    p.add_argument("input", help="word ('eps' for empty) or index")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("zeroness", parents=[common], help="is the computed function identically zero")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.set_defaults(run=_cmd_zeroness)

    p = sub.add_parser("equivalence", parents=[common], help="do two machines agree on every word")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.set_defaults(run=_cmd_equivalence)

    p = sub.add_parser("translate", parents=[common],
                       help="expand a register machine into a weighted automaton")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.set_defaults(run=_cmd_translate)

    p = sub.add_parser("ambiguity", parents=[common], help="test for polynomial ambiguity")
    p.add_argument("file")
    p.set_defaults(run=_cmd_ambiguity)

    p = sub.add_parser("triangularize", parents=[common],
                       help="conjugate a power of a word matrix to upper triangular form")
    p.add_argument("file")
    p.add_argument("word")
    p.add_argument("--exponent", type=int, default=None)
    p.set_defaults(run=_cmd_triangularize)

    p = sub.add_parser("psf", parents=[common],
                       help="pumped-word sequence n -> f(u w^n v) as a recurrent sequence")
    p.add_argument("file")
    p.add_argument("triple", metavar="U,W,V")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(run=_cmd_psf)

    p = sub.add_parser("subsample", parents=[common],
                       help="restrict a pumped-word sequence to the indices m(n+1)")
    p.add_argument("file")
    p.add_argument("triple", metavar="U,W,V")
    p.add_argument("modulus", type=int)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(run=_cmd_subsample)

    p = sub.add_parser("exppoly", parents=[common],
                       help="closed exponential-polynomial form of a recurrent sequence")
    p.add_argument("file")
    p.set_defaults(run=_cmd_exppoly)

    p = sub.add_parser("coeffsums", parents=[common],
                       help="coefficient sums of a closed form, checked against a semiring")
    p.add_argument("file")
    p.add_argument("--generators", type=_fractions_arg, default=None, metavar="LIST")
    p.add_argument("--ks", type=_ints_arg, default=None, metavar="LIST")
    p.set_defaults(run=_cmd_coeffsums)

    p = sub.add_parser("obstruct-ccra", parents=[common, witnessy],
                       help="coefficient-sum obstruction against copyless register recognisability")
    p.add_argument("file")
    p.add_argument("--modulus", type=int, required=True, metavar="M",
                   help="subsampling modulus for the pumped sequences")
    p.add_argument("--generators", type=_fractions_arg, default=None, metavar="LIST")
    p.add_argument("--ks", type=_ints_arg, default=None, metavar="LIST")
    p.add_argument("--budget", type=int, default=1 << 20)
    p.set_defaults(run=_cmd_obstruct_ccra)

    p = sub.add_parser("obstruct-pa", parents=[common, witnessy],
                       help="root-support obstruction against polynomial ambiguity")
    p.add_argument("file")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(run=_cmd_obstruct_pa)

    p = sub.add_parser("qbf2ccra", parents=[common],
                       help="compile a forall-exists formula into a register machine")
    p.add_argument("file")
    p.set_defaults(run=_cmd_qbf2ccra)

    p = sub.add_parser("qbf-solve", parents=[common], help="decide a forall-exists formula")
    p.add_argument("file")
    p.set_defaults(run=_cmd_qbf_solve)

    p = sub.add_parser("examples", parents=[common], help="list or print the bundled examples")
    p.add_argument("slug", nargs="?", default=None)
    p.add_argument("--dir", default=None, help="write every example file into this directory")
    p.set_defaults(run=_cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = Emitter(args.json_lines)
    try:
        return args.run(args, out)
    except PsfwbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
