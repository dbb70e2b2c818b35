"""Arithmetic expression trees over register variables, and copyless maps.

Trees are built from constants, variables, n-ary sums and n-ary products.
A tree is copyless when no variable occurs in it twice; a polynomial map
(one tree per register) is copyless when no variable occurs twice across
all components together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import SquareDetected


class ExprTree:
    __slots__ = ()


@dataclass(frozen=True)
class Const(ExprTree):
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var(ExprTree):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable indices are nonnegative")


@dataclass(frozen=True)
class Sum(ExprTree):
    children: tuple[ExprTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Prod(ExprTree):
    children: tuple[ExprTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(v) -> Const:
    return Const(Fraction(v))


def neg(t: ExprTree) -> ExprTree:
    return Prod((Const(Fraction(-1)), t))


def evaluate(tree: ExprTree, values) -> Fraction:
    if isinstance(tree, Const):
        return tree.value
    if isinstance(tree, Var):
        return values[tree.index]
    if isinstance(tree, Sum):
        acc = Fraction(0)
        for c in tree.children:
            acc += evaluate(c, values)
        return acc
    if isinstance(tree, Prod):
        acc = Fraction(1)
        for c in tree.children:
            acc *= evaluate(c, values)
        return acc
    raise TypeError(f"not an ExprTree: {tree!r}")


def var_occurrences(tree: ExprTree) -> list[int]:
    """Variable indices used by the tree, once per occurrence."""
    out: list[int] = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            out.append(t.index)
        elif isinstance(t, (Sum, Prod)):
            stack.extend(t.children)
    return out


def tree_constants(tree: ExprTree) -> set[Fraction]:
    out: set[Fraction] = set()
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Const):
            out.add(t.value)
        elif isinstance(t, (Sum, Prod)):
            stack.extend(t.children)
    return out


def max_var(tree: ExprTree) -> int:
    occ = var_occurrences(tree)
    return max(occ) if occ else -1


def is_copyless_tree(tree: ExprTree) -> bool:
    occ = var_occurrences(tree)
    return len(occ) == len(set(occ))


def substitute(tree: ExprTree, replacements) -> ExprTree:
    """Replace Var(i) by replacements[i] everywhere."""
    if isinstance(tree, Const):
        return tree
    if isinstance(tree, Var):
        return replacements[tree.index]
    if isinstance(tree, Sum):
        return Sum(tuple(substitute(c, replacements) for c in tree.children))
    if isinstance(tree, Prod):
        return Prod(tuple(substitute(c, replacements) for c in tree.children))
    raise TypeError(f"not an ExprTree: {tree!r}")


def expand_squarefree(tree: ExprTree, arity: int) -> dict[frozenset[int], Fraction]:
    """Expand into {variable subset: coefficient}, zero coefficients dropped.

    Only valid for trees that are multilinear by construction; a repeated
    variable inside any product raises SquareDetected.
    """

    def go(t: ExprTree) -> dict[frozenset[int], Fraction]:
        if isinstance(t, Const):
            return {} if not t.value else {frozenset(): t.value}
        if isinstance(t, Var):
            if t.index >= arity:
                raise ValueError(f"variable {t.index} outside arity {arity}")
            return {frozenset((t.index,)): Fraction(1)}
        if isinstance(t, Sum):
            acc: dict[frozenset[int], Fraction] = {}
            for c in t.children:
                for mono, coeff in go(c).items():
                    v = acc.get(mono, Fraction(0)) + coeff
                    if v:
                        acc[mono] = v
                    elif mono in acc:
                        del acc[mono]
            return acc
        if isinstance(t, Prod):
            acc = {frozenset(): Fraction(1)}
            for c in t.children:
                factor = go(c)
                nxt: dict[frozenset[int], Fraction] = {}
                for m1, c1 in acc.items():
                    for m2, c2 in factor.items():
                        inter = m1 & m2
                        if inter:
                            raise SquareDetected(min(inter))
                        key = m1 | m2
                        v = nxt.get(key, Fraction(0)) + c1 * c2
                        if v:
                            nxt[key] = v
                        elif key in nxt:
                            del nxt[key]
                acc = nxt
            return acc
        raise TypeError(f"not an ExprTree: {t!r}")

    return go(tree)


def expand_monomials(tree: ExprTree) -> dict[tuple[tuple[int, int], ...], Fraction]:
    """General expansion into {((var, exponent), ...): coefficient}.

    Exponents may exceed one; used for semantic comparisons, not for the
    square-free register translation.
    """

    def mul_keys(k1, k2):
        exps = dict(k1)
        for v, e in k2:
            exps[v] = exps.get(v, 0) + e
        return tuple(sorted(exps.items()))

    def go(t: ExprTree) -> dict:
        if isinstance(t, Const):
            return {} if not t.value else {(): t.value}
        if isinstance(t, Var):
            return {((t.index, 1),): Fraction(1)}
        if isinstance(t, Sum):
            acc: dict = {}
            for c in t.children:
                for mono, coeff in go(c).items():
                    v = acc.get(mono, Fraction(0)) + coeff
                    if v:
                        acc[mono] = v
                    elif mono in acc:
                        del acc[mono]
            return acc
        if isinstance(t, Prod):
            acc = {(): Fraction(1)}
            for c in t.children:
                factor = go(c)
                nxt: dict = {}
                for m1, c1 in acc.items():
                    for m2, c2 in factor.items():
                        key = mul_keys(m1, m2)
                        v = nxt.get(key, Fraction(0)) + c1 * c2
                        if v:
                            nxt[key] = v
                        elif key in nxt:
                            del nxt[key]
                acc = nxt
            return acc
        raise TypeError(f"not an ExprTree: {t!r}")

    return go(tree)


def semantically_equal(a: ExprTree, b: ExprTree) -> bool:
    """Equality as polynomials (structural equality as a fast path)."""
    if a == b:
        return True
    return expand_monomials(a) == expand_monomials(b)


def render_tree(tree: ExprTree, names) -> str:
    """Render with explicit parentheses around sums inside products."""
    if isinstance(tree, Const):
        return str(tree.value)
    if isinstance(tree, Var):
        return names[tree.index]
    if isinstance(tree, Sum):
        if not tree.children:
            return "0"
        return " + ".join(render_tree(c, names) for c in tree.children)
    if isinstance(tree, Prod):
        if not tree.children:
            return "1"
        parts = []
        for c in tree.children:
            s = render_tree(c, names)
            parts.append(f"({s})" if isinstance(c, Sum) else s)
        return " * ".join(parts)
    raise TypeError(f"not an ExprTree: {tree!r}")


@dataclass(frozen=True)
class CopylessReport:
    ok: bool
    per_component: tuple[bool, ...]
    duplicated: tuple[int, ...]

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class PolyMap:
    """A polynomial register update: component i is the new value of register i."""

    arity: int
    components: tuple[ExprTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.arity:
            raise ValueError(f"expected {self.arity} components, got {len(self.components)}")
        for comp in self.components:
            if max_var(comp) >= self.arity:
                raise ValueError("component reads a variable outside the map's arity")

    @classmethod
    def identity(cls, arity: int) -> "PolyMap":
        return cls(arity, tuple(Var(i) for i in range(arity)))

    @cached_property
    def _plan(self):
        # skip components that just keep their register
        return tuple(
            (i, comp) for i, comp in enumerate(self.components)
            if not (isinstance(comp, Var) and comp.index == i)
        )

    def apply(self, values):
        """Evaluate all components on the old register values."""
        out = list(values)
        for i, comp in self._plan:
            out[i] = evaluate(comp, values)
        return out


def is_copyless(pm: PolyMap) -> CopylessReport:
    """Joint copylessness: each variable read at most once across all components."""
    seen: dict[int, int] = {}
    per_component = []
    for comp in pm.components:
        occ = var_occurrences(comp)
        per_component.append(len(occ) == len(set(occ)))
        for v in occ:
            seen[v] = seen.get(v, 0) + 1
    duplicated = tuple(sorted(v for v, n in seen.items() if n > 1))
    return CopylessReport(not duplicated, tuple(per_component), duplicated)


def compose_maps(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """The map v -> outer(inner(v))."""
    if outer.arity != inner.arity:
        raise ValueError("maps of different arity cannot be composed")
    result = PolyMap(outer.arity, tuple(substitute(c, inner.components) for c in outer.components))
    if is_copyless(outer).ok and is_copyless(inner).ok:
        assert is_copyless(result).ok, "copyless maps must compose to a copyless map"
    return result
