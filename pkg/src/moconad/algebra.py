"""Finite Eilenberg-Moore algebras and their contexts.

An algebra pairs a functor instance with a *presentation*: a finite object
that knows its carrier and how to evaluate the product of a value over it.

* :class:`SemigroupTable` -- prefix and suffix lists; the product is a fold.
* :class:`PointedPresentation` -- pointed lists; a left monoid reading the
  items before the focus, a right monoid reading the items after it, and a
  table ``g`` combining both with the focused item.
* :class:`TermAutomaton` -- pointed terms; subtrees away from the focus are
  evaluated bottom-up in a ground carrier, and the path above the focus acts
  on the focused item by unary maps.
* :class:`OracleAlgebra` -- any Python function, used as raw input to the
  validator and to :func:`decompose_pointed_algebra`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Protocol, Sequence

from .core import (
    HOLE,
    POINTED_LIST,
    POINTED_TERM,
    PREFIX_LIST,
    SUFFIX_LIST,
    Moconad,
    MVal,
    instance,
)
from .elems import Elem, FnTable, Pair, show, sort_elems
from .functors import enumerate_nested, enumerate_values


class AlgebraError(ValueError):
    pass


class CapExceeded(AlgebraError):
    pass


class Presentation(Protocol):
    kind: str

    @property
    def carrier(self) -> tuple: ...

    def contains(self, x: Elem) -> bool: ...

    def evaluate(self, inst: Moconad, m: MVal) -> Elem: ...


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Monoid:
    elements: tuple
    table: Mapping
    unit: Elem

    def mul(self, a: Elem, b: Elem) -> Elem:
        return self.table[(a, b)]

    def fold(self, items: Iterable[Elem]) -> Elem:
        acc = self.unit
        for x in items:
            acc = self.table[(acc, x)]
        return acc


@dataclass(frozen=True)
class SemigroupTable:
    elements: tuple
    table: Mapping
    kind: str = field(default="semigroup", init=False)

    @property
    def carrier(self) -> tuple:
        return self.elements

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.elements))

    def contains(self, x: Elem) -> bool:
        return x in self._members

    def mul(self, a: Elem, b: Elem) -> Elem:
        return self.table[(a, b)]

    def evaluate(self, inst: Moconad, m: MVal) -> Elem:
        items = m.items
        if inst.functor == SUFFIX_LIST:
            acc = items[-1]
            for x in reversed(items[:-1]):
                acc = self.table[(x, acc)]
            return acc
        acc = items[0]
        for x in items[1:]:
            acc = self.table[(acc, x)]
        return acc


@dataclass(frozen=True)
class PointedPresentation:
    elements: tuple
    left: Monoid
    right: Monoid
    g: Mapping
    h_left: Mapping
    h_right: Mapping
    kind: str = field(default="pointed-presentation", init=False)

    @property
    def carrier(self) -> tuple:
        return self.elements

    def contains(self, x: Elem) -> bool:
        return x in self.h_left

    def evaluate(self, inst: Moconad, m: MVal) -> Elem:
        f = m.focus
        ml = self.left.fold(self.h_left[x] for x in m.items[:f])
        mr = self.right.fold(self.h_right[x] for x in m.items[f + 1:])
        return self.g[(ml, m.items[f], mr)]


@dataclass(frozen=True)
class TermAutomaton:
    """Bottom-up tree automaton with a separate action along the focus path.

    ``elements`` is the carrier A and ``ground`` a carrier B for subtrees
    that do not contain the focus; ``forget`` maps A onto B.
    ``transitions[s]`` maps a tuple of B-values (one per child) to B, and
    ``actions[(s, slot, others)]`` is the map A -> A applied when the focus
    sits below child ``slot`` (0-based) of an ``s`` node whose other
    children evaluate to ``others``.  Validity requires
    ``forget(action(a)) == transitions[s](others with forget(a) at slot)``.
    """

    elements: tuple
    ground: tuple
    forget: Mapping
    transitions: Mapping
    actions: Mapping
    kind: str = field(default="term-automaton", init=False)

    @property
    def carrier(self) -> tuple:
        return self.elements

    def contains(self, x: Elem) -> bool:
        return x in self.forget

    def evaluate(self, inst: Moconad, m: MVal) -> Elem:
        skel = m.skeleton
        pos = 0
        hole = 0

        def walk():
            # returns (on_path, value): A-value on the focus path, B-value elsewhere
            nonlocal pos, hole
            tok = skel[pos]
            pos += 1
            if tok is HOLE:
                hole += 1
                x = m.items[hole - 1]
                if hole - 1 == m.focus:
                    return True, x
                return False, self.forget[x]
            name, arity = tok
            kids = [walk() for _ in range(arity)]
            slot = next((i for i, (on, _) in enumerate(kids) if on), None)
            if slot is None:
                return False, self.transitions[name][tuple(v for _, v in kids)]
            others = tuple(v for i, (_, v) in enumerate(kids) if i != slot)
            return True, self.actions[(name, slot, others)](kids[slot][1])

        return walk()[1]

    def check(self, alphabet: Mapping[str, int]) -> None:
        """Raise unless the tables are total and the action/forget square commutes."""
        for a in self.elements:
            if self.forget.get(a) not in set(self.ground):
                raise AlgebraError(f"forget is not total into the ground carrier at {a!r}")
        for name, arity in alphabet.items():
            table = self.transitions.get(name)
            if table is None:
                raise AlgebraError(f"no transition table for {name!r}")
            for args in product(self.ground, repeat=arity):
                if table.get(args) not in set(self.ground):
                    raise AlgebraError(f"transition {name}{args} missing or outside the ground carrier")
            for slot in range(arity):
                for others in product(self.ground, repeat=arity - 1):
                    act = self.actions.get((name, slot, others))
                    if act is None:
                        raise AlgebraError(f"missing action for {name} slot {slot} with {others}")
                    for a in self.elements:
                        full = others[:slot] + (self.forget[a],) + others[slot:]
                        if self.forget[act(a)] != table[full]:
                            raise AlgebraError(f"action {name}/{slot}/{others} disagrees with the transition at {a!r}")


def tree_automaton(elements: Sequence[Elem], transitions: Mapping[str, Mapping]) -> TermAutomaton:
    """Plain bottom-up automaton: the focus is ignored and A is its own ground carrier."""
    elements = sort_elems(set(elements))
    actions = {}
    for name, table in transitions.items():
        arity = len(next(iter(table))) if table else 0
        for slot in range(arity):
            for others in product(elements, repeat=arity - 1):
                actions[(name, slot, others)] = FnTable(
                    elements, [table[others[:slot] + (a,) + others[slot:]] for a in elements]
                )
    return TermAutomaton(elements, elements, {a: a for a in elements}, dict(transitions), actions)


@dataclass(frozen=True)
class OracleAlgebra:
    elements: tuple
    product: Callable[[MVal], Elem]
    kind: str = field(default="oracle", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def carrier(self) -> tuple:
        return self.elements

    def contains(self, x: Elem) -> bool:
        return x in self._members

    def evaluate(self, inst: Moconad, m: MVal) -> Elem:
        return self.product(m)


# ---------------------------------------------------------------------------
# algebras


class FiniteAlgebra:
    """A functor instance with a finite presentation of its product."""

    def __init__(self, inst: Moconad, presentation: Presentation, check_payloads: bool = True) -> None:
        expected = {
            "semigroup": (PREFIX_LIST, SUFFIX_LIST),
            "pointed-presentation": (POINTED_LIST,),
            "term-automaton": (POINTED_TERM,),
        }.get(presentation.kind)
        if expected is not None and inst.functor not in expected:
            raise AlgebraError(f"a {presentation.kind} presentation does not fit {inst.functor}")
        self.inst = inst
        self.presentation = presentation
        self.check_payloads = check_payloads
        self._cache: dict = {}

    @property
    def carrier(self) -> tuple:
        return self.presentation.carrier

    def contains(self, x: Elem) -> bool:
        return self.presentation.contains(x)

    def evaluate(self, m: MVal) -> Elem:
        """The product of ``m``; every payload must lie in the carrier."""
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        if not self.inst.owns(m):
            raise AlgebraError(f"{m!r} is not a {self.inst.functor} value")
        if self.check_payloads:
            for i, x in enumerate(m.items):
                if not self.presentation.contains(x):
                    raise AlgebraError(f"payload {show(x)} at position {i + 1} is outside the carrier")
        out = self.presentation.evaluate(self.inst, m)
        if len(self._cache) < 200_000:
            self._cache[m] = out
        return out

    __call__ = evaluate

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.inst.functor}, {self.presentation.kind}, |A|={len(self.carrier)})"


def check_associative(elements: Sequence[Elem], table: Mapping) -> Optional[tuple]:
    """First triple violating associativity, or ``None``."""
    for a, b, c in product(elements, repeat=3):
        if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
            return (a, b, c)
    return None


def _check_table(elements: tuple, table: Mapping) -> None:
    members = set(elements)
    for a, b in product(elements, repeat=2):
        if table.get((a, b)) not in members:
            raise AlgebraError(f"table entry for ({show(a)}, {show(b)}) is missing or outside the carrier")


def algebra_from_semigroup(table: Mapping, functor: str = PREFIX_LIST, elements: Optional[Sequence] = None) -> FiniteAlgebra:
    """The list algebra whose product folds a semigroup table."""
    if elements is None:
        elements = {a for a, _ in table} | {b for _, b in table}
    elements = sort_elems(set(elements))
    if not elements:
        raise AlgebraError("semigroups are nonempty")
    _check_table(elements, table)
    bad = check_associative(elements, table)
    if bad is not None:
        raise AlgebraError(f"table is not associative at {tuple(show(x) for x in bad)}")
    if functor not in (PREFIX_LIST, SUFFIX_LIST):
        raise AlgebraError("semigroup tables present prefix- or suffix-list algebras")
    return FiniteAlgebra(instance(functor), SemigroupTable(elements, dict(table)))


def semigroup_from_algebra(alg: FiniteAlgebra) -> dict:
    """``x . y = prod [x, y]``."""
    if alg.inst.functor not in (PREFIX_LIST, SUFFIX_LIST):
        raise AlgebraError("only list algebras induce a binary product this way")
    f = alg.inst.functor
    return {
        (x, y): alg.evaluate(MVal(f, (x, y), 1 if f == PREFIX_LIST else 0))
        for x, y in product(alg.carrier, repeat=2)
    }


def pointed_algebra(elements: Sequence[Elem], left: Monoid, right: Monoid, g: Mapping,
                    h_left: Mapping, h_right: Mapping) -> FiniteAlgebra:
    elements = sort_elems(set(elements))
    for a in elements:
        if h_left.get(a) not in set(left.elements) or h_right.get(a) not in set(right.elements):
            raise AlgebraError(f"h maps {show(a)} outside the monoids")
        for ml, mr in product(left.elements, right.elements):
            if g.get((ml, a, mr)) not in set(elements):
                raise AlgebraError("g is not total into the carrier")
    return FiniteAlgebra(instance(POINTED_LIST), PointedPresentation(elements, left, right, dict(g), dict(h_left), dict(h_right)))


def term_algebra(alphabet: Mapping[str, int], automaton: TermAutomaton) -> FiniteAlgebra:
    automaton.check(alphabet)
    return FiniteAlgebra(instance(POINTED_TERM, alphabet), automaton)


def oracle_algebra(inst: Moconad, elements: Sequence[Elem], product_fn: Callable[[MVal], Elem]) -> FiniteAlgebra:
    return FiniteAlgebra(inst, OracleAlgebra(sort_elems(set(elements)), product_fn))


# ---------------------------------------------------------------------------
# validation


def em_violation(alg: FiniteAlgebra, bound: int = 3) -> Optional[tuple[str, MVal]]:
    """First failure of the unit or multiplication axiom at the bound."""
    M = alg.inst
    for x in alg.carrier:
        if alg.evaluate(M.unit(x)) != x:
            return ("unit", M.unit(x))
    for mm in enumerate_nested(M, alg.carrier, bound):
        if alg.evaluate(M.flatten(mm)) != alg.evaluate(M.map(alg.evaluate, mm)):
            return ("multiplication", mm)
    return None


# ---------------------------------------------------------------------------
# pointed-list decomposition


def decompose_pointed_algebra(alg: FiniteAlgebra, cap: int = 10_000) -> FiniteAlgebra:
    """Present a pointed-list algebra by its left and right transformation monoids.

    ``h_left(a)`` is ``x -> prod [a, _x_]`` and ``h_right(a)`` is
    ``x -> prod [_x_, a]``.  Left transformations compose as ``f . g``
    (the item nearer the focus acts first); right ones as ``g . f``.  The
    combining table is ``g(m_l, a, m_r) = m_l(m_r(a))``.
    """
    if alg.inst.functor != POINTED_LIST:
        raise AlgebraError("decomposition applies to pointed-list algebras")
    A = alg.carrier
    h_left = {a: FnTable(A, [alg.evaluate(MVal(POINTED_LIST, (a, x), 1)) for x in A]) for a in A}
    h_right = {a: FnTable(A, [alg.evaluate(MVal(POINTED_LIST, (x, a), 0)) for x in A]) for a in A}
    left = _transformation_monoid(A, h_left.values(), lambda f, g: f.after(g), cap)
    right = _transformation_monoid(A, h_right.values(), lambda f, g: g.after(f), cap)
    g = {(ml, a, mr): ml(mr(a)) for ml in left.elements for a in A for mr in right.elements}
    return FiniteAlgebra(alg.inst, PointedPresentation(A, left, right, g, h_left, h_right))


def _transformation_monoid(domain: tuple, gens: Iterable[FnTable], mul: Callable, cap: int) -> Monoid:
    unit = FnTable.identity(domain)
    gens = list(dict.fromkeys(gens))
    seen = {unit}
    frontier = [unit]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = mul(f, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise CapExceeded(f"transformation monoid exceeds {cap} elements")
        frontier = nxt
    elements = sort_elems(seen)
    table = {(f, g): mul(f, g) for f in elements for g in elements}
    return Monoid(elements, table, unit)


# ---------------------------------------------------------------------------
# contexts


def context(alg: FiniteAlgebra, m: MVal) -> FnTable:
    """``x -> prod (put m x)`` as a table over the carrier."""
    M = alg.inst
    return FnTable(alg.carrier, [alg.evaluate(M.put(m, x)) for x in alg.carrier])


def context_monoid(alg: FiniteAlgebra, bound: Optional[int] = None, max_bound: Optional[int] = None) -> tuple:
    """All contexts, found by enumeration and checked closed under composition.

    The enumeration starts at ``|A| + 2`` and grows until the contexts found
    are closed under composition; reaching ``max_bound`` first is an error.
    """
    start = bound if bound is not None else len(alg.carrier) + 2
    stop = max_bound if max_bound is not None else start + 4
    found: set = set()
    size = 0
    for b in range(1, stop + 1):
        for m in enumerate_values(alg.inst, alg.carrier, b):
            if m.size > size:
                found.add(context(alg, m))
        size = b
        if b >= start and _closed(found):
            return sort_elems(found)
    raise CapExceeded(f"contexts not closed under composition for values up to size {stop}")


def _closed(fs: set) -> bool:
    return all(f.after(g) in fs for f in fs for g in fs)


def is_m_group(alg: FiniteAlgebra, contexts: Optional[Sequence[FnTable]] = None) -> bool:
    """Every context has an inverse among the contexts."""
    cs = set(contexts if contexts is not None else context_monoid(alg))
    ident = FnTable.identity(alg.carrier)
    if ident not in cs:
        return False
    return all(any(f.after(g) == ident and g.after(f) == ident for g in cs) for f in cs)


def is_aperiodic(alg: FiniteAlgebra, contexts: Optional[Sequence[FnTable]] = None) -> bool:
    """Each context f has ``f^(n+1) == f^n`` for some ``n <= |C|``."""
    cs = list(contexts if contexts is not None else context_monoid(alg))
    for f in cs:
        power = f
        for _ in range(len(cs)):
            nxt = f.after(power)
            if nxt == power:
                break
            power = nxt
        else:
            return False
    return True


def one_adjoined(elements: Sequence[Elem], table: Mapping, identity: Elem = "1") -> tuple[tuple, dict, Elem]:
    """``S`` with a fresh identity when ``S`` lacks one; returns (elements, table, unit)."""
    elements = sort_elems(set(elements))
    for e in elements:
        if all(table[(e, x)] == x and table[(x, e)] == x for x in elements):
            return elements, dict(table), e
    one = identity
    while one in elements:
        one = one + "'" if isinstance(one, str) else Pair(one, 1)
    full = dict(table)
    for x in elements + (one,):
        full[(one, x)] = x
        full[(x, one)] = x
    return sort_elems(elements + (one,)), full, one


def is_group(elements: Sequence[Elem], table: Mapping) -> bool:
    """Direct check: an identity exists and every element has an inverse."""
    elements = list(elements)
    unit = next((e for e in elements if all(table[(e, x)] == x == table[(x, e)] for x in elements)), None)
    if unit is None:
        return False
    return all(any(table[(a, b)] == unit == table[(b, a)] for b in elements) for a in elements)


def associative_tables(order: int, elements: Optional[Sequence[Elem]] = None) -> list[dict]:
    """Every associative binary table on ``order`` elements (labels 0..order-1)."""
    elements = tuple(elements) if elements is not None else tuple(range(order))
    cells = list(product(elements, repeat=2))
    out = []
    for values in product(elements, repeat=len(cells)):
        table = dict(zip(cells, values))
        if check_associative(elements, table) is None:
            out.append(table)
    return out
