"""Composing transductions through wreath products.

The generalized wreath product of algebras ``S1`` and ``S2`` has elements
``(s1, v2)`` where ``v2`` assigns an ``S2`` value to every function
``S1 -> S1`` (or, optionally, to every context of ``S1``).  For a value
``l`` over such pairs:

* the first component is the ``S1`` product of the first components;
* the second component, at a function ``c``, is the ``S2`` product of the
  value obtained from ``expand l``: at each position the stored ``v2`` is
  queried at ``c . ctx``, where ``ctx`` is the ``S1`` context of that
  position's view.

Elements are never materialized unless asked for; the carrier grows as
``|S1| * |S2| ** (|S1| ** |S1|)`` and is guarded by a cap.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .algebra import (
    CapExceeded,
    FiniteAlgebra,
    SemigroupTable,
    context_monoid,
)
from .core import PREFIX_LIST, MVal
from .elems import Elem, FnTable, Pair, all_functions, show, sort_elems
from .transduction import Transduction, apply_transduction

DEFAULT_CAP = 100_000


class CompositionError(ValueError):
    pass


def _same_instance(a: FiniteAlgebra, b: FiniteAlgebra) -> None:
    if a.inst.functor != b.inst.functor or getattr(a.inst, "alphabet", None) != getattr(b.inst, "alphabet", None):
        raise CompositionError(f"instance mismatch: {a.inst!r} vs {b.inst!r}")


class WreathPresentation:
    """Product of the generalized wreath algebra, evaluated on demand."""

    kind = "wreath"

    def __init__(self, first: FiniteAlgebra, second: FiniteAlgebra, restrict_to_contexts: bool = False,
                 cap: int = DEFAULT_CAP) -> None:
        _same_instance(first, second)
        self.first = first
        self.second = second
        self.restrict_to_contexts = restrict_to_contexts
        self.cap = cap
        s1 = first.carrier
        if restrict_to_contexts:
            self.functions = tuple(context_monoid(first))
        else:
            self.functions = tuple(all_functions(s1, s1))
        self.s1 = s1
        self._pos = {x: i for i, x in enumerate(s1)}
        self._index = {f.values: i for i, f in enumerate(self.functions)}
        self.identity_index = self._index[tuple(s1)]
        self._s2 = frozenset(second.carrier)
        self._carrier: Optional[tuple] = None
        self._ctx_cache: dict = {}

    # carrier -------------------------------------------------------------
    def carrier_size(self) -> int:
        return len(self.s1) * len(self.second.carrier) ** len(self.functions)

    @property
    def carrier(self) -> tuple:
        if self._carrier is None:
            size = self.carrier_size()
            if size > self.cap:
                raise CapExceeded(f"wreath carrier has {size} elements, above the cap of {self.cap}")
            s2 = self.second.carrier
            seconds = [FnTable(self.functions, vals) for vals in product(s2, repeat=len(self.functions))]
            self._carrier = sort_elems(Pair(a, v) for a in self.s1 for v in seconds)
        return self._carrier

    def contains(self, x: Elem) -> bool:
        return (
            isinstance(x, Pair)
            and x.left in self._pos
            and isinstance(x.right, FnTable)
            and x.right.domain == self.functions
            and all(v in self._s2 for v in x.right.values)
        )

    # product -------------------------------------------------------------
    def _ctx_values(self, view: MVal) -> tuple:
        """Values of the S1 context of a view, in carrier order."""
        M = self.first.inst
        firsts = M.map(lambda p: p.left, view)
        hit = self._ctx_cache.get(firsts)
        if hit is None:
            hit = tuple(self.first.evaluate(M.put(firsts, x)) for x in self.s1)
            if len(self._ctx_cache) < 100_000:
                self._ctx_cache[firsts] = hit
        return hit

    def evaluate(self, inst, l: MVal) -> Pair:
        M = inst
        s1_product = self.first.evaluate(M.map(lambda p: p.left, l))
        views = M.expand(l).items
        ctxs = [self._ctx_values(v) for v in views]
        stored = [v.items[v.focus].right.values for v in views]
        pos, index = self._pos, self._index
        seconds = []
        for c in self.functions:
            cv = c.values
            vals = []
            for ctx, table in zip(ctxs, stored):
                composed = tuple(cv[pos[y]] for y in ctx)
                vals.append(table[index[composed]])
            seconds.append(self.second.evaluate(l.with_items(tuple(vals))))
        return Pair(s1_product, FnTable(self.functions, seconds))


def wreath_product(first: FiniteAlgebra, second: FiniteAlgebra, restrict_to_contexts: bool = False,
                   cap: int = DEFAULT_CAP) -> FiniteAlgebra:
    pres = WreathPresentation(first, second, restrict_to_contexts, cap)
    return FiniteAlgebra(first.inst, pres)


@dataclass(frozen=True)
class SecondAtIdentity(Mapping):
    """Output map ``(v1, v2) -> lambda2(v2(id))`` of a composed transduction."""

    presentation: WreathPresentation
    second_output: Mapping

    def __getitem__(self, x: Pair) -> Elem:
        return self.second_output[x.right.values[self.presentation.identity_index]]

    def __iter__(self):
        return iter(self.presentation.carrier)

    def __len__(self) -> int:
        return self.presentation.carrier_size()


def compose_transductions(F: Transduction, G: Transduction, restrict_to_contexts: bool = False,
                          cap: int = DEFAULT_CAP) -> Transduction:
    """A single transduction equal to running ``F`` and then ``G``."""
    _same_instance(F.alg, G.alg)
    missing = [b for b in F.output_alphabet if b not in G.input_map]
    if missing:
        raise CompositionError(f"letters {[show(b) for b in missing]} produced by the first transduction are not inputs of the second")
    alg = wreath_product(F.alg, G.alg, restrict_to_contexts, cap)
    pres: WreathPresentation = alg.presentation  # type: ignore[assignment]
    h3 = {}
    for a in F.input_alphabet:
        x = F.input_map[a]
        seconds = [G.input_map[F.output_map[c(x)]] for c in pres.functions]
        h3[a] = Pair(x, FnTable(pres.functions, seconds))
    lam3 = SecondAtIdentity(pres, G.output_map)
    return Transduction(alg, h3, lam3, F.input_alphabet, G.output_alphabet)


def oracle_compose(F: Transduction, G: Transduction, w: MVal) -> MVal:
    """Run ``F`` and feed its output to ``G``."""
    return apply_transduction(G, apply_transduction(F, w))


# ---------------------------------------------------------------------------
# classical wreath product (prefix lists)


def adjoin_identity(elements: tuple, table: Mapping) -> tuple[tuple, dict, Elem]:
    """``S`` plus a fresh formal identity, whatever ``S`` already has."""
    one: Elem = "1"
    while one in elements:
        one = one + "'"
    full = dict(table)
    for x in elements + (one,):
        full[(one, x)] = x
        full[(x, one)] = x
    return sort_elems(elements + (one,)), full, one


def classical_wreath_compose(F: Transduction, G: Transduction, cap: int = DEFAULT_CAP) -> Transduction:
    """Composition through ``S1 x (S1^1 -> S2)`` with ``(s,f)(t,g) = (st, x -> f(x) g(xs))``.

    Only the subsemigroup generated by the letters is built, so the result
    is an ordinary semigroup-table algebra.
    """
    for T in (F, G):
        if T.inst.functor != PREFIX_LIST or not isinstance(T.alg.presentation, SemigroupTable):
            raise CompositionError("the classical wreath product composes prefix-list semigroup transductions")
    missing = [b for b in F.output_alphabet if b not in G.input_map]
    if missing:
        raise CompositionError(f"letters {[show(b) for b in missing]} produced by the first transduction are not inputs of the second")
    s1 = F.alg.presentation
    s2 = G.alg.presentation
    ones, t1, one = adjoin_identity(s1.elements, s1.table)

    def mul(p: Pair, q: Pair) -> Pair:
        s, f = p.left, p.right
        t, g = q.left, q.right
        return Pair(s1.mul(s, t), FnTable(ones, [s2.mul(f(x), g(t1[(x, s)])) for x in ones]))

    h = {}
    for a in F.input_alphabet:
        x = F.input_map[a]
        h[a] = Pair(x, FnTable(ones, [G.input_map[F.output_map[t1[(y, x)]]] for y in ones]))
    gens = sort_elems(set(h.values()))
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = mul(p, q)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
                    if len(seen) > cap:
                        raise CapExceeded(f"classical wreath subsemigroup exceeds {cap} elements")
        frontier = nxt
    elements = sort_elems(seen)
    table = {(p, q): mul(p, q) for p in elements for q in elements}
    alg = FiniteAlgebra(F.inst, SemigroupTable(elements, table))
    lam = {p: G.output_map[p.right(one)] for p in elements}
    return Transduction(alg, h, lam, F.input_alphabet, G.output_alphabet)
