"""Recognizable languages and transductions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Monoid,
    PointedPresentation,
    SemigroupTable,
    TermAutomaton,
)
from .core import POINTED_LIST, POINTED_TERM, PREFIX_LIST, SUFFIX_LIST, Moconad, MVal
from .elems import UNIT, Elem, FnTable, show, sort_elems


class TransductionError(ValueError):
    pass


def _check_word(inst: Moconad, alphabet: Mapping, w: MVal) -> None:
    if not inst.owns(w):
        raise TransductionError(f"input is not a {inst.functor} value")
    for i, x in enumerate(w.items):
        if x not in alphabet:
            raise TransductionError(f"letter {show(x)} at position {i + 1} is not in the input alphabet")


@dataclass(frozen=True)
class Transduction:
    alg: FiniteAlgebra
    input_map: Mapping
    output_map: Mapping
    input_alphabet: tuple
    output_alphabet: tuple

    def __post_init__(self) -> None:
        for a in self.input_alphabet:
            if a not in self.input_map:
                raise TransductionError(f"input map is undefined on {show(a)}")
            if not self.alg.contains(self.input_map[a]):
                raise TransductionError(f"input map sends {show(a)} outside the carrier")
        if isinstance(self.output_map, dict):
            outs = set(self.output_alphabet)
            for s in self.alg.carrier:
                if self.output_map.get(s, _MISSING) not in outs:
                    raise TransductionError(f"output map is undefined or outside the output alphabet at {show(s)}")

    @property
    def inst(self) -> Moconad:
        return self.alg.inst

    def __call__(self, w: MVal) -> MVal:
        return apply_transduction(self, w)


_MISSING = object()


def make_transduction(alg: FiniteAlgebra, input_map: Mapping, output_map: Mapping,
                      input_alphabet: Optional[Iterable] = None,
                      output_alphabet: Optional[Iterable] = None) -> Transduction:
    sigma = sort_elems(set(input_alphabet if input_alphabet is not None else input_map))
    if output_alphabet is None:
        output_alphabet = {output_map[s] for s in alg.carrier}
    return Transduction(alg, dict(input_map), output_map, sigma, sort_elems(set(output_alphabet)))


def apply_transduction(t: Transduction, w: MVal) -> MVal:
    """``map lambda . map prod . delta . map h``."""
    _check_word(t.inst, t.input_map, w)
    M = t.inst
    h, lam, prod = t.input_map, t.output_map, t.alg.evaluate
    return M.map(lambda v: lam[prod(v)], M.expand(M.map(h.__getitem__, w)))


@dataclass(frozen=True)
class LanguageRecognizer:
    alg: FiniteAlgebra
    input_map: Mapping
    accept: Mapping


def recognize(r: LanguageRecognizer, w: MVal) -> bool:
    _check_word(r.alg.inst, r.input_map, w)
    return bool(r.accept[r.alg.evaluate(r.alg.inst.map(r.input_map.__getitem__, w))])


@dataclass(frozen=True)
class RelaxedTransduction:
    """Output map returns a whole value per position; the results are flattened."""

    alg: FiniteAlgebra
    input_map: Mapping
    output_map: Mapping

    def __post_init__(self) -> None:
        for s in self.alg.carrier:
            v = self.output_map.get(s)
            if v is None:
                raise TransductionError(f"output map is undefined at {show(s)}")
            self.alg.inst.validate(v)


def apply_relaxed(t: RelaxedTransduction, w: MVal) -> MVal:
    _check_word(t.alg.inst, t.input_map, w)
    M = t.alg.inst
    blocks = M.map(lambda v: t.output_map[t.alg.evaluate(v)], M.expand(M.map(t.input_map.__getitem__, w)))
    return M.flatten(blocks)


@dataclass
class ShapeVerdict:
    ok: bool
    checked: int
    counterexample: Optional[MVal] = None
    output: Optional[MVal] = None


def check_shape_preserved(run: Callable[[MVal], MVal], inst: Moconad, inputs: Iterable[MVal]) -> ShapeVerdict:
    """First input whose output shape differs from its own, if any."""
    n = 0
    for w in inputs:
        n += 1
        out = run(w)
        if inst.shape(out) != inst.shape(w):
            return ShapeVerdict(False, n, w, out)
    return ShapeVerdict(True, n)


# ---------------------------------------------------------------------------
# the algebra whose product is extract, and the identity transduction


def extract_algebra(inst: Moconad, elements: Sequence[Elem]) -> FiniteAlgebra:
    """``prod = eps``: remembers only the focused item."""
    elements = sort_elems(set(elements))
    f = inst.functor
    if f == PREFIX_LIST:
        return FiniteAlgebra(inst, SemigroupTable(elements, {(a, b): b for a in elements for b in elements}))
    if f == SUFFIX_LIST:
        return FiniteAlgebra(inst, SemigroupTable(elements, {(a, b): a for a in elements for b in elements}))
    if f == POINTED_LIST:
        trivial = Monoid((UNIT,), {(UNIT, UNIT): UNIT}, UNIT)
        g = {(UNIT, a, UNIT): a for a in elements}
        pres = PointedPresentation(elements, trivial, trivial, g, {a: UNIT for a in elements}, {a: UNIT for a in elements})
        return FiniteAlgebra(inst, pres)
    if f == POINTED_TERM:
        transitions = {s: {(UNIT,) * k: UNIT} for s, k in inst.alphabet.items()}
        ident = FnTable.identity(elements)
        actions = {(s, slot, (UNIT,) * (k - 1)): ident for s, k in inst.alphabet.items() for slot in range(k)}
        return FiniteAlgebra(inst, TermAutomaton(elements, (UNIT,), {a: UNIT for a in elements}, transitions, actions))
    raise TransductionError(f"unknown functor {f!r}")


def identity_transduction(inst: Moconad, alphabet: Sequence[Elem]) -> Transduction:
    alphabet = sort_elems(set(alphabet))
    alg = extract_algebra(inst, alphabet)
    ident = {a: a for a in alphabet}
    return Transduction(alg, ident, ident, alphabet, alphabet)
