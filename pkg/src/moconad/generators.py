"""Seeded random algebras, transductions and machines for tests and the CLI."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Mapping, Optional

from .algebra import (
    FiniteAlgebra,
    TermAutomaton,
    associative_tables,
    decompose_pointed_algebra,
    oracle_algebra,
)
from .core import POINTED_LIST, POINTED_TERM, PREFIX_LIST, SUFFIX_LIST, MVal, instance
from .elems import FnTable
from .transduction import Transduction

LETTERS = ("a", "b", "c")


def rng_for(seed: int, *labels) -> random.Random:
    return random.Random(":".join(str(x) for x in (seed,) + labels))


@lru_cache(maxsize=None)
def _tables(order: int) -> tuple:
    return tuple(tuple(sorted(t.items())) for t in associative_tables(order))


def random_semigroup(rng: random.Random, order: Optional[int] = None) -> dict:
    order = order or rng.randint(1, 3)
    return dict(rng.choice(_tables(order)))


def _pointed_product(P: Mapping, Q: Mapping):
    """Product of a pointed list read outward from the focus."""

    def prod(m: MVal):
        v = m.items[m.focus]
        for b in m.items[m.focus + 1:]:
            v = P[(v, b)]
        for a in reversed(m.items[: m.focus]):
            v = Q[(a, v)]
        return v

    return prod


def random_pointed_tables(rng: random.Random, order: int) -> tuple[dict, dict]:
    """``P(a,b) = prod [_a_, b]`` and ``Q(a,b) = prod [a, _b_]`` satisfying the length-3 equations.

    Backtracking over the cells with a shuffled value order; the
    equations are checked as soon as every cell they mention is set.
    """
    A = tuple(range(order))
    cells = [("P", a, b) for a in A for b in A] + [("Q", a, b) for a in A for b in A]
    rng.shuffle(cells)
    tab: dict = {}

    def P(a, b):
        return tab.get(("P", a, b))

    def Q(a, b):
        return tab.get(("Q", a, b))

    def ok() -> bool:
        for a, b, c in product(A, repeat=3):
            pairs = []
            pab, qab, pbc, qbc = P(a, b), Q(a, b), P(b, c), Q(b, c)
            if pab is not None:
                pairs.append((P(pab, c), P(a, pbc) if pbc is not None else None))
                pairs.append((Q(pab, c), Q(qab, c) if qab is not None else None))
            if pbc is not None:
                pairs.append((P(a, pbc), P(a, qbc) if qbc is not None else None))
                pairs.append((Q(a, pbc), P(qab, c) if qab is not None else None))
            if qbc is not None and qab is not None:
                pairs.append((Q(a, qbc), Q(qab, c)))
            for x, y in pairs:
                if x is not None and y is not None and x != y:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(cells):
            return True
        values = list(A)
        rng.shuffle(values)
        for v in values:
            tab[cells[i]] = v
            if ok() and search(i + 1):
                return True
            del tab[cells[i]]
        return False

    if not search(0):
        raise RuntimeError("no pointed tables found")
    Pt = {(a, b): tab[("P", a, b)] for a in A for b in A}
    Qt = {(a, b): tab[("Q", a, b)] for a in A for b in A}
    return Pt, Qt


def random_pointed_algebra(rng: random.Random, order: Optional[int] = None) -> FiniteAlgebra:
    order = order or rng.randint(1, 3)
    P, Q = random_pointed_tables(rng, order)
    raw = oracle_algebra(instance(POINTED_LIST), range(order), _pointed_product(P, Q))
    return decompose_pointed_algebra(raw)


def random_term_automaton(rng: random.Random, alphabet: Mapping[str, int], order: Optional[int] = None) -> TermAutomaton:
    order = order or rng.randint(1, 3)
    A = tuple(range(order))
    B = tuple(range(rng.randint(1, order)))
    images = list(B) + [rng.choice(B) for _ in range(order - len(B))]
    rng.shuffle(images)
    forget = dict(zip(A, images))
    fibers = {b: [a for a in A if forget[a] == b] for b in B}
    transitions = {s: {args: rng.choice(B) for args in product(B, repeat=k)} for s, k in sorted(alphabet.items())}
    actions = {}
    for s, k in sorted(alphabet.items()):
        for slot in range(k):
            for others in product(B, repeat=k - 1):
                vals = []
                for a in A:
                    target = transitions[s][others[:slot] + (forget[a],) + others[slot:]]
                    vals.append(rng.choice(fibers[target]))
                actions[(s, slot, others)] = FnTable(A, vals)
    return TermAutomaton(A, B, forget, transitions, actions)


def random_algebra(functor: str, rng: random.Random, order: Optional[int] = None,
                   alphabet: Optional[Mapping[str, int]] = None) -> FiniteAlgebra:
    from .algebra import algebra_from_semigroup, term_algebra

    if functor in (PREFIX_LIST, SUFFIX_LIST):
        order = order or rng.randint(1, 3)
        return algebra_from_semigroup(random_semigroup(rng, order), functor, elements=range(order))
    if functor == POINTED_LIST:
        return random_pointed_algebra(rng, order)
    inst = instance(POINTED_TERM, alphabet)
    return term_algebra(inst.alphabet, random_term_automaton(rng, inst.alphabet, order))


def random_transduction(functor: str, seed: int, input_alphabet=None, output_alphabet=None,
                        order: Optional[int] = None, alphabet: Optional[Mapping[str, int]] = None) -> Transduction:
    rng = rng_for(seed, functor, "transduction")
    alg = random_algebra(functor, rng, order, alphabet)
    sigma = tuple(input_alphabet) if input_alphabet is not None else LETTERS[: rng.randint(1, 3)]
    gamma = tuple(output_alphabet) if output_alphabet is not None else LETTERS[: rng.randint(1, 3)]
    h = {a: rng.choice(alg.carrier) for a in sigma}
    lam = {s: rng.choice(gamma) for s in alg.carrier}
    return Transduction(alg, h, lam, tuple(sorted(sigma)), tuple(sorted(set(gamma))))


def random_pair(functor: str, seed: int, alphabet: Optional[Mapping[str, int]] = None) -> tuple[Transduction, Transduction]:
    """Two chainable transductions with carriers and alphabets of size at most 3."""
    rng = rng_for(seed, functor, "pair")
    sigma = LETTERS[: rng.randint(1, 3)]
    gamma = LETTERS[: rng.randint(1, 3)]
    delta = LETTERS[: rng.randint(1, 3)]
    F = random_transduction(functor, seed * 2, sigma, gamma, alphabet=alphabet)
    G = random_transduction(functor, seed * 2 + 1, gamma, delta, alphabet=alphabet)
    return F, G


def random_mealy(seed: int, states: Optional[int] = None, input_alphabet=("a", "b"), output_alphabet=("a", "b"),
                 direction: str = "left-to-right"):
    """A complete deterministic machine with at most four states."""
    from .mealy import MealyMachine

    rng = rng_for(seed, "mealy")
    n = states or rng.randint(1, 4)
    Q = tuple(f"q{i}" for i in range(n))
    transitions = {(q, a): (rng.choice(Q), rng.choice(output_alphabet)) for q in Q for a in input_alphabet}
    return MealyMachine(Q, Q[0], transitions, tuple(input_alphabet), tuple(output_alphabet), direction)
