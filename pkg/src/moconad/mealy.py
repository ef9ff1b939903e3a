"""Mealy machines and their translations to and from transductions.

Deterministic machines correspond to prefix-list transductions (suffix-list
ones when the machine reads right to left).  Unambiguous machines, which
guess and verify but have exactly one accepting run per word, correspond to
pointed-list transductions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Monoid,
    PointedPresentation,
    SemigroupTable,
    decompose_pointed_algebra,
)
from .composition import adjoin_identity
from .core import POINTED_LIST, PREFIX_LIST, SUFFIX_LIST, MVal, instance
from .elems import Elem, FnTable, Pair, elem_key, show, sort_elems
from .transduction import Transduction

LEFT_TO_RIGHT = "left-to-right"
RIGHT_TO_LEFT = "right-to-left"


class MachineError(ValueError):
    pass


class AmbiguityError(MachineError):
    pass


@dataclass(frozen=True)
class MealyMachine:
    states: tuple
    initial: Elem
    transitions: Mapping  # (state, letter) -> (state, output)
    input_alphabet: tuple
    output_alphabet: tuple
    direction: str = LEFT_TO_RIGHT

    def __post_init__(self) -> None:
        states = set(self.states)
        outs = set(self.output_alphabet)
        if self.initial not in states:
            raise MachineError(f"initial state {show(self.initial)} is not a state")
        if self.direction not in (LEFT_TO_RIGHT, RIGHT_TO_LEFT):
            raise MachineError(f"unknown direction {self.direction!r}")
        for q, a in product(self.states, self.input_alphabet):
            nxt = self.transitions.get((q, a))
            if nxt is None:
                raise MachineError(f"no transition from {show(q)} on {show(a)}")
            if nxt[0] not in states or nxt[1] not in outs:
                raise MachineError(f"transition from {show(q)} on {show(a)} leaves the machine")


def _check_letters(word: Sequence, alphabet: Iterable) -> None:
    alpha = set(alphabet)
    if not word:
        raise MachineError("words are nonempty")
    for i, a in enumerate(word):
        if a not in alpha:
            raise MachineError(f"letter {show(a)} at position {i + 1} is not in the input alphabet")


def run_mealy(m: MealyMachine, word: Sequence[Elem]) -> tuple:
    _check_letters(word, m.input_alphabet)
    letters = list(word) if m.direction == LEFT_TO_RIGHT else list(reversed(word))
    q = m.initial
    out = []
    for a in letters:
        q, b = m.transitions[(q, a)]
        out.append(b)
    return tuple(out) if m.direction == LEFT_TO_RIGHT else tuple(reversed(out))


def behaviour(m: MealyMachine, word: Sequence[Elem]) -> FnTable:
    """``q -> (state after word, last output)``, reading in machine order."""
    letters = list(word) if m.direction == LEFT_TO_RIGHT else list(reversed(word))
    vals = []
    for q in m.states:
        b = None
        for a in letters:
            q, b = m.transitions[(q, a)]
        vals.append(Pair(q, b))
    return FnTable(m.states, vals)


def then(f: FnTable, g: FnTable) -> FnTable:
    """Behaviour of reading ``f``'s infix and then ``g``'s: ``g . pi1 . f``."""
    return FnTable(f.domain, [g(p.left) for p in f.values])


def mealy_to_transduction(m: MealyMachine) -> Transduction:
    """The semigroup of behaviours of nonempty words, reachable part only."""
    gens = {a: behaviour(m, (a,)) for a in m.input_alphabet}
    seen = set(gens.values())
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens.values():
                h = then(f, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    elements = sort_elems(seen)
    if m.direction == LEFT_TO_RIGHT:
        table = {(f, g): then(f, g) for f in elements for g in elements}
        functor = PREFIX_LIST
    else:
        # a suffix is read last-letter first, so the list product runs backwards
        table = {(f, g): then(g, f) for f in elements for g in elements}
        functor = SUFFIX_LIST
    alg = FiniteAlgebra(instance(functor), SemigroupTable(elements, table))
    lam = {f: f(m.initial).right for f in elements}
    return Transduction(alg, gens, lam, m.input_alphabet, m.output_alphabet)


def transduction_to_mealy(t: Transduction) -> MealyMachine:
    """States ``S`` plus a fresh identity; ``delta(s, a) = (s h(a), lambda(s h(a)))``."""
    f = t.inst.functor
    if f not in (PREFIX_LIST, SUFFIX_LIST):
        raise MachineError("deterministic machines come from prefix- or suffix-list transductions")
    S = t.alg.carrier
    states, _, one = adjoin_identity(S, {})
    transitions = {}
    for s in states:
        for a in t.input_alphabet:
            x = t.input_map[a]
            if s == one:
                nxt = x
            elif f == PREFIX_LIST:
                nxt = t.alg.evaluate(MVal(PREFIX_LIST, (s, x), 1))
            else:
                nxt = t.alg.evaluate(MVal(SUFFIX_LIST, (x, s), 0))
            transitions[(s, a)] = (nxt, t.output_map[nxt])
    direction = LEFT_TO_RIGHT if f == PREFIX_LIST else RIGHT_TO_LEFT
    return MealyMachine(states, one, transitions, t.input_alphabet, t.output_alphabet, direction)


# ---------------------------------------------------------------------------
# unambiguous machines


@dataclass(frozen=True)
class UnambiguousMealy:
    states: tuple
    initial: frozenset
    final: frozenset
    transitions: tuple  # (source, letter, target, output)
    input_alphabet: tuple
    output_alphabet: tuple

    def __post_init__(self) -> None:
        states = set(self.states)
        if not set(self.initial) <= states or not set(self.final) <= states:
            raise MachineError("initial and final states must be states")
        for p, a, q, b in self.transitions:
            if p not in states or q not in states:
                raise MachineError(f"transition {show(p)} -{show(a)}/{show(b)}-> {show(q)} uses unknown states")
            if a not in self.input_alphabet or b not in self.output_alphabet:
                raise MachineError(f"transition {show(p)} -{show(a)}/{show(b)}-> {show(q)} uses unknown letters")

    def by_letter(self) -> dict:
        out: dict = {}
        for tr in self.transitions:
            out.setdefault(tr[1], []).append(tr)
        return out


@dataclass
class UnambiguityVerdict:
    ok: bool
    reason: str = ""
    witness: Optional[tuple] = None


def check_unambiguous(u: UnambiguousMealy, max_len: int = 64) -> UnambiguityVerdict:
    """Exact check that every nonempty word has exactly one accepting run.

    Existence: every subset reachable from the initial states by a nonempty
    word must meet the final states.  Uniqueness: no pair of distinct runs
    on the same word may both accept; pairs are explored in a product
    automaton that remembers whether the two runs have split.  Both
    searches are breadth-first and the shorter witness wins, so the
    reported word is a shortest counterexample.
    """
    missing = _missing_run(u)
    double = _double_run(u)
    found = [v for v in (missing, double) if v is not None]
    if not found:
        return UnambiguityVerdict(True, "unambiguous")
    reason, word = min(found, key=lambda v: len(v[1]))
    return UnambiguityVerdict(False, reason, _clip(word, max_len))


def _missing_run(u: UnambiguousMealy) -> Optional[tuple]:
    # nodes remember whether at least one letter was read
    by_letter = u.by_letter()
    start = (frozenset(u.initial), False)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for a in u.input_alphabet:
            nxt = (frozenset(q for p, _, q, _ in by_letter.get(a, ()) if p in cur[0]), True)
            if nxt in parent:
                continue
            parent[nxt] = (cur, a)
            if not nxt[0] & u.final:
                return "some word has no accepting run", _trace(parent, nxt)
            queue.append(nxt)
    return None


def _double_run(u: UnambiguousMealy) -> Optional[tuple]:
    # transitions form a list: a repeated entry is a second, distinct transition
    indexed: dict = {}
    for i, tr in enumerate(u.transitions):
        indexed.setdefault(tr[1], []).append((i, tr))
    # nodes are (state, state, runs differ, letter read)
    starts = [(i, j, i != j, False) for i in u.initial for j in u.initial]
    parent: dict = {s: None for s in starts}
    queue = deque(starts)
    while queue:
        cur = queue.popleft()
        p1, p2, split, _ = cur
        for a in u.input_alphabet:
            trs = indexed.get(a, ())
            for i1, t1 in trs:
                if t1[0] != p1:
                    continue
                for i2, t2 in trs:
                    if t2[0] != p2:
                        continue
                    nxt = (t1[2], t2[2], split or i1 != i2, True)
                    if nxt in parent:
                        continue
                    parent[nxt] = (cur, a)
                    if nxt[2] and nxt[0] in u.final and nxt[1] in u.final:
                        return "some word has two accepting runs", _trace(parent, nxt)
                    queue.append(nxt)
    return None


def _trace(parent: dict, node) -> tuple:
    word = []
    while parent[node] is not None:
        node, a = parent[node]
        word.append(a)
    return tuple(reversed(word))


def _clip(word: tuple, max_len: int) -> Optional[tuple]:
    return word if len(word) <= max_len else None


def count_accepting_runs(u: UnambiguousMealy, word: Sequence[Elem]) -> int:
    """Brute-force run count, used as an oracle in tests."""
    by_letter = u.by_letter()
    counts = {q: 1 for q in u.initial}
    for a in word:
        nxt: dict = {}
        for p, _, q, _ in by_letter.get(a, ()):
            if p in counts:
                nxt[q] = nxt.get(q, 0) + counts[p]
        counts = nxt
    return sum(c for q, c in counts.items() if q in u.final)


def run_unambiguous(u: UnambiguousMealy, word: Sequence[Elem]) -> tuple:
    """Outputs of the only accepting run.

    Forward sets hold states reachable from an initial state, backward sets
    states that can still reach a final one; a transition lies on an
    accepting run exactly when it joins the two.
    """
    _check_letters(word, u.input_alphabet)
    by_letter = u.by_letter()
    n = len(word)
    fwd = [frozenset(u.initial)]
    for a in word:
        fwd.append(frozenset(q for p, _, q, _ in by_letter.get(a, ()) if p in fwd[-1]))
    bwd = [frozenset()] * (n + 1)
    bwd[n] = frozenset(u.final)
    for i in range(n - 1, -1, -1):
        bwd[i] = frozenset(p for p, _, q, _ in by_letter.get(word[i], ()) if q in bwd[i + 1])
    out = []
    for i, a in enumerate(word):
        live = [t for t in by_letter.get(a, ()) if t[0] in fwd[i] and t[2] in bwd[i + 1]]
        if len(live) != 1:
            what = "no" if not live else "more than one"
            raise AmbiguityError(f"{what} accepting run at position {i + 1} of {''.join(map(show, word))}")
        out.append(live[0][3])
    return tuple(out)


# ---------------------------------------------------------------------------
# unambiguous machines <-> pointed-list transductions


def _relation(pairs: Iterable) -> tuple:
    return sort_elems({Pair(p, q) for p, q in pairs})


def _rel_mul(r: tuple, s: tuple) -> tuple:
    succ: dict = {}
    for pr in s:
        succ.setdefault(pr.left, []).append(pr.right)
    return _relation((pr.left, z) for pr in r for z in succ.get(pr.right, ()))


class _Combine(Mapping):
    """``g(m_l, (p, a, s), m_r) = (m_l p, a, s m_r)`` computed on demand."""

    def __init__(self, monoid: Monoid, carrier: tuple) -> None:
        self.monoid = monoid
        self.carrier = carrier

    def __getitem__(self, key):
        ml, (p, a, s), mr = key
        return (self.monoid.mul(ml, p), a, self.monoid.mul(s, mr))

    def __iter__(self):
        return ((ml, x, mr) for ml in self.monoid.elements for x in self.carrier for mr in self.monoid.elements)

    def __len__(self) -> int:
        return len(self.monoid.elements) ** 2 * len(self.carrier)


def unambiguous_to_transduction(u: UnambiguousMealy, check: bool = True) -> Transduction:
    """Pointed-list transduction over ``M x Sigma x M``, ``M`` the relation monoid."""
    if check:
        verdict = check_unambiguous(u)
        if not verdict.ok:
            raise AmbiguityError(f"{verdict.reason}: {verdict.witness}")
    step = {a: _relation((p, q) for p, b, q, _ in u.transitions if b == a) for a in u.input_alphabet}
    unit = _relation((q, q) for q in u.states)
    seen = {unit}
    frontier = [unit]
    while frontier:
        nxt = []
        for r in frontier:
            for g in step.values():
                h = _rel_mul(r, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    elements = sort_elems(seen)
    table = {(r, s): _rel_mul(r, s) for r in elements for s in elements}
    monoid = Monoid(elements, table, unit)
    carrier = sort_elems((p, a, s) for p in elements for a in u.input_alphabet for s in elements)

    def reduce(x) -> tuple:
        p, a, s = x
        return table[(table[(p, step[a])], s)]

    reduced = {x: reduce(x) for x in carrier}
    pres = PointedPresentation(carrier, monoid, monoid, _Combine(monoid, carrier), reduced, reduced)
    alg = FiniteAlgebra(instance(POINTED_LIST), pres)
    lam = {x: _output(u, x) for x in carrier}
    h = {a: (unit, a, unit) for a in u.input_alphabet}
    return Transduction(alg, h, lam, u.input_alphabet, u.output_alphabet)


def _output(u: UnambiguousMealy, x: tuple) -> Elem:
    p, a, s = x
    before = {pr.right for pr in p if pr.left in u.initial}
    after = {pr.left for pr in s if pr.right in u.final}
    outs = sort_elems({b for q, c, q2, b in u.transitions if c == a and q in before and q2 in after})
    if len(outs) > 1:
        raise AmbiguityError(f"output at ({show(p)}, {show(a)}, {show(s)}) is not determined")
    # triples no run passes through get the smallest output letter
    return outs[0] if outs else u.output_alphabet[0]


def transduction_to_unambiguous(t: Transduction) -> UnambiguousMealy:
    """States ``M_L x M_R``; the left part accumulates the prefix, the right part guesses the suffix."""
    if t.inst.functor != POINTED_LIST:
        raise MachineError("unambiguous machines come from pointed-list transductions")
    pres = t.alg.presentation
    if not isinstance(pres, PointedPresentation):
        pres = decompose_pointed_algebra(t.alg).presentation
    L, R = pres.left, pres.right
    hl = {a: pres.h_left[t.input_map[a]] for a in t.input_alphabet}
    hr = {a: pres.h_right[t.input_map[a]] for a in t.input_alphabet}
    states = sort_elems(Pair(ml, mr) for ml in L.elements for mr in R.elements)
    transitions = []
    for ml, mr in product(L.elements, R.elements):
        for a in t.input_alphabet:
            src = Pair(ml, R.mul(hr[a], mr))
            dst = Pair(L.mul(ml, hl[a]), mr)
            out = t.output_map[pres.g[(ml, t.input_map[a], mr)]]
            transitions.append((src, a, dst, out))
    initial = frozenset(Pair(L.unit, mr) for mr in R.elements)
    final = frozenset(Pair(ml, R.unit) for ml in L.elements)
    return UnambiguousMealy(states, initial, final, tuple(sorted(set(transitions), key=elem_key)),
                            t.input_alphabet, t.output_alphabet)


def as_unambiguous(m: MealyMachine) -> UnambiguousMealy:
    """A deterministic machine read as an unambiguous one.

    Left to right: start in the initial state, accept anywhere.  Right to
    left: reverse the edges, start anywhere and accept in the initial state,
    so the unique run is the deterministic run read backwards.
    """
    trs = [(p, a, q, b) for (p, a), (q, b) in m.transitions.items()]
    everything = frozenset(m.states)
    if m.direction == LEFT_TO_RIGHT:
        return UnambiguousMealy(m.states, frozenset({m.initial}), everything, tuple(trs),
                                m.input_alphabet, m.output_alphabet)
    back = tuple((q, a, p, b) for p, a, q, b in trs)
    return UnambiguousMealy(m.states, everything, frozenset({m.initial}), back, m.input_alphabet, m.output_alphabet)


# ---------------------------------------------------------------------------
# underlining


def underline(word: Sequence[Elem], i: int) -> MVal:
    """The pointed list of ``word`` with position ``i`` (1-based) underlined."""
    word = tuple(word)
    if not 1 <= i <= len(word):
        raise MachineError(f"position {i} out of range 1..{len(word)}")
    return MVal(POINTED_LIST, word, i - 1)


def forget(v: MVal) -> tuple:
    return tuple(v.items)


def phi(f: Callable[[MVal], MVal]) -> Callable[[Sequence[Elem]], tuple]:
    """A word function from a pointed-list function: underline the first letter."""
    return lambda word: forget(f(underline(word, 1)))


def underline_independent(f: Callable[[MVal], MVal], word: Sequence[Elem]) -> bool:
    outs = [f(underline(word, i)) for i in range(1, len(word) + 1)]
    return all(forget(o) == forget(outs[0]) and o.focus == i for i, o in enumerate(outs))


# ---------------------------------------------------------------------------
# example machines


def first_a_machine() -> MealyMachine:
    """Rewrite the first ``a`` to ``c`` and every other letter to ``d``."""
    t = {
        ("q0", "a"): ("q1", "c"),
        ("q0", "b"): ("q0", "d"),
        ("q1", "a"): ("q1", "d"),
        ("q1", "b"): ("q1", "d"),
    }
    return MealyMachine(("q0", "q1"), "q0", t, ("a", "b"), ("c", "d"))


def first_from_last_machine() -> UnambiguousMealy:
    """Replace the first letter by the last one; the last letter is guessed up front."""
    letters = ("a", "b")
    trs = []
    for g in letters:
        q, p = f"q{g}", f"p{g}"
        trs.append((q, g, "r", g))
        for x in letters:
            trs.append((q, x, p, g))
            trs.append((p, x, p, x))
        trs.append((p, g, "r", g))
    states = ("pa", "pb", "qa", "qb", "r")
    return UnambiguousMealy(states, frozenset({"qa", "qb"}), frozenset({"r"}), tuple(sorted(trs)), letters, letters)
