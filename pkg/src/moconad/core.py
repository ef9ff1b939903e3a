"""Functor values and the four monad/comonad instances.

Every value keeps its payload as a flat tuple ``items`` together with the
index ``focus`` of the element that ``extract`` returns.  Lists have no
further structure; pointed terms also carry a ``skeleton``: the preorder
token sequence of the tree where ``None`` marks a payload leaf (a *hole*)
and ``(symbol, arity)`` marks an inner node.  Holes are numbered left to
right, so the ``k``-th hole carries ``items[k]``.

With this representation ``map``, ``extract``, ``put`` and ``strength`` are
shared by all instances; only ``unit``, ``flatten`` and ``expand`` differ.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional, Sequence

from .elems import UNIT, Elem, Pair, elem_key, show

PREFIX_LIST = "prefix-list"
SUFFIX_LIST = "suffix-list"
POINTED_LIST = "pointed-list"
POINTED_TERM = "pointed-term"
FUNCTOR_IDS = (PREFIX_LIST, SUFFIX_LIST, POINTED_LIST, POINTED_TERM)
_RANK = {name: i for i, name in enumerate(FUNCTOR_IDS)}

HOLE = None


class StructureError(ValueError):
    """A value does not belong to the functor instance it was given to."""


class MVal:
    """An immutable value of one of the four functors.

    Build values through :func:`moconad.functors.make_value` or the
    instance methods; the constructor itself does not validate.
    """

    __slots__ = ("functor", "items", "focus", "skeleton", "_hash")

    def __init__(self, functor: str, items: tuple, focus: int, skeleton: Optional[tuple] = None) -> None:
        self.functor = functor
        self.items = items
        self.focus = focus
        self.skeleton = skeleton
        self._hash = hash((functor, items, focus, skeleton))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, MVal):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.functor == other.functor
            and self.focus == other.focus
            and self.items == other.items
            and self.skeleton == other.skeleton
        )

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.items)

    @property
    def size(self) -> int:
        """Item count for lists, node count for terms."""
        if self.skeleton is None:
            return len(self.items)
        return len(self.skeleton)

    def with_items(self, items: tuple) -> "MVal":
        return MVal(self.functor, items, self.focus, self.skeleton)

    def with_focus(self, focus: int) -> "MVal":
        return MVal(self.functor, self.items, focus, self.skeleton)

    def canonical_key(self) -> tuple:
        skel = () if self.skeleton is None else tuple(
            (0,) if t is HOLE else (1, t[0], t[1]) for t in self.skeleton
        )
        return (
            _RANK[self.functor],
            self.size,
            tuple(elem_key(x) for x in self.items),
            skel,
            self.focus,
        )

    def render(self) -> str:
        def cell(i: int) -> str:
            text = show(self.items[i])
            if self.functor in (POINTED_LIST, POINTED_TERM) and i == self.focus:
                return "_" + text + "_"
            return text

        if self.skeleton is None:
            body = "[" + ", ".join(cell(i) for i in range(len(self.items))) + "]"
            return body if self.functor != SUFFIX_LIST else "<-" + body
        return _render_term(self.skeleton, cell)

    def __repr__(self) -> str:
        return f"MVal({self.functor}: {self.render()})"


def _render_term(skeleton: tuple, cell: Callable[[int], str]) -> str:
    pos = 0
    hole = 0

    def walk() -> str:
        nonlocal pos, hole
        tok = skeleton[pos]
        pos += 1
        if tok is HOLE:
            hole += 1
            return cell(hole - 1)
        name, arity = tok
        if arity == 0:
            return name
        return name + "(" + ", ".join(walk() for _ in range(arity)) + ")"

    return walk()


def hole_count(skeleton: Sequence) -> int:
    return sum(1 for t in skeleton if t is HOLE)


def focus_path(m: MVal) -> tuple[int, ...]:
    """Child indices (0-based) from the root to the focused leaf of a term."""
    if m.skeleton is None:
        raise StructureError("only pointed terms have focus paths")
    pos = 0
    hole = 0

    def walk(path: tuple) -> Optional[tuple]:
        nonlocal pos, hole
        tok = m.skeleton[pos]
        pos += 1
        if tok is HOLE:
            hole += 1
            return path if hole - 1 == m.focus else None
        found = None
        for i in range(tok[1]):
            r = walk(path + (i,))
            if r is not None and found is None:
                found = r
        return found

    return walk(())


class Moconad:
    """Shared operation contract; one subclass per functor."""

    functor: str = ""

    # -- structure checks -------------------------------------------------
    def owns(self, m: object) -> bool:
        return isinstance(m, MVal) and m.functor == self.functor

    def _own(self, m: object) -> MVal:
        if not self.owns(m):
            raise StructureError(f"{m!r} is not a {self.functor} value")
        return m  # type: ignore[return-value]

    def validate(self, m: object) -> MVal:
        m = self._own(m)
        if not m.items:
            raise StructureError("values are nonempty")
        if not 0 <= m.focus < len(m.items):
            raise StructureError(f"focus {m.focus} out of range")
        return m

    # -- functor ----------------------------------------------------------
    def map(self, f: Callable[[Elem], Elem], m: MVal) -> MVal:
        m = self._own(m)
        return m.with_items(tuple(f(x) for x in m.items))

    # -- monad ------------------------------------------------------------
    def unit(self, x: Elem) -> MVal:
        return MVal(self.functor, (x,), 0, None)

    def flatten(self, mm: MVal) -> MVal:
        raise NotImplementedError

    # -- comonad ----------------------------------------------------------
    def extract(self, m: MVal) -> Elem:
        m = self._own(m)
        return m.items[m.focus]

    def expand(self, m: MVal) -> MVal:
        raise NotImplementedError

    # -- lens / derived operations ---------------------------------------
    def put(self, m: MVal, x: Elem) -> MVal:
        m = self._own(m)
        items = m.items[: m.focus] + (x,) + m.items[m.focus + 1 :]
        return m.with_items(items)

    def strength(self, a: Elem, m: MVal) -> MVal:
        return self.map(lambda x: Pair(a, x), m)

    def shape(self, m: MVal) -> MVal:
        return self.map(lambda _: UNIT, m)

    def concat(self, k: MVal, l: MVal) -> MVal:
        """Replace the focused element of ``k`` by the whole of ``l``."""
        return self.flatten(self.put(self.map(self.unit, k), l))

    def _inner(self, mm: MVal) -> tuple:
        mm = self._own(mm)
        for v in mm.items:
            if not self.owns(v):
                raise StructureError(f"flatten expects {self.functor} values inside, got {v!r}")
        return mm.items

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class PrefixList(Moconad):
    """Nonempty lists; ``extract`` is the last item, ``expand`` lists prefixes."""

    functor = PREFIX_LIST

    def validate(self, m: object) -> MVal:
        m = super().validate(m)
        if m.skeleton is not None or m.focus != len(m.items) - 1:
            raise StructureError("prefix lists focus their last item")
        return m

    def flatten(self, mm: MVal) -> MVal:
        items = tuple(x for v in self._inner(mm) for x in v.items)
        return MVal(PREFIX_LIST, items, len(items) - 1)

    def expand(self, m: MVal) -> MVal:
        m = self._own(m)
        n = len(m.items)
        prefixes = tuple(MVal(PREFIX_LIST, m.items[: i + 1], i) for i in range(n))
        return MVal(PREFIX_LIST, prefixes, n - 1)


class SuffixList(Moconad):
    """Nonempty lists; ``extract`` is the first item, ``expand`` lists suffixes."""

    functor = SUFFIX_LIST

    def validate(self, m: object) -> MVal:
        m = super().validate(m)
        if m.skeleton is not None or m.focus != 0:
            raise StructureError("suffix lists focus their first item")
        return m

    def flatten(self, mm: MVal) -> MVal:
        items = tuple(x for v in self._inner(mm) for x in v.items)
        return MVal(SUFFIX_LIST, items, 0)

    def expand(self, m: MVal) -> MVal:
        m = self._own(m)
        suffixes = tuple(MVal(SUFFIX_LIST, m.items[i:], 0) for i in range(len(m.items)))
        return MVal(SUFFIX_LIST, suffixes, 0)


class PointedList(Moconad):
    """Nonempty lists with one underlined position."""

    functor = POINTED_LIST

    def validate(self, m: object) -> MVal:
        m = super().validate(m)
        if m.skeleton is not None:
            raise StructureError("pointed lists have no skeleton")
        return m

    def flatten(self, mm: MVal) -> MVal:
        inner = self._inner(mm)
        offset = sum(len(v.items) for v in inner[: mm.focus])
        items = tuple(x for v in inner for x in v.items)
        return MVal(POINTED_LIST, items, offset + inner[mm.focus].focus)

    def expand(self, m: MVal) -> MVal:
        m = self._own(m)
        copies = tuple(m.with_focus(i) for i in range(len(m.items)))
        return MVal(POINTED_LIST, copies, m.focus)


class PointedTerm(Moconad):
    """Terms over a ranked alphabet with exactly one underlined payload leaf.

    ``flatten`` substitutes each inner tree at its leaf; the result is
    underlined where the tree at the outer underlined leaf is.  ``expand``
    places at every leaf a copy of the whole tree underlined at that leaf,
    and underlines the copy sitting at the originally underlined leaf.
    """

    functor = POINTED_TERM

    def __init__(self, alphabet: Mapping[str, int]) -> None:
        if not alphabet:
            raise StructureError("pointed terms need a nonempty ranked alphabet")
        for name, arity in alphabet.items():
            if not isinstance(name, str) or not isinstance(arity, int) or isinstance(arity, bool) or arity < 0:
                raise StructureError(f"bad ranked symbol {name!r}: {arity!r}")
        self.alphabet = dict(sorted(alphabet.items()))

    def validate(self, m: object) -> MVal:
        m = super().validate(m)
        skel = m.skeleton
        if skel is None:
            raise StructureError("pointed terms need a skeleton")
        need = 1
        for tok in skel:
            if need == 0:
                raise StructureError("skeleton has trailing tokens")
            need -= 1
            if tok is HOLE:
                continue
            name, arity = tok
            if self.alphabet.get(name) != arity:
                raise StructureError(f"symbol {name!r} with arity {arity} is not in the alphabet")
            need += arity
        if need != 0:
            raise StructureError("skeleton is incomplete")
        if hole_count(skel) != len(m.items):
            raise StructureError("leaf count does not match payload count")
        return m

    def unit(self, x: Elem) -> MVal:
        return MVal(POINTED_TERM, (x,), 0, (HOLE,))

    def flatten(self, mm: MVal) -> MVal:
        inner = self._inner(mm)
        skeleton: list = []
        k = 0
        for tok in mm.skeleton:
            if tok is HOLE:
                skeleton.extend(inner[k].skeleton)
                k += 1
            else:
                skeleton.append(tok)
        offset = sum(len(v.items) for v in inner[: mm.focus])
        items = tuple(x for v in inner for x in v.items)
        return MVal(POINTED_TERM, items, offset + inner[mm.focus].focus, tuple(skeleton))

    def expand(self, m: MVal) -> MVal:
        m = self._own(m)
        copies = tuple(m.with_focus(i) for i in range(len(m.items)))
        return MVal(POINTED_TERM, copies, m.focus, m.skeleton)

    def __repr__(self) -> str:
        return f"PointedTerm({self.alphabet!r})"


DEFAULT_ALPHABET = {"a": 2, "b": 1, "c": 0}


def instance(functor: str, alphabet: Optional[Mapping[str, int]] = None) -> Moconad:
    """Look up a functor instance by id."""
    if functor == POINTED_TERM:
        return PointedTerm(DEFAULT_ALPHABET if alphabet is None else alphabet)
    if alphabet:
        raise StructureError(f"{functor} does not take a ranked alphabet")
    try:
        return {PREFIX_LIST: PrefixList, SUFFIX_LIST: SuffixList, POINTED_LIST: PointedList}[functor]()
    except KeyError:
        raise StructureError(f"unknown functor {functor!r}") from None


def all_instances(alphabet: Optional[Mapping[str, int]] = None) -> list[Moconad]:
    return [instance(f, alphabet if f == POINTED_TERM else None) for f in FUNCTOR_IDS]


def compose(*fs: Callable) -> Callable:
    """``compose(f, g)(x) == f(g(x))``."""

    def composed(x):
        for f in reversed(fs):
            x = f(x)
        return x

    return composed


def payloads(m: MVal) -> Iterable[Elem]:
    return iter(m.items)
