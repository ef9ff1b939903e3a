"""Payload values shared by every functor instance.

An element is one of:

* ``str``      -- a symbol
* ``int``      -- an integer
* ``Pair``     -- an ordered pair of elements
* ``tuple``    -- a finite sequence of elements
* ``FnTable``  -- a finite function given by its graph
* ``MVal``     -- a functor value (see :mod:`moconad.core`), which lets
  nested values such as ``M M X`` live inside the same domain

Equality is structural.  The total order is given by :func:`elem_key`:
constructor tag first (symbol < int < pair < seq < table < functor value),
then lexicographic within a tag.
"""
from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence

Elem = Any

UNIT = ()
"""The point of the one-element set; shapes are values over it."""


class Pair:
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: Elem, right: Elem) -> None:
        self.left = left
        self.right = right
        self._hash = hash(("Pair", left, right))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Pair):
            return NotImplemented
        return self._hash == other._hash and self.left == other.left and self.right == other.right

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self):
        yield self.left
        yield self.right

    def __repr__(self) -> str:
        return f"Pair({self.left!r}, {self.right!r})"


_SORTED_DOMAINS: set = set()


class FnTable:
    """A total function on a finite, sorted domain.

    ``domain`` is stored sorted by :func:`elem_key` and without repetitions;
    ``values[i]`` is the image of ``domain[i]``.
    """

    __slots__ = ("domain", "values", "_index", "_hash")

    def __init__(self, domain: Sequence[Elem], values: Sequence[Elem]) -> None:
        domain = tuple(domain)
        values = tuple(values)
        if len(domain) != len(values):
            raise ValueError("table domain and values differ in length")
        if domain not in _SORTED_DOMAINS:
            if any(elem_key(a) >= elem_key(b) for a, b in zip(domain, domain[1:])):
                raise ValueError("table domain must be strictly sorted")
            if len(_SORTED_DOMAINS) < 4096:
                _SORTED_DOMAINS.add(domain)
        self.domain = domain
        self.values = values
        self._index = None
        self._hash = hash(("FnTable", domain, values))

    @classmethod
    def from_function(cls, domain: Iterable[Elem], fn: Callable[[Elem], Elem]) -> "FnTable":
        dom = sort_elems(set(domain))
        return cls(dom, [fn(x) for x in dom])

    @classmethod
    def from_mapping(cls, mapping: dict) -> "FnTable":
        dom = sort_elems(mapping)
        return cls(dom, [mapping[x] for x in dom])

    @classmethod
    def identity(cls, domain: Iterable[Elem]) -> "FnTable":
        dom = sort_elems(set(domain))
        return cls(dom, dom)

    def as_dict(self) -> dict:
        if self._index is None:
            self._index = dict(zip(self.domain, self.values))
        return self._index

    def __call__(self, x: Elem) -> Elem:
        try:
            return self.as_dict()[x]
        except KeyError:
            raise KeyError(f"{x!r} is outside the table domain") from None

    def after(self, other: "FnTable") -> "FnTable":
        """``self ∘ other``: apply ``other`` first."""
        lookup = self.as_dict()
        return FnTable(other.domain, [lookup[v] for v in other.values])

    def is_identity(self) -> bool:
        return self.domain == self.values

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FnTable):
            return NotImplemented
        return self._hash == other._hash and self.domain == other.domain and self.values == other.values

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v!r}" for k, v in zip(self.domain, self.values))
        return f"FnTable({{{body}}})"


def elem_key(e: Elem) -> tuple:
    """Sort key realising the total order on elements."""
    if isinstance(e, str):
        return (0, e)
    if isinstance(e, bool):
        raise TypeError("booleans are not elements; use symbols or ints")
    if isinstance(e, int):
        return (1, e)
    if isinstance(e, Pair):
        return (2, elem_key(e.left), elem_key(e.right))
    if isinstance(e, tuple):
        return (3, tuple(elem_key(x) for x in e))
    if isinstance(e, FnTable):
        return (4, tuple(elem_key(x) for x in e.domain), tuple(elem_key(x) for x in e.values))
    key = getattr(e, "canonical_key", None)
    if key is not None:
        return (5, key())
    raise TypeError(f"not an element: {e!r}")


def sort_elems(items: Iterable[Elem]) -> tuple:
    return tuple(sorted(items, key=elem_key))


def all_functions(domain: Sequence[Elem], codomain: Sequence[Elem]) -> list[FnTable]:
    """Every total function ``domain -> codomain`` in canonical order."""
    from itertools import product

    dom = sort_elems(set(domain))
    cod = sort_elems(set(codomain))
    return [FnTable(dom, vals) for vals in product(cod, repeat=len(dom))]


def show(e: Elem) -> str:
    """Compact human-readable rendering used in reports and the CLI."""
    if isinstance(e, str):
        return e
    if isinstance(e, int):
        return str(e)
    if isinstance(e, Pair):
        return f"({show(e.left)}, {show(e.right)})"
    if isinstance(e, tuple):
        return "<" + ", ".join(show(x) for x in e) + ">"
    if isinstance(e, FnTable):
        return "{" + ", ".join(f"{show(k)}->{show(v)}" for k, v in zip(e.domain, e.values)) + "}"
    render = getattr(e, "render", None)
    if render is not None:
        return render()
    return repr(e)
