"""The law catalog as executable equations.

Each law names the kinds of its inputs and gives both sides as functions of
an instance and those inputs.  Input kinds:

``X``      a payload
``Y``      a second payload (for laws with two payloads)
``MX``     a value over payloads
``MXn``    a value over payloads within the nested-value bound
``MMX``    a nested value
``MMMX``   a doubly nested value
``F``      a function table payloads -> codomain
``G``      a function table codomain -> second codomain
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import Moconad
from .elems import Pair


@dataclass(frozen=True)
class Law:
    name: str
    inputs: tuple[str, ...]
    lhs: Callable
    rhs: Callable
    statement: str


def work(M: Moconad, mm):
    """Put each prefix-view of the focused inner value back into ``mm`` and flatten."""
    paired = M.strength(mm, M.expand(M.extract(mm)))
    return M.map(M.flatten, M.map(lambda q: M.put(q.left, q.right), paired))


def _flatten_expand_rhs(M: Moconad, mm):
    return M.flatten(M.map(lambda v: work(M, v), M.expand(mm)))


def flatten_expand_trace(M: Moconad, mm) -> dict:
    """Intermediate values of both sides of flatten-expand on ``mm``."""
    flat = M.flatten(mm)
    views = M.expand(mm)
    worked = M.map(lambda v: work(M, v), views)
    return {
        "flatten": flat,
        "expand-after-flatten": M.expand(flat),
        "expand": views,
        "work": worked,
        "flatten-after-work": M.flatten(worked),
    }


def _flatten_expand_alt(M: Moconad, mm):
    def pair(w):
        return Pair(M.map(M.extract, w), M.extract(w))

    def work(p):
        paired = M.strength(p.left, p.right)
        return M.map(lambda q: M.put(q.left, q.right), paired)

    step = M.map(work, M.map(pair, M.expand(M.map(M.expand, mm))))
    return M.map(M.flatten, M.flatten(step))


def _ident(x):
    return x


CATALOG: tuple[Law, ...] = (
    Law("functor-id-law", ("MX",),
        lambda M, m: M.map(_ident, m),
        lambda M, m: m,
        "map id m = m"),
    Law("functor-compose", ("MX", "F", "G"),
        lambda M, m, f, g: M.map(lambda x: g(f(x)), m),
        lambda M, m, f, g: M.map(g, M.map(f, m)),
        "map (g . f) m = map g (map f m)"),
    Law("monad-mu-natural", ("MMX", "F"),
        lambda M, mm, f: M.map(f, M.flatten(mm)),
        lambda M, mm, f: M.flatten(M.map(lambda v: M.map(f, v), mm)),
        "map f (mu mm) = mu (map (map f) mm)"),
    Law("monad-eta-natural", ("X", "F"),
        lambda M, x, f: M.map(f, M.unit(x)),
        lambda M, x, f: M.unit(f(x)),
        "map f (eta x) = eta (f x)"),
    Law("monad-assoc", ("MMMX",),
        lambda M, m3: M.flatten(M.flatten(m3)),
        lambda M, m3: M.flatten(M.map(M.flatten, m3)),
        "mu (mu m) = mu (map mu m)"),
    Law("monad-unit-left", ("MX",),
        lambda M, m: M.flatten(M.unit(m)),
        lambda M, m: m,
        "mu (eta m) = m"),
    Law("monad-unit-right", ("MX",),
        lambda M, m: M.flatten(M.map(M.unit, m)),
        lambda M, m: m,
        "mu (map eta m) = m"),
    Law("comonad-delta-natural", ("MX", "F"),
        lambda M, m, f: M.map(lambda v: M.map(f, v), M.expand(m)),
        lambda M, m, f: M.expand(M.map(f, m)),
        "map (map f) (delta m) = delta (map f m)"),
    Law("comonad-epsilon-natural", ("MX", "F"),
        lambda M, m, f: f(M.extract(m)),
        lambda M, m, f: M.extract(M.map(f, m)),
        "f (eps m) = eps (map f m)"),
    Law("comonad-coassoc", ("MX",),
        lambda M, m: M.expand(M.expand(m)),
        lambda M, m: M.map(M.expand, M.expand(m)),
        "delta (delta m) = map delta (delta m)"),
    Law("comonad-counit-left", ("MX",),
        lambda M, m: M.extract(M.expand(m)),
        lambda M, m: m,
        "eps (delta m) = m"),
    Law("comonad-counit-right", ("MX",),
        lambda M, m: M.map(M.extract, M.expand(m)),
        lambda M, m: m,
        "map eps (delta m) = m"),
    Law("put-natural", ("MX", "X", "F"),
        lambda M, m, x, f: M.map(f, M.put(m, x)),
        lambda M, m, x, f: M.put(M.map(f, m), f(x)),
        "map f (put m x) = put (map f m) (f x)"),
    Law("flatten-extract", ("MMX",),
        lambda M, mm: M.extract(M.flatten(mm)),
        lambda M, mm: M.extract(M.extract(mm)),
        "eps (mu mm) = eps (eps mm)"),
    Law("singleton-expand", ("X",),
        lambda M, x: M.expand(M.unit(x)),
        lambda M, x: M.map(M.unit, M.unit(x)),
        "delta (eta x) = map eta (eta x)"),
    Law("singleton-extract", ("X",),
        lambda M, x: M.extract(M.unit(x)),
        lambda M, x: x,
        "eps (eta x) = x"),
    Law("get-put", ("MX", "X"),
        lambda M, m, y: M.extract(M.put(m, y)),
        lambda M, m, y: y,
        "eps (put m y) = y"),
    Law("put-get", ("MX",),
        lambda M, m: M.put(m, M.extract(m)),
        lambda M, m: m,
        "put m (eps m) = m"),
    Law("put-put", ("MX", "X", "Y"),
        lambda M, m, x, y: M.put(M.put(m, x), y),
        lambda M, m, x, y: M.put(m, y),
        "put (put m x) y = put m y"),
    Law("put-assoc", ("MMX", "MXn", "X"),
        lambda M, mm, m, z: M.put(M.flatten(M.put(mm, m)), z),
        lambda M, mm, m, z: M.flatten(M.put(mm, M.put(m, z))),
        "put (mu (put mm m)) z = mu (put mm (put m z))"),
    Law("singleton-put", ("X", "Y"),
        lambda M, x, y: M.put(M.unit(x), y),
        lambda M, x, y: M.unit(y),
        "put (eta x) y = eta y"),
    Law("flatten-expand", ("MMX",),
        lambda M, mm: M.expand(M.flatten(mm)),
        _flatten_expand_rhs,
        "delta (mu mm) = mu (map work (delta mm))"),
    Law("flatten-expand-alt-equiv", ("MMX",),
        _flatten_expand_rhs,
        _flatten_expand_alt,
        "mu (map work (delta mm)) = map mu (mu (map (map put . str . <map eps, eps>) (delta (map delta mm))))"),
)

LAWS: dict[str, Law] = {law.name: law for law in CATALOG}
LAW_IDS: tuple[str, ...] = tuple(LAWS)
