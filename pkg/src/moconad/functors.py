"""Constructing, enumerating and sampling values of the four functors.

``make_value`` uses 1-based positions (``focus`` for pointed lists and the
child indices in ``focus_path`` for terms), matching the JSON format.  The
``MVal`` objects it returns store a 0-based ``focus``.

Sizes are item counts for lists and node counts for terms.  A nested value
``M M X`` has the size of its flattening, so a bound on nested values is a
bound on the total payload (lists) or total nodes (terms).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .core import (
    HOLE,
    POINTED_LIST,
    POINTED_TERM,
    PREFIX_LIST,
    SUFFIX_LIST,
    Moconad,
    MVal,
    StructureError,
    focus_path,
)
from .elems import Elem, elem_key, sort_elems


@dataclass(frozen=True)
class Leaf:
    label: Elem


@dataclass(frozen=True)
class Node:
    symbol: str
    children: tuple = ()


Tree = Union[Leaf, Node]


def make_value(
    inst: Moconad,
    items: Optional[Sequence[Elem]] = None,
    focus: Optional[int] = None,
    tree: Optional[Tree] = None,
    focus_path: Optional[Sequence[int]] = None,
) -> MVal:
    """Build and validate a value from its raw parts (1-based positions)."""
    if inst.functor == POINTED_TERM:
        if tree is None or focus_path is None:
            raise StructureError("pointed terms need a tree and a focus path")
        return _term_from_tree(inst, tree, focus_path)
    if items is None:
        raise StructureError("list values need items")
    items = tuple(items)
    if not items:
        raise StructureError("empty: values of every functor are nonempty")
    if inst.functor == PREFIX_LIST:
        if focus is not None and focus != len(items):
            raise StructureError("prefix lists focus their last item")
        idx = len(items) - 1
    elif inst.functor == SUFFIX_LIST:
        if focus is not None and focus != 1:
            raise StructureError("suffix lists focus their first item")
        idx = 0
    else:
        if focus is None:
            raise StructureError("pointed lists need a focus")
        if not 1 <= focus <= len(items):
            raise StructureError(f"focus {focus} out of range 1..{len(items)}")
        idx = focus - 1
    return inst.validate(MVal(inst.functor, items, idx))


def _term_from_tree(inst: Moconad, tree: Tree, path: Sequence[int]) -> MVal:
    skeleton: list = []
    items: list = []
    target = None

    def walk(node: Tree, here: tuple) -> None:
        nonlocal target
        if isinstance(node, Leaf):
            if here == tuple(path):
                target = len(items)
            skeleton.append(HOLE)
            items.append(node.label)
            return
        if not isinstance(node, Node):
            raise StructureError(f"not a tree node: {node!r}")
        skeleton.append((node.symbol, len(node.children)))
        for i, child in enumerate(node.children):
            walk(child, here + (i + 1,))

    walk(tree, ())
    if target is None:
        raise StructureError(f"focus path {list(path)} does not address a leaf")
    if not items:
        raise StructureError("empty: a pointed term needs a payload leaf")
    return inst.validate(MVal(POINTED_TERM, tuple(items), target, tuple(skeleton)))


def to_tree(m: MVal) -> tuple[Tree, tuple[int, ...]]:
    """Inverse of ``make_value`` for terms: the tree and its 1-based focus path."""
    pos = 0
    hole = 0

    def walk() -> Tree:
        nonlocal pos, hole
        tok = m.skeleton[pos]
        pos += 1
        if tok is HOLE:
            hole += 1
            return Leaf(m.items[hole - 1])
        return Node(tok[0], tuple(walk() for _ in range(tok[1])))

    tree = walk()
    return tree, tuple(i + 1 for i in focus_path(m))


# ---------------------------------------------------------------------------
# skeletons


def _symbols(inst: Moconad) -> tuple:
    return tuple(sorted(inst.alphabet.items()))


@lru_cache(maxsize=None)
def _skeletons(symbols: tuple, nodes: int) -> tuple:
    """All skeletons with exactly ``nodes`` tokens, holes included."""
    return tuple(_forests(symbols, 1, nodes))


@lru_cache(maxsize=None)
def _forests(symbols: tuple, trees: int, nodes: int) -> tuple:
    if trees == 0:
        return ((),) if nodes == 0 else ()
    if nodes < trees:
        return ()
    out = []
    for first in range(1, nodes - trees + 2):
        heads = []
        if first == 1:
            heads.append((HOLE,))
        for name, arity in symbols:
            if arity == 0 and first == 1:
                heads.append(((name, 0),))
            elif arity > 0 and first - 1 >= arity:
                for kids in _forests(symbols, arity, first - 1):
                    heads.append(((name, arity),) + kids)
        if not heads:
            continue
        for rest in _forests(symbols, trees - 1, nodes - first):
            for h in heads:
                out.append(h + rest)
    return tuple(out)


def _skeleton_weight(skel: tuple) -> tuple[int, int]:
    holes = sum(1 for t in skel if t is HOLE)
    return len(skel) - holes, holes


# ---------------------------------------------------------------------------
# enumeration


def enumerate_values(inst: Moconad, domain: Sequence[Elem], bound: int) -> Iterator[MVal]:
    """Every value of size at most ``bound`` over ``domain``, canonically ordered."""
    dom = sort_elems(set(domain))
    if not dom:
        raise StructureError("payload domain is empty")
    return iter(enumerate_weighted(inst, [(x, 1) for x in dom], bound))


def enumerate_weighted(inst: Moconad, weighted: Sequence[tuple[Elem, int]], bound: int) -> list[MVal]:
    """Values whose payloads carry weights; size = structure + payload weight.

    With weight 1 everywhere this is plain enumeration.  Using inner values
    with their sizes as weights enumerates nested values by flattened size.
    """
    if bound < 1:
        raise StructureError("size bound must be positive")
    by_weight: dict[int, list] = {}
    for x, w in weighted:
        by_weight.setdefault(w, []).append(x)
    out: list[MVal] = []
    if inst.functor == POINTED_TERM:
        symbols = _symbols(inst)
        for n in range(1, bound + 1):
            for skel in _skeletons(symbols, n):
                inner, holes = _skeleton_weight(skel)
                if holes == 0:
                    continue
                for items in _fill(by_weight, holes, bound - inner):
                    for f in range(holes):
                        out.append(MVal(POINTED_TERM, items, f, skel))
    else:
        for k in range(1, bound + 1):
            for items in _fill(by_weight, k, bound):
                if inst.functor == PREFIX_LIST:
                    out.append(MVal(PREFIX_LIST, items, k - 1))
                elif inst.functor == SUFFIX_LIST:
                    out.append(MVal(SUFFIX_LIST, items, 0))
                else:
                    for f in range(k):
                        out.append(MVal(POINTED_LIST, items, f))
    keys = {x: elem_key(x) for x, _ in weighted}
    out.sort(key=lambda m: (m.size, tuple(keys[x] for x in m.items), _skeleton_key(m.skeleton), m.focus))
    return out


def _skeleton_key(skel: Optional[tuple]) -> tuple:
    if skel is None:
        return ()
    return tuple((0,) if t is HOLE else (1, t[0], t[1]) for t in skel)


def _fill(by_weight: dict, slots: int, budget: int) -> Iterator[tuple]:
    """Tuples of ``slots`` payloads whose weights sum to at most ``budget``."""
    weights = sorted(by_weight)

    def rec(left: int, budget: int):
        if left == 0:
            yield ()
            return
        for w in weights:
            if w + (left - 1) > budget:
                break
            for x in by_weight[w]:
                for rest in rec(left - 1, budget - w):
                    yield (x,) + rest

    return rec(slots, budget)


def enumerate_nested(inst: Moconad, domain: Sequence[Elem], bound: int, depth: int = 2) -> list[MVal]:
    """Values of ``M^depth X`` whose flattening has size at most ``bound``."""
    weight = {v: v.size for v in enumerate_values(inst, domain, bound)}
    for _ in range(depth - 2):
        values = enumerate_weighted(inst, list(weight.items()), bound)
        weight = {v: _outer_size(v, weight) for v in values}
    return enumerate_weighted(inst, list(weight.items()), bound)


def _outer_size(m: MVal, weight: dict) -> int:
    extra = 0 if m.skeleton is None else _skeleton_weight(m.skeleton)[0]
    return extra + sum(weight[x] for x in m.items)


# ---------------------------------------------------------------------------
# closed-form and dynamic-programming counts


def count_exact(inst: Moconad, weights: dict[int, int], size: int) -> int:
    """Number of values of exactly ``size`` when ``weights[w]`` payloads weigh ``w``."""
    if inst.functor == POINTED_TERM:
        total = 0
        symbols = _symbols(inst)
        for inner in range(0, size):
            for holes in range(1, size - inner + 1):
                shapes = _shape_count(symbols, inner, holes)
                if shapes:
                    total += holes * shapes * _compositions(weights, holes, size - inner)
        return total
    total = 0
    for k in range(1, size + 1):
        fills = _compositions(weights, k, size)
        total += fills * (k if inst.functor == POINTED_LIST else 1)
    return total


def count_values(inst: Moconad, domain_size: int, bound: int) -> int:
    """Closed-form count of ``enumerate_values`` (DP over skeletons for terms)."""
    if inst.functor in (PREFIX_LIST, SUFFIX_LIST):
        return sum(domain_size**n for n in range(1, bound + 1))
    if inst.functor == POINTED_LIST:
        return sum(n * domain_size**n for n in range(1, bound + 1))
    return sum(count_exact(inst, {1: domain_size}, n) for n in range(1, bound + 1))


def count_nested(inst: Moconad, domain_size: int, bound: int, depth: int = 2) -> int:
    weights = {n: count_exact(inst, {1: domain_size}, n) for n in range(1, bound + 1)}
    for _ in range(depth - 2):
        weights = {n: count_exact(inst, weights, n) for n in range(1, bound + 1)}
    return sum(count_exact(inst, weights, n) for n in range(1, bound + 1))


def _compositions(weights: dict[int, int], parts: int, total: int) -> int:
    """Weighted count of sequences of ``parts`` payloads with weights summing to ``total``."""
    row = {0: 1}
    for _ in range(parts):
        nxt: dict[int, int] = {}
        for s, c in row.items():
            for w, n in weights.items():
                if s + w <= total:
                    nxt[s + w] = nxt.get(s + w, 0) + c * n
        row = nxt
    return row.get(total, 0)


@lru_cache(maxsize=None)
def _shape_count(symbols: tuple, inner: int, holes: int) -> int:
    """Skeletons with ``inner`` symbol nodes and ``holes`` holes."""
    return _forest_count(symbols, 1, inner, holes)


@lru_cache(maxsize=None)
def _forest_count(symbols: tuple, trees: int, inner: int, holes: int) -> int:
    if trees == 0:
        return 1 if inner == 0 and holes == 0 else 0
    if inner < 0 or holes < 0:
        return 0
    total = 0
    # first tree is a hole
    total += _forest_count(symbols, trees - 1, inner, holes - 1)
    for _, arity in symbols:
        if arity == 0:
            total += _forest_count(symbols, trees - 1, inner - 1, holes)
            continue
        for i in range(0, inner):
            for h in range(0, holes + 1):
                a = _forest_count(symbols, arity, i, h)
                if a:
                    total += a * _forest_count(symbols, trees - 1, inner - 1 - i, holes - h)
    return total


# ---------------------------------------------------------------------------
# sampling


def sample_values(inst: Moconad, domain: Sequence[Elem], bound: int, seed: int, count: int) -> list[MVal]:
    """``count`` values of size at most ``bound``; value ``i`` depends only on (seed, i)."""
    if count < 1:
        raise StructureError("count must be positive")
    return [sample_value(inst, domain, bound, seed, i) for i in range(count)]


def sample_value(inst: Moconad, domain: Sequence[Elem], bound: int, seed: int, index: int) -> MVal:
    dom = sort_elems(set(domain))
    rng = random.Random(f"{seed}:{index}")
    if inst.functor != POINTED_TERM:
        n = rng.randint(1, bound)
        items = tuple(rng.choice(dom) for _ in range(n))
        focus = {PREFIX_LIST: n - 1, SUFFIX_LIST: 0}.get(inst.functor)
        if focus is None:
            focus = rng.randrange(n)
        return MVal(inst.functor, items, focus)
    symbols = _symbols(inst)
    sizes = [n for n in range(1, bound + 1) if any(_shape_count(symbols, n - h, h) for h in range(1, n + 1))]
    n = rng.choice(sizes)
    while True:
        skel = _random_forest(symbols, 1, n, rng)
        holes = _skeleton_weight(skel)[1]
        if holes:
            break
    items = tuple(rng.choice(dom) for _ in range(holes))
    return MVal(POINTED_TERM, items, rng.randrange(holes), skel)


@lru_cache(maxsize=None)
def _tree_count(symbols: tuple, trees: int, nodes: int) -> int:
    """Forests of ``trees`` trees with ``nodes`` tokens (holes count as nodes)."""
    return sum(_forest_count(symbols, trees, nodes - h, h) for h in range(0, nodes + 1))


def _random_forest(symbols: tuple, trees: int, nodes: int, rng: random.Random) -> tuple:
    """Uniform draw among forests of the given size."""
    if trees == 0:
        return ()
    options: list[tuple[int, object, int]] = []
    for first in range(1, nodes - trees + 2):
        rest = _tree_count(symbols, trees - 1, nodes - first)
        if not rest:
            continue
        if first == 1:
            options.append((rest, HOLE, 1))
            for name, arity in symbols:
                if arity == 0:
                    options.append((rest, (name, 0), 1))
        for name, arity in symbols:
            if arity > 0:
                kids = _tree_count(symbols, arity, first - 1)
                if kids:
                    options.append((kids * rest, (name, arity), first))
    total = sum(w for w, _, _ in options)
    pick = rng.randrange(total)
    for w, tok, first in options:
        if pick < w:
            break
        pick -= w
    if tok is HOLE or tok[1] == 0:
        head = (tok,)
    else:
        head = (tok,) + _random_forest(symbols, tok[1], first - 1, rng)
    return head + _random_forest(symbols, trees - 1, nodes - first, rng)


def cartesian(*pools: Sequence) -> Iterator[tuple]:
    return product(*pools)
