import pytest
from hypothesis import given
from hypothesis import strategies as st

from moconad import FUNCTOR_IDS, Leaf, Node, StructureError, enumerate_values, instance, make_value
from moconad.core import HOLE, focus_path
from moconad.elems import UNIT, Pair
from moconad.functors import sample_value
from moconad.laws import flatten_expand_trace

from helpers import POINTED, PREFIX, SUFFIX, L, P, S, nested

TERM = instance("pointed-term")
DOMAIN = ("x", "y", "z")


def term(tree, path):
    return make_value(TERM, tree=tree, focus_path=path)


@st.composite
def values(draw, functor):
    inst = instance(functor)
    if functor == "pointed-term":
        seed = draw(st.integers(0, 10_000))
        return inst, sample_value(inst, DOMAIN, 7, seed, 0)
    items = draw(st.lists(st.sampled_from(DOMAIN), min_size=1, max_size=6))
    focus = draw(st.integers(1, len(items))) if functor == "pointed-list" else None
    return inst, make_value(inst, items, focus=focus)


any_value = st.sampled_from(FUNCTOR_IDS).flatmap(values)


# -- map ---------------------------------------------------------------------


def test_map_identity_prefix():
    assert PREFIX.map(lambda x: x, L(1, 2, 3)) == L(1, 2, 3)


def test_map_keeps_focus():
    assert POINTED.map(str.upper, P("abc", 2)) == P("ABC", 2)


def test_map_composition_by_hand():
    inc, dbl = (lambda x: x + 1), (lambda x: 2 * x)
    assert PREFIX.map(lambda x: dbl(inc(x)), L(1, 2)) == L(4, 6)
    assert PREFIX.map(dbl, PREFIX.map(inc, L(1, 2))) == L(4, 6)


# -- unit --------------------------------------------------------------------


def test_unit_pointed():
    assert POINTED.unit("a") == P("a", 1)


def test_unit_prefix():
    assert nested(PREFIX.unit(3)) == [3]


def test_unit_term_is_focused_leaf():
    assert TERM.unit("x") == term(Leaf("x"), [])
    assert focus_path(TERM.unit("x")) == ()


# -- flatten -----------------------------------------------------------------


def test_flatten_pointed_keeps_inner_focus_of_focused_block():
    mm = P([P("abc", 2), P("def", 1), P("gh", 2)], 2)
    assert POINTED.flatten(mm) == P("abcdefgh", 4)


def test_flatten_prefix_concatenates():
    assert PREFIX.flatten(L(L(1, 2), L(3, 4), L(5, 6, 7))) == L(1, 2, 3, 4, 5, 6, 7)


def test_flatten_suffix_concatenates():
    assert SUFFIX.flatten(S(S(1, 2), S(3))) == S(1, 2, 3)


def test_flatten_term_splices_and_follows_focus():
    u = term(Node("b", (Leaf("x"),)), [1])
    v = term(Node("a", (Leaf("y"), Leaf("z"))), [2])
    outer = term(Node("a", (Leaf(u), Leaf(v))), [2])
    want = term(Node("a", (Node("b", (Leaf("x"),)), Node("a", (Leaf("y"), Leaf("z"))))), [2, 2])
    assert TERM.flatten(outer) == want


def test_flatten_rejects_foreign_inner_values():
    with pytest.raises(StructureError):
        PREFIX.flatten(L(L(1), P([2], 1)))


@given(any_value)
def test_flatten_of_unit(pair):
    M, m = pair
    assert M.flatten(M.unit(m)) == m
    assert M.flatten(M.map(M.unit, m)) == m


# -- extract and expand ------------------------------------------------------


def test_extract_examples():
    assert PREFIX.extract(L("x1", "x2", "x3")) == "x3"
    assert POINTED.extract(P("abc", 2)) == "b"
    assert SUFFIX.extract(S("x1", "x2")) == "x1"


def test_expand_pointed():
    assert POINTED.expand(P("abc", 2)) == P([P("abc", 1), P("abc", 2), P("abc", 3)], 2)


def test_expand_prefix_lists_prefixes():
    got = PREFIX.expand(L(*range(1, 8)))
    assert nested(got) == [list(range(1, n + 1)) for n in range(1, 8)]


def test_expand_suffix_lists_suffixes():
    assert nested(SUFFIX.expand(S(1, 2, 3))) == [[1, 2, 3], [2, 3], [3]]


def test_expand_term_repoints_every_leaf():
    t = term(Node("a", (Leaf("x"), Leaf("y"))), [1])
    got = TERM.expand(t)
    # focus paths are 0-based child indices
    assert focus_path(got) == (0,)
    assert got.skeleton == (("a", 2), HOLE, HOLE)
    assert [focus_path(v) for v in got.items] == [(0,), (1,)]
    assert all(v.items == ("x", "y") for v in got.items)


@given(any_value)
def test_extract_after_expand(pair):
    M, m = pair
    assert M.extract(M.expand(m)) == m
    assert M.map(M.extract, M.expand(m)) == m


# -- put ---------------------------------------------------------------------


def test_put_examples():
    assert POINTED.put(P([1, 2, 3, 4], 2), 7) == P([1, 7, 3, 4], 2)
    assert PREFIX.put(L(1, 2, 3), 5) == L(1, 2, 5)


@given(any_value, st.sampled_from(DOMAIN), st.sampled_from(DOMAIN))
def test_put_lens_laws(pair, x, y):
    M, m = pair
    assert M.put(m, M.extract(m)) == m
    assert M.extract(M.put(m, x)) == x
    assert M.put(M.put(m, x), y) == M.put(m, y)


# -- strength and shape ------------------------------------------------------


def test_strength_pairs_every_item():
    got = PREFIX.strength("c", L("a", "b", "a", "b"))
    assert got == L(Pair("c", "a"), Pair("c", "b"), Pair("c", "a"), Pair("c", "b"))


def test_strength_single_position():
    assert POINTED.strength("z", P("a", 1)) == P([Pair("z", "a")], 1)


@given(any_value)
def test_strength_then_second_projection(pair):
    M, m = pair
    assert M.map(lambda p: p.right, M.strength("c", m)) == m


def test_shape_examples():
    assert PREFIX.shape(L("a", "b", "c")) == L(UNIT, UNIT, UNIT)
    sh = POINTED.shape(P("abc", 2))
    assert (len(sh.items), sh.focus + 1) == (3, 2)


@given(any_value)
def test_shape_ignores_map(pair):
    M, m = pair
    assert M.shape(M.map(lambda x: (x, x), m)) == M.shape(m)


# -- concat ------------------------------------------------------------------


def test_concat_examples():
    assert PREFIX.concat(L(1, 2, 3), L(4, 5, 6)) == L(1, 2, 4, 5, 6)
    # the focused 2 is overridden, exactly as the 3 is in the prefix case
    assert POINTED.concat(P([1, 2, 3], 2), P([4, 5, 6], 3)) == P([1, 4, 5, 6, 3], 4)


def test_concat_keeping_the_focused_item_breaks_context_composition():
    from moconad.algebra import context
    from moconad.generators import random_pointed_algebra, rng_for

    def keep_focused(k, l):
        return P(k.items[: k.focus] + l.items + k.items[k.focus:], k.focus + l.focus + 1)

    alg = random_pointed_algebra(rng_for(0, "concat"), 3)
    broken = [
        (k, l)
        for k in enumerate_values(POINTED, alg.carrier, 2)
        for l in enumerate_values(POINTED, alg.carrier, 2)
        if context(alg, k).after(context(alg, l)) != context(alg, keep_focused(k, l))
    ]
    assert broken
    assert all(
        context(alg, k).after(context(alg, l)) == context(alg, POINTED.concat(k, l))
        for k in enumerate_values(POINTED, alg.carrier, 2)
        for l in enumerate_values(POINTED, alg.carrier, 2)
    )


@given(any_value, st.sampled_from(DOMAIN))
def test_concat_with_singleton_on_left(pair, x):
    M, m = pair
    assert M.concat(M.unit(x), m) == m


# -- the flatten-expand walk-through ------------------------------------------


def test_flatten_expand_trace_on_three_blocks():
    t = flatten_expand_trace(PREFIX, L(L(1, 2), L(3, 4), L(5, 6, 7)))
    seven = [list(range(1, n + 1)) for n in range(1, 8)]
    assert nested(t["flatten"]) == [1, 2, 3, 4, 5, 6, 7]
    assert nested(t["expand-after-flatten"]) == seven
    assert nested(t["expand"]) == [[[1, 2]], [[1, 2], [3, 4]], [[1, 2], [3, 4], [5, 6, 7]]]
    assert nested(t["work"]) == [
        [[1], [1, 2]],
        [[1, 2, 3], [1, 2, 3, 4]],
        [[1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5, 6, 7]],
    ]
    assert nested(t["flatten-after-work"]) == seven


# -- validation and rendering ------------------------------------------------


def test_validate_rejects_empty_and_bad_focus():
    with pytest.raises(StructureError):
        PREFIX.validate(L())
    with pytest.raises(StructureError):
        POINTED.validate(P("ab", 3))
    with pytest.raises(StructureError):
        SUFFIX.validate(S(1, 2).with_focus(1))


def test_render():
    assert P("abc", 2).render() == "[a, _b_, c]"
    assert S(1, 2).render() == "<-[1, 2]"
    assert term(Node("a", (Leaf("x"), Node("c", ()))), [1]).render() == "a(_x_, c)"
