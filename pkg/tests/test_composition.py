import pytest

from moconad import (
    FUNCTOR_IDS,
    algebra_from_semigroup,
    classical_wreath_compose,
    compose_transductions,
    enumerate_nested,
    enumerate_values,
    identity_transduction,
    instance,
    make_transduction,
    oracle_compose,
    wreath_product,
)
from moconad.algebra import CapExceeded, em_violation
from moconad.composition import CompositionError, adjoin_identity
from moconad.generators import random_algebra, random_pair, rng_for

from helpers import PREFIX, L, parity, parity_transduction


def test_parity_then_parity_by_hand():
    F = G = parity_transduction()
    # running parities of [1,0,1] are [1,1,0]; of those, [1,0,0]
    assert oracle_compose(F, G, L(1, 0, 1)) == L(1, 0, 0)
    assert compose_transductions(F, G)(L(1, 0, 1)) == L(1, 0, 0)
    assert classical_wreath_compose(F, G)(L(1, 0, 1)) == L(1, 0, 0)


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
@pytest.mark.parametrize("seed", range(4))
def test_composition_matches_sequential_run(functor, seed):
    F, G = random_pair(functor, 100 + seed)
    H = compose_transductions(F, G)
    for w in enumerate_values(F.inst, F.input_alphabet, 4):
        assert H(w) == oracle_compose(F, G, w)


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_restricting_to_contexts_keeps_behaviour(functor):
    for seed in range(3):
        F, G = random_pair(functor, 200 + seed)
        full = compose_transductions(F, G)
        small = compose_transductions(F, G, restrict_to_contexts=True)
        assert len(small.alg.presentation.functions) <= len(full.alg.presentation.functions)
        for w in enumerate_values(F.inst, F.input_alphabet, 4):
            assert small(w) == full(w)


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_identity_second_stage(functor):
    F, _ = random_pair(functor, 7)
    G = identity_transduction(F.inst, F.output_alphabet)
    H = compose_transductions(F, G)
    assert all(H(w) == F(w) for w in enumerate_values(F.inst, F.input_alphabet, 4))


def test_identity_second_stage_classical():
    F, _ = random_pair("prefix-list", 8)
    G = identity_transduction(PREFIX, F.output_alphabet)
    H = classical_wreath_compose(F, G)
    assert all(H(w) == F(w) for w in enumerate_values(PREFIX, F.input_alphabet, 5))


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_identity_then_identity_renames_letters(functor):
    inst = instance(functor)
    F = identity_transduction(inst, "ab")
    assert all(oracle_compose(F, F, w) == w for w in enumerate_values(inst, "ab", 4))


@pytest.mark.parametrize("seed", range(6))
def test_classical_agrees_with_generalized(seed):
    F, G = random_pair("prefix-list", 300 + seed)
    C, K = compose_transductions(F, G), classical_wreath_compose(F, G)
    for w in enumerate_values(PREFIX, F.input_alphabet, 5):
        assert C(w) == K(w) == oracle_compose(F, G, w)


def test_term_pair_on_small_trees():
    F, G = random_pair("pointed-term", 5)
    H = compose_transductions(F, G)
    for w in enumerate_values(F.inst, F.input_alphabet, 5):
        assert H(w) == oracle_compose(F, G, w)


def test_one_element_first_factor_copies_second():
    trivial = algebra_from_semigroup({("e", "e"): "e"})
    W = wreath_product(trivial, parity())
    assert W.presentation.carrier_size() == 2
    second = [p.right.values[0] for p in W.carrier]
    assert sorted(second) == [0, 1]
    for v in enumerate_values(PREFIX, W.carrier, 4):
        assert W(v).right.values[0] == parity()(PREFIX.map(lambda p: p.right.values[0], v))


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_small_wreath_is_an_algebra(functor):
    rng = rng_for(1, functor, "small-wreath")
    W = wreath_product(random_algebra(functor, rng, 2), random_algebra(functor, rng, 1))
    assert len(W.carrier) == 2
    assert em_violation(W, bound=3) is None


def test_unit_law_on_full_carrier():
    rng = rng_for(2, "unit")
    W = wreath_product(random_algebra("prefix-list", rng, 2), random_algebra("prefix-list", rng, 2))
    assert len(W.carrier) == 32
    assert all(W(PREFIX.unit(x)) == x for x in W.carrier)
    for mm in enumerate_nested(PREFIX, W.carrier, 2):
        assert W(PREFIX.flatten(mm)) == W(PREFIX.map(W.evaluate, mm))


def test_output_alphabet_must_chain():
    F = parity_transduction()
    G = make_transduction(algebra_from_semigroup({("e", "e"): "e"}), {"a": "e"}, {"e": "a"})
    with pytest.raises(CompositionError):
        compose_transductions(F, G)
    with pytest.raises(CompositionError):
        classical_wreath_compose(F, G)


def test_instances_must_match():
    with pytest.raises(CompositionError):
        compose_transductions(parity_transduction(), parity_transduction("suffix-list"))


def test_classical_needs_prefix_semigroups():
    with pytest.raises(CompositionError):
        classical_wreath_compose(parity_transduction("suffix-list"), parity_transduction("suffix-list"))


def test_carrier_cap():
    three = algebra_from_semigroup({(a, b): (a + b) % 3 for a in range(3) for b in range(3)})
    W = wreath_product(three, three, cap=1000)
    assert W.presentation.carrier_size() == 3 * 3**27
    with pytest.raises(CapExceeded):
        W.carrier
    # products never need the carrier
    F = make_transduction(three, {0: 0, 1: 1, 2: 2}, {0: 0, 1: 1, 2: 2})
    H = compose_transductions(F, F, cap=1000)
    assert H(L(1, 1, 1)) == oracle_compose(F, F, L(1, 1, 1))


def test_adjoin_identity_is_always_fresh():
    elements, table, one = adjoin_identity((0, 1), {(a, b): (a + b) % 2 for a in (0, 1) for b in (0, 1)})
    assert one == "1" and len(elements) == 3
    assert adjoin_identity(("1",), {("1", "1"): "1"})[2] == "1'"
