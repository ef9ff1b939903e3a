import pytest
from hypothesis import given
from hypothesis import strategies as st

from moconad import (
    FUNCTOR_IDS,
    LanguageRecognizer,
    RelaxedTransduction,
    apply_relaxed,
    algebra_from_semigroup,
    apply_transduction,
    enumerate_values,
    identity_transduction,
    instance,
    make_transduction,
    recognize,
)
from moconad.generators import random_transduction
from moconad.transduction import TransductionError, check_shape_preserved, extract_algebra

from helpers import PREFIX, L, P, S, parity, parity_transduction


def test_running_parity():
    assert apply_transduction(parity_transduction(), L(1, 0, 1)) == L(1, 1, 0)


def test_running_parity_on_suffix_lists_reads_right_to_left():
    assert apply_transduction(parity_transduction("suffix-list"), S(1, 0, 1)) == S(0, 1, 1)


def test_unknown_letter_reports_position():
    with pytest.raises(TransductionError, match="position 2"):
        apply_transduction(parity_transduction(), L(1, 5))


def test_wrong_functor_is_rejected():
    with pytest.raises(TransductionError):
        apply_transduction(parity_transduction(), P([1], 1))


def test_output_map_must_cover_carrier():
    with pytest.raises(TransductionError):
        make_transduction(parity(), {0: 0, 1: 1}, {0: "a"}, output_alphabet=["a"])


def test_input_map_must_land_in_carrier():
    with pytest.raises(TransductionError):
        make_transduction(parity(), {0: 0, 1: 2}, {0: 0, 1: 1})


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
@pytest.mark.parametrize("seed", range(10))
def test_shape_is_preserved(functor, seed):
    t = random_transduction(functor, seed)
    verdict = check_shape_preserved(t, t.inst, enumerate_values(t.inst, t.input_alphabet, 4))
    assert verdict.ok and verdict.checked > 0


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_single_letter(functor):
    t = random_transduction(functor, 11)
    M = t.inst
    for a in t.input_alphabet:
        assert t(M.unit(a)) == M.unit(t.output_map[t.input_map[a]])


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_identity_transduction_echoes(functor):
    inst = instance(functor)
    t = identity_transduction(inst, "ab")
    assert all(t(v) == v for v in enumerate_values(inst, "ab", 4))


def test_parity_language():
    rec = LanguageRecognizer(parity(), {0: 0, 1: 1}, {0: True, 1: False})
    assert recognize(rec, L(1, 1)) is True
    for v in enumerate_values(PREFIX, (0, 1), 6):
        assert recognize(rec, v) == (sum(v.items) % 2 == 0)


def test_constant_acceptance():
    rec = LanguageRecognizer(parity(), {0: 0, 1: 1}, {0: True, 1: True})
    assert all(recognize(rec, v) for v in enumerate_values(PREFIX, (0, 1), 4))


def test_monoid_recognizer_on_words():
    # "contains ab as a factor" through the syntactic monoid of its minimal DFA
    states = (0, 1, 2)
    step = {(0, "a"): 1, (0, "b"): 0, (1, "a"): 1, (1, "b"): 2, (2, "a"): 2, (2, "b"): 2}

    def behaviour(word):
        return tuple(_run(step, q, word) for q in states)

    elements = sorted({behaviour(w) for w in ("a", "b", "ab", "ba", "aa", "bb", "aba", "bab")})
    table = {(f, g): tuple(g[f[q]] for q in states) for f in elements for g in elements}
    alg = algebra_from_semigroup(table, elements=elements)
    rec = LanguageRecognizer(alg, {"a": behaviour("a"), "b": behaviour("b")},
                             {f: f[0] == 2 for f in elements})
    for v in enumerate_values(PREFIX, "ab", 7):
        assert recognize(rec, v) == ("ab" in "".join(v.items))


def _run(step, q, word):
    for a in word:
        q = step[(q, a)]
    return q


def test_relaxed_duplicate_letters_changes_shape():
    alg = extract_algebra(PREFIX, "ab")
    t = RelaxedTransduction(alg, {"a": "a", "b": "b"}, {"a": L("a", "a"), "b": L("b", "b")})
    assert apply_relaxed(t, L("a", "b")) == L("a", "a", "b", "b")
    verdict = check_shape_preserved(lambda w: apply_relaxed(t, w), PREFIX, enumerate_values(PREFIX, "ab", 4))
    assert not verdict.ok and verdict.counterexample == L("a")


@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=8))
def test_relaxed_output_length_is_sum_of_blocks(word):
    alg = extract_algebra(PREFIX, "ab")
    blocks = {"a": L("x"), "b": L("y", "y", "y")}
    t = RelaxedTransduction(alg, {"a": "a", "b": "b"}, blocks)
    assert len(apply_relaxed(t, L(*word))) == sum(len(blocks[c]) for c in word)


@pytest.mark.parametrize("functor", FUNCTOR_IDS)
def test_relaxed_with_singletons_is_plain(functor):
    t = random_transduction(functor, 5)
    M = t.inst
    relaxed = RelaxedTransduction(t.alg, t.input_map, {s: M.unit(t.output_map[s]) for s in t.alg.carrier})
    for v in enumerate_values(M, t.input_alphabet, 4):
        assert apply_relaxed(relaxed, v) == t(v)


def test_empty_stream_is_vacuously_shape_preserving():
    verdict = check_shape_preserved(parity_transduction(), PREFIX, [])
    assert verdict.ok and verdict.checked == 0
