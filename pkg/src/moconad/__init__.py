"""Recognizable transductions over functors that are both monads and comonads."""
from .algebra import (
    FiniteAlgebra,
    Monoid,
    PointedPresentation,
    SemigroupTable,
    TermAutomaton,
    algebra_from_semigroup,
    context,
    context_monoid,
    decompose_pointed_algebra,
    is_aperiodic,
    is_m_group,
    oracle_algebra,
    pointed_algebra,
    term_algebra,
    tree_automaton,
)
from .composition import classical_wreath_compose, compose_transductions, oracle_compose, wreath_product
from .core import (
    FUNCTOR_IDS,
    HOLE,
    POINTED_LIST,
    POINTED_TERM,
    PREFIX_LIST,
    SUFFIX_LIST,
    Moconad,
    MVal,
    StructureError,
    all_instances,
    instance,
)
from .elems import FnTable, Pair
from .functors import Leaf, Node, enumerate_nested, enumerate_values, make_value, to_tree
from .lawcheck import Exhaustive, LawReport, Randomized, check_all_laws, check_law
from .laws import CATALOG, LAW_IDS
from .mealy import (
    MealyMachine,
    UnambiguousMealy,
    as_unambiguous,
    check_unambiguous,
    mealy_to_transduction,
    run_mealy,
    run_unambiguous,
    transduction_to_mealy,
    transduction_to_unambiguous,
    unambiguous_to_transduction,
)
from .transduction import (
    LanguageRecognizer,
    RelaxedTransduction,
    Transduction,
    apply_relaxed,
    apply_transduction,
    identity_transduction,
    make_transduction,
    recognize,
)

__all__ = [
    "algebra_from_semigroup",
    "all_instances",
    "apply_relaxed",
    "apply_transduction",
    "as_unambiguous",
    "CATALOG",
    "check_all_laws",
    "check_law",
    "check_unambiguous",
    "classical_wreath_compose",
    "compose_transductions",
    "context",
    "context_monoid",
    "decompose_pointed_algebra",
    "enumerate_nested",
    "enumerate_values",
    "Exhaustive",
    "FiniteAlgebra",
    "FnTable",
    "FUNCTOR_IDS",
    "HOLE",
    "identity_transduction",
    "instance",
    "is_aperiodic",
    "is_m_group",
    "LanguageRecognizer",
    "LAW_IDS",
    "LawReport",
    "Leaf",
    "make_transduction",
    "make_value",
    "mealy_to_transduction",
    "MealyMachine",
    "Moconad",
    "Monoid",
    "MVal",
    "Node",
    "oracle_algebra",
    "oracle_compose",
    "Pair",
    "pointed_algebra",
    "POINTED_LIST",
    "POINTED_TERM",
    "PointedPresentation",
    "PREFIX_LIST",
    "Randomized",
    "recognize",
    "RelaxedTransduction",
    "run_mealy",
    "run_unambiguous",
    "SemigroupTable",
    "StructureError",
    "SUFFIX_LIST",
    "term_algebra",
    "TermAutomaton",
    "to_tree",
    "Transduction",
    "transduction_to_mealy",
    "transduction_to_unambiguous",
    "tree_automaton",
    "unambiguous_to_transduction",
    "UnambiguousMealy",
    "wreath_product",
]

__version__ = "0.1.0"
