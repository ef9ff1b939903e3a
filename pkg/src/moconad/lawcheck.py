"""Running the law catalog against functor instances.

Two strategies are available.  ``Exhaustive`` checks every tuple of inputs
within the bounds; its case count is compared against the closed-form
counts from :mod:`moconad.functors`.  ``Randomized`` draws inputs from a
generator keyed by ``(seed, index)`` so any single case can be regenerated.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Optional, Sequence

from .core import (
    POINTED_TERM,
    SUFFIX_LIST,
    Moconad,
    MVal,
    PointedList,
    PointedTerm,
    PrefixList,
    SuffixList,
)
from .elems import FnTable, all_functions, elem_key, show
from .functors import (
    count_nested,
    count_values,
    enumerate_nested,
    enumerate_values,
    sample_value,
)
from .laws import CATALOG, LAWS, Law

DOMAIN_SYMBOLS = ("x", "y", "z")
CODOMAIN_SYMBOLS = ("p", "q", "r")


class LawCheckError(ValueError):
    pass


@dataclass(frozen=True)
class Exhaustive:
    bound: int = 4
    domain_size: int = 2
    nested_bound: int = 4
    codomain_size: int = 2

    def describe(self) -> dict:
        return {"kind": "exhaustive", "bound": self.bound, "domainSize": self.domain_size,
                "nestedBound": self.nested_bound, "codomainSize": self.codomain_size}


@dataclass(frozen=True)
class Randomized:
    seed: int = 0
    samples: int = 200
    bound: int = 8
    domain_size: int = 2
    codomain_size: int = 2

    def describe(self) -> dict:
        return {"kind": "random", "seed": self.seed, "samples": self.samples, "bound": self.bound,
                "domainSize": self.domain_size, "codomainSize": self.codomain_size}


def default_strategy(inst: Moconad) -> Exhaustive:
    """Lists up to 4 items, trees up to 7 nodes, nested values up to 4."""
    return Exhaustive(bound=7 if inst.functor == POINTED_TERM else 4)


@dataclass
class LawReport:
    law: str
    instance: str
    strategy: dict
    passed: bool
    cases: int
    expected_cases: Optional[int] = None
    counterexample: Optional[dict] = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        from .serialize import elem_to_json

        out = {
            "law": self.law,
            "instance": self.instance,
            "strategy": self.strategy,
            "verdict": "pass" if self.passed else "fail",
            "casesChecked": self.cases,
        }
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {
                "inputs": [elem_to_json(x) for x in ce["inputs"]],
                "lhs": elem_to_json(ce["lhs"]) if "lhs" in ce else None,
                "rhs": elem_to_json(ce["rhs"]) if "rhs" in ce else None,
                "error": ce.get("error"),
            }
        return out


# ---------------------------------------------------------------------------
# input pools


def _domains(domain_size: int, codomain_size: int) -> tuple[tuple, tuple, tuple]:
    if not 1 <= domain_size <= 3 or not 1 <= codomain_size <= 3:
        raise LawCheckError("domain and codomain sizes range over 1..3")
    return DOMAIN_SYMBOLS[:domain_size], tuple(range(codomain_size)), CODOMAIN_SYMBOLS[:codomain_size]


def input_pool(inst: Moconad, kind: str, strategy: Exhaustive) -> list:
    dom, cod, cod2 = _domains(strategy.domain_size, strategy.codomain_size)
    if kind in ("X", "Y"):
        return list(dom)
    if kind == "MX":
        return list(enumerate_values(inst, dom, strategy.bound))
    if kind == "MXn":
        return list(enumerate_values(inst, dom, strategy.nested_bound))
    if kind == "MMX":
        return enumerate_nested(inst, dom, strategy.nested_bound, 2)
    if kind == "MMMX":
        return enumerate_nested(inst, dom, strategy.nested_bound, 3)
    if kind == "F":
        return all_functions(dom, cod)
    if kind == "G":
        return all_functions(cod, cod2)
    raise LawCheckError(f"unknown input kind {kind!r}")


def expected_pool_size(inst: Moconad, kind: str, strategy: Exhaustive) -> int:
    """Independent count of ``input_pool`` from closed forms."""
    d, c = strategy.domain_size, strategy.codomain_size
    return {
        "X": lambda: d,
        "Y": lambda: d,
        "MX": lambda: count_values(inst, d, strategy.bound),
        "MXn": lambda: count_values(inst, d, strategy.nested_bound),
        "MMX": lambda: count_nested(inst, d, strategy.nested_bound, 2),
        "MMMX": lambda: count_nested(inst, d, strategy.nested_bound, 3),
        "F": lambda: c**d,
        "G": lambda: c**c,
    }[kind]()


def _sample_input(inst: Moconad, kind: str, strategy: Randomized, index: int, slot: int) -> Any:
    dom, cod, cod2 = _domains(strategy.domain_size, strategy.codomain_size)
    rng = random.Random(f"{strategy.seed}:{index}:{slot}")
    if kind in ("X", "Y"):
        return rng.choice(dom)
    if kind in ("MX", "MXn"):
        return sample_value(inst, dom, strategy.bound, strategy.seed, index * 16 + slot)
    if kind == "F":
        return FnTable(dom, [rng.choice(cod) for _ in dom])
    if kind == "G":
        return FnTable(cod, [rng.choice(cod2) for _ in cod])
    if kind in ("MMX", "MMMX"):
        depth = 2 if kind == "MMX" else 3
        return _sample_nested(inst, dom, strategy, rng, depth)
    raise LawCheckError(f"unknown input kind {kind!r}")


def _sample_nested(inst: Moconad, dom: tuple, strategy: Randomized, rng: random.Random, depth: int) -> MVal:
    inner_bound = max(1, strategy.bound // 2)
    if depth == 1:
        return sample_value(inst, dom, inner_bound, rng.randrange(1 << 30), 0)
    outer = sample_value(inst, ("_",), 3, rng.randrange(1 << 30), 0)
    return outer.with_items(tuple(_sample_nested(inst, dom, strategy, rng, depth - 1) for _ in outer.items))


# ---------------------------------------------------------------------------
# checking


def evaluate_case(law: Law, inst: Moconad, inputs: Sequence) -> Optional[dict]:
    """``None`` when both sides agree, else a counterexample record."""
    try:
        lhs = law.lhs(inst, *inputs)
        rhs = law.rhs(inst, *inputs)
    except Exception as exc:  # a broken operation counts as a failure
        return {"inputs": tuple(inputs), "error": f"{type(exc).__name__}: {exc}"}
    if lhs == rhs:
        return None
    return {"inputs": tuple(inputs), "lhs": lhs, "rhs": rhs}


def _law(law: str | Law) -> Law:
    if isinstance(law, Law):
        return law
    try:
        return LAWS[law]
    except KeyError:
        raise LawCheckError(f"unknown law {law!r}") from None


def check_law(law: str | Law, inst: Moconad, strategy: Exhaustive | Randomized | None = None,
              minimize: bool = True) -> LawReport:
    law = _law(law)
    strategy = strategy or default_strategy(inst)
    start = time.perf_counter()
    cases = 0
    failure = None
    expected = None
    if isinstance(strategy, Exhaustive):
        pools = [input_pool(inst, k, strategy) for k in law.inputs]
        expected = 1
        for k in law.inputs:
            expected *= expected_pool_size(inst, k, strategy)
        for inputs in product(*pools):
            cases += 1
            failure = evaluate_case(law, inst, inputs)
            if failure is not None:
                break
        if failure is None and cases != expected:
            raise LawCheckError(f"{law.name}: checked {cases} cases, closed form predicts {expected}")
        if failure is not None and minimize:
            small = minimize_counterexample(law, inst, failure["inputs"], strategy)
            failure = evaluate_case(law, inst, small)
    else:
        for i in range(strategy.samples):
            inputs = tuple(_sample_input(inst, k, strategy, i, s) for s, k in enumerate(law.inputs))
            cases += 1
            failure = evaluate_case(law, inst, inputs)
            if failure is not None:
                failure["index"] = i
                break
    return LawReport(
        law=law.name,
        instance=inst.functor,
        strategy=strategy.describe(),
        passed=failure is None,
        cases=cases,
        expected_cases=expected,
        counterexample=failure,
        seconds=time.perf_counter() - start,
    )


def check_all_laws(inst: Moconad, strategy: Exhaustive | Randomized | None = None) -> list[LawReport]:
    return [check_law(law, inst, strategy) for law in CATALOG]


def _key(x: Any) -> tuple:
    return elem_key(x)


def minimize_counterexample(law: str | Law, inst: Moconad, inputs: Sequence,
                            strategy: Optional[Exhaustive] = None) -> tuple:
    """Shrink failing inputs one coordinate at a time.

    Each round replaces some coordinate by the canonically smallest pool
    value that keeps the case failing.  The result fails and no single
    coordinate can be lowered further.
    """
    law = _law(law)
    strategy = strategy or default_strategy(inst)
    current = tuple(inputs)
    if evaluate_case(law, inst, current) is None:
        raise LawCheckError("inputs satisfy the law; nothing to minimize")
    pools = [sorted(input_pool(inst, k, strategy), key=_key) for k in law.inputs]
    improved = True
    while improved:
        improved = False
        for i, pool in enumerate(pools):
            mine = _key(current[i])
            for cand in pool:
                if _key(cand) >= mine:
                    break
                trial = current[:i] + (cand,) + current[i + 1:]
                if evaluate_case(law, inst, trial) is not None:
                    current = trial
                    improved = True
                    break
    return current


# ---------------------------------------------------------------------------
# deliberately broken instances


class _PutFirstPrefix(PrefixList):
    def put(self, m, x):
        m = self._own(m)
        return m.with_items((x,) + m.items[1:])


class _WrongFocusFlatten(PointedList):
    def flatten(self, mm):
        flat = super().flatten(mm)
        return flat.with_focus(min(mm.focus, len(flat.items) - 1))


class _PrefixesForSuffix(SuffixList):
    def expand(self, m):
        m = self._own(m)
        pre = tuple(MVal(SUFFIX_LIST, m.items[: i + 1], 0) for i in range(len(m.items)))
        return MVal(SUFFIX_LIST, pre, 0)


class _OuterFocusZero(PointedList):
    def expand(self, m):
        return super().expand(m).with_focus(0)


class _ExtractFirstLeaf(PointedTerm):
    def extract(self, m):
        m = self._own(m)
        return m.items[0]


MUTANTS: dict[str, Callable[[], Moconad]] = {
    "prefix-put-replaces-first": _PutFirstPrefix,
    "pointed-flatten-keeps-outer-index": _WrongFocusFlatten,
    "suffix-expand-gives-prefixes": _PrefixesForSuffix,
    "pointed-expand-focus-first": _OuterFocusZero,
    "term-extract-first-leaf": lambda: _ExtractFirstLeaf({"a": 2, "b": 1, "c": 0}),
}


def render_inputs(inputs: Sequence) -> str:
    return ", ".join(show(x) for x in inputs)
