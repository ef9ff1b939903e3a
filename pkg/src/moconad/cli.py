"""Command-line interface: run, compose, check-laws and convert.

Exit codes: 0 success, 2 usage or schema error, 3 domain error (unknown
letter, ambiguous machine, oversized carrier), 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import product
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .algebra import AlgebraError
from .composition import CompositionError, classical_wreath_compose, compose_transductions, oracle_compose
from .core import FUNCTOR_IDS, POINTED_LIST, POINTED_TERM, PREFIX_LIST, SUFFIX_LIST, MVal, StructureError, instance
from .functors import enumerate_values
from .lawcheck import Exhaustive, LawCheckError, Randomized, check_all_laws, check_law, default_strategy
from .laws import LAW_IDS
from .mealy import (
    MachineError,
    MealyMachine,
    UnambiguousMealy,
    check_unambiguous,
    mealy_to_transduction,
    phi,
    run_mealy,
    run_unambiguous,
    transduction_to_mealy,
    transduction_to_unambiguous,
    unambiguous_to_transduction,
)
from .serialize import (
    SchemaError,
    dumps,
    elem_to_json,
    load_document,
    mealy_to_json,
    term_to_json,
    transduction_to_json,
    unambiguous_to_json,
    value_from_json,
    value_to_json,
)
from .transduction import Transduction, TransductionError, apply_transduction

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# helpers


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_USAGE, f"{path} is not JSON: {exc}") from None


def _load(path: str, kinds: Sequence[str]):
    doc = _read_json(path)
    obj = load_document(doc)
    if doc.get("kind") not in kinds:
        raise CliError(EXIT_USAGE, f"{path} holds a {doc.get('kind')} document, expected one of {list(kinds)}")
    return obj


def _write(path: str, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _parse_input(text: str, json_input: bool) -> Any:
    """A tuple of letters, or a decoded value document."""
    if os.path.isfile(text):
        raw = _read_json(text)
    elif json_input or text[:1] in "[{":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_USAGE, f"input is not JSON: {exc}") from None
    else:
        return tuple(text)
    if isinstance(raw, list):
        from .serialize import elem_from_json

        return tuple(elem_from_json(x) for x in raw)
    return value_from_json(raw)


def _is_plain(word: Sequence) -> bool:
    return all(isinstance(x, str) and len(x) == 1 for x in word)


def word_function(obj) -> Callable[[tuple], tuple]:
    """Word-to-word behaviour of a machine or list transduction."""
    if isinstance(obj, MealyMachine):
        return lambda w: run_mealy(obj, w)
    if isinstance(obj, UnambiguousMealy):
        return lambda w: run_unambiguous(obj, w)
    f = obj.inst.functor
    if f in (PREFIX_LIST, SUFFIX_LIST):
        return lambda w: apply_transduction(obj, MVal(f, tuple(w), len(w) - 1 if f == PREFIX_LIST else 0)).items
    if f == POINTED_LIST:
        return phi(lambda v: apply_transduction(obj, v))
    raise CliError(EXIT_USAGE, "term transductions act on terms, not words")


def _words(alphabet: Sequence, upto: int):
    for n in range(1, upto + 1):
        yield from product(alphabet, repeat=n)


def _show_word(w: Sequence) -> str:
    return "".join(w) if _is_plain(w) else json.dumps([elem_to_json(x) for x in w])


def _ensure_unambiguous(u: UnambiguousMealy) -> None:
    verdict = check_unambiguous(u)
    if not verdict.ok:
        witness = _show_word(verdict.witness) if verdict.witness is not None else "(none found)"
        raise CliError(EXIT_DOMAIN, f"machine is not unambiguous: {verdict.reason}; witness {witness}")


# ---------------------------------------------------------------------------
# commands


def cmd_run(args) -> int:
    spec = _load(args.spec, ("transduction", "mealy", "unambiguous-mealy"))
    given = _parse_input(args.input, args.json_input)
    if isinstance(spec, UnambiguousMealy):
        _ensure_unambiguous(spec)
    if isinstance(given, MVal):
        if not isinstance(spec, Transduction):
            raise CliError(EXIT_USAGE, "machines read words; pass letters, not a value document")
        out: Any = apply_transduction(spec, given)
    elif isinstance(spec, Transduction) and spec.inst.functor == POINTED_TERM:
        raise CliError(EXIT_USAGE, "term transductions need a term document as input")
    else:
        out = word_function(spec)(given)

    if args.format == "json":
        if isinstance(out, MVal):
            doc = term_to_json(out, spec.inst.alphabet) if out.functor == POINTED_TERM else value_to_json(out)
        else:
            doc = [elem_to_json(x) for x in out]
        sys.stdout.write(dumps(doc))
    elif isinstance(out, MVal):
        print(out.render() if out.functor in (POINTED_LIST, POINTED_TERM) or not _is_plain(out.items) else "".join(out.items))
    else:
        print(_show_word(out))
    return EXIT_OK


def cmd_compose(args) -> int:
    F = _load(args.first, ("transduction",))
    G = _load(args.second, ("transduction",))
    if args.method == "classical":
        if args.restrict_to_contexts:
            raise CliError(EXIT_USAGE, "--restrict-to-contexts applies to the generalized method")
        H = classical_wreath_compose(F, G)
    else:
        H = compose_transductions(F, G, restrict_to_contexts=args.restrict_to_contexts)
    if args.verify_upto is not None:
        bad = verify_composition(F, G, H, args.verify_upto)
        if bad is not None:
            w, want, got = bad
            raise CliError(EXIT_VERIFY, f"composition differs on {w.render()}: expected {want.render()}, got {got.render()}")
    _write(args.out, transduction_to_json(H))
    return EXIT_OK


def verify_composition(F: Transduction, G: Transduction, H: Transduction, upto: int):
    """First input of size at most ``upto`` where ``H`` differs from running ``F`` then ``G``."""
    for w in enumerate_values(F.inst, F.input_alphabet, upto):
        want = oracle_compose(F, G, w)
        got = apply_transduction(H, w)
        if got != want:
            return w, want, got
    return None


def cmd_check_laws(args) -> int:
    alphabet = None
    if args.alphabet is not None:
        try:
            alphabet = json.loads(args.alphabet)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_USAGE, f"--alphabet is not JSON: {exc}") from None
    inst = instance(args.functor, alphabet)
    if args.samples is not None:
        seed = args.seed if args.seed is not None else int(os.environ.get("MOCONAD_SEED", "0"))
        strategy: Any = Randomized(seed=seed, samples=args.samples, bound=args.bound or 8,
                                   domain_size=args.domain_size)
    else:
        base = default_strategy(inst)
        strategy = Exhaustive(bound=args.bound or base.bound, domain_size=args.domain_size,
                              nested_bound=args.nested_bound or base.nested_bound)
    if args.law:
        reports = [check_law(name, inst, strategy) for name in args.law]
    else:
        reports = check_all_laws(inst, strategy)
    passed = all(r.passed for r in reports)
    doc = {
        "functor": inst.functor,
        "strategy": strategy.describe(),
        "passed": passed,
        "results": [r.to_json() for r in reports],
    }
    if args.report:
        _write(args.report, doc)
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.law} ({r.cases} cases)")
    return EXIT_OK if passed else 1


CONVERSIONS = {
    ("mealy", "transduction"),
    ("transduction", "mealy"),
    ("unambiguous-mealy", "transduction"),
    ("transduction", "unambiguous-mealy"),
}


def cmd_convert(args) -> int:
    if (args.from_kind, args.to_kind) not in CONVERSIONS:
        raise CliError(EXIT_USAGE, f"cannot convert {args.from_kind} to {args.to_kind}")
    src = _load(args.spec, (args.from_kind,))
    if args.from_kind == "mealy":
        out, doc = _pair(mealy_to_transduction(src), transduction_to_json)
    elif args.from_kind == "unambiguous-mealy":
        _ensure_unambiguous(src)
        out, doc = _pair(unambiguous_to_transduction(src, check=False), transduction_to_json)
    elif args.to_kind == "mealy":
        if src.inst.functor not in (PREFIX_LIST, SUFFIX_LIST):
            raise CliError(EXIT_USAGE, "deterministic machines come from prefix- or suffix-list transductions")
        out, doc = _pair(transduction_to_mealy(src), mealy_to_json)
    else:
        if src.inst.functor != POINTED_LIST:
            raise CliError(EXIT_USAGE, "unambiguous machines come from pointed-list transductions")
        out, doc = _pair(transduction_to_unambiguous(src), unambiguous_to_json)
    if args.verify_upto is not None:
        before, after = word_function(src), word_function(out)
        for w in _words(src.input_alphabet, args.verify_upto):
            want, got = before(w), after(w)
            if want != got:
                raise CliError(EXIT_VERIFY, f"conversion differs on {_show_word(w)}: expected {_show_word(want)}, got {_show_word(got)}")
    _write(args.out, doc)
    return EXIT_OK


def _pair(obj, encode):
    return obj, encode(obj)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moconad", description="Recognizable transductions over monad-comonad functors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a transduction or machine on an input")
    p.add_argument("--spec", required=True, help="transduction, mealy or unambiguous-mealy document")
    p.add_argument("--input", required=True, help="letters, a JSON word or value, or a file holding one")
    p.add_argument("--json-input", action="store_true", help="read --input as JSON")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compose", help="compose two transductions into one")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify-upto", type=int, metavar="N", help="compare against sequential runs on all inputs of size <= N")
    p.add_argument("--method", choices=("generalized", "classical"), default="generalized")
    p.add_argument("--restrict-to-contexts", action="store_true", help="index second components by contexts only")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check-laws", help="check the functor laws")
    p.add_argument("--functor", required=True, choices=FUNCTOR_IDS)
    p.add_argument("--bound", type=int)
    p.add_argument("--domain-size", type=int, default=2)
    p.add_argument("--nested-bound", type=int)
    p.add_argument("--samples", type=int, help="random cases per law instead of exhaustive enumeration")
    p.add_argument("--seed", type=int, help="random seed (default: MOCONAD_SEED or 0)")
    p.add_argument("--alphabet", help='ranked alphabet for terms as JSON, e.g. {"a": 2, "c": 0}')
    p.add_argument("--law", action="append", choices=LAW_IDS, help="check only this law (repeatable)")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_check_laws)

    p = sub.add_parser("convert", help="convert between machines and transductions")
    kinds = ("mealy", "unambiguous-mealy", "transduction")
    p.add_argument("--from", dest="from_kind", required=True, choices=kinds)
    p.add_argument("--to", dest="to_kind", required=True, choices=kinds)
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify-upto", type=int, metavar="N", help="compare behaviours on all words of length <= N")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SchemaError, CompositionError, StructureError, LawCheckError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TransductionError, MachineError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
