"""JSON documents for values, algebras, transductions and machines.

Documents are validated against JSON schemas before they are decoded and
written canonically: sorted keys, two-space indent, trailing newline.  All
positions in documents (focus, focus paths, action slots) are 1-based.

Element encoding: strings and integers stand for themselves, arrays are
sequences, ``{"pair": [l, r]}`` is a pair, ``{"table": [[x, y], ...]}`` a
function table and ``{"mval": doc}`` a nested value.
"""
from __future__ import annotations

import json
from typing import Any, Mapping

import jsonschema

from .algebra import (
    FiniteAlgebra,
    Monoid,
    OracleAlgebra,
    PointedPresentation,
    SemigroupTable,
    TermAutomaton,
    algebra_from_semigroup,
    pointed_algebra,
    term_algebra,
)
from .composition import SecondAtIdentity, WreathPresentation, wreath_product
from .core import POINTED_LIST, POINTED_TERM, PREFIX_LIST, SUFFIX_LIST, MVal, StructureError, instance
from .elems import Elem, FnTable, Pair, elem_key, sort_elems
from .functors import Leaf, Node, make_value, to_tree
from .mealy import MealyMachine, UnambiguousMealy
from .transduction import Transduction


class SchemaError(ValueError):
    """A document does not have the expected form."""


# ---------------------------------------------------------------------------
# elements


def elem_to_json(e: Elem) -> Any:
    if isinstance(e, bool):
        raise SchemaError("booleans are not elements")
    if isinstance(e, (str, int)):
        return e
    if isinstance(e, Pair):
        return {"pair": [elem_to_json(e.left), elem_to_json(e.right)]}
    if isinstance(e, tuple):
        return [elem_to_json(x) for x in e]
    if isinstance(e, FnTable):
        return {"table": [[elem_to_json(k), elem_to_json(v)] for k, v in zip(e.domain, e.values)]}
    if isinstance(e, MVal):
        return {"mval": value_to_json(e)}
    raise SchemaError(f"cannot encode {e!r}")


def elem_from_json(doc: Any) -> Elem:
    if isinstance(doc, bool) or isinstance(doc, float):
        raise SchemaError(f"{doc!r} is not an element")
    if isinstance(doc, (str, int)):
        return doc
    if isinstance(doc, list):
        return tuple(elem_from_json(x) for x in doc)
    if isinstance(doc, dict) and len(doc) == 1:
        if "pair" in doc and isinstance(doc["pair"], list) and len(doc["pair"]) == 2:
            return Pair(elem_from_json(doc["pair"][0]), elem_from_json(doc["pair"][1]))
        if "table" in doc and isinstance(doc["table"], list):
            return FnTable.from_mapping(_pairs(doc["table"]))
        if "mval" in doc:
            return value_from_json(doc["mval"])
    raise SchemaError(f"{doc!r} is not an element")


def _pairs(rows: list) -> dict:
    out = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 2:
            raise SchemaError(f"expected [input, output], got {row!r}")
        k = elem_from_json(row[0])
        if k in out:
            raise SchemaError(f"duplicate table input {row[0]!r}")
        out[k] = elem_from_json(row[1])
    return out


def _table_json(mapping: Mapping, keys) -> list:
    return [[elem_to_json(k), elem_to_json(mapping[k])] for k in sort_elems(keys)]


def _elems(doc: list) -> tuple:
    items = [elem_from_json(x) for x in doc]
    out = sort_elems(set(items))
    if len(out) != len(items):
        raise SchemaError("element lists must not repeat entries")
    return out


# ---------------------------------------------------------------------------
# schemas

_ELEMENTS = {"type": "array", "minItems": 1}
_ROWS = {"type": "array", "items": {"type": "array"}}
_ALPHABET = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}, "minProperties": 1}
_MONOID = {
    "type": "object",
    "required": ["elements", "unit", "table"],
    "properties": {"elements": _ELEMENTS, "table": _ROWS},
}

SCHEMAS: dict[str, dict] = {
    "word": {
        "type": "object",
        "required": ["kind", "functor", "items"],
        "properties": {"functor": {"enum": [PREFIX_LIST, SUFFIX_LIST]}, "items": _ELEMENTS},
        "additionalProperties": False,
    },
    "pointed-word": {
        "type": "object",
        "required": ["kind", "items", "focus"],
        "properties": {"items": _ELEMENTS, "focus": {"type": "integer", "minimum": 1}},
        "additionalProperties": False,
    },
    "term": {
        "type": "object",
        "required": ["kind", "alphabet", "tree", "focusPath"],
        "properties": {
            "alphabet": _ALPHABET,
            "tree": {"type": "object"},
            "focusPath": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "additionalProperties": False,
    },
    "semigroup": {
        "type": "object",
        "required": ["kind", "functor", "elements", "table"],
        "properties": {"functor": {"enum": [PREFIX_LIST, SUFFIX_LIST]}, "elements": _ELEMENTS, "table": _ROWS},
        "additionalProperties": False,
    },
    "pointed-presentation": {
        "type": "object",
        "required": ["kind", "elements", "left", "right", "g", "hLeft", "hRight"],
        "properties": {"elements": _ELEMENTS, "left": _MONOID, "right": _MONOID, "g": _ROWS, "hLeft": _ROWS, "hRight": _ROWS},
        "additionalProperties": False,
    },
    "term-automaton": {
        "type": "object",
        "required": ["kind", "alphabet", "elements", "ground", "forget", "transitions", "actions"],
        "properties": {
            "alphabet": _ALPHABET,
            "elements": _ELEMENTS,
            "ground": _ELEMENTS,
            "forget": _ROWS,
            "transitions": {"type": "object", "additionalProperties": _ROWS},
            "actions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["symbol", "slot", "others", "map"],
                    "properties": {
                        "symbol": {"type": "string"},
                        "slot": {"type": "integer", "minimum": 1},
                        "others": {"type": "array"},
                        "map": _ROWS,
                    },
                },
            },
        },
        "additionalProperties": False,
    },
    "wreath": {
        "type": "object",
        "required": ["kind", "first", "second"],
        "properties": {
            "first": {"type": "object"},
            "second": {"type": "object"},
            "restrictToContexts": {"type": "boolean"},
        },
        "additionalProperties": False,
    },
    "transduction": {
        "type": "object",
        "required": ["kind", "algebra", "inputAlphabet", "outputAlphabet", "inputMap", "outputMap"],
        "properties": {
            "algebra": {"type": "object", "required": ["kind"]},
            "inputAlphabet": _ELEMENTS,
            "outputAlphabet": _ELEMENTS,
            "inputMap": _ROWS,
            "outputMap": {
                "oneOf": [
                    _ROWS,
                    {"type": "object", "required": ["secondAtIdentity"], "properties": {"secondAtIdentity": _ROWS},
                     "additionalProperties": False},
                ]
            },
        },
        "additionalProperties": False,
    },
    "mealy": {
        "type": "object",
        "required": ["kind", "states", "initial", "inputAlphabet", "outputAlphabet", "transitions"],
        "properties": {
            "states": _ELEMENTS,
            "initial": {},
            "inputAlphabet": _ELEMENTS,
            "outputAlphabet": _ELEMENTS,
            "direction": {"enum": ["left-to-right", "right-to-left"]},
            "transitions": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4}},
        },
        "additionalProperties": False,
    },
    "unambiguous-mealy": {
        "type": "object",
        "required": ["kind", "states", "initial", "final", "inputAlphabet", "outputAlphabet", "transitions"],
        "properties": {
            "states": _ELEMENTS,
            "initial": {"type": "array"},
            "final": {"type": "array"},
            "inputAlphabet": _ELEMENTS,
            "outputAlphabet": _ELEMENTS,
            "transitions": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4}},
        },
        "additionalProperties": False,
    },
}

for _name, _schema in SCHEMAS.items():
    _schema["properties"]["kind"] = {"const": _name}

ALGEBRA_KINDS = ("semigroup", "pointed-presentation", "term-automaton", "wreath")
VALUE_KINDS = ("word", "pointed-word", "term")


def validate(doc: Any, kinds=None) -> str:
    if not isinstance(doc, dict) or not isinstance(doc.get("kind"), str):
        raise SchemaError("a document is a JSON object with a string 'kind'")
    kind = doc["kind"]
    if kind not in SCHEMAS or (kinds is not None and kind not in kinds):
        allowed = kinds if kinds is not None else tuple(SCHEMAS)
        raise SchemaError(f"kind {kind!r} is not one of {list(allowed)}")
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(top)"
        raise SchemaError(f"{kind} document invalid at {where}: {exc.message}") from None
    return kind


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _guard(fn):
    """Turn structural errors raised while decoding into schema errors."""

    def wrapped(doc, *args, **kwargs):
        try:
            return fn(doc, *args, **kwargs)
        except SchemaError:
            raise
        except (StructureError, KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"{type(exc).__name__}: {exc}") from None

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


# ---------------------------------------------------------------------------
# values


def _tree_to_json(t) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": elem_to_json(t.label)}
    return {"symbol": t.symbol, "children": [_tree_to_json(c) for c in t.children]}


def _tree_from_json(doc: Any):
    if not isinstance(doc, dict):
        raise SchemaError(f"tree node must be an object, got {doc!r}")
    if set(doc) == {"leaf"}:
        return Leaf(elem_from_json(doc["leaf"]))
    if "symbol" in doc and set(doc) <= {"symbol", "children"} and isinstance(doc["symbol"], str):
        kids = doc.get("children", [])
        if not isinstance(kids, list):
            raise SchemaError("children must be an array")
        return Node(doc["symbol"], tuple(_tree_from_json(c) for c in kids))
    raise SchemaError(f"bad tree node {doc!r}")


def value_to_json(m: MVal) -> dict:
    if m.functor in (PREFIX_LIST, SUFFIX_LIST):
        return {"kind": "word", "functor": m.functor, "items": [elem_to_json(x) for x in m.items]}
    if m.functor == POINTED_LIST:
        return {"kind": "pointed-word", "items": [elem_to_json(x) for x in m.items], "focus": m.focus + 1}
    raise SchemaError("terms need their alphabet; use term_to_json")


def term_to_json(m: MVal, alphabet: Mapping[str, int]) -> dict:
    tree, path = to_tree(m)
    return {"kind": "term", "alphabet": dict(alphabet), "tree": _tree_to_json(tree), "focusPath": list(path)}


@_guard
def value_from_json(doc: Any) -> MVal:
    kind = validate(doc, VALUE_KINDS)
    if kind == "word":
        return make_value(instance(doc["functor"]), [elem_from_json(x) for x in doc["items"]])
    if kind == "pointed-word":
        return make_value(instance(POINTED_LIST), [elem_from_json(x) for x in doc["items"]], focus=doc["focus"])
    inst = instance(POINTED_TERM, doc["alphabet"])
    return make_value(inst, tree=_tree_from_json(doc["tree"]), focus_path=doc["focusPath"])


# ---------------------------------------------------------------------------
# algebras


def _monoid_to_json(m: Monoid) -> dict:
    return {
        "elements": [elem_to_json(x) for x in m.elements],
        "unit": elem_to_json(m.unit),
        "table": [[elem_to_json(a), elem_to_json(b), elem_to_json(m.table[(a, b)])] for a in m.elements for b in m.elements],
    }


def _triples(rows: list) -> dict:
    out = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaError(f"expected [x, y, x*y], got {row!r}")
        out[(elem_from_json(row[0]), elem_from_json(row[1]))] = elem_from_json(row[2])
    return out


def _monoid_from_json(doc: dict) -> Monoid:
    elements = _elems(doc["elements"])
    table = _triples(doc["table"])
    unit = elem_from_json(doc["unit"])
    for a in elements:
        for b in elements:
            if table.get((a, b)) not in set(elements):
                raise SchemaError("monoid table is not total")
        if table[(unit, a)] != a or table[(a, unit)] != a:
            raise SchemaError("monoid unit is not an identity")
    return Monoid(elements, table, unit)


def algebra_to_json(alg: FiniteAlgebra) -> dict:
    p = alg.presentation
    if isinstance(p, SemigroupTable):
        return {
            "kind": "semigroup",
            "functor": alg.inst.functor,
            "elements": [elem_to_json(x) for x in p.elements],
            "table": [[elem_to_json(a), elem_to_json(b), elem_to_json(p.table[(a, b)])] for a in p.elements for b in p.elements],
        }
    if isinstance(p, PointedPresentation):
        return {
            "kind": "pointed-presentation",
            "elements": [elem_to_json(x) for x in p.elements],
            "left": _monoid_to_json(p.left),
            "right": _monoid_to_json(p.right),
            "g": [
                [elem_to_json(ml), elem_to_json(a), elem_to_json(mr), elem_to_json(p.g[(ml, a, mr)])]
                for ml in p.left.elements for a in p.elements for mr in p.right.elements
            ],
            "hLeft": _table_json(p.h_left, p.elements),
            "hRight": _table_json(p.h_right, p.elements),
        }
    if isinstance(p, TermAutomaton):
        actions = []
        for (s, slot, others), table in sorted(p.actions.items(), key=lambda kv: (kv[0][0], kv[0][1], elem_key(kv[0][2]))):
            actions.append({
                "symbol": s,
                "slot": slot + 1,
                "others": [elem_to_json(x) for x in others],
                "map": [[elem_to_json(k), elem_to_json(v)] for k, v in zip(table.domain, table.values)],
            })
        return {
            "kind": "term-automaton",
            "alphabet": dict(alg.inst.alphabet),
            "elements": [elem_to_json(x) for x in p.elements],
            "ground": [elem_to_json(x) for x in p.ground],
            "forget": _table_json(p.forget, p.elements),
            "transitions": {
                s: [[elem_to_json(tuple(args)), elem_to_json(v)] for args, v in sorted(t.items(), key=lambda kv: elem_key(kv[0]))]
                for s, t in sorted(p.transitions.items())
            },
            "actions": actions,
        }
    if isinstance(p, WreathPresentation):
        return {
            "kind": "wreath",
            "first": algebra_to_json(p.first),
            "second": algebra_to_json(p.second),
            "restrictToContexts": p.restrict_to_contexts,
        }
    if isinstance(p, OracleAlgebra):
        raise SchemaError("oracle algebras have no finite presentation to write")
    raise SchemaError(f"cannot encode presentation {p!r}")


@_guard
def algebra_from_json(doc: Any) -> FiniteAlgebra:
    kind = validate(doc, ALGEBRA_KINDS)
    if kind == "semigroup":
        elements = _elems(doc["elements"])
        return algebra_from_semigroup(_triples(doc["table"]), doc["functor"], elements)
    if kind == "pointed-presentation":
        elements = _elems(doc["elements"])
        g = {}
        for row in doc["g"]:
            if not isinstance(row, list) or len(row) != 4:
                raise SchemaError(f"expected [mL, a, mR, value], got {row!r}")
            g[(elem_from_json(row[0]), elem_from_json(row[1]), elem_from_json(row[2]))] = elem_from_json(row[3])
        return pointed_algebra(elements, _monoid_from_json(doc["left"]), _monoid_from_json(doc["right"]), g,
                               _pairs(doc["hLeft"]), _pairs(doc["hRight"]))
    if kind == "term-automaton":
        alphabet = doc["alphabet"]
        transitions = {}
        for s, rows in doc["transitions"].items():
            table = {}
            for row in rows:
                if not isinstance(row, list) or len(row) != 2 or not isinstance(row[0], list):
                    raise SchemaError(f"expected [[children...], value], got {row!r}")
                table[tuple(elem_from_json(x) for x in row[0])] = elem_from_json(row[1])
            transitions[s] = table
        elements = _elems(doc["elements"])
        actions = {}
        for act in doc["actions"]:
            m = _pairs(act["map"])
            key = (act["symbol"], act["slot"] - 1, tuple(elem_from_json(x) for x in act["others"]))
            actions[key] = FnTable(elements, [m[a] for a in elements])
        automaton = TermAutomaton(elements, _elems(doc["ground"]), _pairs(doc["forget"]), transitions, actions)
        return term_algebra(alphabet, automaton)
    first = algebra_from_json(doc["first"])
    second = algebra_from_json(doc["second"])
    return wreath_product(first, second, bool(doc.get("restrictToContexts", False)))


# ---------------------------------------------------------------------------
# transductions and machines


def transduction_to_json(t: Transduction) -> dict:
    if isinstance(t.output_map, SecondAtIdentity):
        second = t.output_map.second_output
        output = {"secondAtIdentity": _table_json(second, list(second))}
    else:
        output = _table_json(t.output_map, t.alg.carrier)
    return {
        "kind": "transduction",
        "algebra": algebra_to_json(t.alg),
        "inputAlphabet": [elem_to_json(a) for a in t.input_alphabet],
        "outputAlphabet": [elem_to_json(b) for b in t.output_alphabet],
        "inputMap": _table_json(t.input_map, t.input_alphabet),
        "outputMap": output,
    }


@_guard
def transduction_from_json(doc: Any) -> Transduction:
    validate(doc, ("transduction",))
    alg = algebra_from_json(doc["algebra"])
    out = doc["outputMap"]
    if isinstance(out, dict):
        if not isinstance(alg.presentation, WreathPresentation):
            raise SchemaError("secondAtIdentity output maps belong to wreath algebras")
        output_map: Mapping = SecondAtIdentity(alg.presentation, _pairs(out["secondAtIdentity"]))
    else:
        output_map = _pairs(out)
    return Transduction(alg, _pairs(doc["inputMap"]), output_map,
                        _elems(doc["inputAlphabet"]), _elems(doc["outputAlphabet"]))


def mealy_to_json(m: MealyMachine) -> dict:
    rows = []
    for q in m.states:
        for a in m.input_alphabet:
            q2, b = m.transitions[(q, a)]
            rows.append([elem_to_json(q), elem_to_json(a), elem_to_json(q2), elem_to_json(b)])
    return {
        "kind": "mealy",
        "states": [elem_to_json(q) for q in m.states],
        "initial": elem_to_json(m.initial),
        "inputAlphabet": [elem_to_json(a) for a in m.input_alphabet],
        "outputAlphabet": [elem_to_json(b) for b in m.output_alphabet],
        "direction": m.direction,
        "transitions": rows,
    }


@_guard
def mealy_from_json(doc: Any) -> MealyMachine:
    validate(doc, ("mealy",))
    transitions = {}
    for row in doc["transitions"]:
        q, a, q2, b = (elem_from_json(x) for x in row)
        if (q, a) in transitions:
            raise SchemaError(f"two transitions from {row[0]!r} on {row[1]!r}")
        transitions[(q, a)] = (q2, b)
    return MealyMachine(_elems(doc["states"]), elem_from_json(doc["initial"]), transitions,
                        _elems(doc["inputAlphabet"]), _elems(doc["outputAlphabet"]),
                        doc.get("direction", "left-to-right"))


def unambiguous_to_json(u: UnambiguousMealy) -> dict:
    return {
        "kind": "unambiguous-mealy",
        "states": [elem_to_json(q) for q in u.states],
        "initial": [elem_to_json(q) for q in sort_elems(u.initial)],
        "final": [elem_to_json(q) for q in sort_elems(u.final)],
        "inputAlphabet": [elem_to_json(a) for a in u.input_alphabet],
        "outputAlphabet": [elem_to_json(b) for b in u.output_alphabet],
        "transitions": [[elem_to_json(x) for x in tr] for tr in u.transitions],
    }


@_guard
def unambiguous_from_json(doc: Any) -> UnambiguousMealy:
    validate(doc, ("unambiguous-mealy",))
    transitions = tuple(tuple(elem_from_json(x) for x in row) for row in doc["transitions"])
    return UnambiguousMealy(_elems(doc["states"]), frozenset(elem_from_json(x) for x in doc["initial"]),
                            frozenset(elem_from_json(x) for x in doc["final"]), transitions,
                            _elems(doc["inputAlphabet"]), _elems(doc["outputAlphabet"]))


def load_document(doc: Any):
    """Decode any top-level document by its kind."""
    kind = validate(doc)
    if kind in VALUE_KINDS:
        return value_from_json(doc)
    if kind in ALGEBRA_KINDS:
        return algebra_from_json(doc)
    if kind == "transduction":
        return transduction_from_json(doc)
    if kind == "mealy":
        return mealy_from_json(doc)
    return unambiguous_from_json(doc)
