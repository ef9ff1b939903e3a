import json
import shutil
import subprocess
import sys

import pytest

from moconad import cli
from moconad.generators import random_mealy, random_transduction
from moconad.lawcheck import LAWS, MUTANTS
from moconad.mealy import UnambiguousMealy, first_a_machine, first_from_last_machine
from moconad.serialize import dumps, mealy_to_json, transduction_to_json, unambiguous_to_json
from moconad.transduction import identity_transduction

from helpers import PREFIX, parity_transduction


@pytest.fixture
def put(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(dumps(doc))
        return str(path)

    return write


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def ambiguous_machine():
    u = first_from_last_machine()
    return UnambiguousMealy(u.states, u.initial, u.final, u.transitions + (("qa", "a", "r", "a"),),
                            u.input_alphabet, u.output_alphabet)


# -- run ---------------------------------------------------------------------


def test_run_first_a_machine(put, capsys):
    spec = put("m.json", mealy_to_json(first_a_machine()))
    assert run(capsys, "run", "--spec", spec, "--input", "aab") == (0, "cdd\n", "")
    code, out, _ = run(capsys, "run", "--spec", spec, "--input", "bba", "--format", "json")
    assert code == 0 and json.loads(out) == ["d", "d", "c"]


def test_run_rejects_letter_outside_alphabet(put, capsys):
    spec = put("m.json", mealy_to_json(first_a_machine()))
    code, _, err = run(capsys, "run", "--spec", spec, "--input", "abx")
    assert code == 3 and "position 3" in err


def test_run_identity_echoes(put, capsys):
    spec = put("id.json", transduction_to_json(identity_transduction(PREFIX, "ab")))
    assert run(capsys, "run", "--spec", spec, "--input", "abba")[:2] == (0, "abba\n")


def test_run_transduction_on_json_word(put, capsys):
    spec = put("p.json", transduction_to_json(parity_transduction()))
    code, out, _ = run(capsys, "run", "--spec", spec, "--input", "[1,0,1]", "--format", "json")
    assert code == 0 and json.loads(out) == [1, 1, 0]


def test_run_on_value_document(put, capsys):
    spec = put("p.json", transduction_to_json(parity_transduction()))
    word = put("w.json", {"kind": "word", "functor": "prefix-list", "items": [1, 1]})
    code, out, _ = run(capsys, "run", "--spec", spec, "--input", word, "--format", "json")
    assert code == 0 and json.loads(out)["items"] == [1, 0]


def test_run_unambiguous_machine(put, capsys):
    spec = put("u.json", unambiguous_to_json(first_from_last_machine()))
    assert run(capsys, "run", "--spec", spec, "--input", "ab")[:2] == (0, "bb\n")


def test_run_ambiguous_machine_is_a_domain_error(put, capsys):
    spec = put("u.json", unambiguous_to_json(ambiguous_machine()))
    code, _, err = run(capsys, "run", "--spec", spec, "--input", "ab")
    assert code == 3 and "witness a" in err


def test_run_schema_errors(put, capsys, tmp_path):
    bad = put("bad.json", {"kind": "mealy", "states": []})
    assert run(capsys, "run", "--spec", bad, "--input", "a")[0] == 2
    notjson = tmp_path / "x.json"
    notjson.write_text("{")
    assert run(capsys, "run", "--spec", notjson, "--input", "a")[0] == 2
    assert run(capsys, "run", "--spec", tmp_path / "missing.json", "--input", "a")[0] == 2


# -- compose -----------------------------------------------------------------


@pytest.mark.parametrize("method", ["generalized", "classical"])
def test_compose_parity_pair(put, capsys, tmp_path, method):
    f = put("p.json", transduction_to_json(parity_transduction()))
    out = tmp_path / "h.json"
    code, _, err = run(capsys, "compose", "--first", f, "--second", f, "--out", out, "--verify-upto", 5,
                       "--method", method)
    assert code == 0, err
    code, text, _ = run(capsys, "run", "--spec", out, "--input", "[1,0,1]", "--format", "json")
    assert code == 0 and json.loads(text) == [1, 0, 0]


def test_classical_and_generalized_agree(put, capsys, tmp_path):
    f = put("p.json", transduction_to_json(parity_transduction()))
    outs = {}
    for method in ("generalized", "classical"):
        path = tmp_path / f"{method}.json"
        assert run(capsys, "compose", "--first", f, "--second", f, "--out", path, "--method", method)[0] == 0
        outs[method] = [run(capsys, "run", "--spec", path, "--input", json.dumps(w))[1]
                        for w in ([0], [1], [1, 1, 0], [0, 1, 1, 1])]
    assert outs["generalized"] == outs["classical"]


def test_compose_alphabet_mismatch(put, capsys, tmp_path):
    f = put("p.json", transduction_to_json(parity_transduction()))
    g = put("id.json", transduction_to_json(identity_transduction(PREFIX, "ab")))
    code, _, err = run(capsys, "compose", "--first", f, "--second", g, "--out", tmp_path / "h.json")
    assert code == 2 and err


def test_compose_reports_verification_failure(put, capsys, tmp_path, monkeypatch):
    f = put("p.json", transduction_to_json(parity_transduction()))
    monkeypatch.setattr(cli, "compose_transductions", lambda F, G, **kw: F)
    out = tmp_path / "h.json"
    code, _, err = run(capsys, "compose", "--first", f, "--second", f, "--out", out, "--verify-upto", 3)
    assert code == 4 and "differs on" in err
    assert not out.exists()


def test_compose_rejects_machine_documents(put, capsys, tmp_path):
    m = put("m.json", mealy_to_json(first_a_machine()))
    assert run(capsys, "compose", "--first", m, "--second", m, "--out", tmp_path / "h.json")[0] == 2


# -- check-laws --------------------------------------------------------------


def test_check_laws_pointed_list(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "check-laws", "--functor", "pointed-list", "--bound", 4, "--report", report)
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["passed"] and sorted(r["law"] for r in doc["results"]) == sorted(LAWS)
    assert len(out.splitlines()) == len(LAWS) and all(line.startswith("PASS") for line in out.splitlines())


def test_check_laws_unknown_functor(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["check-laws", "--functor", "rose-tree"])
    assert info.value.code == 2


def test_check_laws_randomized_uses_seed(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MOCONAD_SEED", "11")
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "check-laws", "--functor", "pointed-term", "--samples", 10, "--report", report)
    doc = json.loads(report.read_text())
    assert code == 0 and doc["strategy"]["seed"] == 11 and doc["strategy"]["kind"] == "random"


def test_check_laws_term_alphabet(capsys):
    code, out, _ = run(capsys, "check-laws", "--functor", "pointed-term", "--alphabet", '{"f": 2}',
                       "--bound", 5, "--law", "put-get")
    assert code == 0 and out.startswith("PASS put-get")


def test_check_laws_failure_exits_nonzero(capsys, monkeypatch):
    monkeypatch.setattr(cli, "instance", lambda f, a=None: MUTANTS["prefix-put-replaces-first"]())
    code, out, _ = run(capsys, "check-laws", "--functor", "prefix-list", "--law", "get-put")
    assert code != 0 and out.startswith("FAIL get-put")


# -- convert -----------------------------------------------------------------


@pytest.mark.parametrize("seed", [0, 8])
def test_mealy_round_trip(put, capsys, tmp_path, seed):
    spec = put("m.json", mealy_to_json(random_mealy(seed)))
    t, back = tmp_path / "t.json", tmp_path / "back.json"
    assert run(capsys, "convert", "--from", "mealy", "--to", "transduction", "--spec", spec, "--out", t,
               "--verify-upto", 6)[0] == 0
    assert run(capsys, "convert", "--from", "transduction", "--to", "mealy", "--spec", t, "--out", back,
               "--verify-upto", 6)[0] == 0
    for w in ("a", "ab", "bbab"):
        assert run(capsys, "run", "--spec", spec, "--input", w)[1] == run(capsys, "run", "--spec", back, "--input", w)[1]


def test_unambiguous_round_trip(put, capsys, tmp_path):
    spec = put("u.json", unambiguous_to_json(first_from_last_machine()))
    t, back = tmp_path / "t.json", tmp_path / "back.json"
    assert run(capsys, "convert", "--from", "unambiguous-mealy", "--to", "transduction", "--spec", spec,
               "--out", t, "--verify-upto", 5)[0] == 0
    assert run(capsys, "convert", "--from", "transduction", "--to", "unambiguous-mealy", "--spec", t,
               "--out", back, "--verify-upto", 5)[0] == 0
    assert run(capsys, "run", "--spec", back, "--input", "abba")[1] == "abba\n"


def test_convert_ambiguous_machine(put, capsys, tmp_path):
    spec = put("u.json", unambiguous_to_json(ambiguous_machine()))
    code, _, err = run(capsys, "convert", "--from", "unambiguous-mealy", "--to", "transduction",
                       "--spec", spec, "--out", tmp_path / "t.json")
    assert code == 3 and err.rstrip().endswith("witness a")


def test_convert_unsupported_direction(put, capsys, tmp_path):
    spec = put("m.json", mealy_to_json(first_a_machine()))
    code, _, err = run(capsys, "convert", "--from", "mealy", "--to", "unambiguous-mealy", "--spec", spec,
                       "--out", tmp_path / "u.json")
    assert code == 2 and "cannot convert" in err


def test_convert_wrong_functor(put, capsys, tmp_path):
    spec = put("t.json", transduction_to_json(random_transduction("pointed-list", 0)))
    code, _, _ = run(capsys, "convert", "--from", "transduction", "--to", "mealy", "--spec", spec,
                     "--out", tmp_path / "m.json")
    assert code == 2


def test_convert_verification_failure(put, capsys, tmp_path, monkeypatch):
    spec = put("m.json", mealy_to_json(first_a_machine()))
    monkeypatch.setattr(cli, "mealy_to_transduction", lambda m: identity_transduction(PREFIX, "ab"))
    code, _, err = run(capsys, "convert", "--from", "mealy", "--to", "transduction", "--spec", spec,
                       "--out", tmp_path / "t.json", "--verify-upto", 2)
    assert code == 4 and "conversion differs" in err


# -- determinism and the installed script ------------------------------------


def test_output_files_are_deterministic(put, capsys, tmp_path):
    f = put("p.json", transduction_to_json(parity_transduction()))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "compose", "--first", f, "--second", f, "--out", a)
    run(capsys, "compose", "--first", f, "--second", f, "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(put):
    spec = put("m.json", mealy_to_json(first_a_machine()))
    exe = shutil.which("moconad")
    cmd = [exe] if exe else [sys.executable, "-m", "moconad.cli"]
    done = subprocess.run(cmd + ["run", "--spec", spec, "--input", "aab"], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "cdd\n"
