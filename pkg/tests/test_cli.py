import json

import pytest

from peal.cli import main
from peal.constructions import boolean4_table, diamond_table
from peal.core import dumps_document, table_from_document, table_to_document


@pytest.fixture()
def docs(tmp_path):
    paths = {}
    for name, table in (("diamond", diamond_table()), ("boolean4", boolean4_table())):
        p = tmp_path / (name + ".json")
        p.write_text(dumps_document(table_to_document(table)))
        paths[name] = str(p)
    return paths


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_verify_pass(docs, capsys):
    code, out = run(capsys, ["verify", docs["diamond"]])
    assert code == 0
    assert "symmetric: true" in out


def test_verify_axiom_failure(tmp_path, capsys):
    doc = {
        "elements": ["0", "a", "1"],
        "zero": "0",
        "one": "1",
        "add": [["0", "0", "0"], ["0", "a", "a"], ["a", "0", "a"],
                ["0", "1", "1"], ["1", "0", "1"], ["a", "a", "1"],
                ["1", "a", "a"]],
    }
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    code, out = run(capsys, ["verify", str(p)])
    assert code == 1
    assert "PE4" in out


def test_verify_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("not json")
    assert main(["verify", str(p)]) == 2


def test_verify_gpea_kind(tmp_path, capsys):
    doc = {"elements": ["0", "a", "b"], "zero": "0",
           "add": [["0", "0", "0"], ["0", "a", "a"], ["a", "0", "a"],
                   ["0", "b", "b"], ["b", "0", "b"], ["a", "a", "b"]]}
    p = tmp_path / "gpea.json"
    p.write_text(json.dumps(doc))
    code, out = run(capsys, ["verify", str(p), "--kind", "gpea"])
    assert code == 0
    assert "axioms[gpea]" in out


def test_states_command(docs, capsys):
    code, out = run(capsys, ["--format", "json", "states", docs["boolean4"],
                             "--discrete", "2", "--extremal"])
    assert code == 0
    data = json.loads(out)
    assert data["results"]["discrete_states_n2"] == [
        {"0": "0", "1": "1", "a": "1/2", "a'": "1/2"}
    ]
    assert len(data["results"]["extremal_states"]) == 2


def test_states_diamond(docs, capsys):
    code, out = run(capsys, ["--format", "json", "states", docs["diamond"]])
    data = json.loads(out)
    assert code == 0
    assert data["results"]["extremal_states"] == [
        {"0": "0", "1": "1", "a": "1/2", "b": "1/2"}
    ]


def test_decompose_command(docs, capsys):
    code, out = run(capsys, ["--format", "json", "decompose", docs["boolean4"], "1"])
    assert code == 0
    assert len(json.loads(out)["results"]["decompositions"]) == 2


def test_ideals_command(docs, capsys):
    code, out = run(capsys, ["--format", "json", "ideals", docs["boolean4"]])
    data = json.loads(out)
    assert code == 0
    assert [i["members"] for i in data["results"]["ideals"]] == [
        ["0"], ["0", "a"], ["0", "a'"], ["0", "1", "a", "a'"],
    ]
    assert len(data["results"]["two_valued_partition"]) == 2


def test_quotient_command(docs, tmp_path, capsys):
    out_path = tmp_path / "quotient.json"
    code, out = run(capsys, ["--format", "json", "quotient", docs["boolean4"],
                             "--ideal", "0,a", "-o", str(out_path)])
    assert code == 0
    saved = table_from_document(json.loads(out_path.read_text()))
    assert saved.size == 2
    assert json.loads(out)["results"]["linear"] is True


def test_unitize_command(tmp_path, capsys):
    doc = {"elements": ["0", "a"], "zero": "0",
           "add": [["0", "0", "0"], ["0", "a", "a"], ["a", "0", "a"]]}
    p = tmp_path / "gpea.json"
    p.write_text(json.dumps(doc))
    code, out = run(capsys, ["--format", "json", "unitize", str(p)])
    assert code == 0
    lifted = json.loads(out)["results"]["unitization_document"]
    assert len(lifted["elements"]) == 4


def test_construct_builtin(tmp_path, capsys):
    out_path = tmp_path / "c4.json"
    code, _ = run(capsys, ["construct", "--builtin", "chain:4", "-o", str(out_path)])
    assert code == 0
    table = table_from_document(json.loads(out_path.read_text()))
    assert table.size == 5 and table.one == "1"


def test_construct_symbolic(capsys):
    code, out = run(capsys, ["--format", "json", "construct", "--lex-product", "2",
                             "--group", "z:1", "--samples", "120"])
    assert code == 0
    data = json.loads(out)
    assert data["results"]["symbolic"]["levels"] == "2"
    assert all(v["passed"] for v in data["verdicts"])


def test_construct_usage_error(capsys):
    assert main(["construct"]) == 2


def test_suite_small(capsys):
    code, out = run(capsys, ["--format", "json", "suite", "--max-size", "3",
                             "--samples", "150"])
    assert code == 0
    data = json.loads(out)
    assert all(v["passed"] for v in data["verdicts"])


def test_suite_cap(capsys):
    assert main(["suite", "--max-size", "9"]) == 2


def test_suite_deterministic(capsys):
    _, out1 = run(capsys, ["--format", "json", "--seed", "7", "suite",
                           "--max-size", "2", "--samples", "100"])
    _, out2 = run(capsys, ["--format", "json", "--seed", "7", "suite",
                           "--max-size", "2", "--samples", "100"])
    assert out1 == out2


def test_seed_env_override(docs, capsys, monkeypatch):
    monkeypatch.setenv("PEA_SEED", "123")
    code, out = run(capsys, ["--format", "json", "verify", docs["diamond"]])
    assert json.loads(out)["seed"] == 123


def test_document_byte_stability(docs):
    text = open(docs["diamond"]).read()
    doc = json.loads(text)
    assert dumps_document(table_to_document(table_from_document(doc))) == text
