import io
import json
import subprocess
import sys

import jsonschema
import pytest

from qtoric import cli, verify
from qtoric.cli import load_schema, run

PAIR = ["--n", "2", "--m", "3", "--a", "2,2,0", "--b", "1,0"]
HIRZ1 = ["--n", "1", "--m", "1", "--a", "1", "--b", "0"]
HIRZ3 = ["--n2", "1", "--m2", "1", "--a2", "3", "--b2", "0"]


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def doc_of(schema, *argv):
    code, text = call(*argv)
    assert code == 0, text
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema(schema))
    return doc


def test_enumerate():
    doc = doc_of("enumerate", "enumerate", "--n", "1", "--m", "1", "--bound", "2")
    assert doc["count"] == len(doc["pairs"]) == 13
    assert doc_of("enumerate", "--bound", "1", "enumerate", "--n", "1", "--m", "1", "--canonical")["bound"] == 1


def test_cohomology():
    doc = doc_of("cohomology", "cohomology", *PAIR)
    assert [d["rank"] for d in doc["degrees"]] == [1, 2, 3, 3, 2, 1]
    assert all(d["torsion"] == [] for d in doc["degrees"])
    assert doc_of("cohomology", "cohomology", *PAIR, "--degree", "4")["rank"] == 3
    assert doc_of("cohomology", "cohomology", *PAIR, "--degree", "3")["rank"] == 0


def test_aut_iso_classify():
    aut = doc_of("aut", "aut", *PAIR)
    assert sorted(map(str, aut)) == sorted(map(str, [[[1, 0], [0, 1]], [[-1, 0], [0, -1]],
                                                     [[-1, 0], [2, 1]], [[1, 0], [-2, -1]]]))
    iso = doc_of("iso", "iso", *HIRZ1, *HIRZ3)
    assert iso["isomorphic"] and [[1, 0], [1, 1]] in iso["isomorphisms"]
    assert not doc_of("iso", "iso", *HIRZ1, "--n2", "1", "--m2", "1", "--a2", "0", "--b2", "0")["isomorphic"]
    nf = doc_of("classify", "classify", *PAIR)
    assert (nf["kind"], nf["s"], nf["r"]) == ("NonBott", 2, 1)


def test_diffeo_gb():
    doc = doc_of("diffeo-gb", "diffeo-gb", "--n", "1", "--a", "1", "--aprime", "3")
    assert doc == {"diffeomorphic": True, "epsilon": 1, "w": -1}
    assert not doc_of("diffeo-gb", "diffeo-gb", "--n", "1", "--a", "0", "--aprime", "1")["diffeomorphic"]


def test_fan(tmp_path):
    wps = doc_of("fan", "fan", "wps", "--n", "2", "--a", "3")
    assert len(wps["rays"]) == 4
    doc_of("fan", "fan", "gb", "--n", "2", "--a", "3")
    blow = doc_of("fan-blowup", "fan", "blowup", "--n", "2", "--a", "3")
    assert blow["equals_gb_fan"] and blow["smooth"]
    sm = doc_of("fan-smooth", "fan", "smooth", "--n", "2", "--a", "3")
    assert not sm["smooth"] and sm["det"] == 3 and sm["singular_count"] == 1
    path = tmp_path / "fan.json"
    path.write_text(json.dumps(wps))
    assert doc_of("fan-smooth", "fan", "smooth", "--file", str(path))["det"] == 3


def test_realize():
    doc = doc_of("realize", "realize", *PAIR, "--target", "[[1,0],[-2,-1]]")
    assert doc["word"] == ["f", "g"]
    plan = doc_of("plan", "realize", *HIRZ1, *HIRZ3, "--iso", "[[1,0],[1,1]]")
    assert plan["reference_iso"] == [[-3, -2], [1, 1]]
    assert plan["realization"]["word"] == ["Type2"]


def test_verify_small():
    code, text = call("verify", "--max-dim", "3", "--products", "20", "--bound", "1")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema("verify"))
    assert doc["passed"] and len(doc["checks"]) == 9


def test_verify_failure_exit(monkeypatch):
    monkeypatch.setattr(verify, "run_all", lambda **kw: [verify.CheckResult("broken", False)])
    code, text = call("verify")
    assert code == 1 and not json.loads(text)["passed"]


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["cohomology", "--n", "1", "--m", "1", "--a", "1", "--b", "1"],
    ["cohomology", "--n", "1", "--m", "1", "--a", "1,2", "--b", "0"],
    ["cohomology", "--n", "1", "--m", "1", "--a", "x", "--b", "0"],
    ["realize", *HIRZ1, "--target", "[[1,1],[0,1]]"],
    ["realize", *HIRZ1, "--target", "not json"],
    ["realize", *HIRZ1],
    ["fan", "wps", "--n", "1"],
    ["fan", "smooth", "--file", "/nonexistent.json"],
    ["enumerate", "--n", "1", "--m", "1", "--bound", "-1"],
])
def test_usage_errors(argv):
    code, text = call(*argv)
    assert code == 2
    jsonschema.validate(json.loads(text), load_schema("error"))


def test_internal_failure(monkeypatch):
    def boom(args):
        raise RuntimeError("boom")
    monkeypatch.setitem(cli.COMMANDS, "aut", boom)
    code, text = call("aut", *PAIR)
    assert code == 1 and "internal" in json.loads(text)["error"]


def test_output_is_byte_stable():
    argv = ["aut", *PAIR]
    assert call(*argv)[1] == call(*argv)[1]
    assert call(*argv)[1].endswith("\n")


def test_table_format():
    code, text = call("--format", "table", "iso", *HIRZ1, *HIRZ3)
    assert code == 0 and text.startswith("isomorphic: true")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qtoric", "diffeo-gb", "--n", "1", "--a", "1", "--aprime", "3"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["w"] == -1
