import io
import json
import random
import subprocess
import sys

import pytest
import yaml

from helpers import rand_clover, random_text
from kkt.cli import run
from kkt.diagrams import JacobiDiagram, canonicalize, enumerate_diagrams


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    g3 = tmp_path / "g3.yaml"
    g3.write_text(
        "genus: 3\nform_a: [{triple: [1, 2, 3], value: 1}]\nform_b: [{triple: [1, 2, 3], value: 1}]\n"
    )
    k3 = tmp_path / "k3.json"
    k3.write_text(json.dumps(rand_clover(random.Random(0), 3).to_json()))
    lf = tmp_path / "lf.yaml"
    lf.write_text('orders: [4, 4, 9]\ngram: [["0","1/4","0"],["1/4","0","0"],["0","0","2/9"]]\n')
    deg = tmp_path / "deg.yaml"
    deg.write_text('orders: [4]\ngram: [["1/2"]]\n')
    mat = tmp_path / "m.txt"
    mat.write_text("2\n1/2 1/3\n1/3 -1/4\n")
    return {"g3": g3, "k3": k3, "lf": lf, "deg": deg, "mat": mat, "dir": tmp_path}


def test_basis_degree_one():
    code, out, _ = call("basis", "--degree", "1")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 1
    assert doc["basis"] == ["1;0s0-1s0,0s1-1s2,0s2-1s1"]


def test_split_vanishing_note(files):
    code, out, _ = call("split", "--degree", "1", "--clover", str(files["k3"]))
    doc = json.loads(out)
    assert code == 0 and doc["coordinates"] == ["0"] and "k > 2n" in doc["note"]


def test_split_not_applicable(files, tmp_path):
    one = tmp_path / "one.json"
    one.write_text(json.dumps(rand_clover(random.Random(1), 1).to_json()))
    code, _, err = call("split", "--degree", "1", "--clover", str(one))
    assert code == 1 and "k = 1" in err


def test_casson_text(files):
    code, out, _ = call("casson", "--clover", str(files["g3"]), "--format", "text")
    assert code == 0 and "lambda = -2" in out.splitlines()


def test_casson_general_two_piece(files, tmp_path):
    c = tmp_path / "two.json"
    c.write_text(
        json.dumps(
            {
                "pieces": [{"genus": 3, "form": [{"triple": [1, 2, 3], "value": 1}]}] * 2,
                "linking": [{"i": 1, "j": 2, "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}],
            }
        )
    )
    code, out, _ = call("casson", "--clover", str(c))
    assert code == 0 and json.loads(out)["lambda"] == "-2"


def test_linkform_classify(files):
    code, out, _ = call("linkform", "classify", str(files["lf"]))
    doc = json.loads(out)
    assert code == 0 and doc["nondegenerate"] is True
    assert doc["primary_parts"]["2"]["stabilizers_added"] == 1
    assert [b["label"] for b in doc["primary_parts"]["3"]["blocks"]] == ["[3^2, 2]"]


def test_linkform_degenerate(files):
    code, out, _ = call("linkform", "classify", str(files["deg"]))
    assert code == 1 and json.loads(out)["nondegenerate"] is False


def test_realize(files):
    code, out, _ = call("realize", str(files["mat"]))
    doc = json.loads(out)
    assert code == 0
    assert doc["linking_matrix"] == [["1/2", "1/3"], ["1/3", "-1/4"]]
    assert doc["correction"] == [["0", "0"], ["0", "-1"]]


def test_degree_cap_exit_code(monkeypatch):
    assert call("diagrams", "--degree", "5")[0] == 2
    monkeypatch.setenv("KKT_DEGREE_CAP", "1")
    assert call("basis", "--degree", "2")[0] == 2
    assert call("basis", "--degree", "2", "--degree-cap", "2")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["diagrams"],
        ["diagrams", "--degree", "-1"],
        ["diagrams", "--degree", "x"],
        ["basis", "--degree", "1", "--format", "xml"],
        ["realize", "/nonexistent/file"],
        ["linkform"],
    ],
)
def test_usage_errors_exit_one(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert err.startswith("kkt: error:") and err.count("\n") == 1


def test_encodings_round_trip():
    code, out, _ = call("diagrams", "--degree", "3")
    doc = json.loads(out)
    classes = {c.encode(): c for c in enumerate_diagrams(3)}
    assert doc["count"] == 9
    for item in doc["diagrams"]:
        cls, sign = canonicalize(JacobiDiagram.parse(item["encoding"]))
        assert cls == classes[item["encoding"]] and sign == 1


def test_count_only():
    code, out, _ = call("diagrams", "--degree", "2", "--count-only", "--format", "text")
    assert out.splitlines() == ["degree = 2", "count = 3", "zero_classes = 0"]


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_determinism(files, fmt):
    for argv in (
        ["diagrams", "--degree", "2"],
        ["split", "--degree", "1", "--clover", str(files["k3"])],
        ["linkform", "classify", str(files["lf"])],
        ["realize", str(files["mat"])],
    ):
        assert call(*argv, "--format", fmt) == call(*argv, "--format", fmt)


@pytest.mark.parametrize("seed", range(40))
def test_fuzzed_inputs_exit_one(files, seed):
    rng = random.Random(seed)
    bad = files["dir"] / f"bad{seed}.txt"
    bad.write_text(random_text(rng, rng.randint(0, 60)))
    for argv in (
        ["split", "--degree", "1", "--clover", str(bad)],
        ["casson", "--clover", str(bad)],
        ["linkform", "classify", str(bad)],
        ["realize", str(bad)],
    ):
        code, out, err = call(*argv)
        assert code == 1, (argv, bad.read_text(), err)
        assert err.count("\n") == 1


@pytest.mark.parametrize(
    "doc",
    [
        {"pieces": "x"},
        {"pieces": [{"genus": 3, "form": [{"triple": [3, 2, 1], "value": 1}]}]},
        {"pieces": [{"genus": 3, "form": [{"triple": [1, 2, 3], "value": "1/0"}]}]},
        {"pieces": [{"genus": 1}, {"genus": 1}], "linking": [{"i": 1, "j": 2, "matrix": [[1, 2]]}]},
        {"orders": [4], "gram": [["1/3"]]},
        {"genus": 3, "form_a": [{"triple": [1, 2, 3], "value": 0.5}]},
    ],
)
def test_malformed_documents(files, doc):
    bad = files["dir"] / "bad.yaml"
    bad.write_text(yaml.safe_dump(doc))
    for argv in (
        ["split", "--degree", "1", "--clover", str(bad)],
        ["casson", "--clover", str(bad)],
        ["linkform", "classify", str(bad)],
    ):
        code, _, err = call(*argv)
        assert code == 1 and str(bad) in err


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "kkt.cli", "casson", "--clover", str(files["g3"]), "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "lambda = -2" in proc.stdout
