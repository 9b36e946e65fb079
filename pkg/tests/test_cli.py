import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qchan.cli import main, parse_document
from qchan.errors import DocumentError


def run(*args, stdin=None):
    p = subprocess.run([sys.executable, "-m", "qchan", *args], input=stdin, capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def run_inproc(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_transpose(capsys):
    code, out, _ = run_inproc(capsys, "check", '{"canonical": {"lambda": [1, -1, 1], "t": [0, 0, 0]}}')
    rep = json.loads(out)
    assert code == 3 and rep["cp"] is False and rep["schema"] == "qchan/1"
    assert rep["methods"]["agree"]


def test_check_trig(capsys):
    code, out, _ = run_inproc(capsys, "check", '{"trig": {"u": 0.4, "v": 0.9}}')
    rep = json.loads(out)
    assert code == 0 and rep["class"]["kind"] == "TrueExtremeNonUnital_IA"
    assert rep["choi_rank"] == 2


def test_check_identity_kraus(capsys):
    code, out, _ = run_inproc(capsys, "check", '{"kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}')
    assert code == 0 and json.loads(out)["class"]["kind"] == "UnitaryExtreme_II"


@pytest.mark.parametrize("doc, needle", [
    ('{"kraus": [[[2, 0], [0, 1]]]}', "deviates from I"),
    ('{"tmatrix": {"t": [0, 0], "T": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}', "shape"),
    ('{"trig": {"u": 1}, "canonical": {"lambda": [0, 0, 0]}}', "exactly one"),
    ('{"tmatrix": {"M": [[1, 0.5, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}}', "first row"),
    ('{"kraus": [1,', "invalid JSON"),
])
def test_parse_errors(capsys, doc, needle):
    code, out, err = run_inproc(capsys, "check", doc)
    assert code == 2 and needle in err and out == ""


def test_report_round_trip(capsys, tmp_path):
    _, out, _ = run_inproc(capsys, "check", '{"trig": {"u": 1.1, "v": 2.0}}')
    path = tmp_path / "r.json"
    path.write_text(out)
    _, again, _ = run_inproc(capsys, "check", str(path))
    assert again == out


def test_canon_and_classify(capsys):
    code, out, _ = run_inproc(capsys, "canon", '{"canonical": {"lambda": [0.2, 0.5, -0.3], "t": [0, 0, 0]}}')
    lam = json.loads(out)["canonical"]["lambda"]
    # magnitudes sorted, the sign of det T carried by lambda3
    assert code == 0 and np.allclose(lam, [0.5, 0.3, -0.2])
    code, out, _ = run_inproc(capsys, "classify", '{"canonical": {"lambda": [1, -1, 1]}}')
    assert code == 3


def test_decompose(capsys):
    code, out, _ = run_inproc(capsys, "decompose", '{"canonical": {"lambda": [0.5, 0.5, 0.5]}}')
    rep = json.loads(out)
    assert code == 0 and rep["residual"] <= 1e-9
    for side in ("left", "right"):
        code2, out2, _ = run_inproc(capsys, "check", json.dumps(rep[side]))
        assert code2 == 0 and json.loads(out2)["choi_rank"] <= 2
    code, out, _ = run_inproc(capsys, "decompose", '{"trig": {"u": 0.4, "v": 0.9}}')
    rep = json.loads(out)
    assert rep["left"]["tmatrix"] == rep["right"]["tmatrix"] == rep["input"]["tmatrix"]


def test_decompose_random_parts(capsys):
    _, out, _ = run_inproc(capsys, "random", "3", "--seed", "11")
    for line in out.splitlines():
        _, rep, _ = run_inproc(capsys, "decompose", line)
        rep = json.loads(rep)
        for side in ("left", "right"):
            code, chk, _ = run_inproc(capsys, "check", json.dumps(rep[side]))
            assert code == 0 and json.loads(chk)["choi_rank"] <= 2


def test_capacity(capsys):
    code, out, _ = run_inproc(capsys, "capacity", "--bits", '{"kraus": [[[1, 0], [0, 1]]]}')
    assert code == 0 and json.loads(out)["value"] == pytest.approx(1.0, abs=1e-6)
    _, out, _ = run_inproc(capsys, "capacity", '{"canonical": {"lambda": [0.8, 0, 0], "t": [0, 0, 0.6]}}')
    rep = json.loads(out)
    assert rep["closed_form_disagrees"] is False
    assert rep["value"] == pytest.approx(rep["closed_form"], abs=1e-4)
    _, out, _ = run_inproc(capsys, "capacity", '{"trig": {"u": 0.4, "v": 0.9}}')
    assert set(json.loads(out)["baselines"]) == {"orthogonal", "min_entropy"}
    code, _, _ = run_inproc(capsys, "capacity", '{"canonical": {"lambda": [1, -1, 1]}}')
    assert code == 3


def test_plotdata_curve(capsys):
    code, out, _ = run_inproc(capsys, "plotdata", "curve", "--t3", "0.5", "--n", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,y,z,branch"
    pts = np.array([[float(v) for v in ln.split(",")[:3]] for ln in lines[1:]])
    a = math.sqrt(0.5)
    for p in ([a, a, 0.5], [-a, a, -0.5], [-a, -a, 0.5], [a, -a, -0.5]):
        assert np.abs(pts - p).max(axis=1).min() < 1e-12


def test_plotdata_figure1_json(capsys, tmp_path):
    out_file = tmp_path / "f.json"
    code, _, _ = run_inproc(capsys, "plotdata", "figure1", "--format", "json", "--n", "9", "--out", str(out_file))
    d = json.loads(out_file.read_text())
    assert code == 0 and d["columns"] == ["x", "y", "branch"]
    assert sum(r[2] == "contacts" for r in d["rows"]) == 2


def test_plotdata_out_of_range(capsys):
    code, _, err = run_inproc(capsys, "plotdata", "rounded", "--t3", "1.5")
    assert code == 2 and "t3" in err


def test_random_reproducible():
    a = run("random", "10", "--seed", "7", "--filter", "cp")
    b = run("random", "10", "--seed", "7", "--filter", "cp")
    assert a == b and a[0] == 0
    docs = [json.loads(ln) for ln in a[1].splitlines()]
    assert len(docs) == 10 and all(d["meta"]["cp"] for d in docs)


def test_random_extreme_and_all(capsys):
    _, out, _ = run_inproc(capsys, "random", "5", "--filter", "extreme")
    for ln in out.splitlines():
        _, rep, _ = run_inproc(capsys, "check", ln)
        assert json.loads(rep)["choi_rank"] <= 2
    _, out, _ = run_inproc(capsys, "random", "30", "--filter", "all")
    flags = [json.loads(ln)["meta"]["cp"] for ln in out.splitlines()]
    assert True in flags and False in flags


def test_stdin_and_module_entry():
    code, out, _ = run("check", stdin='{"canonical": {"lambda": [-0.34, -0.34, -0.34]}}')
    assert code == 3 and json.loads(out)["cp"] is False


def test_parse_document_api():
    ch = parse_document({"tmatrix": {"t": [0, 0, 0.1], "T": np.diag([0.5, 0.5, 0.5]).tolist()}})
    assert ch.t[2] == 0.1
    with pytest.raises(DocumentError):
        parse_document([])
