"""Command-line behaviour: outputs, formats and exit codes."""
import json
import subprocess
import sys

import pytest

from picard import cli
from picard import configurations as cfg
from picard.gaussian import vec_to_json
from picard.group import eval_word, parse_word


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, vectors, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps([vec_to_json(v) for v in vectors]))
    return str(path)


def test_classify_representative(tmp_path, capsys):
    path = write_config(tmp_path, cfg.REPRESENTATIVES[cfg.ConfigClass.J4_2].vectors)
    code, out, _ = run(capsys, "classify", path, "--format", "json")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["tag"] == cfg.ConfigClass.J4_2.value
    assert len(res["q_matrix"]) == 4


def test_classify_translate_returns_conjugator(tmp_path, capsys):
    gamma = eval_word("t s w e")
    rep = cfg.REPRESENTATIVES[cfg.ConfigClass.J3_2]
    moved = rep.apply(gamma)
    code, out, _ = run(capsys, "classify", write_config(tmp_path, moved.vectors), "--format", "json")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["tag"] == cfg.ConfigClass.J3_2.value
    g = eval_word(parse_word(res["conjugator"]))
    assert moved.apply(g) == rep


def test_classify_wrapped_vectors_and_table(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"vectors": [vec_to_json(v) for v in cfg.REPRESENTATIVES[cfg.ConfigClass.J2_1].vectors]}))
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0
    assert cfg.ConfigClass.J2_1.value in out


@pytest.mark.parametrize("payload", [
    "not json",
    json.dumps([[[1, 0], [0, 0], [0, 0]]]),                   # one vector
    json.dumps([[[1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]]),  # short vector
    json.dumps([[[1, 0], [0, 0], [0, 0]], [[1, 0], [1, 0], [0, 0]]]),  # not isotropic
    json.dumps([[[1, 0], [0, 0], [0, 0]], [[1.5, 0], [0, 0], [1, 0]]]),  # non-integer
])
def test_classify_malformed(tmp_path, capsys, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    code, _, err = run(capsys, "classify", str(path))
    assert code == 2
    assert err.startswith("error:")


def test_classify_missing_file(capsys):
    assert run(capsys, "classify", "/nonexistent/c.json")[0] == 2


def test_cohomology_trivial_and_standard(capsys):
    code, out, _ = run(capsys, "cohomology", "trivial", "--format", "json")
    assert code == 0 and json.loads(out)["results"]["groups"] == "Z, 0, Z, 0"
    code, out, _ = run(capsys, "cohomology", "standard", "--format", "json")
    assert code == 0 and json.loads(out)["results"]["groups"] == "0, 0, Z^2, Z/2Z"


def test_cohomology_symn(capsys):
    code, out, _ = run(capsys, "cohomology", "symn:9", "--format", "json")
    assert code == 0
    assert json.loads(out)["results"]["free_ranks"] == [0, 0, 5, 0]


@pytest.mark.parametrize("argv", [
    ["cohomology", "symn:3", "--ring", "Z"],
    ["cohomology", "symn:x"],
    ["cohomology", "symn:0"],
    ["cohomology", "bogus"],
    ["cohomology"],
    ["cohomology", "--range", "5..2"],
    ["cohomology", "--range", "1-4"],
    ["cohomology", "--range", "1..3", "--ring", "Z"],
    ["cohomology", "trivial", "--jobs", "0"],
    ["verify", "nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_range_csv(capsys):
    code, out, _ = run(capsys, "cohomology", "--range", "1..5", "--jobs", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h,1,2,3,4,5"
    assert lines[3] == "h2,1,0,0,1,3"
    assert lines[4] == "h3,0,0,0,1,0"


def test_range_jobs_agree(capsys):
    one = run(capsys, "cohomology", "--range", "3..6", "--format", "json", "--jobs", "1")[1]
    two = run(capsys, "cohomology", "--range", "3..6", "--format", "json", "--jobs", "3")[1]
    assert json.loads(one)["rows"] == json.loads(two)["rows"]


@pytest.mark.parametrize("suite", ["stabilizers", "qmatrix", "flags"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["checks"]


def test_verify_admissibility(capsys):
    code, out, _ = run(capsys, "verify", "strong-admissibility", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["checks"]) == 9


def test_verify_bounds_small_sample(capsys):
    code, out, _ = run(capsys, "verify", "bounds", "--samples", "40", "--format", "json")
    assert code == 0, out


def test_bounds_seed_determinism(capsys):
    a = json.loads(run(capsys, "verify", "bounds", "--samples", "20", "--seed", "5", "--format", "json")[1])
    b = json.loads(run(capsys, "verify", "bounds", "--samples", "20", "--seed", "5", "--format", "json")[1])
    assert a["checks"] == b["checks"]


@pytest.mark.slow
def test_verify_incidence(capsys):
    code, out, _ = run(capsys, "verify", "incidence", "--format", "json")
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert any("16" in c["detail"] for c in checks.values())


def test_formats_agree(capsys):
    js = json.loads(run(capsys, "verify", "qmatrix", "--format", "json")[1])
    table = run(capsys, "verify", "qmatrix", "--format", "table")[1]
    csv_out = run(capsys, "verify", "qmatrix", "--format", "csv")[1]
    for c in js["checks"]:
        assert c["name"] in table and c["name"] in csv_out
    assert "all checks passed" in table


def test_failing_check_reports_witness(capsys, monkeypatch):
    monkeypatch.setitem(cli.SUITES, "flags", lambda args: [cli.Check("forced", False, "x", {"k": 1})])
    code, out, err = run(capsys, "verify", "flags", "--format", "json")
    assert code == 1
    assert '"k": 1' in err
    code, out, _ = run(capsys, "verify", "flags")
    assert code == 1 and "witness[forced]" in out


def test_cells_dump_and_check(tmp_path, capsys):
    path = tmp_path / "cells.json"
    code, out, _ = run(capsys, "cells", "--dump", str(path))
    assert code == 0 and path.exists()
    assert run(capsys, "cells", "--check", str(path))[0] == 0
    path.write_text("{}")
    assert run(capsys, "cells", "--check", str(path))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "picard", "cohomology", "trivial"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Z" in proc.stdout
