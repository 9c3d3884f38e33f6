import json

import pytest

from qtoroidal.cli import RunConfig, main, run


def test_serre_k2_exit_zero(capsys):
    assert main(["--type", "A1", "--suite", "serre-sym", "--serre-k", "2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_asymmetric_file_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"matrix": [[2, -1], [0, 2]]}))
    assert main(["--cartan", str(bad)]) == 2
    assert "asymmetric" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["--suite", "nonsense"],
        ["--cartan", "/nonexistent/c.json"],
        ["--type", "G2"],
        ["--degree", "0", "--suite", "cocycle"],
    ],
)
def test_bad_input_exit_two(argv):
    assert main(argv) == 2


def test_failing_check_exit_one(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--type", "A2", "--suite", "serre-sym", "--serre-k", "1,2", "--out", str(out)]) == 1
    doc = json.loads(out.read_text())
    assert doc["summary"] == {"pass": 1, "fail": 1, "beyond_paper": 0}
    assert [r["params"]["k"] for r in doc["reports"]] == [1, 2]


def _strip_ms(doc):
    for r in doc["reports"]:
        r.pop("ms")
    return doc


def test_report_is_deterministic_across_job_counts():
    cfg = dict(cartan="A2", suites=["heisenberg", "delta", "cocycle"], modes=1, degree=2)
    _, one = run(RunConfig(**cfg, jobs=1))
    _, two = run(RunConfig(**cfg, jobs=2))
    assert json.dumps(_strip_ms(one)) == json.dumps(_strip_ms(two))
    assert set(one) == {"version", "config", "reports", "summary"}


def test_extra_node_is_beyond_paper(tmp_path):
    out = tmp_path / "r.json"
    code = main(["--type", "A2", "--suite", "delta", "--modes", "1", "--degree", "1", "--alpha0=-1,-1", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0
    assert doc["summary"]["beyond_paper"] == 1
    extra = doc["reports"][-1]
    assert extra["params"]["node"] == 0
    assert extra["details"]["outcome"] in ("pass", "fail")
