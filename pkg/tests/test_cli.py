import json

import pytest
from click.testing import CliRunner

from psl2reps.cli import main


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return invoke


def construct(run, tmp_path, g, p, n, s, *extra):
    out = tmp_path / f"rep_{g}_{p}_{n}_{s}.json"
    res = run("construct", "-g", g, "-p", p, "-n", n, "-s", s, "--out", out, *extra)
    assert res.exit_code == 0, res.output
    return out


def classify(run, path, *extra):
    res = run("classify", path, *extra)
    assert res.exit_code == 0, res.output
    return json.loads(res.output)


def test_construct_classify_round_trip(run, tmp_path):
    for g, p, n, s in [(0, 4, 2, "++++"), (1, 2, -1, "00"), (0, 5, 0, "+-0+-"), (2, 1, 3, "+")]:
        report = classify(run, construct(run, tmp_path, g, p, n, s))
        assert report["n"] == n and report["signs"] == s


def test_psi_document(run, tmp_path):
    path = construct(run, tmp_path, 0, 4, 1, "++++", "--scalar", "rational")
    doc = json.loads(path.read_text())
    assert doc["scalar"] == "rational"
    assert doc["c"][0] == [["3", "2"], ["-2", "-1"]]
    report = classify(run, path)
    assert (report["n"], report["s"], report["totally_non_hyperbolic"]) == (1, [1, 1, 1, 1], True)
    assert report["boundary_type"] == "TypePreserving"


def test_abelian_document(run, tmp_path):
    doc = {"genus": 0, "punctures": 4, "scalar": "rational",
           "c": [[["1", "3"], ["0", "1"]]] + [[["1", "-1"], ["0", "1"]]] * 3}
    path = tmp_path / "abelian.json"
    path.write_text(json.dumps(doc))
    report = classify(run, path)
    assert report["n"] == 0 and report["abelian"] and all(p["abelian"] for p in report["pieces"])


def test_torus_witness(run, tmp_path):
    doc = json.loads(construct(run, tmp_path, 1, 1, 1, "+").read_text())
    assert doc["a"][0] == [["2", "0"], ["0", "1/2"]]
    assert doc["b"][0] == [["5/3", "4/3"], ["4/3", "5/3"]]


def test_exit_codes(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("classify", bad).exit_code == 2
    assert run("classify", tmp_path / "missing.json").exit_code == 2
    res = run("construct", "-g", 0, "-p", 4, "-n", 0, "-s", "++++")
    assert res.exit_code == 5 and "chi + p_+" in res.output
    assert run("construct", "-g", 0, "-p", 3, "-n", 0, "-s", "++x").exit_code == 2
    assert run("construct", "-g", 0, "-p", 3, "-n", 0, "-s", "++").exit_code == 2
    assert run("construct", "-g", 0, "-p", 2, "-n", 0, "-s", "++").exit_code == 3
    assert run("count", "-g", 0, "-p", 17).exit_code == 6
    elliptic = {"genus": 0, "punctures": 3, "scalar": "rational",
                "c": [[["0", "1"], ["-1", "0"]], [["0", "-1"], ["1", "0"]], [["1", "0"], ["0", "1"]]]}
    path = tmp_path / "ell.json"
    path.write_text(json.dumps(elliptic))
    assert run("classify", path).exit_code == 4
    broken = {"genus": 0, "punctures": 3, "scalar": "rational",
              "c": [[["1", "1"], ["0", "1"]]] * 3}
    path.write_text(json.dumps(broken))
    assert run("classify", path).exit_code == 3
    path.write_text(json.dumps({"genus": 0, "punctures": 3, "c": [[[1, 2], [3, 4]]] * 3}))
    assert run("classify", path).exit_code == 2


def test_float_warning_band(run, tmp_path):
    # hyperbolic with |tr| - 2 about 5e-9: inside the band, outside eps
    lam = 1 + 7.07e-5
    c1 = [[lam, 0.0], [0.0, 1 / lam]]
    c2 = [[1.0, 1.0], [0.0, 1.0]]
    c3 = [[1 / lam, -lam], [0.0, lam]]
    path = tmp_path / "band.json"
    path.write_text(json.dumps({"genus": 0, "punctures": 3, "c": [c1, c2, c3]}))
    res = run("classify", path)
    assert res.exit_code == 3 and "rational" in res.output


def test_count_and_enumerate(run):
    res = run("count", "-g", 0, "-p", 4, "--json")
    rows = {r["n"]: r["count"] for r in json.loads(res.output)["per_n"]}
    assert rows[1] == rows[-1] == 5
    assert json.loads(run("count", "-g", 1, "-p", 1, "--json").output)["total"] == 4
    assert json.loads(run("count", "-g", 0, "-p", 3, "--json").output)["total"] == 8
    res = run("enumerate", "-g", 1, "-p", 1)
    assert "n=-1 s=-" in res.output and "total: 4" in res.output
    res = run("enumerate", "-g", 0, "-p", 3, "--boundary", "mixed", "--json")
    assert all(0 in s for row in json.loads(res.output)["per_n"] for s in row["indices"])


def test_verify_command(run, tmp_path):
    out = tmp_path / "report.json"
    res = run("verify", "--seed", 7, "--samples", 20, "--only", "fricke", "--only", "sign-laws", "--out", out)
    assert res.exit_code == 0, res.output
    report = json.loads(out.read_text())
    assert report["seed"] == 7 and report["passed"]
    assert [c["name"] for c in report["checks"]] == ["fricke", "sign-laws"]
    again = run("verify", "--seed", 7, "--samples", 20, "--only", "fricke")
    assert "PASS fricke: samples=20 failures=0" in again.output
