from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from graphdesigns.cli import main, round_numbers
from graphdesigns.graph import read_graph, read_vertex_set

SCHEMA = json.loads((resources.files("graphdesigns") / "schema" / "run_report.schema.json").read_text())


def run(capsys, *argv):
    code = main([*argv, "--no-timestamp"])
    out, err = capsys.readouterr()
    report = json.loads(out) if code == 0 else None
    if report is not None:
        jsonschema.validate(report, SCHEMA)
    else:
        assert out == "" and err.startswith("graphdesigns: error:")
    return code, report, err


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_gen_kneser_writes_star(capsys, workdir):
    code, rep, _ = run(capsys, "gen", "kneser", "6", "2", "--out", "k.edges")
    assert code == 0 and rep["graph"]["n"] == 15
    assert read_graph("k.edges").n == 15
    assert list(read_vertex_set("k.design", 15)) == [0, 1, 3, 6, 10]


@pytest.mark.parametrize(
    "argv",
    [["kneser", "3", "2"], ["kneser", "6"], ["cycle", "x"], ["hypercube", "13"], ["nosuch", "1"], ["sylvester", "1"]],
)
def test_gen_bad_params(capsys, workdir, argv):
    assert run(capsys, "gen", *argv, "--out", "g.edges")[0] == 2


def test_gen_other_families(capsys, workdir):
    assert run(capsys, "gen", "hypercube", "4", "--out", "q.edges")[1]["graph"]["n"] == 16
    assert len(read_vertex_set("q.design", 16)) == 8
    assert run(capsys, "gen", "derangement", "4", "--out", "d.edges")[1]["graph"]["degree"] == 9
    assert list(read_vertex_set("d.design", 24)) == list(range(6))
    rep = run(capsys, "gen", "truncated_tetrahedron", "--out", "t.edges")[1]
    assert rep["files"] == ["t.edges", "t.design"]


def test_analyze_examples(capsys, workdir):
    run(capsys, "gen", "sylvester", "--out", "s.edges")
    code, rep, _ = run(capsys, "analyze", "s.edges", "s.design")
    assert code == 0 and rep["design"]["order"] <= 9
    run(capsys, "gen", "hypercube", "4", "--out", "q.edges")
    rep = run(capsys, "analyze", "q.edges", "q.design", "--witness-basis", "--certify", "cheeger")[1]
    assert rep["design"]["order"] == 1 and rep["design"]["active_eigenvalues"][0]["eigenvalue"] == 0.5
    assert rep["witness_basis"]["satisfied"] == 15 and rep["certificate"]["kind"] == "cheeger"
    run(capsys, "gen", "complete", "5", "--out", "k5.edges")
    (workdir / "two.txt").write_text("0\n1\n")
    assert run(capsys, "analyze", "k5.edges", "two.txt")[1]["design"]["order"] == 1


def test_analyze_errors(capsys, workdir):
    run(capsys, "gen", "complete", "5", "--out", "k5.edges")
    (workdir / "all.txt").write_text("\n".join(map(str, range(5))))
    assert run(capsys, "analyze", "k5.edges", "all.txt")[0] == 2
    assert run(capsys, "analyze", "missing.edges", "all.txt")[0] == 2
    (workdir / "disc.edges").write_text("4 2\n0 1\n2 3\n")
    (workdir / "one.txt").write_text("0\n")
    assert run(capsys, "analyze", "disc.edges", "one.txt")[0] == 2
    assert run(capsys, "analyze", "k5.edges", "one.txt", "--certify", "hoffman")[0] == 0
    (workdir / "two.txt").write_text("0\n1\n")
    assert run(capsys, "analyze", "k5.edges", "two.txt", "--certify", "hoffman")[0] == 2


def test_spectral_failure_exit_code(capsys, workdir, monkeypatch):
    from graphdesigns import spectral

    run(capsys, "gen", "cycle", "9", "--out", "c.edges")
    monkeypatch.setattr(spectral, "JACOBI_MAX_SWEEPS", 0)
    monkeypatch.setattr(spectral.jacobi_eigh, "__defaults__", (spectral.JACOBI_TOL, 0))
    spectral.decompose.cache_clear()
    try:
        assert run(capsys, "spectrum", "c.edges")[0] == 3
    finally:
        spectral.decompose.cache_clear()


@pytest.mark.parametrize(
    "family, flags, key, expected",
    [
        (["kneser", "6", "2"], ["--exact-alpha"], "hoffman_sharp", True),
        (["hypercube", "4"], ["--exact-cheeger"], "cheeger_constant", 0.5),
        (["complete", "5"], ["--exact"], "independence_ratio", 0.2),
        (["complete", "5"], ["--exact"], "cheeger_constant", 1.25),
    ],
)
def test_bounds_examples(capsys, workdir, family, flags, key, expected):
    run(capsys, "gen", *family, "--out", "g.edges")
    rep = run(capsys, "bounds", "g.edges", *flags)[1]
    assert rep["bounds"][key] == expected


def test_bounds_sharp_flags_and_certificates(capsys, workdir):
    run(capsys, "gen", "complete", "5", "--out", "g.edges")
    rep = run(capsys, "bounds", "g.edges", "--exact")[1]
    assert rep["bounds"]["hoffman_sharp"] and rep["bounds"]["cheeger_sharp"]
    assert [c["kind"] for c in rep["certificates"]] == ["hoffman", "cheeger"]


def test_bounds_cap_and_witness_only(capsys, workdir):
    run(capsys, "gen", "hypercube", "5", "--out", "q.edges")
    assert run(capsys, "bounds", "q.edges", "--exact-cheeger")[0] == 4
    assert run(capsys, "bounds", "q.edges", "--exact-alpha", "--alpha-cap", "10")[0] == 4
    run(capsys, "gen", "derangement", "5", "--out", "d.edges")
    rep = run(capsys, "bounds", "d.edges", "--witness", "d.design")[1]
    assert rep["bounds"]["witness_only"] and rep["bounds"]["hoffman_sharp"]
    assert any("witness_only" in w for w in rep["warnings"])


def test_product_commands(capsys, workdir):
    run(capsys, "gen", "complete", "3", "--out", "k3.edges")
    run(capsys, "gen", "complete", "2", "--out", "k2.edges")
    (workdir / "s.txt").write_text("0\n")
    rep = run(capsys, "product", "weak", "k3.edges", "k3.edges", "--set1", "s.txt", "--set2", "s.txt")[1]
    assert rep["product"]["bound"] == 3 and rep["product"]["holds"]
    rep = run(capsys, "product", "cartesian", "k2.edges", "k2.edges")[1]
    assert rep["product_graph"].splitlines()[0] == "4 4"
    assert run(capsys, "product", "cartesian", "k2.edges", "k3.edges", "--out", "p.edges")[0] == 0
    assert read_graph("p.edges").m == 9
    assert run(capsys, "product", "cartesian", "k3.edges", "k3.edges", "--set1", "s.txt", "--set2", "s.txt")[0] == 2
    assert run(capsys, "product", "weak", "k3.edges", "k3.edges", "--set1", "s.txt")[0] == 2


def test_product_of_bipartite_graphs_exits_5(capsys, workdir):
    run(capsys, "gen", "cycle", "4", "--out", "c4.edges")
    (workdir / "s.txt").write_text("0\n")
    code, _, err = run(capsys, "product", "weak", "c4.edges", "c4.edges", "--set1", "s.txt", "--set2", "s.txt")
    assert code == 5 and "bipartite" in err


def test_tolerance_flags(capsys, workdir):
    run(capsys, "gen", "cycle", "6", "--out", "c.edges")
    (workdir / "s.txt").write_text("0\n")
    assert run(capsys, "analyze", "c.edges", "s.txt")[1]["design"]["order"] == 3
    assert run(capsys, "analyze", "c.edges", "s.txt", "--epsilon", "0.5")[1]["design"]["order"] < 3
    rep = run(capsys, "spectrum", "c.edges", "--tau", "1.5")[1]
    assert rep["spectrum"]["multiplicities"] == [6] and rep["warnings"]
    # a loose tolerance calls C_6 Cheeger-sharp, but the witness fails re-certification
    code, _, err = run(capsys, "bounds", "c.edges", "--exact-cheeger", "--sharpness-tol", "0.2")
    assert code == 3 and "order" in err


def test_lenient_parsing(capsys, workdir):
    (workdir / "dup.edges").write_text("3 4\n0 1\n1 2\n2 0\n1 0\n")
    assert run(capsys, "spectrum", "dup.edges")[0] == 2
    assert run(capsys, "spectrum", "dup.edges", "--lenient")[1]["graph"]["m"] == 3


def test_deterministic_output(capsys, workdir):
    run(capsys, "gen", "kneser", "7", "2", "--out", "k.edges")
    outs = []
    for _ in range(2):
        main(["bounds", "k.edges", "--exact", "--no-timestamp"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    main(["spectrum", "k.edges"])
    assert "timestamp" in json.loads(capsys.readouterr().out)


def test_round_numbers():
    assert round_numbers({"a": [1 / 3, -0.0, 2, True, None]}) == {"a": [0.333333333333, 0.0, 2, True, None]}
    assert round_numbers(float("nan")) is None


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "graphdesigns", "gen", "cycle", "5", "--out", str(tmp_path / "c.edges"), "--no-timestamp"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    jsonschema.validate(json.loads(proc.stdout), SCHEMA)
    assert "wrote" in proc.stderr
