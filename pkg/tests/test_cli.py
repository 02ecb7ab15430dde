import json

import pytest

from qftr.cli import EXIT_CAP, EXIT_INPUT, EXIT_VERIFY, main
from qftr.graph import lnn


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_synthesize_lnn5(tmp_path, capsys):
    prefix = tmp_path / "out" / "lnn5"
    code, out, _ = run(capsys, "synthesize", "--graph", "lnn:5", "--out", str(prefix), "--verify")
    assert code == 0
    report = json.loads((tmp_path / "out" / "lnn5.report.json").read_text())
    assert report["actual"] == 26 and report["predicted"] == 26
    assert report["schema"] == 1 and report["residual"] < 1e-9
    qasm = (tmp_path / "out" / "lnn5.qasm").read_text()
    assert qasm.count("cx ") == 26
    assert "// initial_layout:" in qasm
    assert "actual=26" in out


def test_synthesize_is_byte_identical(tmp_path, capsys):
    for name in ("a", "b"):
        assert run(capsys, "synthesize", "--graph", "sun16", "--out", str(tmp_path / name))[0] == 0
    for ext in (".qasm", ".report.json"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()


def test_synthesize_qasm_parses(tmp_path, capsys):
    qasm2 = pytest.importorskip("qiskit.qasm2")
    run(capsys, "synthesize", "--graph", "suns27", "--method", "approx", "--out", str(tmp_path / "s"))
    qc = qasm2.load(str(tmp_path / "s.qasm"))
    report = json.loads((tmp_path / "s.report.json").read_text())
    assert qc.count_ops()["cx"] == report["actual"]


def test_disconnected_graph_exits_1(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("4 2\n1 2\n3 4\n")
    code, _, err = run(capsys, "synthesize", "--graph", str(f), "--out", str(tmp_path / "x"))
    assert code == EXIT_INPUT
    assert "disconnected" in err


def test_exact_above_cap_exits_2(capsys):
    code, _, err = run(capsys, "solve-path", "--graph", "suns27", "--method", "exact")
    assert code == EXIT_CAP
    assert "approximate" in err


def test_env_cap_switches_auto_to_approx(monkeypatch, capsys, caplog):
    monkeypatch.setenv("QFTR_MAX_EXACT", "3")
    code, out, _ = run(capsys, "solve-path", "--graph", "lnn:5")
    assert code == 0
    assert "method: approx" in out
    assert "approximate solver" in caplog.text


@pytest.mark.parametrize(
    "graph, path, objective",
    [("lnn:4", ("2 3", "3 2"), 7)],
)
def test_solve_path(capsys, graph, path, objective):
    code, out, _ = run(capsys, "solve-path", "--graph", graph, "--method", "exact")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["path"] in path
    assert int(lines["objective"]) == objective


def test_solve_path_triangle(tmp_path, capsys):
    f = tmp_path / "tri.txt"
    f.write_text("3 3\n1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "solve-path", "--graph", str(f), "--method", "exact")
    assert code == 0
    assert "path: 1\n" in out and "objective: 4" in out


def test_verify_pass_and_cap(capsys):
    code, out, _ = run(capsys, "verify", "--graph", "lnn:3")
    assert code == 0 and "PASS" in out
    code, _, err = run(capsys, "verify", "--graph", "lnn:12")
    assert code == EXIT_INPUT and "capped" in err


def test_cost_writes_csv_and_figure(tmp_path, capsys):
    code, out, _ = run(capsys, "cost", "--graph", "lnn:6", "--out", str(tmp_path / "c"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r,len,cnots"
    assert len([x for x in lines if x and x[0].isdigit()]) == 6
    assert "actual=40" in out
    csv_text = (tmp_path / "c.cost.csv").read_text()
    assert csv_text.splitlines()[0] == "r,len,cnots"
    png = (tmp_path / "c.cost.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_cost_without_out_prints_only(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "cost", "--graph", "lnn:4")
    assert code == 0 and "actual=15" in out
    assert list(tmp_path.iterdir()) == []


def test_graph_file_input(tmp_path, capsys):
    f = tmp_path / "chain.txt"
    f.write_text(lnn(4).to_edge_list())
    code, out, _ = run(capsys, "cost", "--graph", str(f), "--seed", "3")
    assert code == 0 and "actual=15" in out


def test_exit_codes_are_distinct():
    assert len({EXIT_INPUT, EXIT_CAP, EXIT_VERIFY}) == 3


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
