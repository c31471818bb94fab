from __future__ import annotations

import json
import subprocess
import sys

import pytest

from equidom.cli import main
from equidom.generators import EXAMPLE_T, EXAMPLE_WEIGHTS, weighted_example, path
from equidom.graph import parse_graph, serialize_graph
from equidom.pseudograph import parse_pseudo_graph
from equidom.kernel import parse_trace


@pytest.fixture
def files(tmp_path):
    example = tmp_path / "example.gr"
    example.write_text(serialize_graph(weighted_example()))
    w = tmp_path / "example.w"
    w.write_text("".join(f"{i + 1} {x}\n" for i, x in enumerate(EXAMPLE_WEIGHTS)) + f"t {EXAMPLE_T}\n")
    p5 = tmp_path / "p5.gr"
    p5.write_text(serialize_graph(path(5)))
    bad = tmp_path / "bad.gr"
    bad.write_text("p 3 1\ne 1 9\n")
    return {"example": str(example), "w": str(w), "p5": str(p5), "bad": str(bad), "dir": tmp_path}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_pseudo_lists_five_classes(files, capsys):
    code, out, _ = run(capsys, "analyze", "--pseudo", files["example"])
    assert code == 0
    assert out.splitlines() == [
        "singleton: {1}", "singleton: {2}", "clique_bundle: {3, 4, 6}",
        "singleton: {5}", "stable_class: {7, 8}",
    ]


def test_analyze_full_dump_contains_pseudo_graph(files, capsys):
    code, out, _ = run(capsys, "analyze", files["example"])
    assert code == 0
    dump = out[out.index("pg "):]
    assert len(parse_pseudo_graph(dump)) == 8


def test_analyze_edgeless(tmp_path, capsys):
    f = tmp_path / "e3.gr"
    f.write_text("p 3 0\n")
    code, out, _ = run(capsys, "analyze", "--pseudo", str(f))
    assert code == 0 and out.strip() == "stable_class: {1, 2, 3}"


def test_malformed_file_exits_2(files, capsys):
    code, _, err = run(capsys, "analyze", files["bad"])
    assert code == 2 and "line 2" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/graph.gr")
    assert code == 2 and "cannot read" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "x.gr"])
    assert info.value.code == 2


def test_solve_weighted_example(files, capsys):
    code, out, _ = run(capsys, "solve", "--k", "16", files["example"])
    assert code == 0
    assert out.splitlines()[-1].startswith("t ")


def test_solve_p5_k1_is_negative(files, capsys):
    code, out, _ = run(capsys, "solve", "--k", "1", files["p5"])
    assert code == 1 and out.startswith("no: ")


def test_solve_json(files, capsys):
    code, out, _ = run(capsys, "solve", "--target", "2", files["p5"], "--json")
    doc = json.loads(out)
    assert code == 1 and doc["schema_version"] == 1 and doc["result"] == "no"
    assert doc["exit_code"] == 1


def test_verify(files, capsys):
    assert run(capsys, "verify", files["example"], files["w"])[:2] == (0, "valid\n")
    wrong = files["dir"] / "wrong.w"
    wrong.write_text(open(files["w"]).read().replace(f"t {EXAMPLE_T}", "t 22"))
    assert run(capsys, "verify", files["example"], str(wrong))[:2] == (1, "invalid\n")


def test_kernel_writes_kernel_and_trace(files, capsys, tmp_path):
    g = tmp_path / "k.gr"
    g.write_text(serialize_graph(parse_graph("p 6 13\n" + "".join(
        f"e {u} {v}\n" for u in range(1, 7) for v in range(u + 1, 7) if (u, v) not in ((1, 2), (3, 4))))))
    out_file = tmp_path / "kern.pg"
    code, out, _ = run(capsys, "kernel", "--target", "2", str(g), "-o", str(out_file))
    assert code == 0
    assert parse_pseudo_graph(out_file.read_text())
    parse_trace((tmp_path / "kern.pg.trace").read_text())


def test_kernel_negative(files, capsys):
    code, out, _ = run(capsys, "kernel", "--target", "2", files["example"])
    assert code == 1 and "more pseudo classes" in out


def test_kernel_k1_classified(tmp_path, capsys):
    f = tmp_path / "e4.gr"
    f.write_text("p 4 0\n")
    code, out, _ = run(capsys, "kernel", "--k", "1", str(f))
    assert code == 0 and "t 4" in out


def test_hereditary(files, capsys, tmp_path):
    code, out, _ = run(capsys, "hereditary", "--witness", files["p5"])
    assert code == 1 and out.splitlines() == ["no", "witness P5: 1 2 3 4 5"]
    c4 = tmp_path / "c4.gr"
    c4.write_text("p 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n")
    code, out, _ = run(capsys, "hereditary", "--structure", str(c4))
    assert code == 0 and out.splitlines()[0] == "yes" and "t 2" in out


def test_oracle_modes(files, capsys):
    code, out, _ = run(capsys, "oracle", "mds", files["p5"])
    assert code == 0 and out.startswith("4 minimal dominating sets") is False or code == 0
    code, out, _ = run(capsys, "oracle", "k-equi", files["p5"], "3")
    assert code == 1 and out.strip() == "no"
    code, out, _ = run(capsys, "oracle", "verify", files["example"], files["w"])
    assert code == 0
    code, _, _ = run(capsys, "oracle", "target", files["p5"])
    assert code == 2


def test_oracle_budget_refusal(tmp_path, capsys, monkeypatch):
    f = tmp_path / "e.gr"
    f.write_text("p 12 0\n")
    monkeypatch.setenv("EQUIDOM_BUDGET", "10")
    code, _, err = run(capsys, "oracle", "k-equi", str(f), "1")
    assert code == 3 and "refuses" in err


def test_generate_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "k2n-ne", "3")
    G = parse_graph(out)
    assert code == 0 and G.n == 6 and G.m == 12
    c3 = tmp_path / "c3.gr"
    run(capsys, "generate", "cycle", "3", "-o", str(c3))
    code, out, _ = run(capsys, "generate", "corona", str(c3))
    assert parse_graph(out).n == 6
    code, out, _ = run(capsys, "generate", "random", "8", "0.5", "--seed", "4")
    assert "# seed 4" in out
    code2, out2, _ = run(capsys, "generate", "random", "8", "0.5", "--seed", "4")
    assert out == out2


def test_generate_chain_join(capsys, tmp_path):
    a = tmp_path / "a.gr"
    a.write_text("p 2 1\ne 1 2\n")
    code, out, _ = run(capsys, "generate", "chain-join", str(a), str(a), "--nest", "2,1;1,2")
    G = parse_graph(out)
    assert code == 0 and G.n == 4 and G.m == 5
    code, _, err = run(capsys, "generate", "chain-join", str(a), str(a), "--nest", "3,1")
    assert code == 2 and "nesting" in err
    code, _, _ = run(capsys, "generate", "chain-join", str(a), str(a), "--nest", "x")
    assert code == 2


def test_generate_bad_params(capsys):
    assert run(capsys, "generate", "path", "zero")[0] == 2
    assert run(capsys, "generate", "cycle", "2")[0] == 2
    assert run(capsys, "generate", "random", "5", "1.5")[0] == 2


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "equidom.cli", "verify", files["example"], files["w"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "valid\n"
