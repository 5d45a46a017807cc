import json

import pytest

from evds.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def small_points(tmp_path, capsys):
    path = tmp_path / "small.points"
    assert run(["gen", "-n", 8, "--width", 2, "--height", 2, "--seed", 4, "--min-degree-filter", "-o", path], capsys)[0] == 0
    return path


def test_gen_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        assert run(["gen", "-n", 40, "--seed", 9, "-o", p], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "40"


def test_gen_graph_json(tmp_path, capsys):
    out = tmp_path / "g.json"
    run(["gen", "-n", 10, "--seed", 1, "-o", tmp_path / "p", "--graph-json", out], capsys)
    assert json.loads(out.read_text())["n"] == 10


def test_gen_gives_up(capsys):
    code, _, err = run(["gen", "-n", 3, "--width", 100, "--height", 100, "--min-degree-filter"], capsys)
    assert code == 5 and "generation failed" in err


@pytest.mark.parametrize("solver", ["exact", "matching", "hex5"])
def test_solve_then_verify(small_points, tmp_path, capsys, solver):
    sol = tmp_path / f"{solver}.json"
    assert run(["solve", small_points, "--solver", solver, "-o", sol], capsys)[0] == 0
    assert json.loads(sol.read_text())["verified"] is True
    code, out, _ = run(["verify", small_points, sol], capsys)
    assert code == 0 and out.startswith("ok")


def test_verify_catches_tampering(small_points, tmp_path, capsys):
    sol = tmp_path / "s.json"
    run(["solve", small_points, "--solver", "exact", "-o", sol], capsys)
    data = json.loads(sol.read_text())
    data["edges"] = data["edges"][1:]
    sol.write_text(json.dumps(data))
    code, out, _ = run(["verify", small_points, sol], capsys)
    assert code == 1 and "not ev-dominated" in out


def test_ptas_collection_verifies(small_points, tmp_path, capsys):
    coll = tmp_path / "c.json"
    code, _, _ = run(["solve", small_points, "--solver", "ptas", "--epsilon", 0.5, "--collection", coll], capsys)
    assert code == 0
    code, out, _ = run(["verify", small_points, "--collection", coll], capsys)
    assert code == 0 and "separated" in out


def test_ptas_needs_epsilon(small_points, capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", str(small_points), "--solver", "ptas"])
    assert info.value.code == 64


def test_isolated_vertex_exit_code(tmp_path, capsys):
    pts = tmp_path / "iso.points"
    pts.write_text("3\n0 0\n0.5 0\n9 9\n")
    code, _, err = run(["solve", pts, "--solver", "matching"], capsys)
    assert code == 2 and "isolated" in err


def test_exact_refuses_large(tmp_path, capsys):
    pts = tmp_path / "big.points"
    run(["gen", "-n", 60, "--width", 3, "--height", 3, "--seed", 2, "-o", pts], capsys)
    code, _, err = run(["solve", pts, "--solver", "exact"], capsys)
    assert code == 3 and "--force" in err


@pytest.mark.parametrize("text", ["garbage\n", "2\n0 0\n"])
def test_malformed_points_exit_code(tmp_path, capsys, text):
    pts = tmp_path / "bad.points"
    pts.write_text(text)
    assert run(["solve", pts, "--solver", "hex5"], capsys)[0] == 4


def test_missing_file_exit_code(tmp_path, capsys):
    assert run(["verify", tmp_path / "nope.points", tmp_path / "nope.json"], capsys)[0] == 4


def test_reduce_corpus(tmp_path, capsys):
    prefix = tmp_path / "p3"
    assert run(["reduce", "--corpus", "p3", "-o", prefix], capsys)[0] == 0
    assert (tmp_path / "p3.points").read_text().splitlines()[0] == "9"
    roles = json.loads((tmp_path / "p3.roles.json").read_text())
    assert roles["roles"].count("added") == 6
    assert run(["solve", tmp_path / "p3.points", "--solver", "exact"], capsys)[0] == 0


def test_reduce_invalid_embedding(tmp_path, capsys):
    emb = tmp_path / "bad.emb"
    emb.write_text("3 2 2\n0 0 0\n1 2 0\n2 8 0\n0 1\n1 2\n0 0 0 2 0 0\n1 2 0 8 0 0\n")
    code, _, err = run(["reduce", emb], capsys)
    assert code == 6 and "4-grid" in err


def test_bench_empty_dir(tmp_path, capsys):
    code, out, _ = run(["bench", tmp_path], capsys)
    assert code == 0 and out.strip() == "instance,n,m,solver,size,opt_size,ratio,time_ms,k,max_r1"


def test_bench_reports_max_r1(small_points, tmp_path, capsys):
    report = tmp_path / "bench.json"
    code, out, _ = run(["bench", small_points.parent, "--json", report], capsys)
    assert code == 0 and "ptas@0.5" in out
    assert set(json.loads(report.read_text())["max_r1"]) == {"0.5", "1", "2"}


def test_render(small_points, tmp_path, capsys):
    svg = tmp_path / "out.svg"
    assert run(["render", small_points, "--mega-cells", "-o", svg], capsys)[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "<polygon" in text


def test_solve_is_deterministic(small_points, tmp_path, capsys):
    outputs = []
    for i in range(2):
        sol, rep = tmp_path / f"s{i}.json", tmp_path / f"r{i}.json"
        run(["solve", small_points, "--solver", "ptas", "--epsilon", 1, "-o", sol, "--report", rep], capsys)
        report = json.loads(rep.read_text())
        outputs.append((sol.read_bytes(), report["digest"]))
    assert outputs[0] == outputs[1]
