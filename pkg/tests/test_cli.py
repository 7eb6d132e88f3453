import pytest

from lmesflow.cli import main
from lmesflow.dimacs import parse_dimacs, parse_solution
from lmesflow.instrumentation import parse_report

DIAMOND = "p max 4 5\nn 1 s\nn 4 t\na 1 2 3\na 1 3 2\na 2 4 2\na 3 4 3\na 2 3 1\n"


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "diamond.max"
    path.write_text(DIAMOND)
    return path


@pytest.mark.parametrize("algo, k", [("generic", None), ("lmes", 2), ("enhanced", 8)])
def test_solve_and_verify(tmp_path, instance, capsys, algo, k):
    sol, cnt = tmp_path / "out.sol", tmp_path / "out.cnt"
    argv = ["solve", str(instance), "--algo", algo, "-o", str(sol), "--counters", str(cnt), "--audit"]
    if k:
        argv += ["--k", str(k)]
    assert main(argv) == 0
    value, _ = parse_solution(sol.read_text())
    assert value == 5
    rows = parse_report(cnt.read_text())
    assert rows["algo"] == algo and rows["value"] == "5"
    assert main(["verify", str(instance), str(sol)]) == 0
    assert capsys.readouterr().out.startswith("ok value 5")


def test_verify_rejects_bad_flow(tmp_path, instance, capsys):
    sol = tmp_path / "bad.sol"
    sol.write_text("s 3\nf 1 2 3\nf 2 4 2\n")
    assert main(["verify", str(instance), str(sol)]) == 1
    sol.write_text("s 2\nf 1 2 2\nf 2 4 2\n")
    assert main(["verify", str(instance), str(sol)]) == 1
    assert "not maximum" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["solve", "/nonexistent.max"],
    ["solve", "{inst}", "--algo", "enhanced", "--k", "2"],
    ["solve", "{inst}", "--algo", "lmes", "--k", "3"],
    ["nonsense"],
    ["bench", "--corpus", "{dir}", "--algos", "simplex"],
])
def test_bad_input_exits_2(tmp_path, instance, argv):
    argv = [a.format(inst=instance, dir=tmp_path) for a in argv]
    assert main(argv) == 2


def test_malformed_dimacs_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.max"
    path.write_text("p max 2 1\nn 1 s\nn 2 t\na 1 2 -1\n")
    assert main(["solve", str(path)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_gen_round_trip(tmp_path):
    out = tmp_path / "g.max"
    assert main(["gen", "pathological", "--alpha", "3", "-o", str(out)]) == 0
    net = parse_dimacs(out.read_text())
    assert sorted(net.orig_cap[a] for a in net.input_arcs) == [1, 1, 64, 64]
    assert main(["gen", "random", "--n", "6", "--m", "10", "--U", "9", "-o", str(out)]) == 0
    assert len(parse_dimacs(out.read_text()).input_arcs) == 10


def test_bench_writes_csv(tmp_path, instance):
    out = tmp_path / "b.csv"
    assert main(["bench", "--corpus", str(instance.parent), "--algos", "generic,lmes",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("instance,algo,k,value")
    assert len(lines) == 3 and all(",5," in line for line in lines[1:])


def test_runs_are_byte_identical(tmp_path, instance):
    outs = []
    for i in range(2):
        sol, cnt = tmp_path / f"{i}.sol", tmp_path / f"{i}.cnt"
        assert main(["solve", str(instance), "-o", str(sol), "--counters", str(cnt)]) == 0
        outs.append((sol.read_bytes(), cnt.read_bytes()))
    assert outs[0] == outs[1]
