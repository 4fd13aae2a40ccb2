import pytest

from turingcat.cli import main, read_stream
from turingcat.machine import MachineCode, SUCCESSOR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, [line.split("\t") for line in out.out.splitlines()], out.err


@pytest.fixture
def stream_file(tmp_path):
    p = tmp_path / "s.stream"
    p.write_text("# toy\n+ 0 = 0\n- 1 = 0\ntail:\n+ 1 + 1 = 2\n")
    return p


def test_run(capsys, tmp_path):
    src = tmp_path / "inc.rm"
    src.write_text("INC 0\nHALT 0\n")
    assert run(capsys, "run", "--program", str(src), "--input", "4")[:2] == (0, [["0", "5", "", "halted"]])
    n = str(MachineCode.of(SUCCESSOR).number)
    assert run(capsys, "run", "--code", n, "--input", "1")[1][0][1] == "2"


def test_run_out_of_fuel(capsys, tmp_path):
    src = tmp_path / "slow.rm"
    src.write_text("L: INC 1\nDECJZ 0 E\nJMP L\nE: HALT 1\n")
    code, recs, _ = run(capsys, "run", "--program", str(src), "--input", "1000", "--fuel", "50")
    assert code == 1 and "no answer" in recs[0][3]


def test_encode_and_decode(capsys):
    assert run(capsys, "encode", "--scheme", "product", "--values", "2", "1")[1][0][1] == "12"
    assert run(capsys, "encode", "--scheme", "sum", "--values", "left", "3")[1][0][1] == "16"
    assert run(capsys, "encode", "--encoding", "pair(nat,nat)", "--value", "(1, 2)")[1][0][1] == "9"
    assert run(capsys, "decode", "--scheme", "list", "--code", "144")[1][0][1] == "[3, 1]"
    assert run(capsys, "decode", "--encoding", "prod(nat,nat)", "--code", "5")[1][0][3] == "not in image"


def test_encode_sample_is_seeded(capsys):
    a = run(capsys, "encode", "--encoding", "list(nat)", "--sample", "5", "--seed", "3")[1]
    b = run(capsys, "encode", "--encoding", "list(nat)", "--sample", "5", "--seed", "3")[1]
    assert a == b and len(a) == 5


def test_stabilize(capsys, stream_file):
    code, recs, _ = run(capsys, "stabilize", "--stream", str(stream_file), "--horizon", "30")
    assert code == 0
    assert [r[1] for r in recs if r[0] == "end"] == ["0 = 0", "1 + 1 = 2"]


def test_read_stream_formats(tmp_path):
    p = tmp_path / "f.stream"
    p.write_text("+ 0 = 0\n")
    assert list(read_stream(str(p))) == [0]
    p.write_text("")
    assert read_stream(str(p)) == {}


def test_dio(capsys, tmp_path):
    polys = tmp_path / "polys.txt"
    polys.write_text("x^2 + 1\nx - 3\n")
    code, recs, _ = run(capsys, "dio", "--poly", str(polys), "--horizon", "60")
    assert code == 0
    got = {r[1]: r[3] for r in recs}
    assert got["x^2 + 1"] == "plus-stable-so-far"
    assert got["x - 3"].startswith("refuted-at(")


def test_closure(capsys, tmp_path):
    ax = tmp_path / "ax.txt"
    ax.write_text("p\np -> q\n")
    code, recs, _ = run(capsys, "closure", "--axioms", str(ax), "--steps", "2")
    assert [r[1] for r in recs] == ["p", "p -> q", "q"]
    assert all(r[3].endswith("checks") for r in recs)


def test_spec(capsys, stream_file):
    code, recs, _ = run(capsys, "spec", "--enumerator", str(stream_file), "--horizon", "5")
    assert code == 0
    assert [r[3].split()[0] for r in recs] == ["J", "stream"] * 3
    assert recs[1][1:3] == ["0 = 0", "+"]


def test_goedel(capsys, stream_file):
    code, recs, _ = run(capsys, "goedel", "--enumerator", str(stream_file), "--emit", "certificate")
    assert code == 0
    assert recs[0][1].startswith("forall m. exists n.")
    assert recs[1][3] == "Sigma2 negation"


def test_eval(capsys):
    assert run(capsys, "eval", "--sentence", "exists m < 5. m + m = 4")[1][0][1] == "true"
    assert run(capsys, "eval", "--sentence", "exists m. m = m")[0] == 2


@pytest.mark.parametrize("argv", [
    ["bogus"], ["run", "--bogus"], ["encode", "--encoding", "zz(nat)", "--value", "1"],
    ["eval", "--sentence", "forall"], ["run", "--code", "5"], ["stabilize", "--stream", "/nonexistent"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_output_file(capsys, tmp_path):
    out = tmp_path / "o.tsv"
    assert main(["eval", "--sentence", "0 = 0", "--output", str(out)]) == 0
    assert out.read_text() == "0\ttrue\t\t\n"
