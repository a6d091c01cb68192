"""Command-line interface: solve, enumerate, bench."""

import csv
import os

import pytest

from enuminst.cli import main
from enuminst.corpus import toy_problem, trans_chain, two_rail


@pytest.fixture
def toy_path(tmp_path):
    path = tmp_path / "toy.smt2"
    path.write_text(toy_problem())
    return str(path)


@pytest.fixture
def mini_corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    for name, text in [("toy", toy_problem()), ("chain2", trans_chain(2)),
                       ("rail1", two_rail(1)), ("rail2", two_rail(2))]:
        (d / (name + ".smt2")).write_text(text)
    return str(d)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- solve -------------------------------------------------------------------

def test_solve_toy_default_strategy(toy_path, capsys):
    code, out, _ = run(capsys, "solve", toy_path, "--strategy", "u")
    assert code == 0
    assert out == "unsat\n"


def test_solve_toy_random_walk(toy_path, capsys):
    code, out, _ = run(capsys, "solve", toy_path, "--strategy", "rwlk:7")
    assert code == 0
    assert out == "unsat\n"


def test_solve_stats_block_on_stderr(toy_path, capsys):
    code, out, err = run(capsys, "solve", toy_path, "--stats")
    assert code == 0
    assert out == "unsat\n"
    fields = dict(line.split("=") for line in err.strip().splitlines())
    assert fields["rounds"] == "1"
    assert fields["instances"] == "1"


def test_solve_missing_file(capsys):
    code, out, err = run(capsys, "solve", "/nonexistent/x.smt2")
    assert code == 2
    assert "error" in err


def test_solve_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.smt2"
    path.write_text("(assert (P a))")
    code, _, err = run(capsys, "solve", str(path))
    assert code == 2
    assert "error" in err


def test_solve_unknown_strategy(toy_path, capsys):
    code, _, err = run(capsys, "solve", toy_path, "--strategy", "zigzag")
    assert code == 2


def test_solve_max_rounds_unknown(tmp_path, capsys):
    path = tmp_path / "chain.smt2"
    path.write_text(trans_chain(3))
    code, out, _ = run(capsys, "solve", str(path), "--max-rounds", "1")
    assert code == 0
    assert out == "unknown\n"


# -- enumerate ----------------------------------------------------------------

def test_enumerate_leximax_prefix(capsys):
    code, out, _ = run(capsys, "enumerate", "--vars", "2", "--max", "2",
                       "--strategy", "lmax", "--limit", "6")
    assert code == 0
    assert out.splitlines() == ["0,0", "0,1", "1,0", "1,1", "0,2", "2,0"]


def test_enumerate_iterative_deepening_sequence(capsys):
    code, out, _ = run(capsys, "enumerate", "--vars", "2", "--max", "2",
                       "--strategy", "id:2", "--limit", "6")
    assert code == 0
    assert out.splitlines() == ["0,0", "0,1", "0,2", "1,1", "1,0", "2,0"]


def test_enumerate_zero_limit(capsys):
    code, out, _ = run(capsys, "enumerate", "--vars", "2", "--max", "2",
                       "--strategy", "u", "--limit", "0")
    assert code == 0
    assert out == ""


def test_enumerate_heterogeneous_bounds(capsys):
    code, out, _ = run(capsys, "enumerate", "--vars", "2", "--bounds", "1,0",
                       "--strategy", "u", "--limit", "10")
    assert code == 0
    assert out.splitlines() == ["0,0", "1,0"]


def test_enumerate_malformed_bounds(capsys):
    code, _, err = run(capsys, "enumerate", "--vars", "3", "--bounds", "1,2",
                       "--strategy", "u", "--limit", "5")
    assert code == 2
    code, _, err = run(capsys, "enumerate", "--vars", "2", "--bounds", "1,x",
                       "--strategy", "u", "--limit", "5")
    assert code == 2
    code, _, err = run(capsys, "enumerate", "--vars", "2", "--strategy", "u",
                       "--limit", "5")
    assert code == 2


# -- bench ---------------------------------------------------------------------

def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_bench_csv_shape(mini_corpus, tmp_path, capsys):
    out_csv = str(tmp_path / "out.csv")
    code, _, _ = run(capsys, "bench", mini_corpus, "--strategies", "u,sum,lmax",
                     "--csv", out_csv)
    assert code == 0
    rows = read_csv(out_csv)
    assert rows[0] == ["problem", "strategy", "failmask", "verdict", "rounds",
                       "instances", "tuples", "redundant_dup", "redundant_ent",
                       "redundant_rw", "patterns", "masked_skips", "time_ms"]
    assert len(rows) == 1 + 4 * 3
    for row in rows[1:]:
        assert row[3] in ("unsat", "unknown", "timeout")


def test_bench_scatter_file(mini_corpus, tmp_path, capsys):
    out_csv = str(tmp_path / "out.csv")
    scatter = str(tmp_path / "scatter.csv")
    code, _, _ = run(capsys, "bench", mini_corpus,
                     "--strategies", "u,u-no-failmask",
                     "--csv", out_csv, "--scatter", "u,u-no-failmask", scatter)
    assert code == 0
    rows = read_csv(scatter)
    assert rows[0] == ["problem", "time_a_ms", "time_b_ms"]
    assert len(rows) == 1 + 4
    csv_rows = read_csv(out_csv)
    masks = {row[2] for row in csv_rows[1:]}
    assert masks == {"0", "1"}


def test_bench_jobs_same_content(mini_corpus, tmp_path, capsys):
    a = str(tmp_path / "a.csv")
    b = str(tmp_path / "b.csv")
    assert run(capsys, "bench", mini_corpus, "--strategies", "u,lmax",
               "--csv", a, "--jobs", "1")[0] == 0
    assert run(capsys, "bench", mini_corpus, "--strategies", "u,lmax",
               "--csv", b, "--jobs", "2")[0] == 0

    def strip_times(path):
        return [row[:-1] for row in read_csv(path)]

    assert strip_times(a) == strip_times(b)


def test_bench_unreadable_directory(tmp_path, capsys):
    code, _, err = run(capsys, "bench", str(tmp_path / "nope"),
                       "--strategies", "u", "--csv", str(tmp_path / "x.csv"))
    assert code == 2
