"""Command-line interface: commands, formats, exit codes."""

import csv

import pytest

from feedalloc import cli, core
from feedalloc.core import Allocation, ProblemInstance


def _write_inst(tmp_path, name="inst.txt", n=3, m=4, q=0.1, edges=None):
    if edges is None:
        edges = [(1, 1, 5.0), (2, 2, 3.0), (3, 4, 7.0), (1, 3, 2.0)]
    inst = ProblemInstance(num_ads=n, num_slots=m, quit_prob=q,
                           edges=tuple(edges))
    path = tmp_path / name
    core.write_instance(inst, path)
    return inst, str(path)


def test_gen_writes_readable_instance(tmp_path, capsys):
    out = tmp_path / "gen.txt"
    code = cli.main(["gen", "--scheme", "symmetric", "--n", "4", "--m", "6",
                     "--q", "0.2", "--seed", "3", "--out", str(out)])
    assert code == cli.EXIT_OK
    assert "n=4 m=6" in capsys.readouterr().out
    inst = core.read_instance(out)
    assert inst.num_ads == 4 and inst.num_slots == 6
    assert core.validate_instance(inst) == []


def test_solve_reports_reward_and_writes_allocation(tmp_path, capsys):
    inst, path = _write_inst(tmp_path)
    alloc_out = tmp_path / "alloc.txt"
    code = cli.main(["solve", path, "gb", "--out-allocation", str(alloc_out)])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "algorithm=gb" in out and "reward=" in out
    alloc = core.read_allocation(alloc_out)
    assert core.validate_allocation(inst, alloc) == []


def test_solve_all_registered_algorithms(tmp_path):
    _inst, path = _write_inst(tmp_path)
    for name in cli.SOLVERS:
        assert cli.main(["solve", path, name]) == cli.EXIT_OK


def test_solve_with_k_prunes(tmp_path, capsys):
    _inst, path = _write_inst(tmp_path)
    assert cli.main(["solve", path, "gb", "--k", "1"]) == cli.EXIT_OK
    assert "size=1" in capsys.readouterr().out


def test_solve_invalid_instance_exits_2(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2 1.5\n1 1 1.0\n")
    assert cli.main(["solve", str(bad), "gb"]) == cli.EXIT_VALIDATION


def test_missing_file_exits_2(tmp_path):
    assert cli.main(["solve", str(tmp_path / "none.txt"), "gb"]) \
        == cli.EXIT_VALIDATION


def test_usage_error_exits_1(tmp_path):
    _inst, path = _write_inst(tmp_path)
    assert cli.main(["solve", path, "definitely-not-a-solver"]) \
        == cli.EXIT_USAGE
    assert cli.main(["frobnicate"]) == cli.EXIT_USAGE


def test_oracle_guard_exits_3(tmp_path):
    edges = [(i, j, 1.0) for i in range(1, 10) for j in range(1, 10)]
    _inst, path = _write_inst(tmp_path, n=9, m=9, edges=edges)
    assert cli.main(["solve", path, "bruteforce"]) == cli.EXIT_GUARD


def test_verify_reports_residual_and_simulation(tmp_path, capsys):
    inst, path = _write_inst(tmp_path)
    alloc = Allocation(entries=((1, 1), (2, 2)))
    alloc_path = tmp_path / "alloc.txt"
    core.write_allocation(alloc, alloc_path)
    code = cli.main(["verify", path, str(alloc_path), "--simulate", "1000"])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "decomposition_residual=" in out
    assert "simulated_mean=" in out


def test_verify_rejects_invalid_allocation(tmp_path):
    _inst, path = _write_inst(tmp_path)
    alloc_path = tmp_path / "alloc.txt"
    alloc_path.write_text("1 2\n")  # no edge (ad 2, slot 1)
    assert cli.main(["verify", path, str(alloc_path)]) == cli.EXIT_VALIDATION


def test_bench_writes_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    summary = tmp_path / "summary.csv"
    code = cli.main(["bench", "--schemes", "symmetric,finely_targeted",
                     "--algorithms", "gbp,forward", "--seeds", "1,2",
                     "--n", "5", "--m", "10", "--q", "0.1",
                     "--out", str(out), "--summary-out", str(summary)])
    assert code == cli.EXIT_OK
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2 * 2 * 2
    assert set(rows[0]) == set(cli.BENCH_COLUMNS)
    assert all(row["status"] == "ok" for row in rows)
    with open(summary, newline="") as fh:
        srows = list(csv.DictReader(fh))
    assert len(srows) == 4  # scheme x algorithm groups


def test_bench_suite_config_file(tmp_path):
    suite = tmp_path / "suite.cfg"
    suite.write_text("schemes=symmetric\nalgorithms=forward\nseeds=1\n"
                     "n=4\nm=6\nq=0.2\n")
    out = tmp_path / "bench.csv"
    assert cli.main(["bench", "--suite", str(suite), "--out", str(out)]) \
        == cli.EXIT_OK
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    assert rows[0]["scheme"] == "symmetric"
    assert rows[0]["m"] == "6"


def test_bench_rejects_unknown_names(tmp_path):
    out = tmp_path / "bench.csv"
    assert cli.main(["bench", "--algorithms", "nope", "--out", str(out)]) \
        == cli.EXIT_USAGE
    assert cli.main(["bench", "--schemes", "nope", "--out", str(out)]) \
        == cli.EXIT_USAGE


def test_slots_cdf(tmp_path, capsys):
    inst, path = _write_inst(tmp_path)
    alloc = Allocation(entries=((1, 1), (4, 3)))
    alloc_path = tmp_path / "alloc.txt"
    core.write_allocation(alloc, alloc_path)
    out = tmp_path / "cdf.csv"
    assert cli.main(["slots-cdf", path, str(alloc_path), "--out", str(out)]) \
        == cli.EXIT_OK
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == inst.num_slots
    assert float(rows[0]["cdf"]) == pytest.approx(0.5)
    assert float(rows[-1]["cdf"]) == pytest.approx(1.0)
