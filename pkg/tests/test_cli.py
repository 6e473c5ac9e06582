import csv
import io
import json

import pytest

from mec.cli import main
from mec.experiment import CSV_COLUMNS, evaluate_instance, run_campaign, summarize, to_csv
from mec.graph import path_graph, star_graph

PATH = "5 4\n0 1 100\n1 2 1\n2 3 1\n3 4 100\n"


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text(PATH)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_best(capsys, path_file):
    code, out, _ = run(capsys, "solve", path_file, "--alg", "best")
    d = json.loads(out)
    assert code == 0
    assert (d["total"], d["chosen"]) == (102, "KK")
    assert d["y_profile"] == [100, 1] and d["lower_bound"] == 101


def test_solve_flags(capsys, path_file):
    code, out, _ = run(capsys, "solve", "--input", path_file, "--alg", "alg1", "--root", 4)
    assert code == 0 and json.loads(out)["root"] == 4
    code, out, _ = run(capsys, "solve", path_file, "--alg", "kk", "--format", "text")
    assert code == 0 and "total: 102" in out


def test_solve_exact_single_edge(capsys, tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("2 1\n0 1 9\n")
    code, out, _ = run(capsys, "solve", p, "--alg", "exact")
    assert code == 0 and json.loads(out)["opt"] == 9


def test_exit_codes(capsys, tmp_path, path_file, monkeypatch):
    nt = tmp_path / "nt.txt"
    nt.write_text("4 2\n0 1 1\n2 3 1\n")
    assert run(capsys, "solve", nt, "--alg", "alg1")[0] == 2
    assert run(capsys, "solve", nt, "--alg", "best")[0] == 2
    assert run(capsys, "solve", nt, "--alg", "kk")[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1 4\n0 1 7\n")
    assert run(capsys, "solve", bad)[0] == 1
    assert run(capsys, "solve", tmp_path / "missing.txt")[0] == 1
    assert run(capsys, "solve", path_file, "--alg", "exact", "--budget", 1)[0] == 3
    monkeypatch.setenv("MEC_ORACLE_BUDGET", "1")
    assert run(capsys, "solve", path_file, "--alg", "exact")[0] == 3


def test_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--family", "alg1-worst", "--C", 100, "--eps", 1)
    assert code == 0 and out == PATH
    out_file = tmp_path / "r.txt"
    assert run(capsys, "gen", "--n", 7, "--seed", 3, "--output", out_file)[0] == 0
    assert out_file.read_text().startswith("7 6\n")
    assert run(capsys, "gen", "--family", "alg1-worst", "--C", 1, "--eps", 1)[0] == 1


def test_verify(capsys, tmp_path, path_file):
    sol = tmp_path / "s.txt"
    sol.write_text("0 3\n1\n2\n")
    code, out, _ = run(capsys, "verify", path_file, "--solution", sol, "--with-oracle")
    d = json.loads(out)
    assert code == 0 and d["valid"] and d["opt"] == 102 and d["total"] == 102
    assert all(d["checks"].values())
    sol.write_text("0 1\n2 3\n")
    code, out, _ = run(capsys, "verify", path_file, "--solution", sol)
    assert code == 5 and json.loads(out)["violation"]["kind"] == "non-matching"
    sol.write_text("0 3\n1\n")
    assert run(capsys, "verify", path_file, "--solution", sol)[0] == 5
    sol.write_text("0 3\n1\n2 9\n")
    assert run(capsys, "verify", path_file, "--solution", sol)[0] == 5


def test_star_record():
    rec = evaluate_instance(star_graph([7, 5, 2]), with_oracle=True)
    assert (rec.w_alg1, rec.w_kk, rec.opt, rec.lower_bound) == (14, 14, 14, 14)
    assert all(rec.checks.values())


def test_path_record_without_oracle():
    rec = evaluate_instance(path_graph([100, 1, 1, 100]))
    row = rec.row()
    assert row["opt"] == "" and row["ratio_best_opt"] == "" and row["oracle_status"] == "off"
    assert row["ratio_best_lb"] == "1.009901"
    assert row["chk_prop2"] == "pass" and row["chk_thm1"] == "na"


def test_experiment_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["experiment", "--trials", 30, "--nmax", 8, "--wmax", 5, "--seed", 11, "--with-oracle"]
    assert run(capsys, *args, "--output", a)[0] == 0
    assert run(capsys, *args, "--output", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(io.StringIO(a.read_text())))
    assert list(rows[0]) == CSV_COLUMNS and len(rows) == 30
    summary = json.loads(a.with_suffix(".summary.json").read_text())
    assert summary["violation_count"] == 0 and summary["oracle_solved"] == 30
    best = [float(r["ratio_best_opt"]) for r in rows]
    assert summary["ratio_best_opt"]["max"] == max(best)
    assert summary["ratio_best_opt"]["mean"] == pytest.approx(sum(best) / len(best), abs=1e-6)
    lb = [float(r["ratio_best_lb"]) for r in rows]
    assert summary["ratio_best_lb"]["max"] == max(lb)


def test_experiment_row_rerun():
    # trial i uses seed ^ i, so a single row can be reproduced alone
    full = run_campaign(12, 2, 9, 1, 5, seed=99, with_oracle=True)
    again = run_campaign(12, 2, 9, 1, 5, seed=99, with_oracle=True)
    assert to_csv(full) == to_csv(again)
    assert all(r.seed == 99 ^ r.trial for r in full)


def test_experiment_oracle_cap(capsys):
    assert run(capsys, "experiment", "--trials", 2, "--nmax", 20, "--with-oracle")[0] == 1


def test_experiment_budget_skip():
    recs = run_campaign(20, 8, 10, 1, 9, seed=5, with_oracle=True, budget=2)
    s = summarize(recs, True)
    assert s["oracle_skipped"] > 0 and s["violation_count"] == 0
    assert s["oracle_skipped"] + s["oracle_solved"] == 20


def test_search_cli(capsys, caplog, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", "--levels", "1", "--max-edges", 5, "--samples", 30, "--steps", 30, "--output", out)
    assert code == 0 and json.loads(out.read_text())["ratio"] == 1.0
    code, stdout, err = run(capsys, "search", "--budget", 0)
    assert code == 0 and json.loads(stdout)["budget_exhausted"]
    assert "best effort" in caplog.text


def test_search_violation_exit(capsys, tmp_path, monkeypatch):
    from fractions import Fraction

    import mec.cli as cli
    from mec.graph import path_graph as pg
    from mec.instances import TheoremViolation

    def fake(*a, **k):
        raise TheoremViolation(pg([3, 1]), Fraction(8, 5))

    monkeypatch.setattr(cli, "search_combined_worst", fake)
    out = tmp_path / "s.json"
    assert run(capsys, "search", "--output", out)[0] == 4
    assert (tmp_path / "s.counterexample.txt").read_text() == "3 2\n0 1 3\n1 2 1\n"


def test_experiment_campaign_500(capsys, tmp_path):
    out = tmp_path / "c.csv"
    argv = ["experiment", "--trials", 500, "--nmax", 9, "--wmin", 1, "--wmax", 5, "--seed", 2024, "--with-oracle"]
    assert run(capsys, *argv, "--output", out)[0] == 0
    summary = json.loads(out.with_suffix(".summary.json").read_text())
    assert summary["violation_count"] == 0
    assert summary["oracle_solved"] == 500
    assert summary["ratio_best_opt"]["max"] <= 1.5
