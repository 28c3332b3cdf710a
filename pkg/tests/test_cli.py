import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from kwisecover.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, dump_json, main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), out


@pytest.mark.parametrize(
    "argv",
    [
        ("delta-star", "--n", "24", "--k", "3"),
        ("constants",),
        ("lebesgue", "--chebyshev", "10"),
        ("bounds", "127", "9"),
        ("construct", "--n", "12", "--k", "2", "--radius", "3"),
        ("certify", "--n", "1000", "--k", "3"),
    ],
)
def test_json_round_trip_and_top_level_keys(capsys, argv):
    _, report, raw = run_json(capsys, *argv)
    assert set(report) == {"config", "result", "conditions", "timing"}
    assert dump_json(report) == raw.rstrip("\n")
    assert report["config"]["seed"] == 0


def test_delta_star_single_row(capsys):
    code, report, _ = run_json(capsys, "delta-star", "--n", "24", "--k", "3")
    assert code == EXIT_OK
    (row,) = report["result"]["rows"]
    assert row["delta_star_window"] == "3" and row["n"] == 24 and row["k"] == 3


def test_delta_star_csv_range_monotone(capsys):
    code, out, _ = run(capsys, "delta-star", "--n", "10:30", "--k", "1:4", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0])[:5] == ["n", "k", "delta_star_window", "tietavainen_lb", "tietavainen_ub"]
    assert len(rows) == 21 * 4
    by_n = {}
    for r in rows:
        by_n.setdefault(int(r["n"]), []).append(Fraction(r["delta_star_window"]))
    for vals in by_n.values():
        assert vals == sorted(vals)


def test_delta_star_rejects_k_ge_n(capsys):
    code, _, err = run(capsys, "delta-star", "--n", "5", "--k", "5")
    assert code == EXIT_USAGE and "k" in err


def test_certify_defaults_echoed(capsys):
    code, report, _ = run_json(capsys, "certify", "--n", "1000", "--k", "3")
    cfg = report["config"]
    assert (cfg["alpha"], cfg["beta"], cfg["eps"]) == (0.93, 0.5204, 0.004)
    assert code == EXIT_FAIL
    assert report["result"]["verdict"] == "NotCertified"


def test_certify_exact_refused_without_force(capsys):
    code, _, err = run(capsys, "certify", "--n", "100000", "--k", "3", "--nu-mode", "exact")
    assert code == EXIT_USAGE and "force" in err


def test_certify_fixture_exits_zero(capsys):
    code, report, _ = run_json(capsys, "certify", "--n", str(2**61), "--k", "738")
    assert code == EXIT_OK
    assert report["result"]["verdict"] == "Certified"


def test_certify_sweep_json_lines(capsys):
    code, out, _ = run(capsys, "certify", "--sweep-m", "40:42", "--format", "json", "--jobs", "1")
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 3
    assert [l["result"]["n"] for l in lines] == [2**m for m in (40, 41, 42)]
    assert all(l["config"]["sweep_m"] == [40, 41, 42] for l in lines)
    assert code == EXIT_FAIL


def test_construct_fractions_and_verification(capsys):
    code, report, _ = run_json(capsys, "construct", "--n", "12", "--k", "2", "--radius", "3")
    assert code == EXIT_OK
    dist = report["result"]["distribution"]
    assert all("." not in v for v in dist.values())
    assert sum(Fraction(v) for v in dist.values()) == 1
    assert "verification" in report["result"]
    code, report, _ = run_json(capsys, "construct", "--n", "16", "--k", "2", "--radius", "3")
    assert code == EXIT_OK and "verification" not in report["result"]


def test_construct_smallest_fixture(capsys):
    code, report, _ = run_json(capsys, "construct", "--n", "5", "--k", "1", "--radius", "1")
    assert code == EXIT_OK
    assert report["result"]["distribution"] == {"2": "1/2", "3": "1/2"}


def test_construct_infeasible_prints_polynomial(capsys):
    code, out, _ = run(capsys, "construct", "--n", "8", "--k", "3", "--radius", "4")
    assert code == EXIT_FAIL
    assert "31/56" in out


def test_constants_values(capsys):
    code, report, _ = run_json(capsys, "constants")
    r = report["result"]
    assert code == EXIT_OK
    assert abs(r["alpha_star"] - 0.9232) <= 0.002
    assert abs(r["h_default"] - 0.9299) <= 0.001


def test_lebesgue_value_and_bound(capsys):
    code, report, _ = run_json(capsys, "lebesgue", "--chebyshev", "10")
    r = report["result"]
    assert code == EXIT_OK and r["lambda"] < r["bound"] and r["slack"] > 0


def test_lebesgue_node_file_error_line(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("# n=10 k=2\n1\n5\nseven\n")
    code, _, err = run(capsys, "lebesgue", "--nodes", str(f))
    assert code == EXIT_USAGE and "line 4" in err


def test_lebesgue_node_file_ok(capsys, tmp_path):
    f = tmp_path / "ok.txt"
    f.write_text("# n=10 k=2\n2\n5\n8\n")
    code, report, _ = run_json(capsys, "lebesgue", "--nodes", str(f))
    assert code == EXIT_OK and report["result"]["lambda"] == pytest.approx(1.25)


def test_bounds_side_by_side(capsys):
    code, report, _ = run_json(capsys, "bounds", "127", "9")
    r = report["result"]
    assert code == EXIT_OK
    assert r["tietavainen_upper"] == pytest.approx(54.8256, abs=1e-4)
    assert r["bch_style_lower"] < r["tietavainen_upper"]


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "delta-star", "--n", "x", "--k", "1")[0] == EXIT_USAGE
    assert run(capsys, "bounds", "10", "1")[0] == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kwisecover", "bounds", "127", "9"], capture_output=True, text=True)
    assert proc.returncode == 0 and "54.82" in proc.stdout
