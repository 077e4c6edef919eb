"""Command line behavior: records, schemas, exit codes, determinism."""

import json
import math

import pytest

from singtunnel import cli, regimes
from singtunnel.errors import ConvergenceError


def run(capsys, argv):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# point
# ---------------------------------------------------------------------------


def test_point_forced_zero(capsys):
    rc, out, _ = run(capsys, ["point", "--u0", "1", "--alpha", "1.5",
                              "--epsilon", "2"])
    assert rc == 0
    assert "T=0 " in out and "R=1 " in out
    assert "status=ForcedZero" in out
    assert "regime=intermediate" in out


def test_point_undetermined_exit_code(capsys):
    rc, out, _ = run(capsys, ["point", "--u0", "-0.1", "--alpha", "2",
                              "--epsilon", "1"])
    assert rc == 3
    assert "status=Undetermined" in out
    assert "T= " in out  # empty T field


def test_point_free_particle(capsys):
    rc, out, _ = run(capsys, ["point", "--u0", "0", "--alpha", "0.5",
                              "--epsilon", "1"])
    assert rc == 0
    assert "T=1 " in out and "status=Computed" in out


def test_point_deep_inverse_square_well_is_usage_error(capsys):
    rc, out, err = run(capsys, ["point", "--u0", "-1", "--alpha", "2",
                                "--epsilon", "1"])
    assert rc == 2
    assert out == ""
    assert "error:" in err


def test_point_guard_band_is_usage_error(capsys):
    rc, _, err = run(capsys, ["point", "--u0", "1", "--alpha", "0.9999995",
                              "--epsilon", "1"])
    assert rc == 2
    assert "error:" in err


def test_point_missing_argument(capsys):
    rc, _, _ = run(capsys, ["point", "--u0", "1", "--alpha", "0.5"])
    assert rc == 2


def test_numeric_failure_exit_code(capsys, monkeypatch):
    def boom(spec, epsilon):
        raise ConvergenceError("synthetic stall")

    monkeypatch.setattr(regimes, "transmission_any", boom)
    rc, _, err = run(capsys, ["point", "--u0", "1", "--alpha", "0.5",
                              "--epsilon", "1"])
    assert rc == 4
    assert "synthetic stall" in err


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

SWEEP_ARGS = ["sweep", "--u0", "1", "--alpha", "0.25",
              "--emin", "0.5", "--emax", "1", "--points", "2"]


def test_sweep_two_points(capsys):
    rc, out, _ = run(capsys, SWEEP_ARGS)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "epsilon,T,R,status"
    assert len(lines) == 3
    for line in lines[1:]:
        eps, t, r, status = line.split(",")
        assert status == "Computed"
        assert abs(float(t) + float(r) - 1.0) <= 1e-10


def test_sweep_round_trip_precision(capsys):
    rc, out, _ = run(capsys, SWEEP_ARGS)
    first = out.splitlines()[1].split(",")
    from singtunnel.regimes import PotentialSpec, transmission_any

    want = transmission_any(PotentialSpec(1.0, 0.25), 0.5)
    assert float(first[1]) == want.T  # 17 significant digits round-trip


def test_sweep_byte_determinism(capsys):
    rc1, out1, _ = run(capsys, SWEEP_ARGS)
    rc2, out2, _ = run(capsys, SWEEP_ARGS)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_sweep_json_format(capsys):
    rc, out, _ = run(capsys, SWEEP_ARGS + ["--format", "json"])
    assert rc == 0
    records = json.loads(out)
    assert len(records) == 2
    assert set(records[0]) == {"epsilon", "T", "R", "status"}
    assert records[0]["status"] == "Computed"


def test_sweep_undetermined_rows(capsys):
    rc, out, _ = run(capsys, ["sweep", "--u0", "-1", "--alpha", "3",
                              "--emin", "0.5", "--emax", "1", "--points", "3"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 4
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[1] == "" and cells[2] == ""
        assert cells[3] == "Undetermined"


def test_sweep_error_rows(capsys):
    # inside the exponent guard band every point fails individually
    rc, out, _ = run(capsys, ["sweep", "--u0", "1", "--alpha", "0.9999995",
                              "--emin", "0.5", "--emax", "1", "--points", "3"])
    assert rc == 4
    for line in out.splitlines()[1:]:
        cells = line.split(",")
        assert cells[1] == "" and cells[2] == ""
        assert cells[3] == "Error"


def test_sweep_usage_errors(capsys):
    bad = [
        ["sweep", "--u0", "1", "--alpha", "0.25", "--emin", "2",
         "--emax", "1", "--points", "5"],
        ["sweep", "--u0", "1", "--alpha", "0.25", "--emin", "0",
         "--emax", "1", "--points", "5"],
        ["sweep", "--u0", "1", "--alpha", "0.25", "--emin", "0.5",
         "--emax", "1", "--points", "1"],
    ]
    for argv in bad:
        rc, _, _ = run(capsys, argv)
        assert rc == 2


def test_sweep_log_grid(capsys):
    rc, out, _ = run(capsys, ["sweep", "--u0", "1", "--alpha", "0.25",
                              "--emin", "0.01", "--emax", "100",
                              "--points", "5", "--grid", "log"])
    eps = [float(line.split(",")[0]) for line in out.splitlines()[1:]]
    assert rc == 0
    ratios = [b / a for a, b in zip(eps, eps[1:])]
    for r in ratios:
        assert abs(r - 10.0) < 1e-9


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


def test_fig1_shape(capsys):
    rc, out, _ = run(capsys, ["figure", "fig1"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "epsilon,T,R,status"
    assert len(lines) == 501
    rows = [line.split(",") for line in lines[1:]]
    assert all(r[3] == "Computed" for r in rows)
    t = [float(r[1]) for r in rows]
    # zero-energy plateau
    assert abs(t[0] - math.cos(math.pi * 0.125) ** 2) < 1e-3
    # full reflection dip followed by a monotone climb to transparency
    dip = t.index(min(t))
    assert min(t) < 1e-6
    for a, b in zip(t[dip:], t[dip + 1:]):
        assert b >= a - 1e-12
    assert t[-1] > 0.99


def test_fig2_shape(capsys):
    rc, out, _ = run(capsys, ["figure", "fig2"])
    lines = out.splitlines()
    assert rc == 0 and len(lines) == 501
    t = [float(line.split(",")[1]) for line in lines[1:]]
    # a well never reflects completely; same zero-energy plateau
    assert min(t) > 1e-3
    assert abs(t[0] - math.cos(math.pi * 0.125) ** 2) < 1e-3


def test_fig3_strength_sweep(capsys):
    rc, out, _ = run(capsys, ["figure", "fig3"])
    lines = out.splitlines()
    assert rc == 0
    assert lines[0] == "u0,T,R,status"
    assert len(lines) == 502
    mid = lines[251].split(",")
    assert float(mid[0]) == 0.0
    assert abs(float(mid[1]) - 1.0) <= 1e-9


def test_fig4_two_series_and_acceleration(capsys):
    rc, out, _ = run(capsys, ["figure", "fig4"])
    lines = out.splitlines()
    assert rc == 0
    assert lines[0] == "series,epsilon,T,R,status"
    assert len(lines) == 8001
    plus = [line for line in lines[1:] if line.startswith("u0=+1,")]
    minus = [line for line in lines[1:] if line.startswith("u0=-1,")]
    assert len(plus) == len(minus) == 4000

    def changes(rows, lo, hi):
        vals = []
        for line in rows:
            cells = line.split(",")
            e, t = float(cells[1]), float(cells[2])
            if lo <= e <= hi:
                vals.append(t - 0.5)
        return sum(1 for a, b in zip(vals, vals[1:]) if a * b < 0)

    n1 = changes(plus, 1e-4, 1e-3)
    n2 = changes(plus, 1e-3, 1e-2)
    n3 = changes(plus, 1e-2, 1e-1)
    assert n1 > n2 > n3


def test_fig4_json(capsys):
    rc, out, _ = run(capsys, ["figure", "fig4", "--format", "json"])
    records = json.loads(out)
    assert rc == 0
    assert len(records) == 8000
    assert set(records[0]) == {"series", "epsilon", "T", "R", "status"}
    assert {r["series"] for r in records} == {"u0=+1", "u0=-1"}


def test_figure_bad_id(capsys):
    rc, _, _ = run(capsys, ["figure", "fig9"])
    assert rc == 2


# ---------------------------------------------------------------------------
# oracle and selftest
# ---------------------------------------------------------------------------


def test_oracle_decreasing(capsys):
    rc, out, _ = run(capsys, ["oracle", "--u0", "1", "--alpha", "1",
                              "--epsilon", "1", "--deltas", "0.2,0.1,0.05"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "delta,T"
    assert len(lines) == 4
    ts = [float(line.split(",")[1]) for line in lines[1:]]
    assert ts[0] > ts[1] > ts[2]


def test_oracle_bad_deltas(capsys):
    rc, _, err = run(capsys, ["oracle", "--u0", "1", "--alpha", "1",
                              "--epsilon", "1", "--deltas", "0.1,0.2"])
    assert rc == 2 and "error:" in err
    rc, _, err = run(capsys, ["oracle", "--u0", "1", "--alpha", "1",
                              "--epsilon", "1", "--deltas", "0.1,abc"])
    assert rc == 2


def test_selftest_passes(capsys):
    rc, out, _ = run(capsys, ["selftest"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 5
    for line in lines:
        assert ": ok (" in line
