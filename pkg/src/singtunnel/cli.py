"""Command line front end: point runs, sweeps, pinned figure data, cutoff
runs, and the self-test battery.

Exit codes: 0 success, 2 usage, 3 undetermined result, 4 numeric failure.
All data goes to stdout (CSV or JSON, LF endings, round-trip float
formatting); diagnostics go to stderr.  Output bytes are a pure function
of the invocation.
"""

from __future__ import annotations

import argparse
import enum
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import coulomb, highorder, mild, oracle, regimes, specfun
from .errors import DomainError, SingTunnelError
from .regimes import PotentialSpec
from .results import Status

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNDETERMINED = 3
EXIT_NUMERIC = 4


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


class GridKind(enum.Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class SweepRequest:
    spec: PotentialSpec
    e_min: float
    e_max: float
    points: int
    grid: GridKind = GridKind.LINEAR

    def __post_init__(self):
        if not 0.0 < self.e_min < self.e_max:
            raise DomainError(
                f"need 0 < e_min < e_max, got ({self.e_min}, {self.e_max})"
            )
        if self.points < 2:
            raise DomainError(f"need at least 2 points, got {self.points}")

    def energies(self) -> np.ndarray:
        if self.grid is GridKind.LOG:
            return np.logspace(
                math.log10(self.e_min), math.log10(self.e_max), self.points
            )
        return np.linspace(self.e_min, self.e_max, self.points)


class FigureId(enum.Enum):
    FIG1 = "fig1"  # u0 = +1, alpha = 0.25, energy sweep
    FIG2 = "fig2"  # u0 = -1, alpha = 0.25, energy sweep
    FIG3 = "fig3"  # eps = 1, alpha = 0.25, strength sweep over [-5, 5]
    FIG4 = "fig4"  # alpha = 1, u0 = +-1, log energy sweep


def _sweep_rows(spec: PotentialSpec, energies) -> tuple[list, bool]:
    """(rows, any_error); row = (epsilon, T or None, R or None, status str)."""
    rows = []
    errored = False
    for e in energies:
        e = float(e)
        try:
            res = regimes.transmission_any(spec, e)
            rows.append((e, res.T, res.R, str(res.status)))
        except SingTunnelError:
            rows.append((e, None, None, "Error"))
            errored = True
    return rows, errored


def _emit_csv(header: str, rows, out) -> None:
    pieces = [header]
    for row in rows:
        cells = []
        for cell in row:
            if cell is None:
                cells.append("")
            elif isinstance(cell, str):
                cells.append(cell)
            else:
                cells.append(_fmt(cell))
        pieces.append(",".join(cells))
    out.write("\n".join(pieces) + "\n")


def _emit_json(keys, rows, out) -> None:
    records = []
    for row in rows:
        records.append({k: v for k, v in zip(keys, row)})
    out.write(json.dumps(records, indent=2) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_point(args) -> int:
    spec = PotentialSpec(args.u0, args.alpha)
    res = regimes.transmission_any(spec, args.epsilon)
    t = "" if res.T is None else _fmt(res.T)
    r = "" if res.R is None else _fmt(res.R)
    sys.stdout.write(
        f"epsilon={_fmt(args.epsilon)} T={t} R={r} "
        f"status={res.status} regime={spec.regime.value}\n"
    )
    if res.status is Status.UNDETERMINED:
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_sweep(args) -> int:
    request = SweepRequest(
        spec=PotentialSpec(args.u0, args.alpha),
        e_min=args.emin,
        e_max=args.emax,
        points=args.points,
        grid=GridKind(args.grid),
    )
    rows, errored = _sweep_rows(request.spec, request.energies())
    if args.format == "json":
        _emit_json(("epsilon", "T", "R", "status"), rows, sys.stdout)
    else:
        _emit_csv("epsilon,T,R,status", rows, sys.stdout)
    return EXIT_NUMERIC if errored else EXIT_OK


def cmd_figure(args) -> int:
    fig = FigureId(args.id)
    if fig in (FigureId.FIG1, FigureId.FIG2):
        u0 = 1.0 if fig is FigureId.FIG1 else -1.0
        spec = PotentialSpec(u0, 0.25)
        energies = np.logspace(-6.0, 2.0, 500)
        rows, errored = _sweep_rows(spec, energies)
        keys, header = ("epsilon", "T", "R", "status"), "epsilon,T,R,status"
    elif fig is FigureId.FIG3:
        rows = []
        errored = False
        for u0 in np.linspace(-5.0, 5.0, 501):
            u0 = float(u0)
            try:
                res = regimes.transmission_any(PotentialSpec(u0, 0.25), 1.0)
                rows.append((u0, res.T, res.R, str(res.status)))
            except SingTunnelError:
                rows.append((u0, None, None, "Error"))
                errored = True
        keys, header = ("u0", "T", "R", "status"), "u0,T,R,status"
    else:
        energies = np.logspace(-4.0, 2.0, 4000)
        rows = []
        errored = False
        for label, u0 in (("u0=+1", 1.0), ("u0=-1", -1.0)):
            series, err = _sweep_rows(PotentialSpec(u0, 1.0), energies)
            rows.extend((label, *row) for row in series)
            errored = errored or err
        keys = ("series", "epsilon", "T", "R", "status")
        header = "series,epsilon,T,R,status"
    if args.format == "json":
        _emit_json(keys, rows, sys.stdout)
    else:
        _emit_csv(header, rows, sys.stdout)
    return EXIT_NUMERIC if errored else EXIT_OK


def cmd_oracle(args) -> int:
    deltas = tuple(oracle.DEFAULT_DELTAS)
    if args.deltas is not None:
        try:
            deltas = tuple(float(tok) for tok in args.deltas.split(","))
        except ValueError:
            raise DomainError(f"unparseable cutoff list: {args.deltas!r}")
    sweep = oracle.cutoff_sweep(args.u0, args.alpha, args.epsilon, deltas)
    _emit_csv("delta,T", sweep, sys.stdout)
    return EXIT_OK


def _suite_special_functions():
    checks = specfun.selftest()
    return all(ok for _, ok, _ in checks), len(checks)


def _suite_mild():
    count = 0
    rng = np.random.default_rng(20260823)
    for _ in range(100):
        eps = 10.0 ** rng.uniform(-4, 3)
        u0 = rng.uniform(-3, 3) or 1.0
        alpha = rng.uniform(0.05, 0.95)
        amp = mild.amplitudes(eps, u0, alpha)
        if abs(amp.T + amp.R - 1.0) > 1e-10:
            return False, count
        count += 1
    for alpha in (0.25, 0.5):
        e_star = mild.total_reflection_energy(1.0, alpha)
        if mild.transmission(e_star, 1.0, alpha).R < 1.0 - 1e-8:
            return False, count
        count += 1
        lo = mild.transmission(1e-10, 1.0, alpha).T
        if abs(lo - math.cos(math.pi * alpha / 2.0) ** 2) > 1e-4:
            return False, count
        count += 1
    return True, count


def _suite_coulomb():
    count = 0
    from .results import Side

    for eps, u0 in ((1.0, 1.0), (0.5, -2.0)):
        p = coulomb.CoulombParams(eps, u0)
        for m, n in ((1, 2), (2, 2)):
            num = coulomb.current_component(m, n, Side.RIGHT, p)
            closed = coulomb.current_closed(m, n, Side.RIGHT, p)
            if abs(num - closed) > 1e-8 * max(1.0, abs(closed)):
                return False, count
            count += 1
        amps = coulomb.solve_amplitudes(p)
        waves = coulomb.asymptotic_waves(amps, p)
        lhs = abs(waves.incident) ** 2
        rhs = abs(waves.transmitted) ** 2 + abs(waves.reflected) ** 2
        if abs(lhs - rhs) > 1e-8 * lhs:
            return False, count
        count += 1
    t = coulomb.transmission(coulomb.CoulombParams(1.0, 1.0)).T
    if abs(t - 0.0583911644963152) > 1e-10:
        return False, count
    return True, count + 1


def _suite_steep():
    rep = highorder.intermediate_compatibility_check(200)
    if rep.converged != rep.samples or rep.max_right_amplitude > 1e-8:
        return False, 1
    count = 1
    for u0 in (0.25, 0.74):
        if highorder.outgoing_combination_check(u0, 1.0, 100.0) > 1e-6:
            return False, count
        count += 1
    forced = regimes.transmission_any(PotentialSpec(1.0, 1.5), 1.0)
    if forced.status is not Status.FORCED_ZERO:
        return False, count
    return True, count + 1


def _suite_oracle():
    g = oracle.default_grid(1.0, 0.0)
    free = oracle.numerov_scatter(np.zeros(g.n + 1), 1.0, g)
    if abs(free.T - 1.0) > 1e-8:
        return False, 0
    sweep = oracle.cutoff_sweep(1.0, 1.0, 1.0, deltas=(0.2, 0.1, 0.05))
    ts = [T for _, T in sweep]
    if not all(b < a for a, b in zip(ts, ts[1:])):
        return False, 1
    return True, 2


def cmd_selftest(args) -> int:
    suites = (
        ("special-functions", _suite_special_functions),
        ("mild-regime", _suite_mild),
        ("coulomb-regime", _suite_coulomb),
        ("steep-regimes", _suite_steep),
        ("cutoff-oracle", _suite_oracle),
    )
    failed = False
    for name, run in suites:
        ok, count = run()
        sys.stdout.write(f"{name}: {'ok' if ok else 'FAIL'} ({count} checks)\n")
        failed = failed or not ok
    return EXIT_NUMERIC if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singtunnel",
        description=(
            "Transmission through power-law singular potential centers"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="one (u0, alpha, epsilon) evaluation")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="energy sweep at fixed (u0, alpha)")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--grid", choices=("linear", "log"), default="linear")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="data behind a pinned figure")
    p.add_argument("id", choices=tuple(f.value for f in FigureId))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("oracle", help="cutoff-regularized transmission sweep")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--deltas", type=str, default=None,
                   help="comma-separated cutoff widths, strictly decreasing")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="run the built-in invariant battery")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SingTunnelError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
