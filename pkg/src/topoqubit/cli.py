"""Command-line sweep driver.

Four modes, each emitting one flat table (CSV with ``#`` metadata lines, or
JSON with ``meta``/``columns``/``rows``):

* ``nm-scan``      non-Markovianity measures over a (Q, gamma0) grid
* ``corr-series``  correlation measures along a time grid
* ``qfi-series``   both QFI routes along a time grid
* ``state-dump``   full evolved two-qubit state entries along a time grid

Sweep parameters come from an optional JSON spec file plus command-line
overrides; every run echoes its resolved spec into the output metadata so a
table can be reproduced from itself.  Exit codes: 0 success, 2 bad spec,
3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, correlations, dephasing, magnetometry, states
from .errors import ConvergenceError, HorizonWarning, SpecError, TopoqubitError
from .nonmarkov import TimeWindow, blp, lpp

__all__ = [
    "SweepSpec",
    "SeriesTable",
    "parse_spec",
    "run_nm_scan",
    "run_corr_series",
    "run_qfi_series",
    "run_state_dump",
    "main",
]

MODES = ("nm-scan", "corr-series", "qfi-series", "state-dump")

# Default cutoff grid for nm-scan when the spec names none.
DEFAULT_NM_GAMMA0 = (0.01, 0.1, 0.5, 1.0, 1.6, 3.0)

# A BLP measure above this flags the combo as non-Markovian in nm-scan.
_FLAG_THRESHOLD = 1e-10

_SPEC_KEYS = {
    "mode",
    "q_values",
    "gamma0_values",
    "b",
    "theta",
    "t_max",
    "n_grid",
    "format",
    "output_path",
    "parallel",
}


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Resolved sweep parameters for one run."""

    mode: str
    q_values: tuple[float, ...]
    gamma0_values: tuple[float, ...]
    b: float = 1.0
    theta: float = 0.5 * math.pi
    t_max: float | None = None
    n_grid: int = 4096
    format: str = "csv"
    output_path: str | None = None
    parallel: int | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise SpecError(f"mode: expected one of {MODES}, got {self.mode!r}")
        if not self.q_values:
            raise SpecError("q_values: must be a non-empty list")
        for q in self.q_values:
            if not (math.isfinite(q) and q >= 0.0):
                raise SpecError(f"q_values: entries must be finite and >= 0, got {q}")
        if not self.gamma0_values:
            raise SpecError("gamma0_values: must be a non-empty list")
        for g in self.gamma0_values:
            if not (math.isfinite(g) and g > 0.0):
                raise SpecError(f"gamma0_values: entries must be finite and > 0, got {g}")
        if not (math.isfinite(self.b) and self.b >= 0.0):
            raise SpecError(f"b: must be finite and >= 0, got {self.b}")
        if not (0.0 <= self.theta <= math.pi):
            raise SpecError(f"theta: must lie in [0, pi], got {self.theta}")
        if self.t_max is not None and not (math.isfinite(self.t_max) and self.t_max > 0.0):
            raise SpecError(f"t_max: must be finite and > 0, got {self.t_max}")
        if self.n_grid < 16:
            raise SpecError(f"n_grid: must be >= 16, got {self.n_grid}")
        if self.format not in ("csv", "json"):
            raise SpecError(f"format: expected 'csv' or 'json', got {self.format!r}")
        if self.parallel is not None and self.parallel < 1:
            raise SpecError(f"parallel: must be >= 1, got {self.parallel}")

    def echo_dict(self) -> dict:
        """Result-defining parameters, echoed into output metadata.  Execution
        details (parallelism, output path) are excluded so identical physics
        yields identical bytes."""
        return {
            "mode": self.mode,
            "q_values": list(self.q_values),
            "gamma0_values": list(self.gamma0_values),
            "b": self.b,
            "theta": self.theta,
            "t_max": self.t_max,
            "n_grid": self.n_grid,
        }


@dataclass(frozen=True, slots=True)
class SeriesTable:
    """One flat result table plus its metadata."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    meta: dict = field(default_factory=dict)

    def _check_finite(self) -> None:
        for i, row in enumerate(self.rows):
            for name, v in zip(self.columns, row):
                if not math.isfinite(v):
                    raise ConvergenceError(
                        f"non-finite value {v!r} in column {name!r}, row {i}"
                    )

    def to_csv(self, fh) -> None:
        self._check_finite()
        fh.write(f"# tool: topoqubit {__version__}\n")
        fh.write("# spec: " + json.dumps(self.meta.get("spec", {}), sort_keys=True) + "\n")
        fh.write(",".join(self.columns) + "\n")
        for row in self.rows:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")

    def to_json(self, fh) -> None:
        self._check_finite()
        obj = {
            "meta": {"tool": "topoqubit", "version": __version__, "spec": self.meta.get("spec", {})},
            "columns": list(self.columns),
            "rows": [list(row) for row in self.rows],
        }
        json.dump(obj, fh, sort_keys=True)
        fh.write("\n")

    def write(self, fh) -> None:
        if self.meta.get("format", "csv") == "json":
            self.to_json(fh)
        else:
            self.to_csv(fh)


def _as_float_tuple(name: str, value) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise SpecError(f"{name}: expected a list of numbers, got {value!r}")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SpecError(f"{name}: expected numbers, got {v!r}")
        out.append(float(v))
    return tuple(out)


def parse_spec(path: str | None = None, mode: str | None = None, overrides: dict | None = None) -> SweepSpec:
    """Build a SweepSpec from an optional JSON file plus override values.

    The file is a flat JSON object with keys matching SweepSpec fields;
    overrides (typically command-line flags) replace file values.  ``mode``
    given both ways must agree.

    Raises SpecError for malformed content; lets OSError from an unreadable
    path propagate (the CLI maps it to exit code 4).
    """
    data: dict = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec file {path}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise SpecError(f"spec file {path}: expected a JSON object at top level")
        unknown = set(data) - _SPEC_KEYS
        if unknown:
            raise SpecError(f"spec file {path}: unknown keys {sorted(unknown)}")
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})

    file_mode = data.get("mode")
    if mode is not None and file_mode is not None and mode != file_mode:
        raise SpecError(f"mode: spec file says {file_mode!r} but {mode!r} was requested")
    resolved_mode = mode or file_mode
    if resolved_mode is None:
        raise SpecError("mode: not given on the command line or in the spec file")

    if "q_values" not in data:
        raise SpecError("q_values: required (use --q or the spec file)")
    q_values = _as_float_tuple("q_values", data["q_values"])

    if "gamma0_values" in data:
        gamma0_values = _as_float_tuple("gamma0_values", data["gamma0_values"])
    elif resolved_mode == "nm-scan":
        gamma0_values = DEFAULT_NM_GAMMA0
    else:
        raise SpecError("gamma0_values: required (use --gamma0 or the spec file)")

    def _num(name: str, value, default):
        if value is None:
            return default
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SpecError(f"{name}: expected a number, got {value!r}")
        return float(value)

    t_max_raw = data.get("t_max")
    t_max = None if t_max_raw is None else _num("t_max", t_max_raw, None)

    n_grid_raw = data.get("n_grid", 4096)
    if isinstance(n_grid_raw, bool) or not isinstance(n_grid_raw, int):
        raise SpecError(f"n_grid: expected an integer, got {n_grid_raw!r}")

    parallel_raw = data.get("parallel")
    if parallel_raw is not None and (
        isinstance(parallel_raw, bool) or not isinstance(parallel_raw, int)
    ):
        raise SpecError(f"parallel: expected an integer, got {parallel_raw!r}")

    fmt = data.get("format", "csv")
    if not isinstance(fmt, str):
        raise SpecError(f"format: expected a string, got {fmt!r}")

    out_path = data.get("output_path")
    if out_path is not None and not isinstance(out_path, str):
        raise SpecError(f"output_path: expected a string, got {out_path!r}")

    spec = SweepSpec(
        mode=resolved_mode,
        q_values=q_values,
        gamma0_values=gamma0_values,
        b=_num("b", data.get("b"), 1.0),
        theta=_num("theta", data.get("theta"), 0.5 * math.pi),
        t_max=t_max,
        n_grid=n_grid_raw,
        format=fmt,
        output_path=out_path,
        parallel=parallel_raw,
    )
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# Per-combo workers.  Top-level functions taking plain tuples so they pickle
# cleanly into a process pool; each returns the finished rows for one
# (q, gamma0) combination, and combos are reassembled in grid order.
# ---------------------------------------------------------------------------


def _combo_window(g0: float, t_max: float | None, n_grid: int) -> TimeWindow:
    return TimeWindow(t_max if t_max is not None else 100.0 / g0, n_grid)


def _nm_rows(args: tuple) -> list[tuple[float, ...]]:
    q, g0, b, t_max, n_grid = args
    ch = dephasing.DephasingChannel(dephasing.OhmicEnvironment(q, g0), b)
    w = _combo_window(g0, t_max, n_grid)
    n_blp = blp(ch, w)
    n_lpp = lpp(ch, w)
    flag = 1.0 if n_blp > _FLAG_THRESHOLD else 0.0
    return [(q, g0, n_blp, n_lpp, flag)]


def _corr_rows(args: tuple) -> list[tuple[float, ...]]:
    q, g0, b, theta, t_max, n_grid = args
    ch = dephasing.DephasingChannel(dephasing.OhmicEnvironment(q, g0), b)
    w = _combo_window(g0, t_max, n_grid)
    ts = w.times()
    avals, _ = dephasing.alpha_profile(ch, ts)
    rows = []
    for t, a in zip(ts, avals):
        s = states.evolved_x_state(theta, float(a))
        rows.append(
            (
                q,
                g0,
                float(t),
                float(a),
                correlations.concurrence_x(s),
                correlations.discord_x(s),
                correlations.lqu_x(s),
                correlations.tnd_x(s),
                correlations.coherence_l1(s),
            )
        )
    return rows


def _qfi_rows(args: tuple) -> list[tuple[float, ...]]:
    q, g0, b, theta, t_max, n_grid = args
    ch = dephasing.DephasingChannel(dephasing.OhmicEnvironment(q, g0), b)
    w = _combo_window(g0, t_max, n_grid)
    samples = magnetometry.qfi_series(ch, theta, w)
    return [(q, g0, s.t, s.f_closed, s.f_general, s.rel_gap) for s in samples]


def _dump_rows(args: tuple) -> list[tuple[float, ...]]:
    q, g0, b, theta, t_max, n_grid = args
    ch = dephasing.DephasingChannel(dephasing.OhmicEnvironment(q, g0), b)
    w = _combo_window(g0, t_max, n_grid)
    ts = w.times()
    avals, _ = dephasing.alpha_profile(ch, ts)
    rows = []
    for t, a in zip(ts, avals):
        m = states.evolved_x_state(theta, float(a)).matrix
        row = [q, g0, float(t)]
        row.extend(m[i, i].real for i in range(4))
        for i in range(4):
            for j in range(i + 1, 4):
                row.append(m[i, j].real)
                row.append(m[i, j].imag)
        rows.append(tuple(row))
    return rows


_DUMP_COLUMNS = ("rho11", "rho22", "rho33", "rho44") + tuple(
    f"{part}_rho{i + 1}{j + 1}"
    for i in range(4)
    for j in range(i + 1, 4)
    for part in ("re", "im")
)

_RUNNER_TABLE = {
    "nm-scan": (
        _nm_rows,
        ("q", "gamma0", "n_blp", "n_lpp", "critical_flag"),
        False,
    ),
    "corr-series": (
        _corr_rows,
        ("q", "gamma0", "t", "alpha", "concurrence", "discord", "lqu", "tnd", "coherence_l1"),
        True,
    ),
    "qfi-series": (
        _qfi_rows,
        ("q", "gamma0", "t", "f_closed", "f_general", "rel_gap"),
        True,
    ),
    "state-dump": (
        _dump_rows,
        ("q", "gamma0", "t") + _DUMP_COLUMNS,
        True,
    ),
}


def _run_mode(spec: SweepSpec) -> SeriesTable:
    spec.validate()
    worker, columns, takes_theta = _RUNNER_TABLE[spec.mode]
    payloads = []
    for q in spec.q_values:
        for g0 in spec.gamma0_values:
            if takes_theta:
                payloads.append((q, g0, spec.b, spec.theta, spec.t_max, spec.n_grid))
            else:
                payloads.append((q, g0, spec.b, spec.t_max, spec.n_grid))
    n_workers = spec.parallel if spec.parallel is not None else 1
    if n_workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=min(n_workers, len(payloads))) as pool:
            chunks = list(pool.map(worker, payloads))
    else:
        chunks = [worker(p) for p in payloads]
    rows = tuple(row for chunk in chunks for row in chunk)
    meta = {"spec": spec.echo_dict(), "format": spec.format}
    return SeriesTable(columns=columns, rows=rows, meta=meta)


def run_nm_scan(spec: SweepSpec) -> SeriesTable:
    """Non-Markovianity measures for every (Q, gamma0) combination."""
    if spec.mode != "nm-scan":
        raise SpecError(f"mode: expected 'nm-scan', got {spec.mode!r}")
    return _run_mode(spec)


def run_corr_series(spec: SweepSpec) -> SeriesTable:
    """Correlation measures along the time grid for every combination."""
    if spec.mode != "corr-series":
        raise SpecError(f"mode: expected 'corr-series', got {spec.mode!r}")
    return _run_mode(spec)


def run_qfi_series(spec: SweepSpec) -> SeriesTable:
    """Both QFI routes along the time grid for every combination."""
    if spec.mode != "qfi-series":
        raise SpecError(f"mode: expected 'qfi-series', got {spec.mode!r}")
    return _run_mode(spec)


def run_state_dump(spec: SweepSpec) -> SeriesTable:
    """Full evolved state entries along the time grid for every combination."""
    if spec.mode != "state-dump":
        raise SpecError(f"mode: expected 'state-dump', got {spec.mode!r}")
    return _run_mode(spec)


_RUNNERS = {
    "nm-scan": run_nm_scan,
    "corr-series": run_corr_series,
    "qfi-series": run_qfi_series,
    "state-dump": run_state_dump,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoqubit",
        description="Sweep driver for topological-qubit dephasing tables.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    help_by_mode = {
        "nm-scan": "non-Markovianity measures over a (Q, gamma0) grid",
        "corr-series": "correlation measures along a time grid",
        "qfi-series": "quantum Fisher information along a time grid",
        "state-dump": "full evolved two-qubit state along a time grid",
    }
    for mode in MODES:
        p = sub.add_parser(mode, help=help_by_mode[mode])
        p.add_argument("--spec", help="JSON spec file; flags override its values")
        p.add_argument("--q", nargs="+", type=float, help="spectral exponents Q")
        p.add_argument("--gamma0", nargs="+", type=float, help="cutoff rates gamma0")
        p.add_argument("--b", type=float, help="field strength B (default 1.0)")
        p.add_argument("--theta", type=float, help="initial-state angle (default pi/2)")
        p.add_argument("--t-max", type=float, dest="t_max", help="window end (default 100/gamma0)")
        p.add_argument("--n-grid", type=int, dest="n_grid", help="time-grid points (default 4096)")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
        p.add_argument("--parallel", type=int, help="worker processes (default 1)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    args = _build_parser().parse_args(argv)
    warnings.simplefilter("once", HorizonWarning)
    overrides = {
        "q_values": args.q,
        "gamma0_values": args.gamma0,
        "b": args.b,
        "theta": args.theta,
        "t_max": args.t_max,
        "n_grid": args.n_grid,
        "format": args.format,
        "output_path": args.out,
        "parallel": args.parallel,
    }
    t0 = time.monotonic()
    try:
        spec = parse_spec(path=args.spec, mode=args.mode, overrides=overrides)
        table = _RUNNERS[spec.mode](spec)
        if spec.output_path:
            with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
                table.write(fh)
        else:
            table.write(sys.stdout)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3
    except TopoqubitError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    print(f"wall time: {time.monotonic() - t0:.3f} s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
