"""Command-line front end.

Three subcommands: ``simulate`` writes the full observable time series for one
parameter pair, ``validate`` runs the numerical invariant battery, and
``sweep`` tabulates closed-form extrema and the geodesic efficiency across a
list of drive strengths.

Output is deterministic byte for byte: floats are serialized with 17
significant digits (round-trip exact for IEEE doubles), key order is fixed,
and every randomized check uses a fixed seed.

Exit codes: 0 success, 1 validation failure, 2 configuration or I/O error,
3 numerical failure (singularity, instability, non-convergence).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

from . import dynamics, fields, geometry, validation
from .errors import (
    BlochCurveError,
    DomainError,
    InvalidArgumentError,
    SingularityError,
)

SERIES_COLUMNS = (
    "t", "ax", "ay", "az", "hx", "hy", "hz", "v", "acc",
    "kappa2_closed", "kappa2_bloch", "kappa2_expect", "ratio",
    "eta_se", "arc_length", "beta_phase",
)

SWEEP_COLUMNS = (
    "omega0", "nu0", "v_max", "v_min", "t_vmax", "t_vmin",
    "acc_max", "acc_min", "t_accmax", "t_accmin",
    "kappa2_max", "kappa2_min", "t_k2max", "t_k2min",
    "ratio_max", "ratio_min", "period", "eta_ge",
)

_DEFAULTS = {
    "omega0": 1.0,
    "nu0": 1.0,
    "t_max": 2.0 * math.pi,
    "steps": 6283,
    "format": "csv",
}

_CONFIG_KEYS = ("omega0", "nu0", "t_max", "steps", "out", "format")


@dataclass(frozen=True)
class RunConfig:
    params: fields.ScenarioParams
    grid: dynamics.TimeGrid
    out: str | None = None
    fmt: str = "csv"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise InvalidArgumentError(f"format must be csv or json, got {self.fmt!r}")


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(ns)
        if ns.command == "simulate":
            return cmd_simulate(cfg)
        if ns.command == "validate":
            return cmd_validate(cfg)
        return cmd_sweep(cfg, _parse_nu0_list(ns.nu0_list))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidArgumentError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BlochCurveError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def cmd_simulate(cfg: RunConfig) -> int:
    """Write one row per grid node with every scenario observable."""
    records = geometry.scenario_records(cfg.params, cfg.grid)
    rows = []
    for rec in records:
        a = dynamics.analytic_bloch(cfg.params, rec.t)
        s = fields.two_parameter_field(cfg.params, rec.t)
        rows.append((
            rec.t, a.x, a.y, a.z,
            float(s.h[0]), float(s.h[1]), float(s.h[2]),
            rec.v, rec.acc,
            rec.kappa2_closed, rec.kappa2_bloch, rec.kappa2_expect,
            rec.ratio, rec.eta_se, rec.s, rec.beta,
        ))
    _write_text(cfg.out, _render(rows, SERIES_COLUMNS, cfg.fmt))
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    """Run the invariant battery and print one line per check."""
    results = validation.run_battery(cfg.params, cfg.grid, cfg.tolerances)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  residual {r.residual:.3e}  "
              f"tol {r.tolerance:.1e}  ({r.detail})")
    failures = [r.name for r in results if not r.passed]
    if failures:
        print(f"{len(failures)} of {len(results)} checks failed: {', '.join(failures)}")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def cmd_sweep(cfg: RunConfig, nu0_values: list[float]) -> int:
    """One extrema/efficiency summary row per drive strength, input order."""
    rows = []
    for nu0 in nu0_values:
        params = fields.ScenarioParams(cfg.params.omega0, nu0)
        s = geometry.extrema_summary(params)
        rows.append((
            params.omega0, nu0,
            s.v_max, s.v_min, s.t_vmax, s.t_vmin,
            s.acc_max, s.acc_min, s.t_accmax, s.t_accmin,
            s.kappa2_max, s.kappa2_min, s.t_k2max, s.t_k2min,
            s.ratio_max, s.ratio_min, s.period,
            geometry.geodesic_efficiency(params),
        ))
    _write_text(cfg.out, _render(rows, SWEEP_COLUMNS, cfg.fmt))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochcurve",
        description="Geometry of driven-qubit evolution: speed, curvature, "
                    "efficiencies, and cross-validated dynamics.",
        epilog="Exit codes: 0 ok, 1 failed validation, 2 config/I-O error, "
               "3 numerical failure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = (
        ("simulate", "write the observable time series for one parameter pair"),
        ("validate", "run the numerical invariant battery"),
        ("sweep", "tabulate extrema and geodesic efficiency over drive strengths"),
    )
    for name, help_text in specs:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--omega0", type=float, default=None,
                        help="rotation rate (> 0), default 1")
        sp.add_argument("--nu0", type=float, default=None,
                        help="drive strength (>= 0), default 1")
        sp.add_argument("--t-max", dest="t_max", type=float, default=None,
                        help="end of the time grid, default 2*pi")
        sp.add_argument("--steps", type=int, default=None,
                        help="number of grid intervals, default 6283")
        sp.add_argument("--out", default=None,
                        help="output path (default: stdout)")
        sp.add_argument("--format", dest="fmt", choices=("csv", "json"),
                        default=None, help="output format, default csv")
        sp.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="override a named validation tolerance (repeatable)")
        sp.add_argument("--config", default=None,
                        help="key=value file mirroring the flags; flags win")
    sub.choices["sweep"].add_argument(
        "--nu0-list", dest="nu0_list", required=True,
        help="comma-separated drive strengths, one summary row each")
    return parser


def _resolve_config(ns) -> RunConfig:
    file_map = _parse_config_file(ns.config) if ns.config else {}

    def pick(flag_value, key, cast):
        if flag_value is not None:
            return flag_value
        if key in file_map:
            return _cast(file_map[key], cast, key)
        return _DEFAULTS.get(key)

    omega0 = pick(ns.omega0, "omega0", float)
    nu0 = pick(ns.nu0, "nu0", float)
    t_max = pick(ns.t_max, "t_max", float)
    steps = pick(ns.steps, "steps", int)
    out = ns.out if ns.out is not None else file_map.get("out")
    fmt = pick(ns.fmt, "format", str)

    tolerances = {k[4:]: _cast(v, float, k)
                  for k, v in file_map.items() if k.startswith("tol.")}
    for item in ns.tol:
        name, _, value = item.partition("=")
        if not name or not value:
            raise InvalidArgumentError(f"--tol expects NAME=VALUE, got {item!r}")
        tolerances[name] = _cast(value, float, name)

    return RunConfig(
        params=fields.ScenarioParams(omega0, nu0),
        grid=dynamics.TimeGrid(0.0, t_max, steps),
        out=out,
        fmt=fmt,
        tolerances=tolerances,
    )


def _parse_config_file(path: str) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not key or not value:
            raise InvalidArgumentError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        if key not in _CONFIG_KEYS and not key.startswith("tol."):
            raise InvalidArgumentError(f"{path}:{lineno}: unknown key {key!r}")
        mapping[key] = value
    return mapping


def _parse_nu0_list(text: str) -> list[float]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise InvalidArgumentError("--nu0-list must contain at least one value")
    return [_cast(piece, float, "nu0-list") for piece in items]


def _cast(value, cast, key):
    try:
        return cast(value)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"bad value for {key}: {value!r}") from exc


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _render(rows, columns, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        return "\n".join(lines) + "\n"
    objects = (
        "{" + ", ".join(f'"{c}": {_fmt(v)}' for c, v in zip(columns, row)) + "}"
        for row in rows
    )
    return "[\n  " + ",\n  ".join(objects) + "\n]\n"


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


if __name__ == "__main__":
    sys.exit(main())
