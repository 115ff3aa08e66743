"""Command-line front end.

Subcommands: ``solve``, ``compare``, ``transmit`` and ``doublewell``. Every
run writes one report, either JSON (``{params, grid, results, warnings}``)
or CSV (header plus data rows). Numbers are printed with 12 significant
digits in both encodings, so identical configurations give identical bytes.

Exit codes: 0 success, 2 invalid arguments or config, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .analysis import InsufficientBoundStatesError, describe_states, double_well_report
from .discretize import Grid, build_grid, default_domain
from .eigensolve import negative_level_count, solve_schrodinger
from .potential import PotentialKind, PotentialSpec
from .semiclassical import stm_paper_formula, transmission, uncertainty_tunneling_condition, wkb_count
from .variational import solve_optimal_b

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

TABLE1_PAIRS = [(1.0, 1.0), (2.5, 0.5), (3.0, 1.0), (3.0, 0.1)]
TABLE2_PAIRS = [(0.5, 1.0), (1.0, 1.0), (10.0, 1.0), (100.0, 1.0)]

DEFAULTS = {
    "solve": {"kind": "gaussian-well", "v0": 3.0, "alpha": 0.1, "l": 0},
    "compare": {},
    "transmit": {"v0": 1.0, "alpha": 1.0},
    "doublewell": {"v0": 3.0, "alpha": 1.0, "states": 3},
}
COMMON_DEFAULTS = {"format": "json", "wavefunctions": False, "stm": False}


class UsageError(ValueError):
    pass


def _num(x):
    """Round to the 12 significant digits used by both encodings."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        raise ArithmeticError(f"non-finite value {x!r} in report")
    return float(f"{x:.12g}")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _parse_list(text: str, name: str) -> list[float]:
    items = [t for t in text.replace(";", ",").split(",") if t.strip()]
    if not items:
        raise UsageError(f"{name} is empty")
    try:
        return [float(t) for t in items]
    except ValueError as exc:
        raise UsageError(f"bad number in {name}: {exc}") from None


def _parse_range(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--beta-range must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad --beta-range {text!r}: {exc}") from None
    if n < 1:
        raise UsageError("--beta-range needs n >= 1")
    if n == 1:
        return [lo]
    return np.linspace(lo, hi, n).tolist()


def _workers(n_jobs: int) -> int:
    raw = os.environ.get("QWELL_THREADS")
    if raw is None or raw.strip() == "":
        cap = os.cpu_count() or 1
    else:
        try:
            cap = int(raw)
        except ValueError:
            raise UsageError(f"QWELL_THREADS must be an integer, got {raw!r}") from None
        if cap < 0:
            raise UsageError("QWELL_THREADS must be >= 0")
    return min(cap, n_jobs)


def _run_sweep(func, jobs: list) -> list:
    """Map ``func`` over ``jobs``; output order always follows input order."""
    workers = _workers(len(jobs))
    if workers <= 1:
        return [func(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs))


# ---------------------------------------------------------------------------
# argument handling


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file whose keys mirror the flags; flags win")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.add_argument("--mesh", type=int, default=None, help="number of mesh intervals r")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwell", description="Spectra, WKB and tunneling for Gaussian-family potentials."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="finite-difference eigenstates of one potential")
    p.add_argument("--kind", choices=[k.value for k in PotentialKind], default=None)
    p.add_argument("--v0", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--l", type=int, default=None, help="angular momentum (half-gaussian only)")
    p.add_argument("--states", type=int, default=None, help="default: all negative levels + 1")
    p.add_argument("--wavefunctions", action="store_true", default=None,
                   help="emit x, psi_i + E_i columns")
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser("compare", help="variational vs numerical vs WKB, one row per (v0, alpha)")
    p.add_argument("--v0-list", default=None, help="comma-separated v0 values")
    p.add_argument("--alpha-list", default=None, help="comma-separated alpha values (or one)")
    p.add_argument("--alpha", type=float, default=None, help="single alpha for every v0")
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser("transmit", help="WKB transmission through the Gaussian barrier")
    p.add_argument("--v0", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--e", type=float, default=None, help="particle energy")
    g.add_argument("--beta", type=float, default=None, help="v0 / E")
    g.add_argument("--beta-range", default=None, help="lo:hi:n, inclusive linspace")
    p.add_argument("--stm", action="store_true", default=None,
                   help="also report the quoted STM rule T = exp(-2.2 sqrt(v0/alpha))")
    p.add_argument("--v0-over-alpha", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("doublewell", help="splitting and period of -v0 x^2 exp(-alpha x^2)")
    p.add_argument("--v0", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--states", type=int, default=None)
    p.add_argument("--wavefunctions", action="store_true", default=None,
                   help="CSV: emit wavefunction columns instead of the report row")
    _add_grid(p)
    _add_common(p)
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit flags."""
    cfg = dict(COMMON_DEFAULTS)
    cfg.update(DEFAULTS[args.command])
    known = {k for k in vars(args) if k not in ("command", "config")}
    file_cfg = _load_config(args.config)
    unknown = sorted(set(file_cfg) - known)
    if unknown:
        raise UsageError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
    cfg.update(file_cfg)
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k in known})
    for k in known:
        cfg.setdefault(k, None)
    return cfg


def _grid_for(spec: PotentialSpec, cfg: dict) -> Grid:
    x_min, x_max, mesh = default_domain(spec)
    if cfg.get("xmin") is not None:
        x_min = float(cfg["xmin"])
    if cfg.get("xmax") is not None:
        x_max = float(cfg["xmax"])
    if cfg.get("mesh") is not None:
        mesh = int(cfg["mesh"])
    return build_grid(x_min, x_max, mesh)


def _grid_dict(grid: Grid) -> dict:
    return {"x_min": _num(grid.x_min), "x_max": _num(grid.x_max), "mesh": grid.r,
            "delta": _num(grid.delta), "points": grid.size}


def _wavefunction_table(spectrum, count: int) -> tuple[list[str], list[list]]:
    count = min(count, spectrum.n_states)
    header = ["x"] + [f"psi{i}_plus_E{i}" for i in range(count)]
    shifted = spectrum.states[:count] + spectrum.energies[:count, None]
    rows = [[_num(x)] + [_num(v) for v in shifted[:, k]] for k, x in enumerate(spectrum.grid.points)]
    return header, rows


# ---------------------------------------------------------------------------
# subcommands; each returns (report dict, csv header, csv rows)


def cmd_solve(cfg: dict):
    spec = PotentialSpec(PotentialKind(cfg["kind"]), float(cfg["v0"]), float(cfg["alpha"]), int(cfg["l"] or 0))
    grid = _grid_for(spec, cfg)
    n_states = cfg.get("states")
    if n_states is None:
        n_states = min(grid.size, negative_level_count(spec, grid) + 1)
    n_states = int(n_states)
    if not 1 <= n_states <= grid.size:
        raise UsageError(f"--states must be in [1, {grid.size}]")
    spectrum = solve_schrodinger(spec, grid, n_states)
    states = [
        {"index": d.index, "energy": _num(d.energy), "nodes": d.nodes, "parity": d.parity.value,
         "bound": d.bound, "contaminated": bool(spectrum.contaminated[d.index])}
        for d in describe_states(spectrum)
    ]
    results = {
        "energies": [_num(e) for e in spectrum.energies],
        "bound_count": spectrum.bound_count,
        "states": states,
    }
    params = {"kind": spec.kind.value, "v0": _num(spec.v0), "alpha": _num(spec.alpha),
              "l": spec.l, "states": n_states}
    if cfg["wavefunctions"]:
        header, rows = _wavefunction_table(spectrum, n_states)
        results["wavefunctions"] = {"columns": header, "rows": rows}
    else:
        header = ["index", "energy", "nodes", "parity", "bound", "contaminated"]
        rows = [[s[h] for h in header] for s in states]
    report = {"params": params, "grid": _grid_dict(grid), "results": results,
              "warnings": list(spectrum.warnings)}
    return report, header, rows


def _compare_row(job):
    v0, alpha, grid_cfg = job
    spec = PotentialSpec.well(v0, alpha)
    grid = _grid_for(spec, grid_cfg)
    var = solve_optimal_b(v0, alpha)
    n_states = min(grid.size, negative_level_count(spec, grid) + 1)
    spectrum = solve_schrodinger(spec, grid, n_states)
    e0 = float(spectrum.energies[0])
    wkb = wkb_count(v0, alpha)
    row = {
        "v0": _num(v0),
        "alpha": _num(alpha),
        "b_star": _num(var.b_star),
        "h_variational": _num(var.energy_bound),
        "e0_numerical": _num(e0),
        "relative_gap": _num((var.energy_bound - e0) / abs(e0)),
        "n_wkb_real": _num(wkb.n_real),
        "n_wkb_floor": wkb.n_levels,
        "n_numerical": spectrum.bound_count,
    }
    return row, _grid_dict(grid), list(spectrum.warnings)


def cmd_compare(cfg: dict):
    if cfg.get("v0_list") is None:
        pairs = TABLE1_PAIRS + TABLE2_PAIRS
    else:
        v0s = _parse_list(str(cfg["v0_list"]), "--v0-list")
        if cfg.get("alpha_list") is not None:
            alphas = _parse_list(str(cfg["alpha_list"]), "--alpha-list")
        elif cfg.get("alpha") is not None:
            alphas = [float(cfg["alpha"])]
        else:
            alphas = [1.0]
        if len(alphas) == 1:
            alphas = alphas * len(v0s)
        if len(alphas) != len(v0s):
            raise UsageError("--alpha-list must have one entry or match --v0-list")
        pairs = list(zip(v0s, alphas))
    for v0, alpha in pairs:
        PotentialSpec.well(v0, alpha)  # validate before any work starts
    grid_cfg = {k: cfg.get(k) for k in ("xmin", "xmax", "mesh")}
    out = _run_sweep(_compare_row, [(v0, alpha, grid_cfg) for v0, alpha in pairs])
    rows = [o[0] for o in out]
    warnings = [f"v0={r['v0']}, alpha={r['alpha']}: {w}" for r, _, ws in out for w in ws]
    header = list(rows[0])
    report = {
        "params": {"pairs": [[_num(v), _num(a)] for v, a in pairs]},
        "grid": [o[1] for o in out],
        "results": rows,
        "warnings": warnings,
    }
    return report, header, [[r[h] for h in header] for r in rows]


def cmd_transmit(cfg: dict):
    v0, alpha = float(cfg["v0"]), float(cfg["alpha"])
    if not (v0 > 0 and alpha > 0 and math.isfinite(v0) and math.isfinite(alpha)):
        raise UsageError("v0 and alpha must be positive")
    energies = None
    if cfg.get("e") is not None:
        e = float(cfg["e"])
        if not 0 < e < v0:
            raise UsageError("--e must satisfy 0 < e < v0")
        energies = [e]
    else:
        if cfg.get("beta") is not None:
            betas = [float(cfg["beta"])]
        elif cfg.get("beta_range") is not None:
            betas = _parse_range(str(cfg["beta_range"]))
        elif cfg["stm"]:
            betas = []
        else:
            betas = _parse_range("1.01:5:50")
        bad = [b for b in betas if not b > 1]
        if bad:
            raise UsageError(f"every beta must exceed 1, got {bad[0]!r}")
        energies = [v0 / b for b in betas]

    rows = []
    for e in energies:
        t = transmission(v0, alpha, e)
        rows.append({
            "beta": _num(t.beta),
            "e": _num(e),
            "t_exact": _num(t.t_exact),
            "t_approx": _num(t.t_approx),
            "theta_exact": _num(t.theta_exact),
            "theta_approx": _num(t.theta_approx),
            "uncertainty_condition": uncertainty_tunneling_condition(v0, alpha, e),
        })
    results = {"rows": rows}
    header = ["beta", "e", "t_exact", "t_approx", "theta_exact", "theta_approx", "uncertainty_condition"]
    csv_rows = [[r[h] for h in header] for r in rows]
    if cfg["stm"]:
        ratio = cfg.get("v0_over_alpha")
        ratio = v0 / alpha if ratio is None else float(ratio)
        if not ratio > 0:
            raise UsageError("--v0-over-alpha must be positive")
        stm = {"v0_over_alpha": _num(ratio), "t_stm_formula": _num(stm_paper_formula(ratio))}
        results["stm"] = stm
        if rows:
            header = header + list(stm)
            csv_rows = [row + list(stm.values()) for row in csv_rows]
        else:
            header, csv_rows = list(stm), [list(stm.values())]
    params = {"v0": _num(v0), "alpha": _num(alpha), "v0_over_alpha": _num(v0 / alpha)}
    report = {"params": params, "grid": None, "results": results, "warnings": []}
    return report, header, csv_rows


def cmd_doublewell(cfg: dict):
    v0, alpha = float(cfg["v0"]), float(cfg["alpha"])
    spec = PotentialSpec.double_well(v0, alpha)
    grid = _grid_for(spec, cfg)
    n_states = int(cfg["states"])
    if not 2 <= n_states <= grid.size:
        raise UsageError(f"--states must be in [2, {grid.size}]")
    rep = double_well_report(v0, alpha, grid=grid, n_states=n_states)
    descriptors = describe_states(rep.spectrum)
    report_row = {
        "e1": _num(rep.e1),
        "e2": _num(rep.e2),
        "e3": _num(rep.e3),
        "delta_e": _num(rep.delta_e),
        "period": _num(rep.period),
        "decoupling_ratio": _num(rep.decoupling_ratio),
        "e3_bound": rep.e3_bound,
        "parity_pair": [descriptors[0].parity.value, descriptors[1].parity.value],
    }
    header_wf, rows_wf = _wavefunction_table(rep.spectrum, 2)
    results = dict(report_row)
    results["bound_count"] = rep.spectrum.bound_count
    results["wavefunctions"] = {"columns": header_wf, "rows": rows_wf}
    if cfg["wavefunctions"]:
        header, rows = header_wf, rows_wf
    else:
        flat = dict(report_row)
        flat["parity_pair"] = "/".join(report_row["parity_pair"])
        header, rows = list(flat), [list(flat.values())]
    params = {"v0": _num(v0), "alpha": _num(alpha), "states": n_states}
    report = {"params": params, "grid": _grid_dict(grid), "results": results,
              "warnings": list(rep.spectrum.warnings)}
    return report, header, rows


COMMANDS = {
    "solve": cmd_solve,
    "compare": cmd_compare,
    "transmit": cmd_transmit,
    "doublewell": cmd_doublewell,
}


def render(report: dict, header: list, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = resolve_config(args)
        if cfg["format"] not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {cfg['format']!r}")
        report, header, rows = COMMANDS[args.command](cfg)
        text = render(report, header, rows, cfg["format"])
    except (InsufficientBoundStatesError, ArithmeticError) as exc:
        print(f"qwell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"qwell: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.get("output"):
        with open(cfg["output"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
