"""Command-line interface: ``bgk dispersion|verify|evolve|decay|index``.

Configuration comes from an optional ``key = value`` file plus flag
overrides (flags win). All numeric output is formatted with 17 significant
digits so identical configurations produce byte-identical files.

Exit codes: 0 success, 1 configuration or domain error, 2 tolerance or
verification failure.

CSV schemas
-----------
dispersion.csv   xi,eta,lambda,residual
index.csv        xi,chi
index_curves.csv xi,v,re_g,im_g
evolve.csv       xi,t,total_norm,gds_norm,residual_norm
field.csv        xi,v,re,im            (spectral state at t = t_max)
decay.csv        xi,t,gds_norm,residual_norm,ratio

JSON reports carry ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .coefficients import SliceWorkspace, extract_slice
from .corpus import PROFILES, make_initial_data
from .dispersion import XI_DOMAIN_CLIP, build_dispersion_table, table_to_csv
from .errors import DomainError, QuadratureError
from .evolution import (decay_study, evolve_spectral, oracle_trajectory,
                        reconstruction_error)
from .operator import VSliceFunction
from .plotting import line_plot_svg
from .quadrature import gauss_hermite, phi_norm
from .riemann import winding_index
from .specfun import SQRT_PI
from .verify import SUITES, run_suites

__all__ = ["RunConfig", "ConfigError", "load_config", "main"]

DEFAULT_DECAY_XI = (0.25, 0.5, 1.0)
DEFAULT_EVOLVE_XI = (0.25, 0.5, 1.0, 1.5)
DEFAULT_INDEX_XI = (0.1, 0.5, 1.0, 1.7, -2.0, 1.8, 3.75)


class ConfigError(ValueError):
    """Invalid configuration file or flag combination."""


@dataclass(frozen=True)
class RunConfig:
    """Reproducible run description shared by all subcommands."""

    order: int = 200
    truncation: float = 8.0
    xi: tuple | None = None
    xi_min: float = -1.76
    xi_max: float = 1.76
    xi_count: int = 101
    t_max: float = 4.0
    t_count: int = 17
    tolerance: float = 1e-8
    residual_slope_tol: float = 0.05
    gds_slope_rel_tol: float = 0.02
    burn_in: float = 1.0
    corpus: str = "shifted-gaussian"
    out: str = "out"
    formats: tuple = ("csv", "json")
    suite: tuple | None = None
    inject: str | None = None


_INT_KEYS = {"order", "xi_count", "t_count"}
_FLOAT_KEYS = {"truncation", "xi_min", "xi_max", "t_max", "tolerance",
               "residual_slope_tol", "gds_slope_rel_tol", "burn_in"}
_STR_KEYS = {"corpus", "out", "inject"}
_LIST_FLOAT_KEYS = {"xi"}
_LIST_STR_KEYS = {"formats", "suite"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | _LIST_FLOAT_KEYS | _LIST_STR_KEYS


def _coerce(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _LIST_FLOAT_KEYS:
            return tuple(float(tok) for tok in raw.split(",") if tok.strip())
        if key in _LIST_STR_KEYS:
            return tuple(tok.strip() for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc
    return raw


def parse_config_file(path) -> dict:
    """Parse a ``key = value`` file ('#' comments, blank lines ignored)."""
    settings = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "format":
            key = "formats"
        if key not in _ALL_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = _coerce(key, raw)
    return settings


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.order < 2:
        raise ConfigError("order must be at least 2")
    for name in ("truncation", "tolerance", "residual_slope_tol",
                 "gds_slope_rel_tol"):
        if getattr(cfg, name) <= 0.0:
            raise ConfigError(f"{name} must be positive")
    if cfg.burn_in < 0.0:
        raise ConfigError("burn_in must be nonnegative")
    if cfg.t_max <= 0.0 or cfg.t_count < 2:
        raise ConfigError("time grid needs t_max > 0 and t_count >= 2")
    if cfg.xi_count < 2:
        raise ConfigError("xi_count must be at least 2")
    bad = set(cfg.formats) - {"csv", "json", "svg"}
    if bad:
        raise ConfigError(f"unknown output formats {sorted(bad)}")
    if cfg.corpus not in PROFILES:
        raise ConfigError(f"unknown corpus {cfg.corpus!r}; choose from {PROFILES}")
    if cfg.suite is not None:
        unknown = set(cfg.suite) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown verify suites {sorted(unknown)}")
    return cfg


def load_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then config file, then flags; flags win."""
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **parse_config_file(args.config))
    overrides = {}
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            overrides[f.name] = val
    if overrides:
        cfg = replace(cfg, **overrides)
    return _validate(cfg)


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _dispersion_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.xi is not None:
        xis = np.asarray(cfg.xi, dtype=float)
    else:
        xis = np.linspace(cfg.xi_min, cfg.xi_max, cfg.xi_count)
    limit = SQRT_PI - XI_DOMAIN_CLIP
    outside = xis[np.abs(xis) > limit]
    if outside.size:
        raise ConfigError(
            f"xi = {outside[0]:g} outside the dispersion domain |xi| <= {limit:.7g}")
    return xis


def _slice_xis(cfg: RunConfig, default) -> list[float]:
    xis = list(cfg.xi) if cfg.xi is not None else list(default)
    for xi in xis:
        if abs(abs(xi) - SQRT_PI) < 1e-3:
            raise ConfigError(f"xi = {xi:g} too close to the critical value sqrt(pi)")
    return xis


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(out: Path, name: str, text: str) -> None:
    (out / name).write_text(text, encoding="utf-8")


def _dump_json(out: Path, name: str, payload: dict) -> None:
    _write(out, name, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_dispersion(cfg: RunConfig) -> int:
    xis = _dispersion_grid(cfg)
    table = build_dispersion_table(xis, tolerance=cfg.tolerance)
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        _write(out, "dispersion.csv", table_to_csv(table))
    if "json" in cfg.formats:
        _dump_json(out, "dispersion.json", {
            "schema_version": 1,
            "count": len(table.points),
            "max_residual": table.max_residual,
            "tolerance": cfg.tolerance,
            "within_tolerance": table.within_tolerance,
            "xi_min": float(xis.min()),
            "xi_max": float(xis.max()),
        })
    if "svg" in cfg.formats:
        lam = [p.lam for p in table.points]
        _write(out, "dispersion.svg", line_plot_svg(
            [(xis, lam, "lambda(xi)")], title="Dispersion branch",
            xlabel="xi", ylabel="lambda"))
    print(f"dispersion: {len(table.points)} samples, max residual "
          f"{table.max_residual:.3e} (tolerance {cfg.tolerance:g})")
    return 0 if table.within_tolerance else 2


def cmd_verify(cfg: RunConfig) -> int:
    report = run_suites(cfg.suite, inject=cfg.inject)
    out = _outdir(cfg)
    if "json" in cfg.formats:
        _dump_json(out, "verify.json", report)
    for sname, suite in report["suites"].items():
        for check in suite["checks"]:
            mark = "PASS" if check["passed"] else "FAIL"
            print(f"{mark} {sname}: {check['name']} ({check['detail']})")
    print(f"verify: {'all suites passed' if report['passed'] else 'FAILURES detected'}")
    return 0 if report["passed"] else 2


def cmd_evolve(cfg: RunConfig) -> int:
    xis = _slice_xis(cfg, DEFAULT_EVOLVE_XI)
    times = np.linspace(0.0, cfg.t_max, cfg.t_count)
    grid = gauss_hermite(cfg.order)
    initial = make_initial_data(cfg.corpus, xis)
    rows = ["xi,t,total_norm,gds_norm,residual_norm"]
    field_rows = ["xi,v,re,im"]
    recon: dict[str, float] = {}
    series = []
    for xi in xis:
        ws = SliceWorkspace(xi)
        sl = extract_slice(ws, initial.samplers[xi])
        recon[_g17(xi)] = reconstruction_error(sl, grid)
        norms = []
        for t in times:
            ev = evolve_spectral(sl, float(t), grid)
            if sl.chi == -1:
                gds = np.exp(sl.lam * t) * sl.C0 * ws.eigen_profile(grid.nodes)
            else:
                gds = np.zeros_like(ev.values)
            total = phi_norm(grid, ev.values)
            gnorm = phi_norm(grid, gds)
            rnorm = phi_norm(grid, ev.values - gds)
            norms.append(total)
            rows.append(",".join(_g17(x) for x in (xi, t, total, gnorm, rnorm)))
        series.append((times, np.array(norms), f"xi = {xi:g}"))
        final = evolve_spectral(sl, float(cfg.t_max), grid)
        for v, val in zip(grid.nodes, final.values):
            field_rows.append(",".join(_g17(x) for x in (xi, v, val.real, val.imag)))
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        _write(out, "evolve.csv", "\n".join(rows) + "\n")
        _write(out, "field.csv", "\n".join(field_rows) + "\n")
    if "json" in cfg.formats:
        _dump_json(out, "evolve.json", {
            "schema_version": 1,
            "corpus": cfg.corpus,
            "order": cfg.order,
            "t_max": cfg.t_max,
            "reconstruction_error": recon,
        })
    if "svg" in cfg.formats:
        _write(out, "evolve.svg", line_plot_svg(
            series, title=f"Norm decay ({cfg.corpus})", xlabel="t",
            ylabel="phi-L2 norm", logy=True))
    worst = max(recon.values())
    print(f"evolve: corpus {cfg.corpus}, {len(xis)} slices, "
          f"worst reconstruction error {worst:.3e}")
    return 0


def cmd_decay(cfg: RunConfig) -> int:
    xis = _slice_xis(cfg, DEFAULT_DECAY_XI)
    times = np.linspace(0.0, cfg.t_max, cfg.t_count)
    grid = gauss_hermite(cfg.order)
    initial = make_initial_data(cfg.corpus, xis)
    report = decay_study(initial, times, grid, burn_in=cfg.burn_in)
    oracle_err: dict[str, float] = {}
    for xi in xis:
        ws = SliceWorkspace(xi)
        sl = extract_slice(ws, initial.samplers[xi])
        f0 = np.asarray(initial.samplers[xi](grid.nodes), dtype=complex)
        start = VSliceFunction(grid=grid, values=f0, xi=xi)
        snaps = oracle_trajectory(start, [cfg.t_max], dt=0.01)
        spec = evolve_spectral(sl, float(cfg.t_max), grid)
        oracle_err[_g17(xi)] = (phi_norm(grid, spec.values - snaps[-1].values)
                                / max(phi_norm(grid, snaps[-1].values), 1e-300))
    rows = ["xi,t,gds_norm,residual_norm,ratio"]
    series = []
    for i, xi in enumerate(report.xis):
        g = report.gds_norms[i]
        r = report.residual_norms[i]
        ratio = np.where(g > 0.0, r / np.where(g > 0.0, g, 1.0), np.inf)
        for j, t in enumerate(report.times):
            rows.append(",".join(_g17(x) for x in (xi, t, g[j], r[j], ratio[j])))
        series.append((report.times, r, f"residual xi = {xi:g}"))
    summary: dict = {"schema_version": 1, "corpus": cfg.corpus,
                     "burn_in": cfg.burn_in, "order": cfg.order,
                     "oracle_relative_error": oracle_err, "slices": []}
    ok = True
    sel = report.times >= cfg.burn_in
    for i, xi in enumerate(report.xis):
        lam = report.lambdas[i]
        rs = report.residual_slopes[i]
        gs = report.gds_slopes[i]
        entry: dict = {"xi": xi, "lambda": lam, "residual_slope": rs,
                       "gds_slope": gs}
        # a residual at the numerical floor has no meaningful rate
        tiny = float(np.max(report.residual_norms[i, sel])) < 1e-10
        res_ok = tiny or (rs is not None and abs(rs + 1.0) <= cfg.residual_slope_tol)
        entry["residual_slope_ok"] = res_ok
        if lam is not None:
            gds_ok = gs is not None and abs(gs - lam) <= cfg.gds_slope_rel_tol * abs(lam)
            mono = tiny or report.ratio_monotone(i)
            entry["gds_slope_ok"] = gds_ok
            entry["ratio_monotone"] = mono
            ok = ok and res_ok and gds_ok and mono
        else:
            entry["gds_slope_ok"] = None
            entry["ratio_monotone"] = None
            ok = ok and res_ok
        summary["slices"].append(entry)
    summary["passed"] = ok
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        _write(out, "decay.csv", "\n".join(rows) + "\n")
    if "json" in cfg.formats:
        _dump_json(out, "decay.json", summary)
    if "svg" in cfg.formats:
        _write(out, "decay.svg", line_plot_svg(
            series, title=f"Residual decay ({cfg.corpus})", xlabel="t",
            ylabel="phi-L2 norm", logy=True))
    for entry in summary["slices"]:
        rs = entry["residual_slope"]
        gs = entry["gds_slope"]
        print(f"decay: xi = {entry['xi']:g}, residual slope = "
              f"{'n/a' if rs is None else format(rs, '+.4f')}, gds slope = "
              f"{'n/a' if gs is None else format(gs, '+.6f')}")
    print(f"decay: {'rates within tolerances' if ok else 'rate FAILURES detected'}")
    return 0 if ok else 2


def cmd_index(cfg: RunConfig) -> int:
    xis = list(cfg.xi) if cfg.xi is not None else list(DEFAULT_INDEX_XI)
    results = []
    for xi in xis:
        results.append(winding_index(xi))
    rows = ["xi,chi"]
    curve_rows = ["xi,v,re_g,im_g"]
    series = []
    for res in results:
        rows.append(f"{_g17(res.xi)},{res.chi}")
        curve = res.image_curve
        step = max(1, curve.shape[0] // 400)
        for v, re, im in curve[::step]:
            curve_rows.append(",".join(_g17(x) for x in (res.xi, v, re, im)))
        series.append((curve[:, 1], curve[:, 2], f"xi = {res.xi:g} (chi = {res.chi})"))
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        _write(out, "index.csv", "\n".join(rows) + "\n")
        _write(out, "index_curves.csv", "\n".join(curve_rows) + "\n")
    if "json" in cfg.formats:
        _dump_json(out, "index.json", {
            "schema_version": 1,
            "indices": {_g17(r.xi): r.chi for r in results},
        })
    if "svg" in cfg.formats:
        _write(out, "index.svg", line_plot_svg(
            series, title="Boundary-function image curves",
            xlabel="Re G", ylabel="Im G"))
    for res in results:
        print(f"index: xi = {res.xi:g} -> chi = {res.chi}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgk",
        description="Spectral solver artifacts: dispersion tables, invariant "
                    "verification, evolution runs, decay studies, winding indices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--xi", type=lambda s: tuple(
            float(tok) for tok in s.split(",") if tok.strip()),
            help="comma-separated wavenumber list")
        p.add_argument("--t-max", dest="t_max", type=float)
        p.add_argument("--t-count", dest="t_count", type=int)
        p.add_argument("--order", type=int, help="velocity quadrature order")
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", dest="formats", type=lambda s: tuple(
            tok.strip() for tok in s.split(",") if tok.strip()),
            help="comma-separated subset of csv,json,svg")
        p.add_argument("--tolerance", type=float)
        p.add_argument("--corpus", choices=PROFILES)

    for name in ("dispersion", "verify", "evolve", "decay", "index"):
        p = sub.add_parser(name)
        add_common(p)
        if name == "verify":
            p.add_argument("--suite", dest="suite", type=lambda s: tuple(
                tok.strip() for tok in s.split(",") if tok.strip()),
                help="comma-separated suite subset")
            p.add_argument("--inject", help="fault injection canary name")
    return parser


_COMMANDS = {
    "dispersion": cmd_dispersion,
    "verify": cmd_verify,
    "evolve": cmd_evolve,
    "decay": cmd_decay,
    "index": cmd_index,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, DomainError, QuadratureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
