"""Command-line front end: ``python -m sysbath <command> [options]``.

Commands write plot-ready CSV (``scatter``, ``reconstruct``, ``gain``) or
JSON (``resonances``, ``validate``).  Every option may also come from a
``key=value`` file given with ``--config``; command-line values win.  The
header of each output lists the resolved configuration and its hash, which
is all that is needed to regenerate the file.

Exit codes: 0 success, 1 numeric or check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Optional, Sequence

import numpy as np

from . import disk, engine, mirror, slab
from ._types import DomainError
from .numerics import BoundaryRootError, ConvergenceError, PvToleranceError, RootCountError, SearchRegion

COMMANDS = ("scatter", "reconstruct", "resonances", "gain", "validate")

# option -> (type, default); None defaults are filled per model below
OPTIONS: dict[str, tuple[Any, Any]] = {
    "model": (str, "slab"),
    "n": (float, None),
    "l": (float, 1.0),
    "eta": (float, 0.0453),
    "R": (float, 1.0),
    "m": (int, 13),
    "m_list": (str, None),
    "bc": (str, "neumann"),
    "k": (float, None),
    "grid": (int, 2001),
    "tol": (float, 1e-9),
    "windows": (str, "11,25"),
    "x_max": (float, None),
    "k_min": (float, None),
    "k_max": (float, None),
    "points": (int, 121),
    "lam_max": (int, 200),
    "re_min": (float, None),
    "re_max": (float, None),
    "im_min": (float, None),
    "im_max": (float, -1e-9),
    "only": (str, None),
    "models": (str, "slab,mirror,disk"),
    "tolerance_scale": (float, 1.0),
    "out": (str, None),
}

MODEL_DEFAULTS = {
    "slab": {"n": 1.5, "k": 18.0, "k_min": 15.0, "k_max": 21.0,
             "re_min": 0.01, "re_max": 10.0, "im_min": -2.0},
    "mirror": {"k": 28.9, "k_min": 26.0, "k_max": 32.0,
               "re_min": 27.0, "re_max": 31.0, "im_min": -1.0},
    "disk": {"n": 3.3, "k": 10.5, "k_min": 8.0, "k_max": 12.0,
             "re_min": 8.0, "re_max": 12.0, "im_min": -0.5},
}

# keys that matter for each command (echoed in headers and hashed)
RELEVANT = {
    "scatter": ("model", "n", "l", "eta", "R", "m", "k", "grid", "x_max"),
    "reconstruct": ("model", "n", "l", "eta", "R", "m", "bc", "k", "grid", "windows"),
    "resonances": ("model", "n", "l", "eta", "R", "m", "m_list", "re_min", "re_max", "im_min", "im_max"),
    "gain": ("model", "n", "l", "eta", "R", "bc", "k_min", "k_max", "points", "lam_max"),
    "validate": ("models", "only", "tolerance_scale"),
}


MODEL_KEYS = {
    "slab": {"n", "l", "bc"},
    "mirror": {"eta", "l"},
    "disk": {"n", "R", "m", "m_list"},
}
_ALL_MODEL_KEYS = set().union(*MODEL_KEYS.values())


class UsageError(Exception):
    pass


def read_config_file(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for i, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in OPTIONS:
            raise UsageError(f"{path}:{i}: unknown key {key!r}")
        out[key] = val
    return out


def resolve_config(command: str, cli_values: dict[str, Any], file_values: dict[str, str]) -> dict[str, Any]:
    cfg: dict[str, Any] = {}
    for key, (typ, default) in OPTIONS.items():
        if cli_values.get(key) is not None:
            val = cli_values[key]
        elif key in file_values:
            val = file_values[key]
        else:
            val = default
        if val is not None:
            try:
                val = typ(val)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for {key}: {val!r}") from exc
        cfg[key] = val
    if cfg["model"] not in MODEL_DEFAULTS:
        raise UsageError(f"unknown model {cfg['model']!r}")
    for key, val in MODEL_DEFAULTS[cfg["model"]].items():
        if cfg[key] is None:
            cfg[key] = val
    if cfg["x_max"] is None:
        cfg["x_max"] = 2.0 * cfg["R"] if cfg["model"] == "disk" else cfg["l"]
    if cfg["grid"] < 2:
        raise UsageError("grid needs at least 2 points")
    cfg["_command"] = command
    return cfg


def config_items(cfg: dict[str, Any]) -> list[tuple[str, Any]]:
    keys = RELEVANT[cfg["_command"]]
    own = MODEL_KEYS[cfg["model"]]
    return [(k, cfg[k]) for k in keys
            if cfg.get(k) is not None and (k not in _ALL_MODEL_KEYS or k in own)]


def config_hash(cfg: dict[str, Any]) -> str:
    text = ";".join(f"{k}={_fmt_plain(v)}" for k, v in config_items(cfg))
    return hashlib.sha256(f"{cfg['_command']}|{text}".encode()).hexdigest()[:16]


def _fmt_plain(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def fmt(x: float) -> str:
    """17 significant digits, locale independent."""
    return format(float(x), ".17g")


def header(cfg: dict[str, Any]) -> list[str]:
    items = config_items(cfg)
    lines = [f"# sysbath {cfg['_command']}"]
    lines.append("# " + ", ".join(f"{k}={_fmt_plain(v)}" for k, v in items))
    lines.append(f"# config_hash={config_hash(cfg)}")
    return lines


# ------------------------------------------------------------------ models

def _params(cfg):
    model = cfg["model"]
    if model == "slab":
        return slab.SlabParams(cfg["n"], cfg["l"])
    if model == "mirror":
        return mirror.MirrorParams(cfg["eta"], cfg["l"])
    return disk.DiskParams(cfg["n"], cfg["R"])


def _resonator(cfg, m: Optional[int] = None) -> engine.Resonator:
    p = _params(cfg)
    if cfg["model"] == "slab":
        return engine.SlabModel(p, cfg["bc"])
    if cfg["model"] == "mirror":
        return engine.MirrorModel(p)
    return engine.DiskModel(p, cfg["m"] if m is None else m)


def _parse_windows(text: str) -> list[int]:
    try:
        ws = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad window list {text!r}") from exc
    if not ws or min(ws) < 1:
        raise UsageError("window sizes must be positive integers")
    return ws


def _parse_m_list(text: Optional[str], default: int) -> list[int]:
    if not text:
        return [default]
    if ":" in text:
        a, b = text.split(":", 1)
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------- commands

def cmd_scatter(cfg) -> list[str]:
    p = _params(cfg)
    k = cfg["k"]
    if cfg["model"] == "disk":
        grid = np.linspace(0.0, cfg["x_max"], cfg["grid"])
        vals = disk.exact_radial(p, cfg["m"], k, grid)
        label = "r"
    else:
        grid = np.linspace(-p.l, cfg["x_max"], cfg["grid"])
        mod = slab if cfg["model"] == "slab" else mirror
        vals = mod.exact_field(p, k, grid)
        label = "x"
    rows = header(cfg) + [f"{label},re_field,im_field"]
    rows += [f"{fmt(x)},{fmt(v.real)},{fmt(v.imag)}" for x, v in zip(grid, vals)]
    return rows


def cmd_reconstruct(cfg) -> list[str]:
    model = _resonator(cfg)
    k = cfg["k"]
    windows = _parse_windows(cfg["windows"])
    grid = engine.interior_grid(model, cfg["grid"])
    ref = engine.exact_interior(model, k, grid)
    recs = [engine.reconstruct_interior(model, k, engine.ModeWindow(k, n), grid) for n in windows]
    cols = ["position", "re_exact", "im_exact"]
    for n in windows:
        cols += [f"re_N{n}", f"im_N{n}"]
    rows = header(cfg) + [",".join(cols)]
    for i, x in enumerate(grid):
        vals = [fmt(x), fmt(ref.values[i].real), fmt(ref.values[i].imag)]
        for r in recs:
            vals += [fmt(r.values[i].real), fmt(r.values[i].imag)]
        rows.append(",".join(vals))
    for n, r in zip(windows, recs):
        rows.append(f"# l2_error N={n}: {fmt(engine.l2_error(ref, r))}")
    return rows


def cmd_resonances(cfg) -> list[str]:
    region = SearchRegion(cfg["re_min"], cfg["re_max"], cfg["im_min"], cfg["im_max"])
    ms = _parse_m_list(cfg["m_list"], cfg["m"]) if cfg["model"] == "disk" else [None]
    found = []
    for m in ms:
        found += [r.as_dict() for r in engine.find_resonances(_resonator(cfg, m), region)]
    doc = {"config_hash": config_hash(cfg), "config": dict(config_items(cfg)), "resonances": found}
    return [json.dumps(doc, indent=2)]


def cmd_gain(cfg) -> list[str]:
    if not (0 < cfg["k_min"] < cfg["k_max"]):
        raise UsageError("need 0 < k_min < k_max")
    model = _resonator(cfg, 0)
    ks = np.linspace(cfg["k_min"], cfg["k_max"], cfg["points"])
    rows = header(cfg) + ["k,gain_closed,gain_alpha,rel_diff"]
    for k in ks:
        gc = model.gain_closed(k)
        ga = engine.gain_via_alpha(model, k, cfg["lam_max"])
        rows.append(f"{fmt(k)},{fmt(gc)},{fmt(ga)},{fmt(abs(ga - gc) / abs(gc))}")
    return rows


def cmd_validate(cfg) -> tuple[list[str], bool]:
    only = [g.strip() for g in cfg["only"].split(",")] if cfg["only"] else None
    if only:
        bad = [g for g in only if g not in engine.GROUPS]
        if bad:
            raise UsageError(f"unknown check group(s) {bad}; choose from {list(engine.GROUPS)}")
    models = [m.strip() for m in cfg["models"].split(",") if m.strip()]
    bad = [m for m in models if m not in MODEL_DEFAULTS]
    if bad:
        raise UsageError(f"unknown model(s) {bad}")
    rep = engine.validate_all({"models": models, "only": only,
                               "tolerance_scale": cfg["tolerance_scale"]})
    doc = {"config_hash": config_hash(cfg), **rep}
    return [json.dumps(doc, indent=2)], rep["status"] == "pass"


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sysbath", description="System-and-bath resonator workbench.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="key=value file; command-line options override it")
        for key, (typ, _) in OPTIONS.items():
            flag = "--" + key.replace("_", "-")
            sp.add_argument(flag, dest=key, type=str if typ is str else typ, default=None)
    return ap


def _emit(lines: Sequence[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    values = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = resolve_config(args.command, values, file_values)
        ok = True
        if args.command == "validate":
            lines, ok = cmd_validate(cfg)
        else:
            lines = {"scatter": cmd_scatter, "reconstruct": cmd_reconstruct,
                     "resonances": cmd_resonances, "gain": cmd_gain}[args.command](cfg)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"sysbath: error: {exc}", file=sys.stderr)
        return 2
    except (RootCountError, BoundaryRootError, ConvergenceError, PvToleranceError, ArithmeticError) as exc:
        print(f"sysbath: numeric failure: {exc}", file=sys.stderr)
        return 1
    _emit(lines, cfg["out"])
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
