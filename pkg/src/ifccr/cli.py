"""Command-line surface.

Subcommands:
  classify        regime map over a plane of two gains -> CSV
  region          frontier of a bound or scheme for one channel -> CSV
  compare         containment check between two frontier CSVs -> text + JSON
  boundary-sweep  zero-level sets of the regime boundary conditions -> CSV

Exit codes: 0 success/contained, 1 violation, 2 usage error, 3 numeric
degeneracy.  IFCCR_THREADS caps worker threads for plane sweeps.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .gauss import (ChannelGains, DomainError, UsageError,
                    DegenerateInputError)
from . import regimes as _regimes
from . import regions as _regions
from . import outer as _outer
from . import inner as _inner
from . import channel_io as _io

BOUND_IDS = ("sato", "strong_rx1", "strong_rx2", "strong_both",
             "weak_degraded")

PRESETS = {
    "fig4_unit": ChannelGains(1.0, 1.0, 1.0, 1.0, 0.0, 0.0),
    "fig4_hc2": ChannelGains(1.0, 1.0, 2.0, 2.0, 0.0, 0.0),
    "fig5": ChannelGains(1.0, 1.0, 1.0, 1.0, -2.0, -2.0),
    "fig6": ChannelGains(1.0, 1.0, 1.0, 1.0, -2.0, 1.0),
    "fig7": ChannelGains(1.0, 1.0, 1.0, 1.0, 0.5, 1.0),
}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("IFCCR_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepConfig:
    """Plane-sweep parameters parsed from a flat dotted-key config file."""
    base: ChannelGains
    x_name: str
    x_min: float
    x_max: float
    x_steps: int
    y_name: str
    y_min: float
    y_max: float
    y_steps: int
    hc_list: tuple = ()
    directions: int = _regions.DEFAULT_DIRECTIONS
    seed: int = _regions.SEED

    def __post_init__(self):
        for nm, steps in (("x", self.x_steps), ("y", self.y_steps)):
            if steps < 1:
                raise UsageError(f"plane.{nm}.steps must be >= 1")
        for nm in (self.x_name, self.y_name):
            if nm not in _io.GAIN_KEYS:
                raise UsageError(f"unknown gain axis {nm!r}")

    def grid(self):
        xs = np.linspace(self.x_min, self.x_max, self.x_steps)
        ys = np.linspace(self.y_min, self.y_max, self.y_steps)
        return xs, ys

    def channel_at(self, x: float, y: float) -> ChannelGains:
        vals = {k: getattr(self.base, k) for k in _io.GAIN_KEYS}
        vals[self.x_name] = x
        vals[self.y_name] = y
        return ChannelGains(**vals)


def sweep_config_from_dict(kv: dict) -> SweepConfig:
    def need(key):
        if key not in kv:
            raise UsageError(f"config: missing key {key!r}")
        return kv[key]

    if "channel" in kv:
        base = _io.load_channel(kv["channel"])
    elif "preset" in kv:
        base = _preset(kv["preset"])
    else:
        raise UsageError("config: need channel=<path> or preset=<name>")
    hc_list = tuple(float(v) for v in kv.get("hc_list", "").split(",") if v)
    try:
        return SweepConfig(
            base=base,
            x_name=need("plane.x"), x_min=float(need("plane.x.min")),
            x_max=float(need("plane.x.max")),
            x_steps=int(need("plane.x.steps")),
            y_name=need("plane.y"), y_min=float(need("plane.y.min")),
            y_max=float(need("plane.y.max")),
            y_steps=int(need("plane.y.steps")),
            hc_list=hc_list,
            directions=int(kv.get("directions",
                                  _regions.DEFAULT_DIRECTIONS)),
            seed=int(kv.get("seed", _regions.SEED)))
    except ValueError as exc:
        raise UsageError(f"config: bad numeric field ({exc})") from None


def _preset(name: str) -> ChannelGains:
    if name not in PRESETS:
        raise UsageError(f"unknown preset {name!r}; "
                         f"available: {sorted(PRESETS)}")
    return PRESETS[name]


def _load_gains(args) -> ChannelGains:
    if getattr(args, "preset", None):
        return _preset(args.preset)
    if getattr(args, "channel", None):
        return _io.load_channel(args.channel)
    raise UsageError("need --channel FILE or --preset NAME")


def _fmt(x) -> str:
    return f"{float(x):.12g}"


# ---------------------------------------------------------------------------
# classify

def cmd_classify(config: SweepConfig, out_path: str) -> int:
    xs, ys = config.grid()

    def classify_row(x):
        cells = []
        for y in ys:
            rep = _regimes.classify(config.channel_at(x, y))
            cells.append(rep)
        return cells

    nt = _threads()
    if nt > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=nt) as pool:
            rows = list(pool.map(classify_row, xs))
    else:
        rows = [classify_row(x) for x in xs]

    import csv as _csv
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        w = _csv.writer(fh, lineterminator="\n")
        w.writerow([config.x_name, config.y_name, "strong_rx1", "strong_rx2",
                    "vsi_rx1", "vsi_rx2", "strong_both", "degraded", "rho"])
        for x, cells in zip(xs, rows):
            for y, rep in zip(ys, cells):
                w.writerow([_fmt(x), _fmt(y),
                            int(rep.strong_rx1), int(rep.strong_rx2),
                            int(rep.vsi_rx1), int(rep.vsi_rx2),
                            int(rep.strong_both), int(rep.degraded),
                            "" if rep.rho is None else _fmt(rep.rho)])
    return 0


# ---------------------------------------------------------------------------
# region

def _outer_frontier(gains, bound, n_dir):
    if bound == "sato":
        return _outer.sato_frontier(gains, n_dir)
    if bound == "strong_rx1":
        return _outer.strong_rx1_frontier(gains, n_dir)
    if bound == "strong_rx2":
        return _outer.strong_rx2_frontier(gains, n_dir)
    if bound == "strong_both":
        return _outer.strong_both_frontier(gains, n_dir)
    if bound == "weak_degraded":
        return _outer.weak_degraded_frontier(gains, n_dir=n_dir)
    raise UsageError(f"unknown bound {bound!r}; available: {BOUND_IDS}")


def region_frontier(gains: ChannelGains, ident: str, n_dir: int):
    """(frontier, extra CSV columns) for a bound or scheme id."""
    rep = _regimes.classify(gains)
    if ident in BOUND_IDS:
        fr = _outer_frontier(gains, ident, n_dir)
        extra = {"validity_flag": int(bool(fr.meta.get("valid", True)))}
    elif ident in _inner.SCHEME_IDS:
        fr = _inner.inner_frontier(gains, ident, n_directions=n_dir)
        extra = {"scheme": ident}
    else:
        raise UsageError(f"unknown bound/scheme {ident!r}; available: "
                         f"{BOUND_IDS + _inner.SCHEME_IDS}")
    capacity = ((ident in ("all_common", "strong_rx1") and rep.vsi_rx1)
                or (ident in ("all_common", "strong_rx2") and rep.vsi_rx2)
                or (ident in ("all_common", "strong_both") and rep.strong_both))
    extra["capacity"] = int(capacity)
    return fr, extra


def cmd_region(gains: ChannelGains, idents, n_dir: int, out_dir: str) -> int:
    os.makedirs(out_dir, exist_ok=True)
    for ident in idents:
        fr, extra = region_frontier(gains, ident, n_dir)
        path = os.path.join(out_dir, f"{ident}.csv")
        _io.write_frontier_csv(fr, path, extra)
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# compare

def cmd_compare(inner_path: str, outer_path: str, tol: float) -> int:
    inner = _io.read_frontier_csv(inner_path)
    outer = _io.read_frontier_csv(outer_path)
    report = _regions.contains(outer, inner, tol=tol)
    verdict = "contained" if report.contained else "violation"
    print(f"{verdict}: max gap {report.max_gap:.6e} bits at direction "
          f"({report.worst_direction[0]:.6f}, "
          f"{report.worst_direction[1]:.6f})")
    print(json.dumps({
        "contained": bool(report.contained),
        "max_gap_bits": float(report.max_gap),
        "worst_direction": [float(report.worst_direction[0]),
                            float(report.worst_direction[1])],
        "tol": tol,
    }))
    return 0 if report.contained else 1


# ---------------------------------------------------------------------------
# boundary sweep

def _boundary_gaps(gains: ChannelGains):
    return {
        "strong_rx1": _regimes._strong_gap_rx1(gains),
        "strong_rx2": _regimes._strong_gap_rx1(gains.swapped()),
        "vsi_rx1": _regimes.vsi_extra_rx1(gains),
    }


def cmd_boundary_sweep(config: SweepConfig, out_path: str) -> int:
    if not config.hc_list:
        raise UsageError("boundary-sweep needs hc_list=v1,v2,... in config")
    xs, ys = config.grid()
    import csv as _csv
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        w = _csv.writer(fh, lineterminator="\n")
        w.writerow(["hc", "condition", config.x_name, config.y_name])
        for hc in config.hc_list:
            base = dict((k, getattr(config.base, k)) for k in _io.GAIN_KEYS)
            base["h1c"] = hc
            base["h2c"] = hc

            def gaps_at(x, y):
                vals = dict(base)
                vals[config.x_name] = x
                vals[config.y_name] = y
                return _boundary_gaps(ChannelGains(**vals))

            names = ("strong_rx1", "strong_rx2", "vsi_rx1")
            g = np.empty((len(xs), len(ys), 3))
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    d = gaps_at(x, y)
                    g[i, j] = [d[n] for n in names]
            for k, name in enumerate(names):
                # sign-change bracketing along both grid directions
                for i in range(len(xs)):
                    for j in range(len(ys) - 1):
                        a, b = g[i, j, k], g[i, j + 1, k]
                        if np.isfinite(a) and np.isfinite(b) and a * b < 0:
                            t = a / (a - b)
                            w.writerow([_fmt(hc), name, _fmt(xs[i]),
                                        _fmt(ys[j] + t * (ys[j + 1] - ys[j]))])
                for j in range(len(ys)):
                    for i in range(len(xs) - 1):
                        a, b = g[i, j, k], g[i + 1, j, k]
                        if np.isfinite(a) and np.isfinite(b) and a * b < 0:
                            t = a / (a - b)
                            w.writerow([_fmt(hc), name,
                                        _fmt(xs[i] + t * (xs[i + 1] - xs[i])),
                                        _fmt(ys[j])])
    return 0


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ifccr",
                description="Interference-channel-with-cognitive-relay "
                            "bounds and regions")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="regime map over a gain plane")
    pc.add_argument("--config", required=True)
    pc.add_argument("--out", required=True)

    pr = sub.add_parser("region", help="frontier CSV for bounds/schemes")
    pr.add_argument("--channel")
    pr.add_argument("--preset")
    pr.add_argument("--scheme", action="append", default=[])
    pr.add_argument("--bound", action="append", default=[])
    pr.add_argument("--directions", type=int,
                    default=_regions.DEFAULT_DIRECTIONS)
    pr.add_argument("--seed", type=int, default=_regions.SEED)
    pr.add_argument("--out", required=True, help="output directory")

    pm = sub.add_parser("compare", help="containment between two CSVs")
    pm.add_argument("--inner", required=True)
    pm.add_argument("--outer", required=True)
    pm.add_argument("--tol", type=float, default=1e-9)

    pb = sub.add_parser("boundary-sweep",
                        help="regime-boundary loci over a plane")
    pb.add_argument("--config", required=True)
    pb.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "classify":
            cfg = sweep_config_from_dict(_io.load_config(args.config))
            return cmd_classify(cfg, args.out)
        if args.command == "region":
            gains = _load_gains(args)
            idents = list(args.bound) + list(args.scheme)
            if not idents:
                raise UsageError("select at least one --bound or --scheme")
            return cmd_region(gains, idents, args.directions, args.out)
        if args.command == "compare":
            return cmd_compare(args.inner, args.outer, args.tol)
        if args.command == "boundary-sweep":
            cfg = sweep_config_from_dict(_io.load_config(args.config))
            return cmd_boundary_sweep(cfg, args.out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError,) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DegenerateInputError as exc:
        print(f"numeric degeneracy: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
