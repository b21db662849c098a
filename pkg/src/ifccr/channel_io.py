"""File formats: channel files, flat configs, and frontier CSV.

Channel files are flat key-value text (UTF-8).  Keys h11,h12,h21,h22,h1c,h2c
give the gains; complex values are written "a+bi" (or bare reals).  If any of
the optional keys P1,P2,Pc,s1sq,s2sq is present the values are interpreted as
a pre-normalization channel and converted to standard form.

Config files use the same syntax with dotted keys (e.g. plane.x=h12).

Frontier CSVs are RFC-4180 with a header row, '.' decimals and 12
significant digits: mu1,mu2,value_bits,witness_r1,witness_r2,params followed
by any extra metadata columns.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from .gauss import (ChannelGains, GeneralChannel, UsageError,
                    to_standard_form)
from . import regions as _regions

GAIN_KEYS = ("h11", "h12", "h21", "h22", "h1c", "h2c")
GENERAL_KEYS = ("P1", "P2", "Pc", "s1sq", "s2sq")


def parse_complex(text: str) -> complex:
    """Parse "a+bi" / "a-bi" / "bi" / bare-real notation."""
    s = text.strip().replace(" ", "")
    if not s:
        raise UsageError("empty numeric value")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex value {text!r}") from None


def format_complex(z) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def parse_keyvalues(text: str):
    """Flat key=value lines; '#' comments and blanks ignored.

    Returns an ordered dict; duplicate keys are a usage error.  Error
    messages carry 1-based line numbers.
    """
    out = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"line {ln}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not key:
            raise UsageError(f"line {ln}: empty key")
        if key in out:
            raise UsageError(f"line {ln}: duplicate key {key!r}")
        out[key] = val
    return out


def parse_channel_text(text: str) -> ChannelGains:
    kv = parse_keyvalues(text)
    unknown = set(kv) - set(GAIN_KEYS) - set(GENERAL_KEYS)
    if unknown:
        raise UsageError(f"unknown channel keys: {sorted(unknown)}")
    missing = [k for k in GAIN_KEYS if k not in kv]
    if missing:
        raise UsageError(f"missing channel keys: {missing}")
    vals = {k: parse_complex(kv[k]) for k in GAIN_KEYS}
    if any(k in kv for k in GENERAL_KEYS):
        gen = GeneralChannel(
            g11=vals["h11"], g12=vals["h12"], g21=vals["h21"],
            g22=vals["h22"], g1c=vals["h1c"], g2c=vals["h2c"],
            P1=float(kv.get("P1", "1")), P2=float(kv.get("P2", "1")),
            Pc=float(kv.get("Pc", "1")),
            s1sq=float(kv.get("s1sq", "1")), s2sq=float(kv.get("s2sq", "1")))
        return to_standard_form(gen)

    def real_gain(name):
        z = vals[name]
        if z.imag != 0.0 or z.real < 0.0:
            raise UsageError(
                f"{name} must be nonnegative real in standard form "
                "(supply P1/P2/Pc/s1sq/s2sq for automatic conversion)")
        return z.real

    return ChannelGains(h11=real_gain("h11"), h22=real_gain("h22"),
                        h1c=real_gain("h1c"), h2c=real_gain("h2c"),
                        h12=vals["h12"], h21=vals["h21"])


def load_channel(path) -> ChannelGains:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_channel_text(fh.read())


def channel_text(gains: ChannelGains) -> str:
    lines = [f"h11={format_complex(gains.h11)}",
             f"h12={format_complex(gains.h12)}",
             f"h21={format_complex(gains.h21)}",
             f"h22={format_complex(gains.h22)}",
             f"h1c={format_complex(gains.h1c)}",
             f"h2c={format_complex(gains.h2c)}"]
    return "\n".join(lines) + "\n"


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_keyvalues(fh.read())


# ---------------------------------------------------------------------------
# frontier CSV

_BASE_COLS = ("mu1", "mu2", "value_bits", "witness_r1", "witness_r2",
              "params")


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def frontier_csv_text(fr: _regions.Frontier, extra: dict | None = None) -> str:
    """Serialize a frontier; extra maps column name -> constant or sequence."""
    extra = extra or {}
    n = fr.directions.shape[0]
    cols = list(_BASE_COLS) + list(extra)
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    w.writerow(cols)
    for i in range(n):
        pt = fr.argpoints[i] if fr.argpoints is not None else (0.0, 0.0)
        par = fr.params[i] if fr.params is not None else None
        par_s = "" if par is None else " ".join(
            _fmt(v) for v in np.atleast_1d(np.asarray(par, dtype=float)))
        row = [_fmt(fr.directions[i, 0]), _fmt(fr.directions[i, 1]),
               _fmt(fr.values[i]), _fmt(pt[0]), _fmt(pt[1]), par_s]
        for name, v in extra.items():
            row.append(str(v[i]) if isinstance(v, (list, np.ndarray)) else str(v))
        w.writerow(row)
    return buf.getvalue()


def write_frontier_csv(fr, path, extra: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(frontier_csv_text(fr, extra))


def read_frontier_csv(path) -> _regions.Frontier:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise UsageError(f"{path}: empty CSV")
    header = rows[0]
    missing = [c for c in _BASE_COLS[:5] if c not in header]
    if missing:
        raise UsageError(f"{path}: missing columns {missing}")
    col = {c: header.index(c) for c in header}
    dirs, vals, pts, params = [], [], [], []
    meta = {}
    for r in rows[1:]:
        if not r:
            continue
        dirs.append((float(r[col["mu1"]]), float(r[col["mu2"]])))
        vals.append(float(r[col["value_bits"]]))
        pts.append((float(r[col["witness_r1"]]), float(r[col["witness_r2"]])))
        if "params" in col and r[col["params"]]:
            params.append(np.array([float(x)
                                    for x in r[col["params"]].split()]))
        else:
            params.append(None)
    for c in header:
        if c not in _BASE_COLS:
            meta[c] = rows[1][col[c]] if len(rows) > 1 else None
    return _regions.Frontier(np.array(dirs), np.array(vals),
                             argpoints=np.array(pts), params=params,
                             meta=meta)
