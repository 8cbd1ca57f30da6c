"""Deterministic report emission: stable JSON bytes plus a Markdown summary."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path


def stable_json_dumps(obj) -> str:
    """Deterministic serialisation: sorted keys, floats rounded to 12
    significant digits, rationals as 'num/den' strings."""

    def convert(o):
        if isinstance(o, dict):
            return {k: convert(o[k]) for k in sorted(o)}
        if isinstance(o, (list, tuple)):
            return [convert(x) for x in o]
        if isinstance(o, Fraction):
            if o.denominator == 1:
                return int(o)
            return f"{o.numerator}/{o.denominator}"
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            return float(f"{o:.12g}")
        return str(o)

    return json.dumps(convert(obj), sort_keys=True, indent=2) + "\n"


def write_reports(out_dir: str, stem: str, payload: dict, markdown: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / f"{stem}.json"
    json_path.write_text(stable_json_dumps(payload), encoding="utf-8")
    (out / f"{stem}.md").write_text(markdown, encoding="utf-8")
    return json_path


def fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(fmt_value(x) for x in v) + ")"
    return str(v)
