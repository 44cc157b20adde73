"""Deterministic report rendering and persistence.

Reports are JSON documents with an embedded run manifest. Floating-point
values are rendered with 17 significant digits and object keys are sorted,
so re-running a manifest reproduces the report byte-for-byte (timestamps
excluded). Sweep tables can additionally be emitted as CSV with a fixed
column order.
"""

from __future__ import annotations

import datetime
import json
from importlib import resources

import jsonschema

TOOL_VERSION = "0.1.0"

#: fixed CSV column order for sweep tables
SWEEP_CSV_COLUMNS = ("m", "trials", "pass_fraction", "mean_y", "max_y", "std_error")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _render(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(": ")
            _render(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(", ")
            _render(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj) -> str:
    """Canonical JSON text: sorted keys, 17-significant-digit floats, LF-terminated."""
    out: list[str] = []
    _render(obj, out)
    return "".join(out) + "\n"


def utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def make_manifest(command: str, config: dict, seed_dict: dict) -> dict:
    return {
        "command": command,
        "config": config,
        "tool_version": TOOL_VERSION,
        "seed": seed_dict,
        "started": utc_now(),
        "finished": None,
    }


def load_schema() -> dict:
    text = resources.files("randomix").joinpath("schema/report.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_report(report: dict) -> None:
    jsonschema.validate(instance=report, schema=load_schema())


def write_report(path: str | None, report: dict) -> str:
    """Validate, render, and write (or return) the report text."""
    validate_report(report)
    text = render_json(report)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def strip_timestamps(report: dict) -> dict:
    """Copy of a report with manifest timestamps removed (determinism compares)."""
    out = json.loads(json.dumps(report))
    manifest = out.get("manifest", {})
    manifest.pop("started", None)
    manifest.pop("finished", None)
    return out


def sweep_to_csv(grid_rows: list[dict]) -> str:
    """Fixed-order CSV for sweep tables; floats at 17 significant digits."""
    lines = [",".join(SWEEP_CSV_COLUMNS)]
    for row in grid_rows:
        cells = []
        for col in SWEEP_CSV_COLUMNS:
            v = row[col]
            cells.append(str(v) if isinstance(v, int) else format_float(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
