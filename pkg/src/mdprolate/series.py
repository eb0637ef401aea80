"""Labeled numeric series and verification reports on disk.

CSV files start with ``# `` comment lines holding the metadata as JSON,
then a mandatory header row, then data.  Floats use 17 significant
digits so values round-trip exactly.  The body (header plus data) is a
pure function of the inputs; only the metadata carries a timestamp.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Mapping, Sequence

from . import __version__

__all__ = ["FigureSeries", "format_number", "make_metadata", "load_schema", "dump_json"]


def format_number(x) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return format(x, ".17g")


def _parse_number(s: str):
    try:
        return int(s)
    except ValueError:
        return float(s)


def make_metadata(params: Mapping[str, Any], **extra) -> dict:
    meta = {
        "params": dict(params),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
    }
    meta.update(extra)
    return meta


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return _jsonable(x.tolist())
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def dump_json(obj, fh=None) -> str:
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    if fh is not None:
        fh.write(text)
    return text


def load_schema(name: str) -> dict:
    """Load a shipped JSON schema (``"report"`` or ``"series"``)."""
    ref = resources.files(__package__) / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text(encoding="utf-8"))


@dataclass
class FigureSeries:
    name: str
    columns: dict[str, Sequence]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {k: len(v) for k, v in self.columns.items()}
        if len(set(lengths.values())) > 1:
            raise ValueError(f"series columns differ in length: {lengths}")

    def __len__(self):
        return len(next(iter(self.columns.values()), ()))

    def rows(self):
        return zip(*self.columns.values())

    def to_csv(self, fh=None, metadata: bool = True) -> str:
        buf = io.StringIO()
        if metadata:
            meta = {"name": self.name, **_jsonable(self.metadata)}
            buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns.keys())
        for row in self.rows():
            writer.writerow(format_number(v) for v in row)
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    @classmethod
    def from_csv(cls, text: str) -> "FigureSeries":
        lines = text.splitlines()
        meta: dict = {}
        while lines and lines[0].startswith("#"):
            meta.update(json.loads(lines.pop(0)[1:].strip()))
        name = meta.pop("name", "")
        reader = csv.reader(lines)
        header = next(reader)
        cols: dict[str, list] = {h: [] for h in header}
        for row in reader:
            for h, v in zip(header, row):
                cols[h].append(_parse_number(v))
        return cls(name, cols, meta)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "columns": {k: [_jsonable(v) for v in vals] for k, vals in self.columns.items()},
            "metadata": _jsonable(self.metadata),
        }

    def to_json(self, fh=None) -> str:
        return dump_json(self.to_dict(), fh)

    @classmethod
    def from_json(cls, text: str) -> "FigureSeries":
        data = json.loads(text)
        return cls(data["name"], data["columns"], data.get("metadata", {}))
