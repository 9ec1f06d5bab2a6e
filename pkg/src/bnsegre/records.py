"""Output records and their json / csv / table renderings.

JSON is the stable interface: keys sorted, two-space indent, rationals as
strings such as ``"8/3"``, trailing newline. Re-serializing parsed output
reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

FORMATS = ("table", "json", "csv")


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def ranks_text(ranks) -> str:
    return " ".join(str(r) for r in ranks)


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    result: dict
    citations: list[str]
    # CSV layout: fixed header plus rows; table extras are human-only lines
    csv_header: list[str] = field(default_factory=list, repr=False)
    csv_rows: list[list[Any]] = field(default_factory=list, repr=False)
    table_notes: list[str] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return _plain(
            {
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "citations": list(self.citations),
            }
        )

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.csv_header)
        for row in self.csv_rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"{self.command}"]
        lines += _kv_lines(self.inputs, "  ")
        rows = [[_cell(v) for v in row] for row in self.csv_rows]
        if rows:
            lines.append("")
            lines += format_table(self.csv_header, rows)
        lines += self.table_notes
        if self.citations:
            lines.append(f"criteria: {', '.join(self.citations)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ranks_text(value)
    return str(value)


def _kv_lines(d: dict, indent: str) -> list[str]:
    return [f"{indent}{k}: {_cell(v)}" for k, v in d.items()]


def format_table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*header).rstrip(), fmt.format(*("-" * w for w in widths))]
    out += [fmt.format(*row).rstrip() for row in rows]
    return out
