"""Run manifests and deterministic JSON / CSV output."""

from __future__ import annotations

import csv
import io
import json
import time

from . import __version__
from .field import field_for_q


class RunManifest:
    """What was run and with which fields, so a rerun reproduces the report byte for byte.

    Timing is only recorded when asked for; it is the one field that would
    otherwise break byte-identical reruns.
    """

    def __init__(self, command: str, parameters: dict, *, timing: bool = False):
        self.command = command
        self.parameters = {k: v for k, v in sorted(parameters.items()) if v is not None}
        self.fields: dict[str, dict] = {}
        self.verdicts: dict[str, str] = {}
        self.timing = timing
        self._t0 = time.perf_counter()

    def use_field(self, q: int, m: int):
        key = f"GF({q}^{m})"
        if key not in self.fields:
            ctx = field_for_q(q, m)
            self.fields[key] = {"prim_poly_q": ctx.prim_poly_q, "prim_poly_qm": ctx.prim_poly_qm}
        return key

    def verdict(self, name: str, value: str):
        self.verdicts[name] = value

    def to_json(self) -> dict:
        d = {"command": self.command, "parameters": self.parameters,
             "fields": dict(sorted(self.fields.items())), "tool_version": __version__,
             "verdicts": dict(sorted(self.verdicts.items()))}
        if self.timing:
            d["timing_seconds"] = round(time.perf_counter() - self._t0, 3)
        return d


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: str, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def rows_to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow(r)
    return buf.getvalue()


def write_csv(path: str, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(header, rows))


def parse_max_field(text: str | None) -> int | None:
    """'3^4' or '81' -> 81."""
    if text is None:
        return None
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(text)
