"""JSON-lines trace files.

Line 1 is ``{"type":"header","version":1,"buffer":B}``; every further line is
``{"type":"arrival","step":t,"id":k,"value_micro":v,"deadline":d}`` in
arrival order. UTF-8, LF line endings, compact separators.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .model import Packet, Trace, TraceValidationError, validate_trace

FORMAT_VERSION = 1
_ARRIVAL_FIELDS = ("step", "id", "value_micro", "deadline")


class TraceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def dumps_trace(trace: Trace) -> str:
    lines = [_dumps({"type": "header", "version": FORMAT_VERSION, "buffer": trace.capacity})]
    for p in trace.arrivals:
        lines.append(_dumps({"type": "arrival", "step": p.release, "id": p.id,
                             "value_micro": p.value_micro, "deadline": p.deadline}))
    return "\n".join(lines) + "\n"


def _int_field(obj: dict, key: str, line: int) -> int:
    value = obj.get(key)
    if type(value) is not int:
        raise TraceFormatError(f"field {key!r} must be an integer", line)
    return value


def loads_trace(text: str) -> Trace:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TraceFormatError("missing header", 1)
    records = []
    for number, raw in enumerate(lines, start=1):
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"malformed JSON ({exc.msg})", number) from None
        if not isinstance(obj, dict):
            raise TraceFormatError("expected a JSON object", number)
        records.append(obj)
    header = records[0]
    if header.get("type") != "header":
        raise TraceFormatError("missing header", 1)
    if header.get("version") != FORMAT_VERSION:
        raise TraceFormatError(f"header version {header.get('version')!r} != {FORMAT_VERSION}", 1)
    capacity = _int_field(header, "buffer", 1)
    packets = []
    for number, obj in enumerate(records[1:], start=2):
        if obj.get("type") != "arrival":
            raise TraceFormatError(f"unexpected record type {obj.get('type')!r}", number)
        step, pid, value, deadline = (_int_field(obj, k, number) for k in _ARRIVAL_FIELDS)
        packets.append(Packet(pid, step, deadline, value))
    return validate_trace(Trace(capacity, tuple(packets)))


def write_trace(trace: Trace, path: str | os.PathLike) -> None:
    Path(path).write_bytes(dumps_trace(trace).encode("utf-8"))


def read_trace(path: str | os.PathLike) -> Trace:
    return loads_trace(Path(path).read_bytes().decode("utf-8"))


def trace_digest(trace: Trace) -> str:
    return hashlib.sha256(dumps_trace(trace).encode("utf-8")).hexdigest()[:16]


__all__ = [
    "TraceFormatError",
    "TraceValidationError",
    "dumps_trace",
    "loads_trace",
    "read_trace",
    "trace_digest",
    "write_trace",
]
