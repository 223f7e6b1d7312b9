"""Text renderings of probability traces: CSV golden files and JSON documents."""
from __future__ import annotations

import json
from typing import Any, Optional, Sequence

import numpy as np

from cascade_rabi.errors import InvalidInput
from cascade_rabi.schema import ProbabilityTrace

CSV_HEADER = ("t", "p1", "p2", "p3", "p4")


def format_number(x: float) -> str:
    # 17 significant digits round-trip every double
    text = format(float(x), ".17g")
    return "0" if text == "-0" else text


def format_csv(trace: ProbabilityTrace, levels: Optional[Sequence[int]] = None) -> str:
    """Header ``t,p1,p2,p3,p4`` (or the selected levels), ``\\n`` line ends."""
    levels = tuple(levels or (1, 2, 3, 4))
    header = ",".join(("t", *(f"p{level}" for level in levels)))
    columns = [trace.times, *(trace.level(level) for level in levels)]
    rows = (",".join(format_number(x) for x in row) for row in zip(*columns))
    return "\n".join((header, *rows)) + "\n"


def parse_csv(text: str) -> tuple[list[str], np.ndarray]:
    lines = [line for line in text.split("\n") if line]
    if not lines:
        raise InvalidInput("empty CSV document")
    header = lines[0].split(",")
    data = np.array(
        [[float(x) for x in line.split(",")] for line in lines[1:]], dtype=float
    )
    return header, data.reshape(len(lines) - 1, len(header))


def trace_from_csv(text: str, label: Optional[str] = None) -> ProbabilityTrace:
    header, data = parse_csv(text)
    if tuple(header) != CSV_HEADER:
        raise InvalidInput(
            f"expected header {','.join(CSV_HEADER)}, got {','.join(header)}"
        )
    return ProbabilityTrace(times=data[:, 0], populations=data[:, 1:], label=label)


def trace_document(
    trace: ProbabilityTrace, meta: Optional[dict[str, Any]] = None
) -> dict[str, Any]:
    return {
        "meta": {**trace.meta(), **(meta or {})},
        "t": trace.times.tolist(),
        **{f"p{level}": trace.level(level).tolist() for level in (1, 2, 3, 4)},
    }


def format_json(trace: ProbabilityTrace, meta: Optional[dict[str, Any]] = None) -> str:
    return json.dumps(trace_document(trace, meta), indent=2) + "\n"
