# modules/matrix_codec.py
"""
JSON, CSV and plain-text encodings of matrices and reports.

Floats are written with Python's shortest round-trip representation
(at most 17 significant digits), so parsing the JSON back reproduces every
entry bit for bit.
"""

import csv
import io
import json
from typing import Iterable, List, Sequence

import numpy as np

from .boxed_symbols import BlockSpec, Decomposition
from .errors import ValidationError
from .hamiltonian_builder import HamiltonianMatrix

SCHEMA_VERSION = "1.0"


def encode_float(x: float) -> float:
    return float(f"{float(x):.17g}")


def encode_complex_list(values) -> List[List[float]]:
    return [[encode_float(np.real(v)), encode_float(np.imag(v))] for v in values]


def encode_matrix_rows(array: np.ndarray) -> List[List[float]]:
    return [[encode_float(x) for x in row] for row in np.asarray(array, dtype=float)]


def matrix_to_dict(h: HamiltonianMatrix) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": h.n,
        "shift": encode_float(h.shift),
        "t": None if h.t is None else encode_float(h.t),
        "blocks": [{"m": b.size, "l": b.scale} for b in h.blocks],
        "entries": [encode_float(x) for x in h.entries.ravel(order="C")],
    }


def matrix_from_dict(payload: dict) -> HamiltonianMatrix:
    try:
        n = int(payload["n"])
        entries = np.asarray(payload["entries"], dtype=float).reshape(n, n)
        blocks = [BlockSpec(int(b["m"]), int(b["l"])) for b in payload.get("blocks", [])]
        t = payload.get("t")
        shift = float(payload.get("shift", 0.0))
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"Malformed matrix document: {e}")

    provenance = block = None
    if blocks:
        if len(blocks) == 1 and blocks[0].size == n and blocks[0].scale != 1:
            block = blocks[0]
        else:
            provenance = Decomposition(n=n, blocks=tuple(blocks))
    return HamiltonianMatrix(
        n=n, entries=entries, t=None if t is None else float(t), shift=shift, provenance=provenance, block=block
    )


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid JSON document: {e}")


def render_matrix_text(array: np.ndarray, precision: int = 6) -> str:
    """Right-aligned columns, one matrix row per line."""
    cells = [[_format_cell(x, precision) for x in row] for row in np.asarray(array, dtype=float)]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells) + "\n"


def _format_cell(x: float, precision: int) -> str:
    if x == 0.0:
        return "0"
    return f"{x:.{precision}g}"


def spectrum_csv(rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
