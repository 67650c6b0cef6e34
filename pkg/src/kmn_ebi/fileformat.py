"""JSON labeling documents.

::

    {"m": 5, "n": 4, "q": 1, "r": 2,
     "rows": ["1100", "0011", ...],
     "summary": {"index": 0, "a_labels": "-----", "b_labels": "0011", ...}}

Row k is the A vertex with flat index k (1-based in prose, 0-based in the
list); character c is the edge to u_c. ``summary`` is optional on input and
is recomputed, never trusted.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import EdgeLabeling, LabelingError, VertexSummary, derive_partition, induce_labels


def summary_to_dict(s: VertexSummary) -> dict:
    return {
        "a_labels": "".join(x.value for x in s.labels_a),
        "b_labels": "".join(x.value for x in s.labels_b),
        "deg1_a": list(s.deg1_a),
        "deg1_b": list(s.deg1_b),
        "vA1": s.vA1,
        "vA0": s.vA0,
        "vA_unlabeled": s.vA_unlabeled,
        "vB1": s.vB1,
        "vB0": s.vB0,
        "signed_difference": s.signed_difference,
        "index": s.index,
    }


def labeling_to_dict(lab: EdgeLabeling, summary: bool = True) -> dict:
    p = lab.params
    doc: dict = {"m": p.m, "n": p.n, "q": p.q, "r": p.r, "rows": lab.row_strings()}
    if summary:
        doc["summary"] = summary_to_dict(induce_labels(lab))
    return doc


def labeling_from_dict(doc: dict) -> EdgeLabeling:
    try:
        m, n, rows = doc["m"], doc["n"], doc["rows"]
    except KeyError as exc:
        raise LabelingError(f"labeling document lacks field {exc.args[0]!r}") from None
    params = derive_partition(m, n)
    for key in ("q", "r"):
        if key in doc and doc[key] != getattr(params, key):
            raise LabelingError(f"{key}={doc[key]} disagrees with (m, n) = ({m}, {n})")
    if len(rows) != m or any(len(row) != n or set(row) - {"0", "1"} for row in rows):
        raise LabelingError(f"rows must be {m} strings of {n} characters over 0/1")
    return EdgeLabeling(params, [[int(ch) for ch in row] for row in rows])


def write_labeling(lab: EdgeLabeling, path: str | Path, summary: bool = True) -> None:
    Path(path).write_text(json.dumps(labeling_to_dict(lab, summary), indent=2) + "\n")


def read_labeling(path: str | Path) -> EdgeLabeling:
    return labeling_from_dict(json.loads(Path(path).read_text()))
