"""Problem files.

A problem file is a JSON (or YAML) mapping::

    {
      "m": 2,
      "H": [[1, 0], [0, 1]],          # optional, identity by default
      "F": [0, 0],                    # optional, zeros by default
      "constraints": [
        {"a": [1, 0], "b": 1.0, "kind": "hard"},
        {"a": [0, 1], "b": 0.5, "kind": "soft"}
      ]
    }

Each record is the constraint ``a'u <= b``; ``kind`` defaults to ``soft``.
Schema errors name the offending field and its line in the file.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import yaml

from .errors import NotPositiveDefinite, QpFeasError
from .problem import QpInstance


class ProblemFormatError(QpFeasError, ValueError):
    def __init__(self, field: str, line: int | None, message: str):
        self.field = field
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{field}{where}: {message}")


def _line_of(root, path) -> int | None:
    """1-based line of the deepest node along ``path`` in a composed YAML tree."""
    node, line = root, (root.start_mark.line + 1 if root is not None else None)
    for key in path:
        if isinstance(node, yaml.MappingNode):
            nxt = next((v for k, v in node.value if k.value == key), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            nxt = node.value[key]
        else:
            nxt = None
        if nxt is None:
            break
        node, line = nxt, nxt.start_mark.line + 1
    return line


def _number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def parse_problem(text: str) -> QpInstance:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ProblemFormatError("document", mark.line + 1 if mark else None, "not valid JSON/YAML") from None

    def fail(path, message):
        name = "".join(f"[{p}]" if isinstance(p, int) else (f".{p}" if i else p) for i, p in enumerate(path))
        raise ProblemFormatError(name or "document", _line_of(root, path), message)

    def vector(value, size, path):
        if not isinstance(value, list) or len(value) != size or not all(_number(x) for x in value):
            fail(path, f"expected a list of {size} finite numbers")
        return [float(x) for x in value]

    if not isinstance(data, dict):
        fail((), "expected a mapping with fields m and constraints")
    m = data.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        fail(("m",), "expected a positive integer")
    H = None
    if data.get("H") is not None:
        if not isinstance(data["H"], list) or len(data["H"]) != m:
            fail(("H",), f"expected {m} rows")
        H = [vector(row, m, ("H", i)) for i, row in enumerate(data["H"])]
    F = vector(data["F"], m, ("F",)) if data.get("F") is not None else None
    records = data.get("constraints")
    if not isinstance(records, list):
        fail(("constraints",), "expected a list of constraint records")

    rows, b, hard = [], [], []
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            fail(("constraints", i), "expected a record with fields a, b, kind")
        rows.append(vector(rec.get("a"), m, ("constraints", i, "a")))
        if not _number(rec.get("b")):
            fail(("constraints", i, "b"), "expected a finite number")
        b.append(float(rec["b"]))
        kind = rec.get("kind", "soft")
        if kind not in ("hard", "soft"):
            fail(("constraints", i, "kind"), "expected 'hard' or 'soft'")
        if kind == "hard":
            hard.append(i)

    A = np.array(rows, dtype=float).reshape(len(rows), m).T
    try:
        return QpInstance(A, b, H=H, F=F, hard=hard)
    except NotPositiveDefinite as exc:
        fail(("H",), f"must be symmetric positive definite ({exc})")


def load_problem(path) -> QpInstance:
    return parse_problem(Path(path).read_text())


def dump_problem(qp: QpInstance) -> str:
    """Serialize to the JSON problem format (full float precision)."""
    hard = set(qp.hard)
    doc = {
        "m": qp.m,
        "H": qp.H.tolist(),
        "F": qp.F.tolist(),
        "constraints": [
            {"a": qp.A[:, i].tolist(), "b": float(qp.B[i]), "kind": "hard" if i in hard else "soft"}
            for i in range(qp.C)
        ],
    }
    return json.dumps(doc, indent=2)
