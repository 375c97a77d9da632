"""JSON document format for (optionally labelled) polyhedra.

::

    {
      "version": 1,
      "vertices": 4,
      "faces": [
        [3, 0, 1],
        ...
      ],
      "labels": {
        "0-1": 2,
        "0-2": "3/2"
      }
    }

Faces are written in id order, one per line.  Label keys are ``"i-j"`` with
``i < j`` in numeric pair order; integers are JSON numbers and other
rationals are reduced ``"p/q"`` strings.  Output is byte-deterministic.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping

from .errors import DocumentSyntaxError, SchemaError
from .labelling import Labelling
from .surface import Edge, Polyhedron, build_from_faces

VERSION = 1
_KEY = re.compile(r"^(\d+)-(\d+)$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def format_label(value: Fraction) -> int | str:
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def serialize(p: Polyhedron, l: Mapping[Edge, object] | None = None, *, compact: bool = False) -> str:
    """Render a document; ``compact`` puts it on a single line."""
    if compact:
        doc: dict = {"version": VERSION, "vertices": p.vertex_count, "faces": [list(f) for f in p.faces]}
        if l is not None:
            doc["labels"] = {f"{u}-{v}": format_label(l[(u, v)]) for u, v in p.edges}
        return json.dumps(doc, separators=(",", ":"))
    lines = ["{", f'  "version": {VERSION},', f'  "vertices": {p.vertex_count},', '  "faces": [']
    faces = [json.dumps(list(f), separators=(", ", ": ")) for f in p.faces]
    lines += [f"    {f}," for f in faces[:-1]] + [f"    {faces[-1]}"]
    if l is None:
        lines.append("  ]")
    else:
        lines.append("  ],")
        lines.append('  "labels": {')
        entries = [f'    "{u}-{v}": {json.dumps(format_label(l[(u, v)]))}' for u, v in p.edges]
        lines.append(",\n".join(entries))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_label(key: str, value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"labels[{key!r}]: expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, str):
        if not _RATIONAL.match(value.strip()):
            raise SchemaError(f"labels[{key!r}]: {value!r} is not an exact rational")
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise SchemaError(f"labels[{key!r}]: zero denominator") from None
    return Fraction(value)


def parse(text: str) -> tuple[Polyhedron, Labelling | None]:
    """Parse and validate a document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected an object")
    unknown = set(doc) - {"version", "vertices", "faces", "labels"}
    if unknown:
        raise SchemaError(f"top level: unknown field(s) {sorted(unknown)}")
    if doc.get("version") != VERSION:
        raise SchemaError(f"version: expected {VERSION}, got {doc.get('version')!r}")
    V = doc.get("vertices")
    if isinstance(V, bool) or not isinstance(V, int) or V < 1:
        raise SchemaError(f"vertices: expected a positive integer, got {V!r}")
    faces = doc.get("faces")
    if not isinstance(faces, list) or not faces:
        raise SchemaError("faces: expected a non-empty list")
    for k, face in enumerate(faces):
        if not isinstance(face, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in face):
            raise SchemaError(f"faces[{k}]: expected a list of vertex indices")
    p = build_from_faces(faces, vertex_count=V)

    if "labels" not in doc:
        return p, None
    raw = doc["labels"]
    if not isinstance(raw, dict):
        raise SchemaError("labels: expected an object")
    labels: dict[Edge, Fraction] = {}
    for key, value in raw.items():
        m = _KEY.match(key)
        if not m:
            raise SchemaError(f"labels: key {key!r} is not of the form 'i-j'")
        i, j = int(m.group(1)), int(m.group(2))
        if i >= j:
            raise SchemaError(f"labels: key {key!r} must have i < j")
        if (i, j) not in p.edge_index:
            raise SchemaError(f"labels: {key!r} is not an edge")
        labels[(i, j)] = _parse_label(key, value)
    missing = [f"{u}-{v}" for u, v in p.edges if (u, v) not in labels]
    if missing:
        raise SchemaError(f"labels: missing edge(s) {', '.join(missing)}")
    return p, Labelling(labels)
