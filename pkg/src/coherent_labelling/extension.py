"""Pyramid attachment over faces, and vertex truncation as its dual.

Erecting a pyramid over a face ``a_1 -> ... -> a_n`` (rotated so that
``a_1`` is the least label) adds an apex and the edges ``b_12, ..., b_n1``,
where ``b_i(i+1)`` joins the apex to the vertex between ``a_i`` and
``a_(i+1)``.  The face is replaced by the triangles
``(b_(i-1)i, a_i, b_i(i+1))`` and the new labels are chosen so that every
triangle has one cyclic descent, whatever the labelling elsewhere.  The
choice needs consecutive label values at least 1 apart, which canonical
labellings satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import NotVertexCoherentError
from .labelling import (
    Labelling,
    check_labels_cover,
    check_unit_gaps,
    is_vertex_coherent,
    normalize,
)
from .surface import Edge, Polyhedron, build_from_faces, dual, edge_key

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PyramidExtensionTrace:
    face: int
    apex: int
    base_labels: tuple[Fraction, ...]
    apex_labels: tuple[Fraction, ...]


def pyramid_labels(base: list[Fraction]) -> list[Fraction]:
    """Apex-edge labels ``b_12, b_23, ..., b_n1`` for base labels ``a_1..a_n``.

    ``base[0]`` must be the least label.
    """
    a = base
    n = len(a)
    b = [a[0] + HALF]
    for i in range(1, n - 1):
        prev = b[-1]
        if a[i] < a[i + 1]:
            value = a[i] + HALF
            if value <= prev:
                lo, hi = max(prev, a[i]), min(a[i] + 1, a[i + 1])
                value = (lo + hi) / 2
        else:
            value = (a[0] + min(b)) / 2
        b.append(value)
    b.append(max(a[-1], b[0]) + HALF)
    return b


def attach_pyramid_to_face(p: Polyhedron, l: Mapping[Edge, object], face: int):
    """Erect a pyramid over ``face``; return ``(polyhedron, labelling, trace)``.

    The apex gets vertex id ``V``.  The triangle over the face's first edge
    takes the face's index; the others are appended in face order.
    """
    l = l if isinstance(l, Labelling) else Labelling(l)
    check_labels_cover(p, l)
    check_unit_gaps(l)
    cycle = p.check_face(face)
    edges = p.face_edges[face]
    n = len(cycle)
    start = min(range(n), key=lambda i: l[edges[i]])
    base = [l[edges[(start + i) % n]] for i in range(n)]
    b = pyramid_labels(base)

    apex = p.vertex_count
    labels = dict(l)
    # b[i] joins the apex to the vertex after edge a_(i+1), i.e. cycle[start + i + 1]
    for i, value in enumerate(b):
        labels[edge_key(apex, cycle[(start + i + 1) % n])] = value
    triangles = [[cycle[k], cycle[(k + 1) % n], apex] for k in range(n)]
    faces = [list(f) for f in p.faces]
    faces[face] = triangles[0]
    faces.extend(triangles[1:])
    q = build_from_faces(faces, vertex_count=apex + 1)
    trace = PyramidExtensionTrace(face, apex, tuple(base), tuple(b))
    return q, Labelling(labels), trace


def pyramidalize(p: Polyhedron, l: Mapping[Edge, object]) -> tuple[Polyhedron, Labelling]:
    """Erect a pyramid over every original face; returns a canonical labelling.

    Labels are renormalized before each face so that values chosen for
    different faces cannot collide; the rank map keeps every earlier face
    coherent.
    """
    l = l if isinstance(l, Labelling) else Labelling(l)
    check_labels_cover(p, l)
    q = p
    for face in range(p.face_count):
        q, l, _ = attach_pyramid_to_face(q, normalize(l), face)
    return q, normalize(l)


def _transport(correspondence, l: Mapping[Edge, object]) -> Labelling:
    return Labelling(correspondence.transport(l))


def truncate_vertex(p: Polyhedron, l: Mapping[Edge, object], v: int) -> tuple[Polyhedron, Labelling]:
    """Replace vertex ``v`` by a face, keeping vertex coherence.

    Computed as: dual, erect a pyramid over the face dual to ``v``, dual
    back.  Labels of surviving edges keep their relative order; the result
    is canonical.
    """
    l = l if isinstance(l, Labelling) else Labelling(l)
    p._check_vertex(v)
    if not is_vertex_coherent(p, l):
        raise NotVertexCoherentError("truncate_vertex needs a vertex-coherent labelling")
    d = dual(p)
    q, lq, _ = attach_pyramid_to_face(d.dual, _transport(d, normalize(l)), v)
    back = dual(q)
    return back.dual, normalize(_transport(back, lq))


def truncate_all(p: Polyhedron, l: Mapping[Edge, object]) -> tuple[Polyhedron, Labelling]:
    """Chop off every vertex; the result is vertex-coherent for any labelling."""
    l = l if isinstance(l, Labelling) else Labelling(l)
    check_labels_cover(p, l)
    d = dual(p)
    q, lq = pyramidalize(d.dual, _transport(d, l))
    back = dual(q)
    return back.dual, normalize(_transport(back, lq))

