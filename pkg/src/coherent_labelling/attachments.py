"""Tetrahedron attachments that keep a labelling coherent.

Each rule glues a tetrahedron onto one or two triangular faces of a
coherently labelled polyhedron and returns the new polyhedron, its
coherent labelling and an :class:`AttachmentSpec` describing what was done.

Naming inside a rule follows the target triangle ``(a, b, c)``: its edges in
orientation order, ``P0 -> P1 -> P2`` its vertices, so ``a = P0P1``,
``b = P1P2``, ``c = P2P0``.  New apex-edge labels are ``d, e, f``.

=====  =========================================================  ==========
mode   what is glued / what vanishes                              function
=====  =========================================================  ==========
A1     one face, nothing vanishes                                 attach_a1
A2     one face, edge ``b`` vanishes                              attach_a2
A3     one face, edges ``a, b`` and their common vertex vanish    attach_a3
A4     one face, its three edges and three vertices vanish        cap_triangle
A5     two faces, their common edge vanishes                      attach_a5
=====  =========================================================  ==========
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AttachmentError,
    EdgeExistsError,
    FacesDontShareEdgeError,
    FlipDegreeError,
    NeighborTooSmallError,
    NoFeasibleGapError,
    NotExpressibleError,
    NotTriangleError,
    PreconditionZBYError,
    VertexDegreeNot3Error,
    VertexNotOnFaceError,
)
from .labelling import (
    Labelling,
    cyclic_descent_count,
    cyclic_shift,
    normalize,
    require_coherent,
)
from .surface import Edge, Polyhedron, build_from_faces, edge_key, rotate_to

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class AttachmentSpec:
    mode: str
    faces: tuple[int, ...]
    edge: Edge | None = None
    vertex: int | None = None
    new_labels: dict[str, Fraction] = field(default_factory=dict)
    apex: int | None = None
    vertex_map: dict[int, int] = field(default_factory=dict)
    shift: int = 0


class _Picker:
    """Choose fresh rationals relative to a growing set of used labels."""

    def __init__(self, values: Iterable[Fraction]):
        self.taken = sorted(values)

    def _take(self, x: Fraction) -> Fraction:
        bisect.insort(self.taken, x)
        return x

    def above(self, x: Fraction) -> Fraction:
        i = bisect.bisect_right(self.taken, x)
        nxt = self.taken[i] if i < len(self.taken) else x + 1
        return self._take((x + nxt) / 2)

    def below(self, x: Fraction) -> Fraction:
        i = bisect.bisect_left(self.taken, x)
        prev = self.taken[i - 1] if i > 0 else x - 1
        return self._take((prev + x) / 2)

    def inside(self, lo: Fraction, hi: Fraction) -> Fraction:
        """Midpoint of the widest gap of ``(lo, hi)``; ties go to the lowest."""
        if not lo < hi:
            raise AttachmentError(f"empty interval ({lo}, {hi})")
        cuts = [lo] + [x for x in self.taken if lo < x < hi] + [hi]
        best = max(range(len(cuts) - 1), key=lambda i: (cuts[i + 1] - cuts[i], -i))
        return self._take((cuts[best] + cuts[best + 1]) / 2)


def _triangle(p: Polyhedron, face: int) -> tuple[int, ...]:
    cycle = p.check_face(face)
    if len(cycle) != 3:
        raise NotTriangleError(f"face {face} has {len(cycle)} edges; a triangle is required")
    return cycle


def _as_labelling(l: Mapping[Edge, object]) -> Labelling:
    return l if isinstance(l, Labelling) else Labelling(l)


def _rebuild(faces: Sequence[Sequence[int]], labels: Mapping[Edge, Fraction], vertex_count: int,
             removed: Iterable[int] = ()) -> tuple[Polyhedron, Labelling, dict[int, int]]:
    """Build the result, dropping ``removed`` vertices and compacting ids in order."""
    removed = set(removed)
    vertex_map = {}
    for v in range(vertex_count):
        if v not in removed:
            vertex_map[v] = len(vertex_map)
    new_faces = [[vertex_map[v] for v in f] for f in faces]
    new_labels = {edge_key(vertex_map[u], vertex_map[w]): x for (u, w), x in labels.items()}
    q = build_from_faces(new_faces, vertex_count=len(vertex_map))
    return q, Labelling(new_labels), vertex_map


def _oriented(cycle: Sequence[int], first: int) -> tuple[int, ...]:
    return rotate_to(cycle, list(cycle).index(first))


# -- A1 ----------------------------------------------------------------------

def attach_a1(p: Polyhedron, l: Mapping[Edge, object], face: int):
    """Glue a tetrahedron onto a triangle; no edge vanishes.

    With ``a`` the least label of the triangle the new labels satisfy
    ``f < a < e < b < c < d``; the new faces read ``(a, e, d)``,
    ``(b, f, e)`` and ``(c, d, f)``.
    """
    l = _as_labelling(l)
    cycle = _triangle(p, face)
    require_coherent(p, l)
    edges = p.face_edges[face]
    s = min(range(3), key=lambda i: l[edges[i]])
    P0, P1, P2 = rotate_to(cycle, s)
    a, b, c = (l[edge_key(P0, P1)], l[edge_key(P1, P2)], l[edge_key(P2, P0)])

    pick = _Picker(l.values())
    f_ = pick.below(a)
    e_ = pick.inside(a, b)
    d_ = pick.above(c)

    X = p.vertex_count
    labels = dict(l)
    labels[edge_key(X, P0)] = d_
    labels[edge_key(X, P1)] = e_
    labels[edge_key(X, P2)] = f_
    faces = [list(f) for f in p.faces]
    faces[face] = [P0, P1, X]
    faces.append([P1, P2, X])
    faces.append([P2, P0, X])
    q, m, vmap = _rebuild(faces, labels, X + 1)
    require_coherent(q, m)
    spec = AttachmentSpec("A1", (face,), new_labels={"d": d_, "e": e_, "f": f_},
                          apex=vmap[X], vertex_map=vmap)
    return q, m, spec


# -- A2 ----------------------------------------------------------------------

def attach_a2(p: Polyhedron, l: Mapping[Edge, object], face: int, b_edge: int | Edge):
    """Glue a tetrahedron onto a triangle so that its edge ``b`` vanishes.

    The neighbour face across ``b`` gains the path ``f, e`` in place of
    ``b``.  It must read ``z < b < y`` around ``b``; if it does not, the
    labelling is normalized and the first cyclic shift that achieves it is
    used.  The output labelling builds on the shifted values.
    """
    l = _as_labelling(l)
    cycle = _triangle(p, face)
    b_key = p.resolve_edge(b_edge)
    require_coherent(p, l)
    edges = p.face_edges[face]
    if b_key not in edges:
        raise AttachmentError(f"edge {b_key} is not on face {face}")
    i = edges.index(b_key)
    P0, P1, P2 = rotate_to(cycle, (i - 1) % 3)
    g = p.dart_face(P2, P1)
    gcyc = p.faces[g]
    j = gcyc.index(P2)
    gedges = p.face_edges[g]
    z_key, y_key = gedges[j - 1], gedges[(j + 1) % len(gcyc)]

    base = normalize(l)
    shift = None
    for k in range(len(base)):
        shifted = cyclic_shift(base, k) if k else base
        if shifted[z_key] < shifted[b_key] < shifted[y_key]:
            shift, work = k, shifted
            break
    if shift is None:
        raise PreconditionZBYError(f"no cyclic shift makes z < b < y around edge {b_key}")
    if shift == 0:
        work = l

    a, b, c = work[edge_key(P0, P1)], work[b_key], work[edge_key(P2, P0)]
    z, y = work[z_key], work[y_key]
    pick = _Picker(v for e, v in work.items())
    if a < b < c:
        f_ = pick.inside(max(a, z), b)
        e_ = pick.inside(b, min(c, y))
        d_ = pick.above(c)
    elif b < c < a:
        f_ = pick.inside(z, b)
        e_ = pick.inside(b, min(c, y))
        d_ = pick.inside(c, a)
    else:  # c < a < b
        d_ = pick.inside(c, a)
        f_ = pick.inside(max(a, z), b)
        e_ = pick.inside(b, y)

    X = p.vertex_count
    labels = {e: v for e, v in work.items() if e != b_key}
    labels[edge_key(X, P0)] = d_
    labels[edge_key(X, P1)] = e_
    labels[edge_key(X, P2)] = f_
    faces = [list(fc) for fc in p.faces]
    faces[face] = [P0, P1, X]
    faces.append([P0, X, P2])
    faces[g] = list(gcyc[: j + 1]) + [X] + list(gcyc[j + 1:])
    q, m, vmap = _rebuild(faces, labels, X + 1)
    require_coherent(q, m)
    spec = AttachmentSpec("A2", (face,), edge=b_key, new_labels={"d": d_, "e": e_, "f": f_},
                          apex=vmap[X], vertex_map=vmap, shift=shift)
    return q, m, spec


# -- A3 ----------------------------------------------------------------------

def attach_a3(p: Polyhedron, l: Mapping[Edge, object], face: int, v: int):
    """Glue a tetrahedron so that two triangle edges and their common vertex vanish.

    ``v`` must be a degree-3 vertex of the triangle.  The apex takes over its
    three edges and their labels, so no new values appear.
    """
    l = _as_labelling(l)
    cycle = _triangle(p, face)
    p._check_vertex(v)
    if v not in cycle:
        raise VertexNotOnFaceError(f"vertex {v} is not on face {face}")
    if p.degree(v) != 3:
        raise VertexDegreeNot3Error(f"vertex {v} has degree {p.degree(v)}")
    require_coherent(p, l)
    P0, P1, P2 = _oriented(cycle, v)[2], v, _oriented(cycle, v)[1]
    (W,) = set(p.rotations[v]) - {P0, P2}

    X = p.vertex_count
    labels = {}
    for (s, t), x in l.items():
        s2, t2 = (X if s == v else s), (X if t == v else t)
        labels[edge_key(s2, t2)] = x
    faces = [[X if u == v else u for u in fc] for fc in p.faces]
    q, m, vmap = _rebuild(faces, labels, X + 1, removed=[v])
    require_coherent(q, m)
    spec = AttachmentSpec(
        "A3", (face,), vertex=v,
        new_labels={"d": l[edge_key(P0, P1)], "f": l[edge_key(P1, P2)], "e": l[edge_key(W, P1)]},
        apex=vmap[X], vertex_map=vmap)
    return q, m, spec


# -- A4 ----------------------------------------------------------------------

def cap_triangle(p: Polyhedron, l: Mapping[Edge, object], face: int):
    """Cap a triangle whose three vertices have degree 3.

    The triangle, its edges and its vertices disappear; one apex joins the
    three outer neighbours and each outer edge keeps its label.
    """
    l = _as_labelling(l)
    cycle = _triangle(p, face)
    for v in cycle:
        if p.degree(v) != 3:
            raise VertexDegreeNot3Error(f"vertex {v} of face {face} has degree {p.degree(v)}")
    for k, e in enumerate(p.face_edges[face]):
        other = [g for g in p.edge_faces[e] if g != face][0]
        if len(p.faces[other]) < 4:
            raise NeighborTooSmallError(f"face {other} across {e} would collapse to two edges")
    require_coherent(p, l)

    X = p.vertex_count
    tri = set(cycle)
    labels = {}
    outer = {}
    for (s, t), x in l.items():
        if s in tri and t in tri:
            continue
        if s in tri or t in tri:
            inner, w = (s, t) if s in tri else (t, s)
            outer[inner] = w
            labels[edge_key(w, X)] = x
        else:
            labels[(s, t)] = x
    faces = []
    for k, fc in enumerate(p.faces):
        if k == face:
            continue
        mapped = [X if u in tri else u for u in fc]
        faces.append([u for i, u in enumerate(mapped) if not (u == X and mapped[i - 1] == X)])
    q, m, vmap = _rebuild(faces, labels, X + 1, removed=cycle)
    require_coherent(q, m)
    spec = AttachmentSpec("A4", (face,), apex=vmap[X], vertex_map=vmap)
    return q, m, spec


# -- A5 ----------------------------------------------------------------------

def _one_descent(*seq: Fraction) -> bool:
    return cyclic_descent_count(seq) == 1


def attach_a5(p: Polyhedron, l: Mapping[Edge, object], face1: int, face2: int):
    """Glue a tetrahedron onto two triangles sharing ``b``; ``b`` is replaced by ``f``.

    With ``face1 = (a, b, c)`` and ``face2 = (d, e, b)`` the new faces are
    ``(a, d, f)`` and ``(f, e, c)``.  ``f`` is the midpoint of the highest gap
    between surviving labels (above the maximum first) that gives both new
    faces a single descent.
    """
    l = _as_labelling(l)
    t1, t2 = p.check_face(face1), p.check_face(face2)
    if len(t1) != 3 or len(t2) != 3:
        raise NotTriangleError(f"faces {face1} and {face2} must both be triangles")
    shared = set(p.face_edges[face1]) & set(p.face_edges[face2])
    if face1 == face2 or len(shared) != 1:
        raise FacesDontShareEdgeError(f"faces {face1} and {face2} share {len(shared)} edges")
    require_coherent(p, l)
    (b_key,) = shared
    i = p.face_edges[face1].index(b_key)
    P0, P1, P2 = rotate_to(t1, (i - 1) % 3)
    (Q,) = set(t2) - {P1, P2}
    if p.has_edge(P0, Q):
        raise EdgeExistsError(f"vertices {P0} and {Q} are already joined")
    for v in (P1, P2):
        if p.degree(v) < 4:
            raise FlipDegreeError(f"vertex {v} has degree {p.degree(v)}; removing {b_key} would leave 2")
    a, c = l[edge_key(P0, P1)], l[edge_key(P2, P0)]
    d, e = l[edge_key(P1, Q)], l[edge_key(Q, P2)]

    survivors = sorted(v for k, v in l.items() if k != b_key)
    candidates = [survivors[-1] + HALF]
    candidates += [(lo + hi) / 2 for lo, hi in reversed(list(zip(survivors, survivors[1:])))]
    candidates.append(survivors[0] - HALF)
    for f_ in candidates:
        if _one_descent(a, d, f_) and _one_descent(f_, e, c):
            break
    else:
        raise NoFeasibleGapError(f"no value of f works for a={a}, c={c}, d={d}, e={e}")

    labels = {k: v for k, v in l.items() if k != b_key}
    labels[edge_key(P0, Q)] = f_
    faces = [list(fc) for fc in p.faces]
    faces[face1] = [P0, P1, Q]
    faces[face2] = [P0, Q, P2]
    q, m, vmap = _rebuild(faces, labels, p.vertex_count)
    require_coherent(q, m)
    spec = AttachmentSpec("A5", (face1, face2), edge=b_key, new_labels={"f": f_}, vertex_map=vmap)
    return q, m, spec


# -- dispatcher --------------------------------------------------------------

def attach(p: Polyhedron, l: Mapping[Edge, object], faces: Sequence[int],
           vanishing_edges: Iterable[int | Edge] = (), vanishing_vertices: Iterable[int] = ()):
    """Apply the rule matching a described tetrahedron attachment.

    ``faces`` are the identified faces; ``vanishing_edges`` and
    ``vanishing_vertices`` are the polyhedron elements the gluing removes.
    Raises :class:`NotExpressibleError` when no rule matches.
    """
    faces = list(faces)
    gone_edges = {p.resolve_edge(e) for e in vanishing_edges}
    gone_vertices = set(vanishing_vertices)
    described = f"faces={faces}, edges={sorted(gone_edges)}, vertices={sorted(gone_vertices)}"
    if len(faces) == 1:
        face = faces[0]
        cycle = _triangle(p, face)
        if not gone_edges <= set(p.face_edges[face]) or not gone_vertices <= set(cycle):
            raise AttachmentError(f"vanishing elements must lie on face {face}")
        if not gone_edges and not gone_vertices:
            return attach_a1(p, l, face)
        if len(gone_edges) == 1 and not gone_vertices:
            return attach_a2(p, l, face, next(iter(gone_edges)))
        if len(gone_edges) == 2 and len(gone_vertices) == 1:
            e1, e2 = gone_edges
            (v,) = gone_vertices
            if set(e1) & set(e2) == {v}:
                return attach_a3(p, l, face, v)
        if len(gone_edges) == 3 and len(gone_vertices) == 3:
            return cap_triangle(p, l, face)
    elif len(faces) == 2 and not gone_vertices:
        shared = set(p.face_edges[faces[0]]) & set(p.face_edges[faces[1]])
        if gone_edges == shared and len(shared) == 1:
            return attach_a5(p, l, faces[0], faces[1])
    raise NotExpressibleError(f"no attachment rule covers {described}")
