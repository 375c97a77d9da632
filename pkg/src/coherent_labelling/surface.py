"""Abstract oriented polyhedra (combinatorial 2-spheres).

A polyhedron is stored as a vertex count plus a list of face cycles.  Every
face cycle is read anticlockwise when seen from outside, so each edge is
traversed once in each direction.  Edges, vertex rotations and the
face/edge incidences are derived from the face cycles and never stored
independently.

Conventions
-----------
- Vertices are ``0 .. V-1``.
- An edge is identified by its sorted vertex pair ``(u, v)`` with ``u < v``.
  Integer edge ids are positions in the sorted edge tuple.
- Face ``k`` is ``faces[k]``; its ``i``-th edge joins ``faces[k][i]`` and
  ``faces[k][i+1]``.
- The rotation at a vertex lists its neighbours anticlockwise (seen from
  outside), starting at the smallest neighbour.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateFaceError,
    LowDegreeVertexError,
    NonManifoldError,
    NotSphereError,
    PolyhedronError,
    UnknownEdgeError,
    UnknownFaceError,
    UnknownVertexError,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def rotate_to(cycle: Sequence, start_index: int) -> tuple:
    return tuple(cycle[start_index:]) + tuple(cycle[:start_index])


class Polyhedron:
    """Validated oriented combinatorial sphere.

    Use :func:`build_from_faces` to construct one.  Instances are immutable
    and hashable by their face data.
    """

    def __init__(self, vertex_count: int, faces: Iterable[Iterable[int]]):
        self.vertex_count = int(vertex_count)
        self.faces = tuple(tuple(int(v) for v in f) for f in faces)
        self._validate()

    def __repr__(self) -> str:
        return f"Polyhedron(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.faces))

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        V = self.vertex_count
        if V <= 0 or not self.faces:
            raise NotSphereError("a polyhedron needs at least one vertex and one face")
        darts: dict[tuple[int, int], int] = {}
        for k, face in enumerate(self.faces):
            if len(face) < 3:
                raise DegenerateFaceError(f"face {k} has {len(face)} vertices; at least 3 required")
            if len(set(face)) != len(face):
                raise DegenerateFaceError(f"face {k} repeats a vertex: {face}")
            for v in face:
                if not 0 <= v < V:
                    raise UnknownVertexError(f"face {k} references vertex {v} outside 0..{V - 1}")
            for i, u in enumerate(face):
                w = face[(i + 1) % len(face)]
                if (u, w) in darts:
                    raise NonManifoldError(
                        f"directed edge {u}->{w} occurs in faces {darts[(u, w)]} and {k}")
                darts[(u, w)] = k
        for (u, w), k in darts.items():
            if (w, u) not in darts:
                raise NonManifoldError(
                    f"edge {edge_key(u, w)} lies on face {k} only; it must be traversed in both directions")
        self._darts = darts

        neighbours: list[list[int]] = [[] for _ in range(V)]
        for u, w in darts:
            neighbours[u].append(w)
        for v, nbrs in enumerate(neighbours):
            if len(nbrs) < 3:
                raise LowDegreeVertexError(f"vertex {v} has degree {len(nbrs)}; at least 3 required")

        # ccw successor around v: a face u -> v -> w sends w to u
        succ: list[dict[int, int]] = [{} for _ in range(V)]
        for face in self.faces:
            n = len(face)
            for i, v in enumerate(face):
                succ[v][face[(i + 1) % n]] = face[i - 1]
        rotations = []
        for v in range(V):
            start = min(neighbours[v])
            cycle = [start]
            w = succ[v][start]
            while w != start:
                cycle.append(w)
                w = succ[v][w]
            if len(cycle) != len(neighbours[v]):
                raise NonManifoldError(
                    f"faces around vertex {v} form more than one cycle")
            rotations.append(tuple(cycle))
        self.rotations = tuple(rotations)

        edges = {edge_key(u, w) for u, w in darts}
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != V:
            raise NotSphereError(f"surface is disconnected ({len(seen)} of {V} vertices reachable)")
        chi = V - len(edges) + len(self.faces)
        if chi != 2:
            raise NotSphereError(f"Euler characteristic V-E+F = {chi}, expected 2")

    # -- derived data -----------------------------------------------------

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, w) for u, w in self._darts}))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def face_edges(self) -> tuple[tuple[Edge, ...], ...]:
        """Edges of each face in orientation order."""
        return tuple(
            tuple(edge_key(f[i], f[(i + 1) % len(f)]) for i in range(len(f)))
            for f in self.faces
        )

    @cached_property
    def edge_faces(self) -> dict[Edge, tuple[int, int]]:
        """For edge ``(u, v)``: (face traversing u->v, face traversing v->u)."""
        return {(u, v): (self._darts[(u, v)], self._darts[(v, u)]) for u, v in self.edges}

    def dart_face(self, u: int, v: int) -> int:
        """Face that traverses the directed edge ``u -> v``."""
        try:
            return self._darts[(u, v)]
        except KeyError:
            raise UnknownEdgeError(f"no edge {u}->{v}") from None

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._darts

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise UnknownVertexError(f"unknown vertex {v}")

    def check_face(self, k: int) -> tuple[int, ...]:
        if not 0 <= k < len(self.faces):
            raise UnknownFaceError(f"unknown face {k}")
        return self.faces[k]

    def resolve_edge(self, edge: int | Edge | Sequence[int]) -> Edge:
        """Accept an integer edge id or a vertex pair and return the edge key."""
        if isinstance(edge, int):
            if not 0 <= edge < len(self.edges):
                raise UnknownEdgeError(f"unknown edge id {edge}")
            return self.edges[edge]
        u, v = edge
        key = edge_key(int(u), int(v))
        if key not in self.edge_index:
            raise UnknownEdgeError(f"{key} is not an edge")
        return key

    def vertex_star(self, v: int) -> tuple[Edge, ...]:
        """Edges at ``v`` in anticlockwise order, starting at the lowest edge id."""
        self._check_vertex(v)
        return tuple(edge_key(v, w) for w in self.rotations[v])

    def faces_around(self, v: int) -> tuple[int, ...]:
        """Faces around ``v``; entry ``k`` lies between star edges ``k-1`` and ``k``."""
        self._check_vertex(v)
        return tuple(self._darts[(w, v)] for w in self.rotations[v])


def build_from_faces(face_cycles: Iterable[Iterable[int]], vertex_count: int | None = None) -> Polyhedron:
    """Validate face cycles over vertices ``0..V-1`` and return a polyhedron.

    ``vertex_count`` defaults to one more than the largest vertex used.
    """
    faces = [tuple(f) for f in face_cycles]
    if vertex_count is None:
        vertex_count = 1 + max((v for f in faces for v in f), default=-1)
    return Polyhedron(vertex_count, faces)


@dataclass(frozen=True)
class DualCorrespondence:
    """A dual polyhedron with the edge bijection from the primal.

    Dual vertex ``k`` is primal face ``k``; dual face ``v`` is the ring of
    primal faces around primal vertex ``v``.
    """

    dual: Polyhedron
    edge_bijection: Mapping[Edge, Edge]

    def transport(self, labels: Mapping[Edge, object]) -> dict[Edge, object]:
        """Move edge-keyed values from the primal to the dual."""
        return {self.edge_bijection[e]: value for e, value in labels.items()}

    def transport_back(self, labels: Mapping[Edge, object]) -> dict[Edge, object]:
        inverse = {d: e for e, d in self.edge_bijection.items()}
        return {inverse[d]: value for d, value in labels.items()}


def dual(p: Polyhedron) -> DualCorrespondence:
    faces = [p.faces_around(v) for v in range(p.vertex_count)]
    d = build_from_faces(faces, vertex_count=p.face_count)
    bijection = {e: edge_key(*p.edge_faces[e]) for e in p.edges}
    return DualCorrespondence(d, bijection)


def vertex_star(p: Polyhedron, v: int) -> tuple[Edge, ...]:
    return p.vertex_star(v)


# -- isomorphism -------------------------------------------------------------

def _code_from(p: Polyhedron, v0: int, w0: int, ranks: Mapping[Edge, int] | None) -> tuple[int, ...]:
    number = {v0: 0}
    order = [v0]
    entry = {v0: w0}
    code: list[int] = []
    for v in order:
        rot = p.rotations[v]
        k = rot.index(entry[v])
        code.append(-len(rot))
        for w in rot[k:] + rot[:k]:
            if w not in number:
                number[w] = len(order)
                order.append(w)
                entry[w] = v
            code.append(number[w])
            if ranks is not None:
                code.append(ranks[edge_key(v, w)])
    return tuple(code)


def canonical_form(p: Polyhedron, labels: Mapping[Edge, object] | None = None) -> tuple[int, ...]:
    """Orientation-preserving canonical code of ``p`` (and of its label order).

    Two polyhedra have equal codes iff there is an orientation-preserving
    isomorphism between them; when labels are given it must also preserve
    the relative order of labels.
    """
    ranks = None
    if labels is not None:
        ranks = {e: i for i, e in enumerate(sorted(labels, key=labels.__getitem__))}
    return min(_code_from(p, v, w, ranks) for v in range(p.vertex_count) for w in p.rotations[v])


def is_isomorphic(p: Polyhedron, q: Polyhedron) -> bool:
    if (p.vertex_count, p.edge_count, p.face_count) != (q.vertex_count, q.edge_count, q.face_count):
        return False
    return canonical_form(p) == canonical_form(q)


def relabel_vertices(p: Polyhedron, permutation: Sequence[int]) -> Polyhedron:
    """Rename vertex ``v`` to ``permutation[v]``."""
    if sorted(permutation) != list(range(p.vertex_count)):
        raise PolyhedronError("permutation must be a rearrangement of 0..V-1")
    return Polyhedron(p.vertex_count, [[permutation[v] for v in f] for f in p.faces])
