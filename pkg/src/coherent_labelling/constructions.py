"""Catalog of concrete polyhedra, some with explicit coherent labellings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InvalidNError, PolyhedronError
from .labelling import Labelling, normalize
from .surface import Edge, Polyhedron, build_from_faces, edge_key


@dataclass(frozen=True)
class Layout:
    """A polyhedron whose edges carry the symbols ``x1, x2, ...``."""

    polyhedron: Polyhedron
    symbol_map: Mapping[Edge, str]

    def edge(self, symbol: str) -> Edge:
        for e, s in self.symbol_map.items():
            if s == symbol:
                return e
        raise KeyError(symbol)

    @property
    def symbols(self) -> list[str]:
        return sorted(self.symbol_map.values(), key=lambda s: int(s[1:]))

    def face_symbols(self, face: int) -> tuple[str, ...]:
        return tuple(self.symbol_map[e] for e in self.polyhedron.face_edges[face])

    def labelling(self, values: Mapping[str, object]) -> Labelling:
        return Labelling({self.edge(s): v for s, v in values.items()})

    def from_word(self, word: str | tuple) -> Labelling:
        """Labelling with ``x_i`` set to the ``i``-th entry of ``word``."""
        values = [int(c) for c in word] if isinstance(word, str) else list(word)
        return self.labelling({f"x{i}": v for i, v in enumerate(values, start=1)})

    def word(self, l: Mapping[Edge, object]) -> tuple:
        return tuple(l[self.edge(s)] for s in self.symbols)


def _from_edge_cycles(edge_faces: list[tuple[str, ...]]) -> Layout:
    """Recover vertex cycles from faces given as cyclic sequences of edge symbols.

    Consecutive edges of a face meet at a vertex; each edge is traversed in
    opposite directions by its two faces.
    """
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    ends: dict[str, list] = {}
    for f, names in enumerate(edge_faces):
        n = len(names)
        for i, name in enumerate(names):
            ends.setdefault(name, []).append(((f, (i - 1) % n), (f, i)))
    for name, pair in ends.items():
        if len(pair) != 2:
            raise PolyhedronError(f"edge {name} must lie on two faces")
        (s1, t1), (s2, t2) = pair
        parent[find(s1)] = find(t2)
        parent[find(t1)] = find(s2)
    roots = sorted({find(x) for x in list(parent)})
    vid = {r: k for k, r in enumerate(roots)}
    cycles = [[vid[find((f, (i - 1) % len(names)))] for i in range(len(names))]
              for f, names in enumerate(edge_faces)]
    p = build_from_faces(cycles)
    symbols = {}
    for f, names in enumerate(edge_faces):
        for e, name in zip(p.face_edges[f], names):
            symbols[e] = name
    return Layout(p, symbols)


TETRAHEDRON_FACES = (("x1", "x2", "x3"), ("x2", "x6", "x4"), ("x3", "x4", "x5"), ("x1", "x5", "x6"))
TETRAHEDRON_OPPOSITE_PAIRS = (("x1", "x4"), ("x2", "x5"), ("x3", "x6"))

CUBOID_FACES = (
    ("x1", "x2", "x3", "x4"),
    ("x5", "x6", "x7", "x2"),
    ("x11", "x10", "x8", "x6"),
    ("x12", "x4", "x9", "x10"),
    ("x3", "x7", "x8", "x9"),
    ("x1", "x12", "x11", "x5"),
)


def tetrahedron() -> Layout:
    layout = _from_edge_cycles(list(TETRAHEDRON_FACES))
    for a, b in TETRAHEDRON_OPPOSITE_PAIRS:
        if set(layout.edge(a)) & set(layout.edge(b)):
            raise AssertionError(f"{a} and {b} must be opposite edges")
    return layout


def cuboid_layout() -> Layout:
    """Cube whose face ``k`` reads the symbol cycle ``CUBOID_FACES[k]``."""
    return _from_edge_cycles(list(CUBOID_FACES))


def cuboid() -> Polyhedron:
    return cuboid_layout().polyhedron


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise InvalidNError(f"n must be an integer >= 3, got {n!r}")


def pyramid(n: int) -> tuple[Polyhedron, Labelling]:
    """Pyramid over an n-gon with the standard coherent labelling.

    Base vertices are ``0..n-1`` and the apex is ``n``.  Base edge ``i`` joins
    ``i`` and ``i+1``; its side face reads (base edge, apex edge at ``i``,
    apex edge at ``i+1``).  The base reads 3, 4, n+3, n+4, ..., 2n and the
    apex edges at vertices 0, 1, 2, 3, 4.. carry n+1, n+2, 1, 2, 5.. n.
    """
    _check_n(n)
    base = list(range(n))
    faces = [base] + [[(i + 1) % n, i, n] for i in range(n)]
    p = build_from_faces(faces)
    base_labels = [3, 4] + list(range(n + 3, 2 * n + 1))
    if n == 3:
        # n+1 = 4 collides with a base label; rotate the apex labels instead
        apex_labels = [5, 1, 2]
    else:
        apex_labels = [n + 1, n + 2, 1, 2] + list(range(5, n + 1))
    labels = {edge_key(i, (i + 1) % n): base_labels[i] for i in range(n)}
    labels.update({edge_key(i, n): apex_labels[i] for i in range(n)})
    return p, Labelling(labels)


def prism(n: int) -> Polyhedron:
    """n-gonal prism: bottom ``0..n-1``, top ``n..2n-1``."""
    _check_n(n)
    faces = [list(range(n - 1, -1, -1)), list(range(n, 2 * n))]
    faces += [[i, (i + 1) % n, n + (i + 1) % n, n + i] for i in range(n)]
    return build_from_faces(faces)


def bipyramid(n: int) -> tuple[Polyhedron, Labelling]:
    """Pyramid over the base face of :func:`pyramid`, labels normalized."""
    from .extension import attach_pyramid_to_face

    p, l = pyramid(n)
    q, m, _ = attach_pyramid_to_face(p, l, 0)
    return q, normalize(m)


def octahedron() -> Polyhedron:
    return bipyramid(4)[0]


CATALOG_NAMES = ("tetrahedron", "cuboid", "pyramid:n", "bipyramid:n", "prism:n")


def catalog(name: str) -> tuple[Polyhedron, Labelling | None]:
    """Build a catalog entry by name, e.g. ``pyramid:5``."""
    base, _, arg = name.partition(":")
    if base in ("tetrahedron", "cuboid", "cube") and arg:
        raise ValueError(f"{base} takes no parameter")
    if base == "tetrahedron":
        layout = tetrahedron()
        return layout.polyhedron, layout.from_word("124635")
    if base in ("cuboid", "cube"):
        return cuboid(), None
    if base in ("pyramid", "bipyramid", "prism"):
        try:
            n = int(arg)
        except ValueError:
            raise InvalidNError(f"{name!r}: expected {base}:n with an integer n") from None
        if base == "prism":
            return prism(n), None
        return (pyramid if base == "pyramid" else bipyramid)(n)
    raise ValueError(f"unknown catalog name {name!r}; known: {', '.join(CATALOG_NAMES)}")
