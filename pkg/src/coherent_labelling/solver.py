"""Existence, enumeration and counting of coherent labellings.

Two independent engines:

* :func:`solve_backtracking` / :func:`count_labellings` assign the values
  ``1..E`` to edges in edge-id order (values ascending) and prune partial
  assignments that already force two descents on some face.
* :func:`solve_by_rotation_selection` / :func:`count_by_rotation_selection`
  choose, for every face, which rotation is the increasing one.  A choice
  induces a strict order on the edges; it is realisable iff that digraph is
  acyclic, and its labellings are the linear extensions of the order.

Every coherent labelling has exactly one descent per face, so it determines
its rotation selection.  The selections therefore partition the labellings
and both engines must agree on status and on counts.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import CyclicInputError, TooLargeError, UnknownEdgeError
from .labelling import Labelling
from .surface import Edge, Polyhedron

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

DEFAULT_EDGE_CAP = 14
DEFAULT_SELECTION_CAP = 10**7
MAX_POSET_SIZE = 20


@dataclass(frozen=True)
class SolveResult:
    status: str
    witness: Labelling | None = None
    count: int | None = None
    nodes_explored: int = 0
    selection: tuple[int, ...] | None = None
    selections_checked: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


# -- backtracking engine -----------------------------------------------------

class _EdgeOrderSearch:
    """Depth-first assignment of values to edges in edge-id order.

    ``pruning="adjacent"`` rejects a partial assignment when some face has
    two descents between cyclically adjacent labelled edges.
    ``pruning="gaps"`` (default) reads each face's labelled edges in cyclic
    order, skipping unlabelled ones, and rejects two or more drops: a drop
    across unlabelled edges forces a descent somewhere inside the gap.  It
    also rejects an ascending stretch ``s .. t`` whose unlabelled positions
    outnumber the unused values strictly between ``s`` and ``t``.  The
    stronger test removes only dead subtrees, so witnesses and counts are
    identical; only ``nodes_explored`` differs.
    """

    def __init__(self, p: Polyhedron, pruning: str = "gaps"):
        if pruning not in ("gaps", "adjacent"):
            raise ValueError(f"unknown pruning mode {pruning!r}")
        self.p = p
        self.E = p.edge_count
        index = p.edge_index
        self.faces = [[index[e] for e in fe] for fe in p.face_edges]
        self.incident: list[list[list[int]]] = [[] for _ in range(self.E)]
        for fe in self.faces:
            for j in fe:
                self.incident[j].append(fe)
        self.gaps = pruning == "gaps"
        self.vals = [0] * self.E
        self.nodes = 0

    def _ok(self, e: int) -> bool:
        vals = self.vals
        if self.gaps:
            used = self.used
            for fe in self.incident[e]:
                # (value, unlabelled positions before the next labelled one)
                runs = []
                for j in fe:
                    v = vals[j]
                    if v:
                        runs.append([v, 0])
                    elif runs:
                        runs[-1][1] += 1
                if len(runs) < 2:
                    continue
                lead = 0
                for j in fe:
                    if vals[j]:
                        break
                    lead += 1
                runs[-1][1] += lead
                drops = 0
                for i, (s, gap) in enumerate(runs):
                    t = runs[(i + 1) % len(runs)][0]
                    if s > t:
                        drops += 1
                        if drops > 1:
                            return False
                        if gap:
                            # the wrapping stretch takes values above s or below t
                            free = 0
                            for x in range(1, t):
                                if not used[x]:
                                    free += 1
                            for x in range(s + 1, len(used)):
                                if not used[x]:
                                    free += 1
                            if free < gap:
                                return False
                    elif gap:
                        # an ascending stretch is filled from unused values in (s, t)
                        free = 0
                        for x in range(s + 1, t):
                            if not used[x]:
                                free += 1
                        if free < gap:
                            return False
        else:
            for fe in self.incident[e]:
                drops = 0
                for i in range(len(fe)):
                    a = vals[fe[i - 1]]
                    b = vals[fe[i]]
                    if a and b and a > b:
                        drops += 1
                if drops > 1:
                    return False
        return True

    def run(self, fixed: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        """Yield coherent label vectors (indexed by edge id) in lexicographic order."""
        fixed = dict(fixed or {})
        E = self.E
        used = self.used = [False] * (E + 1)
        for e, value in fixed.items():
            self.vals[e] = value
            used[value] = True
        for e in fixed:
            if not self._ok(e):
                return
        free = [e for e in range(E) if e not in fixed]
        values = range(1, E + 1)

        def dfs(i: int) -> Iterator[tuple[int, ...]]:
            if i == len(free):
                yield tuple(self.vals)
                return
            e = free[i]
            for x in values:
                if used[x]:
                    continue
                self.vals[e] = x
                used[x] = True
                self.nodes += 1
                if self._ok(e):
                    yield from dfs(i + 1)
                used[x] = False
                self.vals[e] = 0

        yield from dfs(0)


def _as_labelling(p: Polyhedron, vector: Sequence[int]) -> Labelling:
    return Labelling(zip(p.edges, vector))


def solve_backtracking(p: Polyhedron, *, pruning: str = "gaps") -> SolveResult:
    """First coherent labelling in lexicographic order of the label vector."""
    search = _EdgeOrderSearch(p, pruning)
    for vector in search.run():
        return SolveResult(FEASIBLE, _as_labelling(p, vector), nodes_explored=search.nodes)
    return SolveResult(INFEASIBLE, nodes_explored=search.nodes)


def count_labellings(p: Polyhedron, *, cap: int = DEFAULT_EDGE_CAP, pruning: str = "gaps") -> int:
    """Exact number of coherent labellings with values ``1..E``."""
    if p.edge_count > cap:
        raise TooLargeError(f"E = {p.edge_count} exceeds the exhaustive-search cap {cap}")
    search = _EdgeOrderSearch(p, pruning)
    return sum(1 for _ in search.run())


def enumerate_with_fixed_minimum(p: Polyhedron, edge: int | Edge, *, pruning: str = "gaps") -> list[Labelling]:
    """All coherent canonical labellings giving ``edge`` the label 1.

    Results are in lexicographic order of the label vector (edge-id order).
    """
    try:
        key = p.resolve_edge(edge)
    except (TypeError, ValueError) as exc:
        raise UnknownEdgeError(f"unknown edge {edge!r}") from exc
    search = _EdgeOrderSearch(p, pruning)
    return [_as_labelling(p, v) for v in search.run(fixed={p.edge_index[key]: 1})]


# -- partial orders ----------------------------------------------------------

def _lex_topological_order(n: int, arcs: Iterable[tuple[int, int]]) -> list[int] | None:
    """Smallest topological order of ``0..n-1`` (Kahn with a heap), None if cyclic."""
    succ: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for a, b in arcs:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == n else None


def find_cycle(n: int, arcs: Iterable[tuple[int, int]]) -> list[int] | None:
    """Return the vertices of some directed cycle, or None when acyclic."""
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        succ[a].append(b)
    colour = [0] * n
    parent = [-1] * n
    for root in range(n):
        if colour[root]:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if colour[w] == 0:
                    colour[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    break
                if colour[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    return cycle[::-1]
            else:
                colour[v] = 2
                stack.pop()
    return None


def _count_extensions_masks(n: int, preds: Sequence[int]) -> int:
    layer = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = defaultdict(int)
        for mask, ways in layer.items():
            for x in range(n):
                bit = 1 << x
                if not mask & bit and preds[x] & ~mask == 0:
                    nxt[mask | bit] += ways
        layer = nxt
    return layer.get((1 << n) - 1, 0)


def count_linear_extensions(relations: Iterable[tuple[Hashable, Hashable]],
                            elements: Iterable[Hashable] | None = None) -> int:
    """Number of linear extensions of the strict order generated by ``relations``.

    ``relations`` holds pairs ``(a, b)`` meaning ``a < b``.  Elements that
    occur in no relation may be listed in ``elements``.  Uses dynamic
    programming over down-sets, so at most 20 elements are accepted.
    """
    relations = list(relations)
    universe = list(dict.fromkeys(list(elements or []) + [x for r in relations for x in r]))
    n = len(universe)
    if n > MAX_POSET_SIZE:
        raise TooLargeError(f"{n} elements; at most {MAX_POSET_SIZE} supported")
    pos = {x: i for i, x in enumerate(universe)}
    arcs = [(pos[a], pos[b]) for a, b in relations]
    if any(a == b for a, b in arcs) or _lex_topological_order(n, arcs) is None:
        raise CyclicInputError("relations contain a cycle")
    preds = [0] * n
    for a, b in arcs:
        preds[b] |= 1 << a
    return _count_extensions_masks(n, preds)


# -- rotation-selection engine -----------------------------------------------

def selection_arcs(p: Polyhedron, selection: Sequence[int]) -> list[tuple[int, int]]:
    """Arcs ``a_i -> a_{i+1}`` (edge ids) of the increasing rotation chosen per face.

    ``selection[k]`` is the position in face ``k`` where its increasing
    rotation starts.
    """
    index = p.edge_index
    arcs = []
    for fe, s in zip(p.face_edges, selection):
        n = len(fe)
        chain = [index[fe[(s + i) % n]] for i in range(n)]
        arcs.extend(zip(chain, chain[1:]))
    return arcs


def iter_selections(p: Polyhedron, pinned: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Rotation selections in mixed-radix order (last face varies fastest)."""
    pinned = pinned or {}
    ranges = [
        (pinned[k],) if k in pinned else range(len(f))
        for k, f in enumerate(p.faces)
    ]
    return itertools.product(*ranges)


def _selection_space(p: Polyhedron, pinned: Mapping[int, int] | None, cap: int) -> int:
    pinned = pinned or {}
    size = math.prod(1 if k in pinned else len(f) for k, f in enumerate(p.faces))
    if size > cap:
        raise TooLargeError(f"{size} rotation selections exceed the cap {cap}")
    return size


def solve_by_rotation_selection(p: Polyhedron, *, pinned: Mapping[int, int] | None = None,
                                cap: int = DEFAULT_SELECTION_CAP) -> SolveResult:
    """Search rotation selections for one whose inequality digraph is acyclic.

    ``pinned`` fixes the selection of some faces.  The witness ranks the
    lexicographically smallest topological order of the first acyclic
    selection.
    """
    _selection_space(p, pinned, cap)
    E = p.edge_count
    checked = 0
    for selection in iter_selections(p, pinned):
        checked += 1
        order = _lex_topological_order(E, selection_arcs(p, selection))
        if order is not None:
            labels = {p.edges[e]: rank for rank, e in enumerate(order, start=1)}
            return SolveResult(FEASIBLE, Labelling(labels), nodes_explored=checked,
                               selection=tuple(selection), selections_checked=checked)
    return SolveResult(INFEASIBLE, nodes_explored=checked, selections_checked=checked)


def count_by_rotation_selection(p: Polyhedron, *, cap: int = DEFAULT_SELECTION_CAP) -> int:
    """Sum over acyclic selections of the number of linear extensions."""
    _selection_space(p, None, cap)
    E = p.edge_count
    if E > MAX_POSET_SIZE:
        raise TooLargeError(f"E = {E}; linear-extension counting supports at most {MAX_POSET_SIZE}")
    total = 0
    for selection in iter_selections(p):
        arcs = selection_arcs(p, selection)
        if _lex_topological_order(E, arcs) is None:
            continue
        preds = [0] * E
        for a, b in arcs:
            preds[b] |= 1 << a
        total += _count_extensions_masks(E, preds)
    return total


@dataclass
class SelectionCensus:
    """Tally of rotation selections, optionally grouped by one face's choice."""

    total: int = 0
    acyclic: int = 0
    by_choice: dict[int, tuple[int, int]] = field(default_factory=dict)


def selection_census(p: Polyhedron, *, pinned: Mapping[int, int] | None = None,
                     group_face: int | None = None, cap: int = DEFAULT_SELECTION_CAP) -> SelectionCensus:
    """Count all and acyclic selections; ``by_choice[c] = (total, acyclic)`` for ``group_face``."""
    _selection_space(p, pinned, cap)
    census = SelectionCensus()
    groups: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for selection in iter_selections(p, pinned):
        acyclic = _lex_topological_order(p.edge_count, selection_arcs(p, selection)) is not None
        census.total += 1
        census.acyclic += acyclic
        if group_face is not None:
            g = groups[selection[group_face]]
            g[0] += 1
            g[1] += acyclic
    census.by_choice = {k: (v[0], v[1]) for k, v in sorted(groups.items())}
    return census
