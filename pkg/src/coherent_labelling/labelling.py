"""Edge labellings and the cyclic-descent coherence tests.

A cyclic sequence of distinct numbers has a strictly increasing rotation
exactly when it has one cyclic descent (a position whose entry exceeds the
next one, wrapping around).  Face coherence applies this to every face's
edge sequence; vertex coherence applies it to every vertex star.

Labels are stored as :class:`fractions.Fraction` so that the attachment and
extension procedures can insert values between existing ones exactly.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabelError,
    LabelGapError,
    MissingLabelError,
    NotCanonicalError,
    NotCoherentError,
    UnknownEdgeError,
)
from .surface import Edge, Polyhedron, edge_key


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("labels must be numbers, not booleans")
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


class Labelling(Mapping):
    """Immutable mapping ``edge -> Fraction`` with pairwise distinct values."""

    __slots__ = ("_labels",)

    def __init__(self, labels: Mapping[Edge, object] | Iterable[tuple[Edge, object]] = ()):
        items = labels.items() if isinstance(labels, Mapping) else labels
        data: dict[Edge, Fraction] = {}
        for (u, v), value in items:
            data[edge_key(int(u), int(v))] = to_fraction(value)
        if len(set(data.values())) != len(data):
            seen: dict[Fraction, Edge] = {}
            for e, value in data.items():
                if value in seen:
                    raise DuplicateLabelError(f"label {value} is used by edges {seen[value]} and {e}")
                seen[value] = e
        self._labels = dict(sorted(data.items()))

    def __getitem__(self, edge: Edge) -> Fraction:
        return self._labels[edge]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Labelling):
            return self._labels == other._labels
        if isinstance(other, Mapping):
            return self._labels == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._labels.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{u}-{v}: {value}" for (u, v), value in self._labels.items())
        return f"Labelling({{{body}}})"

    def word(self, edges: Sequence[Edge]) -> tuple[Fraction, ...]:
        """Labels of ``edges`` in the given order."""
        return tuple(self._labels[e] for e in edges)

    def values_sorted(self) -> list[Fraction]:
        return sorted(self._labels.values())


def labelling_from_word(edges: Sequence[Edge], values: Sequence[object]) -> Labelling:
    if len(edges) != len(values):
        raise MissingLabelError(f"{len(values)} values for {len(edges)} edges")
    return Labelling(zip(edges, values))


def check_labels_cover(p: Polyhedron, labels: Mapping[Edge, object]) -> None:
    missing = [e for e in p.edges if e not in labels]
    if missing:
        raise MissingLabelError(f"{len(missing)} edge(s) unlabelled, first {missing[0]}")
    extra = [e for e in labels if e not in p.edge_index]
    if extra:
        raise UnknownEdgeError(f"label on non-edge {extra[0]}")


# -- descents ----------------------------------------------------------------

def descent_positions(seq: Sequence) -> tuple[int, ...]:
    """Cyclic positions ``i`` with ``seq[i] > seq[i+1 mod n]``."""
    n = len(seq)
    if n < 2:
        raise ValueError("a cyclic sequence needs at least two entries")
    if len(set(seq)) != n:
        raise DuplicateLabelError(f"repeated value in {tuple(seq)}")
    return tuple(i for i in range(n) if seq[i] > seq[(i + 1) % n])


def cyclic_descent_count(seq: Sequence) -> int:
    return len(descent_positions(seq))


def increasing_rotation_start(seq: Sequence) -> int | None:
    """Index where a strictly increasing rotation starts, or None."""
    pos = descent_positions(seq)
    if len(pos) != 1:
        return None
    return (pos[0] + 1) % len(seq)


@dataclass(frozen=True)
class DescentProfile:
    """Cyclic descent data for a family of cycles (faces or vertex stars)."""

    counts: tuple[int, ...]
    positions: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CoherenceReport:
    """Outcome of a coherence test; truthy iff every cycle has one descent."""

    kind: str
    profile: DescentProfile

    @property
    def offending(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.profile.counts) if c != 1)

    @property
    def coherent(self) -> bool:
        return not self.offending

    def __bool__(self) -> bool:
        return self.coherent

    def summary(self) -> str:
        if self.coherent:
            plural = "vertices" if self.kind == "vertex" else f"{self.kind}s"
            return f"coherent: all {len(self.profile.counts)} {plural} have one cyclic descent"
        parts = ", ".join(f"{self.kind} {i} ({self.profile.counts[i]} descents)" for i in self.offending)
        return f"incoherent: {parts}"


def _profile(cycles: Iterable[Sequence[Edge]], labels: Mapping[Edge, Fraction]) -> DescentProfile:
    positions = tuple(descent_positions([labels[e] for e in cycle]) for cycle in cycles)
    return DescentProfile(tuple(len(p) for p in positions), positions)


def face_profile(p: Polyhedron, l: Mapping[Edge, object]) -> DescentProfile:
    check_labels_cover(p, l)
    return _profile(p.face_edges, l)


def is_coherent(p: Polyhedron, l: Mapping[Edge, object]) -> CoherenceReport:
    """Every face reads, in orientation order, as a rotation of an increasing run."""
    if not isinstance(l, Labelling):
        l = Labelling(l)
    return CoherenceReport("face", face_profile(p, l))


def is_vertex_coherent(p: Polyhedron, l: Mapping[Edge, object]) -> CoherenceReport:
    """Every vertex star, read anticlockwise, has exactly one cyclic descent."""
    if not isinstance(l, Labelling):
        l = Labelling(l)
    check_labels_cover(p, l)
    stars = [p.vertex_star(v) for v in range(p.vertex_count)]
    return CoherenceReport("vertex", _profile(stars, l))


def require_coherent(p: Polyhedron, l: Mapping[Edge, object]) -> None:
    report = is_coherent(p, l)
    if not report:
        raise NotCoherentError(report.summary())


# -- rank maps ---------------------------------------------------------------

def normalize(l: Mapping[Edge, object]) -> Labelling:
    """Replace every label by its rank in ``1..E``."""
    if not isinstance(l, Labelling):
        l = Labelling(l)
    order = sorted(l, key=l.__getitem__)
    return Labelling({e: rank for rank, e in enumerate(order, start=1)})


def is_canonical(l: Mapping[Edge, object]) -> bool:
    return sorted(l.values()) == list(range(1, len(l) + 1))


def cyclic_shift(l: Mapping[Edge, object], steps: int = 1) -> Labelling:
    """Send label ``k`` to ``(k + steps - 1) mod E + 1`` on a canonical labelling."""
    if not is_canonical(l):
        raise NotCanonicalError("cyclic_shift needs labels exactly 1..E")
    E = len(l)
    return Labelling({e: (int(k) - 1 + steps) % E + 1 for e, k in l.items()})


def check_unit_gaps(l: Mapping[Edge, object]) -> None:
    """Raise unless sorted labels are at least 1 apart."""
    values = sorted(to_fraction(v) for v in l.values())
    for lo, hi in zip(values, values[1:]):
        if hi - lo < 1:
            raise LabelGapError(f"labels {lo} and {hi} are closer than 1; normalize first")
