import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coherent_labelling import is_coherent, is_canonical
from coherent_labelling.constructions import bipyramid, catalog, cuboid, cuboid_layout, octahedron, prism, pyramid, tetrahedron
from coherent_labelling.errors import CyclicInputError, TooLargeError, UnknownEdgeError
from coherent_labelling.solver import (
    FEASIBLE,
    INFEASIBLE,
    count_by_rotation_selection,
    count_labellings,
    count_linear_extensions,
    enumerate_with_fixed_minimum,
    find_cycle,
    selection_arcs,
    selection_census,
    solve_backtracking,
    solve_by_rotation_selection,
)

from oracles import brute_force_labellings, brute_force_linear_extensions

# counts beyond the tetrahedron and cube, frozen after the two engines
# (and, for E <= 9, the permutation oracle) agreed
FROZEN_COUNTS = {
    "pyramid:3": 48,
    "pyramid:4": 376,
    "pyramid:5": 2440,
    "pyramid:6": 14232,
    "prism:3": 0,
    "prism:5": 0,
    "bipyramid:3": 6012,
}


def vector(p, l):
    return tuple(int(l[e]) for e in p.edges)


@pytest.mark.parametrize("name", ["tetrahedron", "pyramid:4", "prism:3", "bipyramid:3"])
def test_enumeration_equals_permutation_oracle(name):
    p = catalog(name)[0]
    oracle = brute_force_labellings(p.faces)
    assert count_labellings(p) == len(oracle)
    assert count_by_rotation_selection(p) == len(oracle)
    witness = solve_backtracking(p).witness
    if oracle:
        assert vector(p, witness) == min(oracle)
    else:
        assert witness is None


def test_tetrahedron_counts_48():
    p = tetrahedron().polyhedron
    assert count_labellings(p) == 48
    assert count_by_rotation_selection(p) == 48


@pytest.mark.parametrize("name, expected", sorted(FROZEN_COUNTS.items()))
def test_frozen_counts(name, expected):
    p = catalog(name)[0]
    assert count_by_rotation_selection(p) == expected
    if p.edge_count <= 10:
        assert count_labellings(p) == expected


def test_octahedron_count_from_selection_engine():
    assert count_by_rotation_selection(octahedron()) == 2094048


@pytest.mark.parametrize("name", ["pyramid:4", "prism:3", "bipyramid:3", "tetrahedron"])
def test_pruning_modes_agree(name):
    p = catalog(name)[0]
    assert count_labellings(p, pruning="adjacent") == count_labellings(p, pruning="gaps")
    a = solve_backtracking(p, pruning="adjacent")
    g = solve_backtracking(p, pruning="gaps")
    assert a.witness == g.witness
    assert g.nodes_explored <= a.nodes_explored


def test_cube_is_infeasible_for_both_engines():
    p = cuboid()
    bt = solve_backtracking(p)
    rs = solve_by_rotation_selection(p)
    assert bt.status == rs.status == INFEASIBLE
    assert bt.witness is None and rs.witness is None
    assert rs.selections_checked == 4 ** 6
    assert count_by_rotation_selection(p) == 0


def test_cube_first_face_pinned_every_second_face_choice_fails():
    layout = cuboid_layout()
    p = layout.polyhedron
    assert layout.face_symbols(0) == ("x1", "x2", "x3", "x4")
    census = selection_census(p, pinned={0: 0}, group_face=1)
    assert census.total == 4 ** 5 and census.acyclic == 0
    assert census.by_choice == {c: (256, 0) for c in range(4)}
    assert solve_by_rotation_selection(p, pinned={0: 0}).status == INFEASIBLE


@pytest.mark.parametrize("name", ["tetrahedron", "cuboid", "pyramid:5", "prism:4", "bipyramid:4", "pyramid:7"])
def test_engines_agree_on_status_and_witnesses_are_coherent(name):
    p = catalog(name)[0]
    rs = solve_by_rotation_selection(p)
    if p.edge_count <= 14:
        assert solve_backtracking(p).status == rs.status
    if rs.feasible:
        assert is_coherent(p, rs.witness) and is_canonical(rs.witness)
        assert not find_cycle(p.edge_count, selection_arcs(p, rs.selection))


def test_tetrahedron_selection_for_the_x1_least_chain():
    # x2<x6<x4 on (x2,x6,x4) and x5<x3<x4 on (x3,x4,x5), with x1 least on its faces
    layout = tetrahedron()
    p = layout.polyhedron
    starts = {("x1", "x2", "x3"): "x1", ("x2", "x6", "x4"): "x2",
              ("x3", "x4", "x5"): "x5", ("x1", "x5", "x6"): "x1"}
    selection = []
    for k in range(p.face_count):
        symbols = layout.face_symbols(k)
        key = next(s for s in starts if set(s) == set(symbols))
        selection.append(symbols.index(starts[key]))
    arcs = selection_arcs(p, selection)
    assert find_cycle(p.edge_count, arcs) is None
    assert count_linear_extensions(arcs, range(p.edge_count)) == 4
    r = solve_by_rotation_selection(p, pinned=dict(enumerate(selection)))
    assert r.feasible and r.witness[layout.edge("x1")] == 1


def test_enumerate_with_fixed_minimum():
    layout = tetrahedron()
    p = layout.polyhedron
    found = enumerate_with_fixed_minimum(p, layout.edge("x1"))
    assert len(found) == 8
    assert all(l[layout.edge("x1")] == 1 and is_coherent(p, l) for l in found)
    assert [vector(p, l) for l in found] == sorted(vector(p, l) for l in found)
    assert enumerate_with_fixed_minimum(p, p.edge_index[layout.edge("x1")]) == found
    with pytest.raises(UnknownEdgeError):
        enumerate_with_fixed_minimum(p, (0, 0))


def test_fixed_minimum_counts_partition_the_total():
    # every labelling puts label 1 on exactly one edge
    p = pyramid(4)[0]
    counts = [len(enumerate_with_fixed_minimum(p, e)) for e in p.edges]
    assert sum(counts) == 376


def test_count_cap():
    with pytest.raises(TooLargeError):
        count_labellings(prism(8))
    with pytest.raises(TooLargeError):
        solve_by_rotation_selection(prism(12), cap=1000)


def test_linear_extension_examples():
    chain = [(i, i + 1) for i in range(5)]
    assert count_linear_extensions(chain) == 1
    case3 = [("x1", "x2"), ("x1", "x5"), ("x2", "x3"), ("x2", "x6"), ("x5", "x3"), ("x5", "x6"),
             ("x3", "x4"), ("x6", "x4")]
    assert count_linear_extensions(case3) == 4
    assert count_linear_extensions([], elements="abcd") == 24
    with pytest.raises(CyclicInputError):
        count_linear_extensions([(1, 2), (2, 3), (3, 1)])
    with pytest.raises(CyclicInputError):
        count_linear_extensions([(1, 1)])
    with pytest.raises(TooLargeError):
        count_linear_extensions([], elements=range(21))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_linear_extensions_match_permutation_oracle(n, rng):
    relations = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3]
    perm = list(range(n))
    rng.shuffle(perm)
    relations = [(perm[a], perm[b]) for a, b in relations]
    assert count_linear_extensions(relations, range(n)) == brute_force_linear_extensions(range(n), relations)


def test_find_cycle_returns_a_real_cycle():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randrange(2, 9)
        arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n + 2)]
        cycle = find_cycle(n, arcs)
        if cycle is not None:
            arc_set = set(arcs)
            assert all((cycle[i], cycle[(i + 1) % len(cycle)]) in arc_set for i in range(len(cycle)))


def test_solve_result_fields():
    r = solve_backtracking(bipyramid(3)[0])
    assert r.status == FEASIBLE and r.feasible and r.nodes_explored > 0
