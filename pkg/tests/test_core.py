import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotransitive.core import (
    A,
    B,
    FLAGS,
    BiOrientation,
    CycleDetected,
    DimensionMismatch,
    WeightedGraph,
    complement,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    orientation_from_json,
    orientation_to_dot,
    orientation_to_json,
    topological_order,
    verify_orientation,
)


def empty(n):
    return WeightedGraph(n)


def stress_pair():
    # vertices 1..4 of the worked example relabelled to 0..3
    g = WeightedGraph(4, [(0, 3)])
    o = BiOrientation(4, [(0, 1, B), (0, 2, B), (1, 2, B), (1, 3, A), (2, 3, A)])
    return g, o


# --- complement ---------------------------------------------------------------


def test_complement_of_triangle_is_empty():
    k3 = WeightedGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert complement(k3).edges == frozenset()


def test_complement_of_empty_is_triangle():
    assert complement(empty(3)).edges == {(0, 1), (0, 2), (1, 2)}


def test_complement_of_path():
    path = WeightedGraph(3, [(0, 1), (1, 2)], [4, 5, 6])
    c = complement(path)
    assert c.edges == {(0, 2)}
    assert c.weights == (4, 5, 6)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = draw(st.lists(st.integers(0, 50), min_size=n, max_size=n))
    return WeightedGraph(n, edges, weights)


@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        WeightedGraph(2, [], [1, -1])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 5)])


# --- verifier -----------------------------------------------------------------


def test_transitive_tournament_passes_everything():
    o = BiOrientation(3, [(0, 1, A), (1, 2, A), (0, 2, A)])
    report = verify_orientation(empty(3), o, check_cover=True)
    assert report.passed()
    assert all(report[f].witness is None for f in FLAGS)


def test_stress_orientation_is_strongly_pseudo_transitive():
    g, o = stress_pair()
    report = verify_orientation(g, o, check_cover=True)
    assert report.passed()
    assert report.strongly_pseudo_transitive()


def test_missing_composed_arc_example():
    o = BiOrientation(3, [(0, 1, A), (1, 2, A)])
    report = verify_orientation(empty(3), o, check_cover=True)
    assert not report["covers_complement"].passed
    assert report["covers_complement"].witness == (0, 2)
    assert not report["a_transitive"].passed
    assert report["a_transitive"].witness == (0, 1, 2)


def test_composed_arc_in_wrong_bucket_fails_only_a_transitivity():
    o = BiOrientation(3, [(0, 1, A), (1, 2, A), (0, 2, B)])
    report = verify_orientation(empty(3), o, check_cover=True)
    # first_type strengthens a_then_e and implies a_transitive, so it co-fails
    assert report.failed() == ["a_transitive", "first_type"]
    assert report["a_transitive"].witness == (0, 1, 2)


def test_b_transitivity_violation():
    o = BiOrientation(3, [(0, 1, B), (1, 2, B), (0, 2, A)])
    report = verify_orientation(empty(3), o, check_cover=True)
    assert report.failed() == ["b_transitive"]
    assert report["b_transitive"].witness == (0, 1, 2)


def test_coverage_gap_and_arc_on_edge():
    gap = verify_orientation(empty(3), BiOrientation(3, [(0, 1, A)]), check_cover=True)
    assert gap.failed() == ["covers_complement"]
    assert gap["covers_complement"].witness == (0, 2)

    g = WeightedGraph(2, [(0, 1)])
    on_edge = verify_orientation(g, BiOrientation(2, [(0, 1, A)]), check_cover=True)
    assert on_edge.failed() == ["covers_complement"]
    assert on_edge["covers_complement"].witness == (0, 1)


def test_cover_flag_absent_without_check():
    report = verify_orientation(empty(3), BiOrientation(3, [(0, 1, A)]), check_cover=False)
    assert "covers_complement" not in report.flags
    assert report.passed()


def test_structural_failures():
    both = BiOrientation(2, [(0, 1, A), (0, 1, B)])
    report = verify_orientation(empty(2), both, check_cover=False)
    assert report["bucket_disjointness"].witness == (0, 1)

    two_cycle = BiOrientation(2, [(0, 1, A), (1, 0, B)])
    report = verify_orientation(empty(2), two_cycle, check_cover=False)
    assert report["antisymmetry"].witness == (0, 1)
    assert not report["acyclicity"].passed

    three_cycle = BiOrientation(3, [(0, 1, B), (1, 2, B), (2, 0, B)])
    report = verify_orientation(empty(3), three_cycle, check_cover=False)
    assert report["antisymmetry"].passed
    assert sorted(report["acyclicity"].witness) == [0, 1, 2]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        verify_orientation(empty(2), BiOrientation(3), check_cover=True)


@st.composite
def orientations(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.permutations(range(n), 2))
    arcs = draw(st.lists(st.tuples(st.sampled_from(pairs), st.sampled_from([A, B])), max_size=12)) if pairs else []
    edges = draw(st.lists(st.sampled_from(list(itertools.combinations(range(n), 2))), unique=True)) if n > 1 else []
    return WeightedGraph(n, edges), BiOrientation(n, [(u, v, b) for (u, v), b in arcs])


def _violates(flag, labels, g, witness):
    lab = lambda u, v: labels.get((u, v))
    if flag == "antisymmetry":
        u, v = witness
        return u == v or (lab(u, v) and lab(v, u))
    if flag == "acyclicity":
        cyc = list(witness)
        return all(lab(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    if flag == "covers_complement":
        u, v = witness
        return bool(lab(u, v) or lab(v, u)) == g.has_edge(u, v)
    a, b, c = witness
    if flag == "a_transitive":
        return lab(a, b) == A and lab(b, c) == A and lab(a, c) != A
    if flag == "b_transitive":
        return lab(a, b) == B and lab(b, c) == B and lab(a, c) != B
    if flag == "a_then_e":
        return lab(a, b) == A and lab(b, c) is not None and lab(a, c) is None
    if flag == "first_type":
        return lab(a, b) == A and lab(b, c) is not None and lab(a, c) != A
    raise AssertionError(flag)


@settings(max_examples=200)
@given(orientations())
def test_witnesses_replay(pair):
    g, o = pair
    report = verify_orientation(g, o, check_cover=True)
    assert report == verify_orientation(g, o, check_cover=True)
    labels = o.labels()
    for flag in FLAGS:
        res = report[flag]
        assert (res.witness is None) == res.passed
        if not res.passed and flag != "bucket_disjointness":
            assert _violates(flag, labels, g, res.witness), flag


@settings(max_examples=200)
@given(orientations())
def test_flags_match_brute_force_triples(pair):
    g, o = pair
    if any(u == v for u, v, _ in o.arcs):
        return
    labels = o.labels()
    report = verify_orientation(g, o, check_cover=False)
    n = o.n
    lab = lambda u, v: labels.get((u, v))
    triples = list(itertools.product(range(n), repeat=3))
    expect = {
        "a_transitive": not any(lab(a, b) == A and lab(b, c) == A and lab(a, c) != A for a, b, c in triples),
        "b_transitive": not any(lab(a, b) == B and lab(b, c) == B and lab(a, c) != B for a, b, c in triples),
        "a_then_e": not any(lab(a, b) == A and lab(b, c) and not lab(a, c) for a, b, c in triples),
        "first_type": not any(lab(a, b) == A and lab(b, c) and lab(a, c) != A for a, b, c in triples),
    }
    for flag, ok in expect.items():
        assert report[flag].passed == ok, flag


# --- topological order --------------------------------------------------------


def test_topological_chain():
    assert topological_order(BiOrientation(3, [(0, 1, A), (1, 2, B)])) == [0, 1, 2]


def test_topological_cycle():
    with pytest.raises(CycleDetected) as info:
        topological_order(BiOrientation(2, [(0, 1, A), (1, 0, A)]))
    assert sorted(info.value.cycle) == [0, 1]


def test_topological_stress_order_is_unique():
    _, o = stress_pair()
    assert topological_order(o) == [0, 1, 2, 3]


def test_topological_tie_break_smallest_index():
    assert topological_order(BiOrientation(4, [(3, 0, A)])) == [1, 2, 3, 0]


# --- serialization ------------------------------------------------------------


def test_json_round_trip_and_field_order():
    g, o = stress_pair()
    gj, oj = graph_to_json(g), orientation_to_json(o)
    assert list(gj) == ["n", "edges", "weights"]
    assert list(oj["arcs"][0]) == ["from", "to", "bucket"]
    assert graph_from_json(json.loads(json.dumps(gj))) == g
    assert orientation_from_json(json.loads(json.dumps(oj))) == o
    report = verify_orientation(g, o).to_dict()
    assert list(report) == list(FLAGS)
    assert report["a_then_e"] == {"pass": True, "witness": None}


def test_dot_styles():
    g, o = stress_pair()
    dot = orientation_to_dot(o)
    assert "0 -> 1 [style=dashed" in dot
    assert "1 -> 3 [style=solid" in dot
    assert "0 -- 3;" in graph_to_dot(g)
