import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotransitive import registry
from pseudotransitive.classes import (
    DagInstance,
    FilamentInstance,
    GenerationFailed,
    HalfSegmentInstance,
    InvalidInstance,
    RectangleInstance,
    filament_build,
    filaments_meet,
    halfseg_build,
    halfseg_intersects,
    incomparability_build,
    overlap_graph,
    overlap_to_filament,
    rect_build,
    rect_validate,
    transitive_closure,
)
from pseudotransitive.core import A, B, STRONG_FLAGS, CycleDetected, verify_orientation

FULL = STRONG_FLAGS + ("covers_complement",)


def arcs_of(o):
    return {(u, v): b for u, v, b in o.arcs}


# --- rectangles ---------------------------------------------------------------


def test_rect_on_line_is_valid():
    assert rect_validate(RectangleInstance(((0, 0, 2, 2),))).valid


def test_rect_missing_line_is_reported():
    report = rect_validate(RectangleInstance(((0, 5, 1, 6),)))
    assert report.problems == (("misses_line", (0,)),)


def test_rect_pair_intersecting_only_above_line():
    report = rect_validate(RectangleInstance(((0, 0, 3, 3), (1, 2, 2, 5))))
    assert report.problems == (("not_below_line", (0, 1)),)
    with pytest.raises(InvalidInstance):
        rect_build(RectangleInstance(((0, 0, 3, 3), (1, 2, 2, 5))))


@pytest.mark.parametrize(
    "w, z, bucket",
    [
        ((0, 0, 1, 1), (2, 2, 3, 3), A),
        ((0, 3, 5, 4), (6, 5, 8, 7), A),
        ((0, 3, 5, 4), (2, 1, 8, 2), B),
    ],
)
def test_rect_rule(w, z, bucket):
    g, o = rect_build(RectangleInstance((w, z)))
    assert not g.edges
    assert arcs_of(o) == {(0, 1): bucket}
    assert verify_orientation(g, o).passed(FULL)


def test_rect_tie_on_x_breaks_by_y_then_index():
    # equal x_C: the lower box is the source
    g, o = rect_build(RectangleInstance(((0, 5, 6, 6), (0, -3, 1, 1))))
    assert arcs_of(o) == {(1, 0): A}


def test_rect_counterexample_to_bucket_rule():
    # all three meet y = x and the only intersecting pair meets below it,
    # yet W->Z (A) followed by Z->U (B) lands on the edge WU
    inst = RectangleInstance(((46, 15, 79, 58), (68, 69, 76, 84), (77, 47, 99, 80)))
    assert rect_validate(inst).valid
    g, o = rect_build(inst)
    assert g.edges == {(0, 2)}
    assert arcs_of(o) == {(0, 1): A, (1, 2): B}
    report = verify_orientation(g, o)
    assert report.failed() == ["a_then_e", "first_type"]
    assert report["a_then_e"].witness == (0, 1, 2)


# --- half segments ------------------------------------------------------------


def _exact_intersect(r, s):
    """Independent check: solve p + t(q-p) = p' + u(q'-p') over the rationals."""
    (p, q), (pp, qq) = ((r[0], 0), (r[1], r[2])), ((s[0], 0), (s[1], s[2]))
    d = (q[0] - p[0], q[1] - p[1])
    e = (qq[0] - pp[0], qq[1] - pp[1])
    den = d[0] * e[1] - d[1] * e[0]
    f = (pp[0] - p[0], pp[1] - p[1])
    if den == 0:
        if f[0] * d[1] - f[1] * d[0] != 0:
            return False
        dd = d[0] * d[0] + d[1] * d[1]
        t0 = Fraction(f[0] * d[0] + f[1] * d[1], dd)
        t1 = Fraction((qq[0] - p[0]) * d[0] + (qq[1] - p[1]) * d[1], dd)
        lo, hi = min(t0, t1), max(t0, t1)
        return hi >= 0 and lo <= 1
    t = Fraction(f[0] * e[1] - f[1] * e[0], den)
    u = Fraction(f[0] * d[1] - f[1] * d[0], den)
    return 0 <= t <= 1 and 0 <= u <= 1


@pytest.mark.parametrize(
    "r, s, expected",
    [
        ((0, 4, 4), (1, 2, 5), True),
        ((0, 2, 2), (5, 9, 1), False),
        ((0, 10, 10), (1, 2, 1), False),
    ],
)
def test_halfseg_intersects_examples(r, s, expected):
    assert halfseg_intersects(r, s) is expected
    assert halfseg_intersects(s, r) is expected
    assert _exact_intersect(r, s) is expected


def test_halfseg_touching_counts_as_intersection():
    # apex of s sits on r
    assert halfseg_intersects((0, 4, 4), (1, 2, 2))
    # collinear overlapping
    assert halfseg_intersects((0, 4, 4), (1, 3, 2)) is _exact_intersect((0, 4, 4), (1, 3, 2))


halfsegs = st.tuples(st.integers(-6, 6), st.integers(1, 8), st.integers(1, 6)).map(
    lambda t: (t[0], t[0] + t[1], t[2])
)


@settings(max_examples=500)
@given(halfsegs, halfsegs)
def test_halfseg_predicate_matches_rational_oracle(r, s):
    assert halfseg_intersects(r, s) == _exact_intersect(r, s)
    assert halfseg_intersects(r, s) == halfseg_intersects(s, r)


@pytest.mark.parametrize("r, s, bucket", [((0, 2, 2), (5, 9, 1), A), ((0, 10, 10), (1, 2, 1), B)])
def test_halfseg_rule(r, s, bucket):
    g, o = halfseg_build(HalfSegmentInstance((r, s)))
    assert arcs_of(o) == {(0, 1): bucket}


def test_halfseg_three_segment_instance():
    g, o = halfseg_build(HalfSegmentInstance(((0, 10, 10), (1, 2, 1), (3, 4, 1))))
    assert arcs_of(o) == {(0, 1): B, (0, 2): B, (1, 2): A}
    assert verify_orientation(g, o).passed(FULL)


def test_halfseg_invalid():
    with pytest.raises(InvalidInstance):
        halfseg_build(HalfSegmentInstance(((0, 2, 2), (0, 3, 1))))
    with pytest.raises(InvalidInstance):
        halfseg_build(HalfSegmentInstance(((3, 2, 2),)))


# --- filaments ----------------------------------------------------------------


def test_filament_nested_lower_is_b_arc():
    g, o = filament_build(FilamentInstance(((0, 10, 5), (1, 2, 3))))
    assert not g.edges
    assert arcs_of(o) == {(0, 1): B}


def test_filament_nested_taller_is_edge():
    g, o = filament_build(FilamentInstance(((0, 10, 5), (1, 2, 9))))
    assert g.edges == {(0, 1)}
    assert not o.arcs


STRESS = FilamentInstance(((0, 100, 5), (10, 20, 3), (12, 14, 1), (50, 60, 9)))


def test_filament_stress_instance():
    g, o = filament_build(STRESS)
    assert g.edges == {(0, 3)}
    assert arcs_of(o) == {(0, 1): B, (0, 2): B, (1, 2): B, (1, 3): A, (2, 3): A}
    assert verify_orientation(g, o).passed()


def test_filament_invalid():
    with pytest.raises(InvalidInstance):
        filament_build(FilamentInstance(((0, 10, 5), (10, 12, 3))))
    with pytest.raises(InvalidInstance):
        filament_build(FilamentInstance(((0, 10, 5), (1, 2, 5))))


filament_sets = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.permutations(range(2 * n)),
        st.permutations(range(1, n + 1)),
    )
).map(lambda t: FilamentInstance(tuple(
    (min(t[0][2 * i], t[0][2 * i + 1]), max(t[0][2 * i], t[0][2 * i + 1]), h) for i, h in enumerate(t[1])
)))


@settings(max_examples=200)
@given(filament_sets, st.integers(-50, 50), st.integers(1, 5))
def test_filament_edges_invariant_under_translation_and_scaling(inst, shift, k):
    moved = FilamentInstance(tuple((l + shift, r + shift, h * k) for l, r, h in inst.items))
    g, o = filament_build(inst)
    g2, o2 = filament_build(moved)
    assert g.edges == g2.edges
    assert o == o2
    assert verify_orientation(g, o).passed()


@settings(max_examples=200)
@given(filament_sets)
def test_filament_predicate_symmetric_irreflexive(inst):
    for p in inst.items:
        for q in inst.items:
            assert filaments_meet(p, q) == filaments_meet(q, p)


# --- overlap ------------------------------------------------------------------


def test_overlap_examples():
    g, o = registry.build(overlap_to_filament([(0, 3), (1, 2)]))
    assert not g.edges
    g, o = registry.build(overlap_to_filament([(0, 2), (1, 3)]))
    assert g.edges == {(0, 1)}
    g, o = registry.build(overlap_to_filament([(0, 2), (5, 6)]))
    assert arcs_of(o) == {(0, 1): A}


def test_overlap_reduction_equals_overlap_graph():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 10)
        pts = rng.sample(range(40), 2 * n)
        ivs = [tuple(sorted(pts[2 * i: 2 * i + 2])) for i in range(n)]
        g, _ = registry.build(overlap_to_filament(ivs))
        assert g.edges == overlap_graph(ivs).edges


def test_overlap_duplicate_endpoint():
    with pytest.raises(InvalidInstance):
        overlap_to_filament([(0, 2), (2, 3)])


# --- incomparability ----------------------------------------------------------


def test_chain_dag():
    g, o = incomparability_build(DagInstance(3, ((0, 1), (1, 2))))
    assert not g.edges
    assert arcs_of(o) == {(0, 1): A, (1, 2): A, (0, 2): A}


def test_antichain_dag():
    g, o = incomparability_build(DagInstance(3, ()))
    assert g.edges == {(0, 1), (0, 2), (1, 2)}
    assert not o.arcs


def test_diamond_dag():
    g, o = incomparability_build(DagInstance(4, ((0, 1), (0, 2), (1, 3), (2, 3))))
    assert g.edges == {(1, 2)}
    assert o.count(B) == 0
    assert verify_orientation(g, o).passed()


def test_cyclic_dag():
    with pytest.raises(CycleDetected):
        incomparability_build(DagInstance(2, ((0, 1), (1, 0))))
    with pytest.raises(CycleDetected):
        transitive_closure(3, [(0, 1), (1, 2), (2, 0)])


# --- generators ---------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(registry.FAMILIES))
def test_generate_is_deterministic_and_valid(name):
    for n in (1, 5, 10):
        a = registry.generate(name, n, seed=17)
        b = registry.generate(name, n, seed=17)
        assert a == b
        assert registry.instance_to_json(a) == registry.instance_to_json(b)
        assert registry.validate(a).valid


def test_generate_single_filament():
    inst = registry.generate("filaments", 1, seed=0)
    assert len(inst.items) == 1
    assert registry.validate(inst).valid


def test_generate_rectangles_pass_validator():
    for seed in range(20):
        assert rect_validate(registry.generate("rectangles", 10, seed)).valid


def test_generate_rectangles_retry_budget():
    with pytest.raises(GenerationFailed):
        registry.generate("rectangles", 30, 0, params={"span": 2, "retries": 5})


def test_generate_errors():
    with pytest.raises(ValueError):
        registry.generate("filaments", 0, 0)
    with pytest.raises(registry.UnknownClass):
        registry.generate("polygons", 3, 0)
    with pytest.raises(ValueError):
        registry.generate("dag", 3, 0, params={"p": 2})


@pytest.mark.parametrize("name", sorted(registry.FAMILIES))
def test_instance_json_round_trip(name):
    inst = registry.generate(name, 6, seed=4)
    assert registry.instance_from_json(registry.instance_to_json(inst)) == inst


# --- orientation order invariant ----------------------------------------------


def test_sources_precede_targets_in_class_order():
    for seed in range(30):
        inst = registry.generate("rectangles", 8, seed)
        _, o = rect_build(inst)
        key = lambda k: (inst.items[k][0], inst.items[k][1], k)
        assert all(key(u) < key(v) for u, v, _ in o.arcs)
        inst = registry.generate("half_segments", 8, seed)
        _, o = halfseg_build(inst)
        assert all(inst.items[u][0] < inst.items[v][0] for u, v, _ in o.arcs)
        inst = registry.generate("filaments", 8, seed)
        _, o = filament_build(inst)
        assert all(inst.items[u][0] < inst.items[v][0] for u, v, _ in o.arcs)
