"""Geometric instance families and their complement orientations.

Every ``*_build`` function returns ``(graph, orientation)`` where the graph is
the intersection graph of the instance and the orientation covers exactly its
non-edges.  All coordinates are integers and every predicate is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import A, B, BiOrientation, CycleDetected, WeightedGraph, topological_order


class InvalidInstance(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f"{kind} at {where}" for kind, where in report.problems))


class GenerationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class ValidityReport:
    problems: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "problems": [{"kind": k, "where": list(w)} for k, w in self.problems],
        }


def _weights(weights, n):
    weights = tuple(int(w) for w in weights) if weights is not None else (1,) * n
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    return weights


@dataclass(frozen=True)
class RectangleInstance:
    """Closed boxes ``(x1, y1, x2, y2)`` that all meet the line y = x."""

    items: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(tuple(int(c) for c in it) for it in self.items))
        object.__setattr__(self, "weights", _weights(self.weights, len(self.items)))


@dataclass(frozen=True)
class HalfSegmentInstance:
    """Segments from ``(foot_x, 0)`` to ``(apex_x, apex_y)``."""

    items: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(tuple(int(c) for c in it) for it in self.items))
        object.__setattr__(self, "weights", _weights(self.weights, len(self.items)))


@dataclass(frozen=True)
class FilamentInstance:
    """Hat-shaped filaments: a curve of height ``h`` over the interval ``[l, r]``."""

    items: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(tuple(int(c) for c in it) for it in self.items))
        object.__setattr__(self, "weights", _weights(self.weights, len(self.items)))


@dataclass(frozen=True)
class DagInstance:
    n: int
    arcs: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted({(int(u), int(v)) for u, v in self.arcs})))
        object.__setattr__(self, "weights", _weights(self.weights, self.n))


def _orient(n, arcs, weights, edges):
    return WeightedGraph(n, edges, weights), BiOrientation(n, arcs)


# --- rectangles -------------------------------------------------------------


def rect_overlap(p, q) -> bool:
    return p[0] <= q[2] and q[0] <= p[2] and p[1] <= q[3] and q[1] <= p[3]


def rect_validate(inst: RectangleInstance) -> ValidityReport:
    problems = []
    for i, (x1, y1, x2, y2) in enumerate(inst.items):
        if not (x1 < x2 and y1 < y2):
            problems.append(("degenerate", (i,)))
        elif max(x1, y1) > min(x2, y2):
            problems.append(("misses_line", (i,)))
    for i, j in itertools.combinations(range(len(inst.items)), 2):
        p, q = inst.items[i], inst.items[j]
        if rect_overlap(p, q):
            # intersection box [X1, X2] x [Y1, Y2] has a point with y < x iff Y1 < X2
            if not max(p[1], q[1]) < min(p[2], q[2]):
                problems.append(("not_below_line", (i, j)))
    return ValidityReport(tuple(problems))


def rect_build(inst: RectangleInstance):
    report = rect_validate(inst)
    if not report.valid:
        raise InvalidInstance(report)
    items = inst.items
    n = len(items)
    edges, arcs = [], []
    for i, j in itertools.combinations(range(n), 2):
        if rect_overlap(items[i], items[j]):
            edges.append((i, j))
            continue
        src, dst = sorted((i, j), key=lambda k: (items[k][0], items[k][1], k))
        bucket = A if items[src][1] <= items[dst][1] else B
        arcs.append((src, dst, bucket))
    return _orient(n, arcs, inst.weights, edges)


# --- half segments ----------------------------------------------------------


def _cross(o, p, q) -> int:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _on_segment(p, q, r) -> bool:
    """For collinear p, q, r: whether q lies on the closed segment pr."""
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def segments_intersect(p1, q1, p2, q2) -> bool:
    d1 = _sign(_cross(p1, q1, p2))
    d2 = _sign(_cross(p1, q1, q2))
    d3 = _sign(_cross(p2, q2, p1))
    d4 = _sign(_cross(p2, q2, q1))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and _on_segment(p1, p2, q1))
        or (d2 == 0 and _on_segment(p1, q2, q1))
        or (d3 == 0 and _on_segment(p2, p1, q2))
        or (d4 == 0 and _on_segment(p2, q1, q2))
    )


def halfseg_intersects(r, s) -> bool:
    return segments_intersect((r[0], 0), (r[1], r[2]), (s[0], 0), (s[1], s[2]))


def halfseg_validate(inst: HalfSegmentInstance) -> ValidityReport:
    problems = []
    for i, (foot, ax, ay) in enumerate(inst.items):
        if ay <= 0:
            problems.append(("apex_not_above_axis", (i,)))
        if ax <= foot:
            problems.append(("not_acute", (i,)))
    seen = {}
    for i, (foot, _, _) in enumerate(inst.items):
        if foot in seen:
            problems.append(("duplicate_foot", (seen[foot], i)))
        seen.setdefault(foot, i)
    return ValidityReport(tuple(problems))


def halfseg_build(inst: HalfSegmentInstance):
    report = halfseg_validate(inst)
    if not report.valid:
        raise InvalidInstance(report)
    items = inst.items
    n = len(items)
    edges, arcs = [], []
    for i, j in itertools.combinations(range(n), 2):
        if halfseg_intersects(items[i], items[j]):
            edges.append((i, j))
            continue
        r, s = (i, j) if items[i][0] < items[j][0] else (j, i)
        bucket = A if items[s][1] >= items[r][1] else B
        arcs.append((r, s, bucket))
    return _orient(n, arcs, inst.weights, edges)


# --- interval filaments -----------------------------------------------------


def filament_validate(inst: FilamentInstance) -> ValidityReport:
    problems = []
    endpoints, heights = {}, {}
    for i, (l, r, h) in enumerate(inst.items):
        if not l < r:
            problems.append(("empty_interval", (i,)))
        if h <= 0:
            problems.append(("nonpositive_height", (i,)))
        for x in (l, r):
            if x in endpoints and endpoints[x] != i:
                problems.append(("duplicate_endpoint", (endpoints[x], i)))
            endpoints.setdefault(x, i)
        if h in heights:
            problems.append(("duplicate_height", (heights[h], i)))
        heights.setdefault(h, i)
    return ValidityReport(tuple(problems))


def interval_relation(p, q) -> str:
    """One of ``disjoint``, ``overlap``, ``contains`` (p contains q), ``inside``."""
    if p[1] < q[0] or q[1] < p[0]:
        return "disjoint"
    if p[0] < q[0] and q[1] < p[1]:
        return "contains"
    if q[0] < p[0] and p[1] < q[1]:
        return "inside"
    return "overlap"


def filaments_meet(p, q) -> bool:
    rel = interval_relation(p, q)
    if rel == "overlap":
        return True
    if rel == "contains":
        return q[2] > p[2]
    if rel == "inside":
        return p[2] > q[2]
    return False


def filament_build(inst: FilamentInstance):
    report = filament_validate(inst)
    if not report.valid:
        raise InvalidInstance(report)
    items = inst.items
    n = len(items)
    edges, arcs = [], []
    for i, j in itertools.combinations(range(n), 2):
        p, q = items[i], items[j]
        if filaments_meet(p, q):
            edges.append((i, j))
            continue
        rel = interval_relation(p, q)
        if rel == "disjoint":
            arcs.append((i, j, A) if p[0] < q[0] else (j, i, A))
        elif rel == "contains":
            arcs.append((i, j, B))
        else:
            arcs.append((j, i, B))
    return _orient(n, arcs, inst.weights, edges)


def overlap_to_filament(intervals, weights=None) -> FilamentInstance:
    """Filaments whose intersection graph is the overlap graph of ``intervals``.

    Heights follow interval length, so a nested interval always sits under its
    container.  Equal lengths are split by index to keep heights distinct.
    """
    intervals = [(int(l), int(r)) for l, r in intervals]
    n = len(intervals)
    endpoints = [x for iv in intervals for x in iv]
    if len(set(endpoints)) != len(endpoints):
        dup = next(x for x in endpoints if endpoints.count(x) > 1)
        raise InvalidInstance(ValidityReport((("duplicate_endpoint", (dup,)),)))
    items = [(l, r, (r - l) * max(n, 1) + i) for i, (l, r) in enumerate(intervals)]
    return FilamentInstance(tuple(items), weights)


def overlap_graph(intervals, weights=None) -> WeightedGraph:
    """Direct overlap graph: intervals intersect and neither contains the other."""
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(intervals)), 2)
        if interval_relation(intervals[i], intervals[j]) == "overlap"
    ]
    return WeightedGraph(len(intervals), edges, weights)


# --- incomparability --------------------------------------------------------


def transitive_closure(n: int, arcs) -> list[int]:
    """Reachability bitsets; raises :class:`CycleDetected` on cyclic input."""
    order = topological_order(BiOrientation(n, [(u, v, A) for u, v in arcs]))
    succ = [[] for _ in range(n)]
    for u, v in arcs:
        succ[u].append(v)
    reach = [0] * n
    for u in reversed(order):
        bits = 0
        for v in succ[u]:
            bits |= (1 << v) | reach[v]
        reach[u] = bits
    return reach


def incomparability_build(inst: DagInstance):
    reach = transitive_closure(inst.n, inst.arcs)
    arcs, edges = [], []
    for u, v in itertools.combinations(range(inst.n), 2):
        if reach[u] >> v & 1:
            arcs.append((u, v, A))
        elif reach[v] >> u & 1:
            arcs.append((v, u, A))
        else:
            edges.append((u, v))
    return _orient(inst.n, arcs, inst.weights, edges)


def dag_validate(inst: DagInstance) -> ValidityReport:
    problems = []
    for u, v in inst.arcs:
        if not (0 <= u < inst.n and 0 <= v < inst.n) or u == v:
            problems.append(("bad_arc", (u, v)))
    if not problems:
        try:
            transitive_closure(inst.n, inst.arcs)
        except CycleDetected as exc:
            problems.append(("cycle", tuple(exc.cycle)))
    return ValidityReport(tuple(problems))


# --- generators -------------------------------------------------------------


def random_weights(rng: random.Random, n: int, lo: int = 0, hi: int = 100) -> tuple:
    if lo < 0 or hi < lo:
        raise ValueError(f"bad weight range {lo}:{hi}")
    return tuple(rng.randint(lo, hi) for _ in range(n))


def _random_intervals(rng, n, span):
    points = rng.sample(range(span), 2 * n)
    return [tuple(sorted(points[2 * i: 2 * i + 2])) for i in range(n)]


def gen_rectangles(rng, n, params):
    span = params.get("span", 10 * n + 10)
    long_side = max(2, params.get("long", span // 3))
    short_side = max(1, params.get("short", span // 12))
    budget = params.get("retries", 2000)
    items = []
    for _ in range(n):
        for _attempt in range(budget):
            t = rng.randint(0, span)
            rect = (
                t - rng.randint(0, short_side),
                t - rng.randint(1, long_side),
                t + rng.randint(1, long_side),
                t + rng.randint(0, short_side),
            )
            if any(rect[0] == q[0] or rect[1] == q[1] for q in items):
                continue
            if all(not rect_overlap(rect, q) or max(rect[1], q[1]) < min(rect[2], q[2]) for q in items):
                items.append(rect)
                break
        else:
            raise GenerationFailed(f"no valid rectangle after {budget} attempts")
    return RectangleInstance(tuple(items))


def gen_half_segments(rng, n, params):
    span = params.get("span", 3 * n + 3)
    feet = rng.sample(range(span), n)
    items = [(f, f + rng.randint(1, span), rng.randint(1, span)) for f in feet]
    return HalfSegmentInstance(tuple(items))


def gen_filaments(rng, n, params):
    span = params.get("span", 4 * n)
    intervals = _random_intervals(rng, n, span)
    heights = rng.sample(range(1, 4 * n + 1), n)
    return FilamentInstance(tuple((l, r, h) for (l, r), h in zip(intervals, heights)))


def gen_overlap(rng, n, params):
    return overlap_to_filament(_random_intervals(rng, n, params.get("span", 4 * n)))


def gen_dag(rng, n, params):
    p = params.get("p", 0.3)
    if not 0 <= p <= 1:
        raise ValueError(f"arc probability {p} out of range")
    order = list(range(n))
    rng.shuffle(order)
    arcs = [
        (order[i], order[j])
        for i, j in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return DagInstance(n, tuple(arcs))
