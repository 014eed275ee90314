"""Graphs, bucketed orientations, and the axiom verifier.

A :class:`BiOrientation` is a set of arcs, each labelled with bucket ``"A"``
or ``"B"``.  The verifier checks, exhaustively, the axioms that make such an
orientation strongly pseudo transitive (optionally of the first type) and,
when asked, that its arcs cover exactly the non-edges of a given graph.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable

A = "A"
B = "B"
BUCKETS = (A, B)

FLAGS = (
    "antisymmetry",
    "acyclicity",
    "bucket_disjointness",
    "covers_complement",
    "a_transitive",
    "b_transitive",
    "a_then_e",
    "first_type",
)
# Flags that together make an orientation strongly pseudo transitive.
STRONG_FLAGS = (
    "antisymmetry",
    "acyclicity",
    "bucket_disjointness",
    "a_transitive",
    "b_transitive",
    "a_then_e",
)


class DimensionMismatch(ValueError):
    pass


class CycleDetected(ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"orientation has a directed cycle: {self.cycle}")


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with nonnegative integer vertex weights."""

    n: int
    edges: frozenset
    weights: tuple

    def __init__(self, n: int, edges: Iterable = (), weights: Iterable | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self loop at {u}")
            normalized.add((min(u, v), max(u, v)))
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * n
        if len(weights) != n:
            raise ValueError(f"expected {n} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "weights", weights)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_bits(self) -> list[int]:
        bits = [0] * self.n
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return bits

    def with_weights(self, weights: Iterable) -> WeightedGraph:
        return WeightedGraph(self.n, self.edges, weights)

    def sorted_edges(self) -> list[tuple]:
        return sorted(self.edges)


def complement(g: WeightedGraph) -> WeightedGraph:
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(g.n), 2)
        if (u, v) not in g.edges
    ]
    return WeightedGraph(g.n, edges, g.weights)


@dataclass(frozen=True)
class BiOrientation:
    """Arcs ``(u, v, bucket)`` over vertices ``0..n-1``.

    The raw arc list is kept as given so that malformed inputs (an arc listed
    in both buckets, both directions present, self loops) survive long enough
    for :func:`verify_orientation` to report them.
    """

    n: int
    arcs: tuple = field(default=())

    def __init__(self, n: int, arcs: Iterable = ()):
        triples = []
        for u, v, bucket in arcs:
            u, v = int(u), int(v)
            if bucket not in BUCKETS:
                raise ValueError(f"unknown bucket {bucket!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            triples.append((u, v, bucket))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(sorted(set(triples))))

    @classmethod
    def from_dict(cls, n: int, labels: dict) -> BiOrientation:
        return cls(n, [(u, v, b) for (u, v), b in labels.items()])

    def labels(self) -> dict:
        """Map ``(u, v) -> bucket``; on duplicates the first bucket wins."""
        out = {}
        for u, v, b in self.arcs:
            out.setdefault((u, v), b)
        return out

    def bucket(self, u: int, v: int):
        return self.labels().get((u, v))

    def successors(self, bucket: str | None = None) -> list[list]:
        succ = [[] for _ in range(self.n)]
        for u, v, b in self.arcs:
            if bucket is None or b == bucket:
                succ[u].append(v)
        for s in succ:
            s.sort()
        return succ

    def arc_pairs(self) -> set:
        return {(u, v) for u, v, _ in self.arcs}

    def count(self, bucket: str) -> int:
        return sum(1 for *_, b in self.arcs if b == bucket)


@dataclass(frozen=True)
class FlagResult:
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class VerifierReport:
    flags: dict

    def __getitem__(self, name: str) -> FlagResult:
        return self.flags[name]

    def passed(self, names: Iterable[str] | None = None) -> bool:
        names = FLAGS if names is None else names
        return all(self.flags[f].passed for f in names if f in self.flags)

    def failed(self) -> list[str]:
        return [f for f in FLAGS if f in self.flags and not self.flags[f].passed]

    def strongly_pseudo_transitive(self) -> bool:
        return self.passed(STRONG_FLAGS)

    def to_dict(self) -> dict:
        out = {}
        for name in FLAGS:
            if name not in self.flags:
                continue
            res = self.flags[name]
            out[name] = {
                "pass": res.passed,
                "witness": None if res.witness is None else list(res.witness),
            }
        return out


def _find_cycle(n: int, succ: list[list]) -> list | None:
    color = [0] * n
    parent = [-1] * n
    for start in range(n):
        if color[start]:
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, iter(succ[v])))
                    break
                if color[v] == 1:
                    cycle = [u]
                    while cycle[-1] != v:
                        cycle.append(parent[cycle[-1]])
                    return cycle[::-1]
            else:
                color[u] = 2
                stack.pop()
    return None


def topological_order(o: BiOrientation) -> list[int]:
    """Kahn's algorithm with a min-heap, so ties go to the smallest index."""
    succ = [sorted(set(s)) for s in o.successors()]
    indeg = [0] * o.n
    for s in succ:
        for v in s:
            indeg[v] += 1
    heap = [v for v in range(o.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) < o.n:
        raise CycleDetected(_find_cycle(o.n, succ))
    return order


def verify_orientation(
    g: WeightedGraph, o: BiOrientation, check_cover: bool = True
) -> VerifierReport:
    """Check every axiom by exhaustive pair and triple enumeration.

    Compositions are enumerated as (arc ab in A) x (arc bc out of b), which
    is O(n*m); the cover check is O(n^2).  Each failed flag carries the
    lexicographically first violating pair, triple or cycle.
    """
    if g.n != o.n:
        raise DimensionMismatch(f"graph has {g.n} vertices, orientation {o.n}")
    n = o.n
    flags = {}

    seen = {}
    disjoint_witness = None
    for u, v, b in o.arcs:
        if (u, v) in seen and seen[(u, v)] != b and disjoint_witness is None:
            disjoint_witness = (u, v)
        seen.setdefault((u, v), b)
    flags["bucket_disjointness"] = FlagResult(disjoint_witness is None, disjoint_witness)

    labels = seen
    antisym_witness = None
    for u, v in sorted(labels):
        if u == v or (v, u) in labels:
            antisym_witness = (min(u, v), max(u, v))
            break
    flags["antisymmetry"] = FlagResult(antisym_witness is None, antisym_witness)

    succ = [[] for _ in range(n)]
    for u, v in sorted(labels):
        succ[u].append(v)
    cycle = _find_cycle(n, succ)
    flags["acyclicity"] = FlagResult(cycle is None, None if cycle is None else tuple(cycle))

    if check_cover:
        cover_witness = None
        for u, v in itertools.combinations(range(n), 2):
            arc = (u, v) in labels or (v, u) in labels
            if arc == g.has_edge(u, v):
                cover_witness = (u, v)
                break
        flags["covers_complement"] = FlagResult(cover_witness is None, cover_witness)

    a_succ = [[v for v in succ[u] if labels[(u, v)] == A] for u in range(n)]
    b_succ = [[v for v in succ[u] if labels[(u, v)] == B] for u in range(n)]

    def first_violation(first, second, ok):
        for a in range(n):
            for b in first[a]:
                for c in second[b]:
                    if not ok(labels.get((a, c))):
                        return (a, b, c)
        return None

    checks = {
        "a_transitive": (a_succ, a_succ, lambda lab: lab == A),
        "b_transitive": (b_succ, b_succ, lambda lab: lab == B),
        "a_then_e": (a_succ, succ, lambda lab: lab is not None),
        "first_type": (a_succ, succ, lambda lab: lab == A),
    }
    for name, (first, second, ok) in checks.items():
        w = first_violation(first, second, ok)
        flags[name] = FlagResult(w is None, w)
    return VerifierReport(flags)


def arc_graph(o: BiOrientation, weights: Iterable | None = None) -> WeightedGraph:
    """Undirected graph whose edges are the arcs of ``o`` with direction dropped."""
    edges = {(min(u, v), max(u, v)) for u, v, _ in o.arcs if u != v}
    return WeightedGraph(o.n, edges, weights)


# --- JSON -------------------------------------------------------------------


def graph_to_json(g: WeightedGraph) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.sorted_edges()],
        "weights": list(g.weights),
    }


def graph_from_json(doc: dict) -> WeightedGraph:
    return WeightedGraph(int(doc["n"]), doc.get("edges", []), doc.get("weights"))


def orientation_to_json(o: BiOrientation) -> dict:
    return {
        "n": o.n,
        "arcs": [{"from": u, "to": v, "bucket": b} for u, v, b in o.arcs],
    }


def orientation_from_json(doc: dict) -> BiOrientation:
    return BiOrientation(
        int(doc["n"]), [(a["from"], a["to"], a["bucket"]) for a in doc.get("arcs", [])]
    )


# --- DOT --------------------------------------------------------------------


def graph_to_dot(g: WeightedGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{v} (w={g.weights[v]})"];')
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def orientation_to_dot(o: BiOrientation, name: str = "H") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(o.n):
        lines.append(f"  {v};")
    for u, v, b in o.arcs:
        style = "solid" if b == A else "dashed"
        lines.append(f'  {u} -> {v} [style={style}, label="{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
