"""Instance families by name: generation, building, and JSON round trips."""

from __future__ import annotations

import dataclasses
import itertools
import random
from dataclasses import dataclass
from typing import Callable

from . import chordal, classes
from .classes import DagInstance, FilamentInstance, HalfSegmentInstance, RectangleInstance
from .chordal import PeoInstance, SubtreeInstance
from .core import (
    A,
    B,
    STRONG_FLAGS,
    BiOrientation,
    WeightedGraph,
    arc_graph,
    complement,
    graph_from_json,
    graph_to_json,
    orientation_from_json,
    orientation_to_json,
    verify_orientation,
)


class UnknownClass(ValueError):
    pass


@dataclass(frozen=True)
class AbstractInstance:
    """A bare strongly pseudo transitive orientation, graph taken as its non-arcs."""

    orientation: BiOrientation
    weights: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "weights", classes._weights(self.weights, self.orientation.n))


def gen_abstract(rng: random.Random, n: int, params) -> AbstractInstance:
    """Thin a random two-bucket tournament while the axioms keep holding.

    The seed tournament orders vertices one way and labels a pair A when a
    second random order agrees with the first, B otherwise; both buckets are
    then transitive.  Arcs are dropped one at a time in random order and a
    drop is kept only if the result still verifies.
    """
    keep = params.get("keep", 0.0)
    first = list(range(n))
    rng.shuffle(first)
    second = {v: i for i, v in enumerate(rng.sample(range(n), n))}
    labels = {}
    for i, j in itertools.combinations(range(n), 2):
        u, v = first[i], first[j]
        labels[(u, v)] = A if second[u] < second[v] else B
    empty = WeightedGraph(n)
    candidates = sorted(labels)
    rng.shuffle(candidates)
    for arc in candidates:
        if rng.random() < keep:
            continue
        bucket = labels.pop(arc)
        o = BiOrientation.from_dict(n, labels)
        if not verify_orientation(empty, o, check_cover=False).passed(STRONG_FLAGS):
            labels[arc] = bucket
    return AbstractInstance(BiOrientation.from_dict(n, labels))


def build_abstract(inst: AbstractInstance):
    o = inst.orientation
    return complement(arc_graph(o, inst.weights)), o


# --- JSON codecs ------------------------------------------------------------


def _items_json(kind, fields, inst):
    return {
        "type": kind,
        "items": [dict(zip(fields, it), w=w) for it, w in zip(inst.items, inst.weights)],
    }


def _items_from(cls, fields):
    def parse(doc):
        items = tuple(tuple(int(it[f]) for f in fields) for it in doc["items"])
        return cls(items, tuple(int(it.get("w", 1)) for it in doc["items"]))

    return parse


RECT_FIELDS = ("x1", "y1", "x2", "y2")
HALFSEG_FIELDS = ("foot_x", "apex_x", "apex_y")
FILAMENT_FIELDS = ("l", "r", "h")


def instance_to_json(inst) -> dict:
    if isinstance(inst, RectangleInstance):
        return _items_json("rectangles", RECT_FIELDS, inst)
    if isinstance(inst, HalfSegmentInstance):
        return _items_json("half_segments", HALFSEG_FIELDS, inst)
    if isinstance(inst, FilamentInstance):
        return _items_json("filaments", FILAMENT_FIELDS, inst)
    if isinstance(inst, DagInstance):
        return {"type": "dag", "n": inst.n, "arcs": [list(a) for a in inst.arcs], "weights": list(inst.weights)}
    if isinstance(inst, SubtreeInstance):
        return {
            "type": "subtrees",
            "tree": {"parents": list(inst.parents), "child_order": [list(c) for c in inst.child_order]},
            "subtrees": [sorted(s) for s in inst.subtrees],
            "weights": list(inst.weights),
        }
    if isinstance(inst, PeoInstance):
        doc = graph_to_json(inst.graph)
        return {"type": "peo_graph", "n": doc["n"], "edges": doc["edges"], "peo": list(inst.order), "weights": doc["weights"]}
    if isinstance(inst, AbstractInstance):
        return {"type": "abstract", "orientation": orientation_to_json(inst.orientation), "weights": list(inst.weights)}
    raise TypeError(f"not an instance: {type(inst).__name__}")


def _dag_from(doc):
    return DagInstance(int(doc["n"]), tuple(tuple(a) for a in doc.get("arcs", [])), doc.get("weights"))


def _subtrees_from(doc):
    tree = doc["tree"]
    return SubtreeInstance(tuple(tree["parents"]), tuple(tree["child_order"]), tuple(doc["subtrees"]), doc.get("weights"))


def _peo_from(doc):
    return PeoInstance(graph_from_json(doc), tuple(doc["peo"]))


def _abstract_from(doc):
    return AbstractInstance(orientation_from_json(doc["orientation"]), doc.get("weights"))


PARSERS = {
    "rectangles": _items_from(RectangleInstance, RECT_FIELDS),
    "half_segments": _items_from(HalfSegmentInstance, HALFSEG_FIELDS),
    "filaments": _items_from(FilamentInstance, FILAMENT_FIELDS),
    "dag": _dag_from,
    "subtrees": _subtrees_from,
    "peo_graph": _peo_from,
    "abstract": _abstract_from,
}


def instance_from_json(doc: dict):
    kind = doc.get("type")
    if kind not in PARSERS:
        raise UnknownClass(f"unknown instance type {kind!r}")
    return PARSERS[kind](doc)


# --- families ---------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    generate: Callable
    first_type: bool


FAMILIES = {
    "rectangles": Family(classes.gen_rectangles, False),
    "half_segments": Family(classes.gen_half_segments, False),
    "filaments": Family(classes.gen_filaments, True),
    "overlap": Family(classes.gen_overlap, True),
    "dag": Family(classes.gen_dag, True),
    "chordal_subtrees": Family(chordal.gen_subtrees, True),
    "chordal_peo": Family(chordal.gen_peo_graph, True),
    "abstract": Family(gen_abstract, False),
}

# The classes whose constructions are under acceptance; "abstract" is a probe.
CLASSES = ("rectangles", "half_segments", "filaments", "chordal_subtrees", "chordal_peo", "dag", "overlap")


def family(name: str) -> Family:
    if name not in FAMILIES:
        raise UnknownClass(f"unknown class {name!r}; choose from {', '.join(FAMILIES)}")
    return FAMILIES[name]


def with_weights(inst, weights):
    weights = tuple(weights)
    if isinstance(inst, PeoInstance):
        return PeoInstance(inst.graph.with_weights(weights), inst.order)
    return dataclasses.replace(inst, weights=weights)


def generate(name: str, n: int, seed: int, params: dict | None = None, weights=(0, 100)):
    """Seeded random instance of family ``name``; weights drawn uniformly from ``weights``."""
    fam = family(name)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    inst = fam.generate(rng, n, dict(params or {}))
    lo, hi = weights
    return with_weights(inst, classes.random_weights(rng, n, lo, hi))


def build(inst):
    """``(graph, orientation)`` for any instance type."""
    if isinstance(inst, RectangleInstance):
        return classes.rect_build(inst)
    if isinstance(inst, HalfSegmentInstance):
        return classes.halfseg_build(inst)
    if isinstance(inst, FilamentInstance):
        return classes.filament_build(inst)
    if isinstance(inst, DagInstance):
        return classes.incomparability_build(inst)
    if isinstance(inst, SubtreeInstance):
        return chordal.chordal_subtree_build(inst)
    if isinstance(inst, PeoInstance):
        return chordal.chordal_peo_build(inst)
    if isinstance(inst, AbstractInstance):
        return build_abstract(inst)
    raise TypeError(f"not an instance: {type(inst).__name__}")


def validate(inst):
    if isinstance(inst, RectangleInstance):
        return classes.rect_validate(inst)
    if isinstance(inst, HalfSegmentInstance):
        return classes.halfseg_validate(inst)
    if isinstance(inst, FilamentInstance):
        return classes.filament_validate(inst)
    if isinstance(inst, DagInstance):
        return classes.dag_validate(inst)
    if isinstance(inst, SubtreeInstance):
        return chordal.subtree_validate(inst)
    if isinstance(inst, PeoInstance):
        ok, witness = chordal.peo_verify(inst.graph, inst.order)
        return classes.ValidityReport(() if ok else (("not_peo", witness),))
    if isinstance(inst, AbstractInstance):
        report = verify_orientation(WeightedGraph(inst.orientation.n), inst.orientation, check_cover=False)
        return classes.ValidityReport(tuple(("axiom", (f,)) for f in report.failed() if f in STRONG_FLAGS))
    raise TypeError(f"not an instance: {type(inst).__name__}")


def build_to_json(g: WeightedGraph, o: BiOrientation) -> dict:
    return {"graph": graph_to_json(g), "orientation": orientation_to_json(o)}


def build_from_json(doc: dict):
    return graph_from_json(doc["graph"]), orientation_from_json(doc["orientation"])
