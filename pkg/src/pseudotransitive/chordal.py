"""Chordal graphs: subtree representations, elimination orderings, canonical DFS.

Two independent orientations of the complement of a chordal graph live here.
One works from a representation by subtrees of an embedded host tree, the
other from a perfect elimination ordering and the depth-first tree that
always descends to the neighbour earliest in that ordering.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .classes import InvalidInstance, ValidityReport, _weights
from .core import A, B, BiOrientation, WeightedGraph


class InvalidPeo(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a perfect elimination ordering, witness {witness}")


@dataclass(frozen=True)
class SubtreeInstance:
    """Subtrees of a rooted host tree with ordered children.

    ``parents[v]`` is ``-1`` exactly at the root; ``child_order[v]`` lists the
    children of ``v`` left to right and fixes the planar embedding.
    """

    parents: tuple
    child_order: tuple
    subtrees: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        parents = tuple(-1 if p is None else int(p) for p in self.parents)
        object.__setattr__(self, "parents", parents)
        object.__setattr__(self, "child_order", tuple(tuple(int(c) for c in cs) for cs in self.child_order))
        object.__setattr__(self, "subtrees", tuple(frozenset(int(x) for x in s) for s in self.subtrees))
        object.__setattr__(self, "weights", _weights(self.weights, len(self.subtrees)))


@dataclass(frozen=True)
class PeoInstance:
    graph: WeightedGraph
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))


@dataclass(frozen=True)
class CanonicalDfsTree:
    parent: tuple
    disc: tuple
    size: tuple

    @property
    def roots(self) -> list[int]:
        return sorted((v for v, p in enumerate(self.parent) if p == -1), key=self.disc.__getitem__)

    def is_ancestor(self, x: int, y: int) -> bool:
        """Proper ancestor test via discovery intervals."""
        return self.disc[x] < self.disc[y] < self.disc[x] + self.size[x]

    def ancestors(self, v: int) -> list[int]:
        out = []
        while self.parent[v] != -1:
            v = self.parent[v]
            out.append(v)
        return out


# --- host trees -------------------------------------------------------------


@dataclass(frozen=True)
class _HostTree:
    root: int
    depth: tuple
    pre: tuple
    size: tuple

    def is_ancestor(self, x: int, y: int) -> bool:
        return self.pre[x] < self.pre[y] < self.pre[x] + self.size[x]


def _host_tree(parents, child_order):
    m = len(parents)
    problems = []
    roots = [v for v in range(m) if parents[v] == -1]
    if len(roots) != 1:
        problems.append(("root_count", tuple(roots)))
    if len(child_order) != m:
        problems.append(("child_order_length", (len(child_order), m)))
    else:
        for v in range(m):
            expected = sorted(c for c in range(m) if parents[c] == v)
            if sorted(child_order[v]) != expected:
                problems.append(("child_order_mismatch", (v,)))
    for v, p in enumerate(parents):
        if p != -1 and not 0 <= p < m:
            problems.append(("parent_out_of_range", (v,)))
    if problems:
        raise InvalidInstance(ValidityReport(tuple(problems)))

    root = roots[0]
    depth, pre, size = [0] * m, [-1] * m, [1] * m
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        pre[v] = len(order)
        order.append(v)
        for c in reversed(child_order[v]):
            depth[c] = depth[v] + 1
            stack.append(c)
    if len(order) != m:
        unreached = tuple(v for v in range(m) if pre[v] == -1)
        raise InvalidInstance(ValidityReport((("not_a_tree", unreached),)))
    for v in reversed(order):
        if parents[v] != -1:
            size[parents[v]] += size[v]
    return _HostTree(root, tuple(depth), tuple(pre), tuple(size))


def subtree_validate(inst: SubtreeInstance) -> ValidityReport:
    try:
        host = _host_tree(inst.parents, inst.child_order)
    except InvalidInstance as exc:
        return exc.report
    problems = []
    m = len(inst.parents)
    for i, s in enumerate(inst.subtrees):
        if not s:
            problems.append(("empty_subtree", (i,)))
            continue
        if any(not 0 <= x < m for x in s):
            problems.append(("host_vertex_out_of_range", (i,)))
            continue
        top = min(s, key=host.depth.__getitem__)
        tops = [x for x in s if host.depth[x] == host.depth[top]]
        if len(tops) != 1:
            problems.append(("disconnected_subtree", (i,)))
            continue
        # connected with a unique top iff every other vertex's parent is inside
        if any(x != top and inst.parents[x] not in s for x in s):
            problems.append(("disconnected_subtree", (i,)))
    return ValidityReport(tuple(problems))


def subtree_roots(inst: SubtreeInstance) -> list[int]:
    host = _host_tree(inst.parents, inst.child_order)
    roots = []
    for s in inst.subtrees:
        top = min(s, key=host.depth.__getitem__)
        assert sum(1 for x in s if host.depth[x] == host.depth[top]) == 1
        roots.append(top)
    return roots


def subtree_graph(inst: SubtreeInstance) -> WeightedGraph:
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(inst.subtrees)), 2)
        if inst.subtrees[i] & inst.subtrees[j]
    ]
    return WeightedGraph(len(inst.subtrees), edges, inst.weights)


def chordal_subtree_build(inst: SubtreeInstance):
    report = subtree_validate(inst)
    if not report.valid:
        raise InvalidInstance(report)
    host = _host_tree(inst.parents, inst.child_order)
    roots = subtree_roots(inst)
    g = subtree_graph(inst)
    arcs = []
    for i, j in itertools.combinations(range(g.n), 2):
        if g.has_edge(i, j):
            continue
        ri, rj = roots[i], roots[j]
        # equal roots would put the shared root vertex in both subtrees
        assert ri != rj
        if host.is_ancestor(ri, rj):
            arcs.append((i, j, B))
        elif host.is_ancestor(rj, ri):
            arcs.append((j, i, B))
        elif host.pre[ri] < host.pre[rj]:
            arcs.append((i, j, A))
        else:
            arcs.append((j, i, A))
    return g, BiOrientation(g.n, arcs)


# --- elimination orderings --------------------------------------------------


def mcs_peo(g: WeightedGraph) -> list[int]:
    """Maximum cardinality search visit order, ties to the smallest index.

    On a chordal graph every vertex's earlier neighbours in the result form a
    clique (the reverse of an elimination sequence), which is the ordering
    the canonical DFS expects.
    """
    adj = g.neighbors()
    count = [0] * g.n
    visited = [False] * g.n
    visit = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best == -1 or count[v] > count[best]):
                best = v
        visited[best] = True
        visit.append(best)
        for w in adj[best]:
            if not visited[w]:
                count[w] += 1
    return visit


def _check_permutation(n, order):
    if sorted(order) != list(range(n)):
        raise ValueError(f"order is not a permutation of 0..{n - 1}")


def peo_verify(g: WeightedGraph, order) -> tuple[bool, tuple | None]:
    """Check that each vertex's earlier neighbours form a clique.

    Returns ``(True, None)`` or ``(False, (v, a, b))`` where ``a`` and ``b``
    are non-adjacent neighbours of ``v`` placed before it.
    """
    order = list(order)
    _check_permutation(g.n, order)
    pos = {v: i for i, v in enumerate(order)}
    adj = g.neighbors()
    for v in order:
        earlier = sorted((w for w in adj[v] if pos[w] < pos[v]), key=pos.__getitem__)
        for a, b in itertools.combinations(earlier, 2):
            if not g.has_edge(a, b):
                return False, (v, a, b)
    return True, None


def canonical_dfs(g: WeightedGraph, order, check: bool = True) -> CanonicalDfsTree:
    """Depth-first forest that always descends to the unvisited neighbour earliest in ``order``.

    Restarts at the earliest unvisited vertex when a component is exhausted.
    """
    order = list(order)
    if check:
        ok, witness = peo_verify(g, order)
        if not ok:
            raise InvalidPeo(witness)
    else:
        _check_permutation(g.n, order)
    pos = {v: i for i, v in enumerate(order)}
    adj = [sorted(nb, key=pos.__getitem__) for nb in g.neighbors()]
    parent = [-1] * g.n
    disc = [-1] * g.n
    post = []
    clock = 0
    for start in order:
        if disc[start] != -1:
            continue
        disc[start] = clock
        clock += 1
        stack = [(start, iter(adj[start]))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = clock
                    clock += 1
                    stack.append((w, iter(adj[w])))
                    break
            else:
                post.append(v)
                stack.pop()
    size = [1] * g.n
    for v in post:
        if parent[v] != -1:
            size[parent[v]] += size[v]
    return CanonicalDfsTree(tuple(parent), tuple(disc), tuple(size))


def chordal_peo_build(inst: PeoInstance):
    g = inst.graph
    tree = canonical_dfs(g, inst.order)
    arcs = []
    for x, y in itertools.combinations(range(g.n), 2):
        if g.has_edge(x, y):
            continue
        if tree.disc[y] < tree.disc[x]:
            x, y = y, x
        arcs.append((x, y, B if tree.is_ancestor(x, y) else A))
    return g, BiOrientation(g.n, arcs)


def same_branch_claim_violation(g: WeightedGraph, order, tree: CanonicalDfsTree | None = None):
    """First triple on one root-to-leaf path breaking the non-adjacency chain property.

    For pairwise ancestor-related vertices ``vi, vj, vk`` (in elimination order)
    with ``vi vj`` and ``vj vk`` non-edges, ``vi vk`` must also be a non-edge.
    Returns ``None`` when no triple violates it.
    """
    if tree is None:
        tree = canonical_dfs(g, order)
    pos = {v: i for i, v in enumerate(order)}
    for z in range(g.n):
        anc = tree.ancestors(z)
        for x, y in itertools.combinations(anc, 2):
            vi, vj, vk = sorted((x, y, z), key=pos.__getitem__)
            if not g.has_edge(vi, vj) and not g.has_edge(vj, vk) and g.has_edge(vi, vk):
                return (vi, vj, vk)
    return None


# --- generators -------------------------------------------------------------


def gen_subtrees(rng: random.Random, n: int, params) -> SubtreeInstance:
    m = max(1, params.get("host", max(2, n)))
    max_size = max(1, params.get("max_size", max(1, m // 3)))
    parents = [-1] + [rng.randrange(v) for v in range(1, m)]
    children = [[] for _ in range(m)]
    for v in range(1, m):
        children[parents[v]].append(v)
    for cs in children:
        rng.shuffle(cs)
    tree_adj = [set(cs) for cs in children]
    for v in range(1, m):
        tree_adj[v].add(parents[v])
    subtrees = []
    for _ in range(n):
        k = rng.randint(1, max_size)
        s = {rng.randrange(m)}
        while len(s) < k:
            frontier = sorted({w for x in s for w in tree_adj[x]} - s)
            if not frontier:
                break
            s.add(rng.choice(frontier))
        subtrees.append(tuple(sorted(s)))
    return SubtreeInstance(tuple(parents), tuple(tuple(cs) for cs in children), tuple(subtrees))


def gen_peo_graph(rng: random.Random, n: int, params) -> PeoInstance:
    g = subtree_graph(gen_subtrees(rng, n, params))
    return PeoInstance(g, tuple(mcs_peo(g)))
