"""Maximum weight chains in strongly pseudo transitive digraphs.

A chain is a vertex set whose members are pairwise joined by arcs.  In the
complement orientation of a graph, chains are exactly independent sets, so
:func:`mwis` is :func:`max_weight_chain` plus bookkeeping.

The chain solver nests blocks.  A block is a head ``u`` followed by a
sequence of child blocks whose heads are B-successors of ``u`` and are
linked left to right by A-arcs; the last child links by an A-arc to the
block's follower.  Top-level blocks are linked by A-arcs the same way.
Arcs that the recursion never inspects are implied by the axioms: B-arcs
compose (B transitive) and anything reached after an A-arc is adjacent to
its tail (A followed by any arc).

For a head ``u`` the best child sequence ending at ``x`` does not depend on
the follower, so it is computed once per ``(u, x)`` and the follower only
enters through the final block.  That keeps the work at
``O(sum_u deg_B(u) * (deg_B(u) + deg_A(u) + n))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import (
    A,
    B,
    STRONG_FLAGS,
    BiOrientation,
    VerifierReport,
    WeightedGraph,
    arc_graph,
    complement,
    topological_order,
    verify_orientation,
)


class PreconditionFailed(ValueError):
    def __init__(self, report: VerifierReport):
        self.report = report
        super().__init__(f"orientation fails axioms: {', '.join(report.failed())}")


class SoundnessViolation(AssertionError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ChainResult:
    """Optimum value, its realizing members, and the block structure that produced them.

    ``certificate`` holds one record per member with ``role`` (``root`` for
    top-level heads, ``head`` for nested heads that have children, ``child``
    otherwise), its ``parent`` head, the ``prev`` sibling linked to it by an
    A-arc, and the ``follower`` its block hands over to.
    """

    value: int
    members: tuple
    certificate: tuple = field(default=(), compare=False)

    def to_dict(self, verified: bool = True) -> dict:
        return {"value": self.value, "members": list(self.members), "verified": verified}


def _check_weights(weights, n):
    weights = [int(w) for w in weights]
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    return weights


def _assert_chain(o: BiOrientation, members) -> None:
    pairs = o.arc_pairs()
    for u, v in itertools.combinations(members, 2):
        if (u, v) not in pairs and (v, u) not in pairs:
            raise SoundnessViolation(f"members {u} and {v} are not joined by an arc")


def max_weight_chain(o: BiOrientation, weights, verify: bool = True) -> ChainResult:
    """Heaviest chain of ``o``; ties go to fewer members.

    With ``verify`` the strong pseudo transitivity axioms are checked first and
    :class:`PreconditionFailed` is raised when they fail.  Skipping the check
    forfeits the guarantee: the returned set is still always checked to be a
    chain, and :class:`SoundnessViolation` is raised when it is not.
    """
    n = o.n
    weights = _check_weights(weights, n)
    if verify:
        report = verify_orientation(WeightedGraph(n), o, check_cover=False)
        if not report.passed(STRONG_FLAGS):
            raise PreconditionFailed(report)
    if n == 0:
        return ChainResult(0, ())

    order = topological_order(o)
    rank = {v: k for k, v in enumerate(order)}
    a_mat = np.zeros((n, n), dtype=bool)
    b_mat = np.zeros((n, n), dtype=bool)
    for u, v, b in o.arcs:
        (a_mat if b == A else b_mat)[rank[u], rank[v]] = True

    # Scaling by n+1 and charging 1 per member makes "fewer members" the
    # secondary objective; weight-0 vertices then cost 1 and drop out.
    scaled = [weights[v] * (n + 1) - 1 for v in order]
    bound = (max(weights) + 1) * (n + 1) * n
    if bound < 2**58:
        dtype, neg = np.int64, -(2**60)
    else:
        dtype, neg = object, -(4 * bound + 4)
    w = np.array(scaled, dtype=dtype)

    bot = n  # column index of the empty follower
    follow_ok = np.zeros((n, n + 1), dtype=bool)
    follow_ok[:, :n] = a_mat
    follow_ok[:, bot] = True

    block = np.full((n, n + 1), neg, dtype=dtype)  # best block headed by u, follower e
    last_child = np.full((n, n + 1), -1, dtype=np.int64)
    sequences = {}

    for u in range(n - 1, -1, -1):
        kids = np.flatnonzero(b_mat[u])
        best_tail = np.zeros(n + 1, dtype=dtype)
        if kids.size:
            # prefix[i]: best sequence of child blocks ending just before kids[i]
            prefix = np.zeros(kids.size, dtype=dtype)
            pred = np.full(kids.size, -1, dtype=np.int64)
            for i in range(1, kids.size):
                cand = prefix[:i] + block[kids[:i], kids[i]]
                j = int(np.argmax(cand))
                if cand[j] > 0:
                    prefix[i] = cand[j]
                    pred[i] = j
            sequences[u] = (kids, pred)
            totals = prefix[:, None] + block[kids, :]
            pick = np.argmax(totals, axis=0)
            best = totals[pick, np.arange(n + 1)]
            take = best > 0
            best_tail = np.where(take, best, 0)
            last_child[u] = np.where(take & follow_ok[u], pick, -1)
        block[u] = np.where(follow_ok[u], w[u] + best_tail, neg)
        block[u] = np.maximum(block[u], neg)

    # top-level sequence of blocks linked by A-arcs
    top = np.full(n, neg, dtype=dtype)
    nxt = np.full(n, -1, dtype=np.int64)
    for r in range(n - 1, -1, -1):
        cand = block[r, :n] + top
        j = int(np.argmax(cand))
        if cand[j] > block[r, bot]:
            top[r], nxt[r] = cand[j], j
        else:
            top[r] = block[r, bot]

    start = int(np.argmax(top))
    if top[start] <= 0:
        return ChainResult(0, ())

    records = []
    roots = [start]
    while nxt[roots[-1]] != -1:
        roots.append(int(nxt[roots[-1]]))
    stack = []
    for i, r in enumerate(roots):
        follower = roots[i + 1] if i + 1 < len(roots) else bot
        prev = roots[i - 1] if i else None
        stack.append((r, follower, None, prev))
    stack.reverse()
    while stack:
        u, e, parent, prev = stack.pop()
        x = int(last_child[u, e])
        children = []
        if x != -1:
            kids, pred = sequences[u]
            while x != -1:
                children.append(x)
                x = int(pred[x])
            children = [int(kids[i]) for i in reversed(children)]
        role = "root" if parent is None else ("head" if children else "child")
        records.append({
            "vertex": order[u],
            "role": role,
            "parent": None if parent is None else order[parent],
            "prev": None if prev is None else order[prev],
            "follower": None if e == bot else order[e],
        })
        for i in range(len(children) - 1, -1, -1):
            follower = children[i + 1] if i + 1 < len(children) else e
            stack.append((children[i], follower, u, children[i - 1] if i else None))

    members = tuple(sorted(rec["vertex"] for rec in records))
    _assert_chain(o, members)
    value = sum(weights[v] for v in members)
    if value * (n + 1) - len(members) != int(top[start]):
        raise SoundnessViolation("reconstructed members disagree with the table value")
    records.sort(key=lambda rec: rank[rec["vertex"]])
    return ChainResult(value, members, tuple(records))


def check_certificate(o: BiOrientation, result: ChainResult) -> bool:
    """Replay the arcs each certificate record claims the solver relied on."""
    labels = o.labels()
    for rec in result.certificate:
        v = rec["vertex"]
        if rec["parent"] is not None and labels.get((rec["parent"], v)) != B:
            return False
        if rec["prev"] is not None and labels.get((rec["prev"], v)) != A:
            return False
        if rec["follower"] is not None and labels.get((v, rec["follower"])) != A:
            return False
    return {rec["vertex"] for rec in result.certificate} == set(result.members)


def mwis(g: WeightedGraph, o: BiOrientation, verify: bool = True) -> ChainResult:
    """Maximum weight independent set of ``g`` from a complement orientation."""
    if verify:
        report = verify_orientation(g, o, check_cover=True)
        if not report.passed(STRONG_FLAGS + ("covers_complement",)):
            raise PreconditionFailed(report)
    result = max_weight_chain(o, g.weights, verify=False)
    for u, v in itertools.combinations(result.members, 2):
        if g.has_edge(u, v):
            raise SoundnessViolation(f"members {u} and {v} are adjacent in the graph")
    return result


def oracle_mwis(g: WeightedGraph, limit: int = 30) -> tuple[int, tuple]:
    """Exact maximum weight independent set by branch and bound on bitsets.

    Ties are broken toward fewer members, then the lexicographically smallest
    sorted member tuple, matching the scheme used by the chain solver.
    """
    if g.n > limit:
        raise TooLarge(f"oracle limited to {limit} vertices, got {g.n}")
    adj = g.adjacency_bits()
    w = g.weights
    # zero-weight vertices never improve value and always cost a member
    candidates = sum(1 << v for v in range(g.n) if w[v] > 0)
    best = [(0, 0, ()), 0]

    def key(value, bits):
        members = [v for v in range(g.n) if bits >> v & 1]
        return (value, -len(members), tuple(-v for v in members))

    def weight_of(bits):
        total = 0
        while bits:
            low = bits & -bits
            total += w[low.bit_length() - 1]
            bits ^= low
        return total

    def search(cand, chosen, value):
        if value + weight_of(cand) < best[0][0]:
            return
        if not cand:
            k = key(value, chosen)
            if k > best[0]:
                best[0], best[1] = k, chosen
            return
        low = cand & -cand
        v = low.bit_length() - 1
        search(cand & ~adj[v] & ~low, chosen | low, value + w[v])
        if adj[v] & cand:
            search(cand & ~low, chosen, value)

    search(candidates, 0, 0)
    members = tuple(v for v in range(g.n) if best[1] >> v & 1)
    return best[0][0], members


def oracle_chain(o: BiOrientation, weights, limit: int = 30) -> tuple[int, tuple]:
    """Heaviest chain by exhaustive search: an independent set of the non-arc graph."""
    return oracle_mwis(complement(arc_graph(o, weights)), limit)


def heaviest_path(o: BiOrientation, weights) -> int:
    """Heaviest directed path by topological relaxation (a chain when arcs are transitive)."""
    weights = _check_weights(weights, o.n)
    best = [0] * o.n
    preds = [[] for _ in range(o.n)]
    for u, v, _ in o.arcs:
        preds[v].append(u)
    for v in topological_order(o):
        best[v] = weights[v] + max((best[u] for u in preds[v]), default=0)
    return max(best, default=0)
