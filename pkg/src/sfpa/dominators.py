"""Topological order and immediate dominators of a fault-tree DAG.

Orientation: edges run from the root towards the leaves, and we order
nodes by the ancestor relation (a node is "below" another if the latter
can reach it).  A dominator of v is a node lying on every path from the
root to v; the immediate dominator is the closest one.

The computation is the classic iterative-intersection scheme over a
topological order.  On a DAG every parent is processed before its
children, so the first sweep already reaches the fixpoint; we keep the
outer loop anyway as a cheap safety net.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .tree import FaultTree


@dataclass(frozen=True)
class DominatorInfo:
    """Immediate dominators plus the topological order they were built on.

    ``idom`` maps every non-root node to its immediate dominator;
    ``topo_order`` lists the nodes root-first with every parent before
    its children; ``topo_index`` is the inverse permutation.
    """

    idom: dict[int, int]
    topo_order: list[int]
    topo_index: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.topo_index:
            self.topo_index.update(
                {v: i for i, v in enumerate(self.topo_order)}
            )


def topo_sort(t: FaultTree) -> list[int]:
    """Root-first topological order, ties broken by smallest node id."""
    n = len(t)
    indeg = [len(t.parents[v]) for v in range(n)]
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in t.children[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order


def immediate_dominators(t: FaultTree, order=None) -> DominatorInfo:
    """Immediate dominator of every non-root node."""
    if order is None:
        order = topo_sort(t)
    index = {v: i for i, v in enumerate(order)}
    idom = {t.root: t.root}

    def intersect(u, v):
        while u != v:
            while index[u] > index[v]:
                u = idom[u]
            while index[v] > index[u]:
                v = idom[v]
        return u

    changed = True
    while changed:
        changed = False
        for v in order[1:]:
            preds = [p for p in t.parents[v] if p in idom]
            new = preds[0]
            for p in preds[1:]:
                new = intersect(new, p)
            if idom.get(v) != new:
                idom[v] = new
                changed = True
    idom.pop(t.root)
    return DominatorInfo(idom=idom, topo_order=list(order), topo_index=index)


def check_idom_ordering(info: DominatorInfo, t: FaultTree) -> bool:
    """Verify the dominator ordering property on all comparable pairs.

    For every pair with v strictly below w, either idom(v) lies at or
    below w, or idom(w) lies at or below idom(v).  This holds on every
    valid tree; the function exists as a test oracle.
    """
    n = len(t)
    reach = [0] * n  # bitmask of descendants-or-self
    for v in reversed(info.topo_order):
        mask = 1 << v
        for w in t.children[v]:
            mask |= reach[w]
        reach[v] = mask

    def below_eq(x, y):  # x is a descendant of (or equal to) y
        return bool(reach[y] >> x & 1)

    for w in range(n):
        for v in range(n):
            if v == w or not below_eq(v, w):
                continue
            # v is strictly below w
            iv = info.idom[v]
            ok = below_eq(iv, w)
            if not ok and w != t.root:
                ok = below_eq(info.idom[w], iv)
            if not ok:
                return False
    return True
