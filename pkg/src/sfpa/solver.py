"""Unreliability algorithms on fault-tree DAGs.

The polynomial method processes nodes leaves-first.  Each node gets an
expression for its failure probability in which shared (multiparent)
descendants appear as formal variables; a variable is substituted by its
numeric (or polynomial) value exactly at the immediate dominator of the
node it stands for, the earliest point at which no second copy can show
up in the computation.  At the root all variables are gone and the
constant left over is the unreliability.

Two variants are provided: the plain one introduces a variable for every
gate child and substitutes it away immediately when possible, while the
optimized one folds single-parent children directly into the gate
expression and only ever creates variables for multiparent nodes.

Probabilities drive the coefficient field: build the tree with floats
for speed or with Fractions (see FaultTree.with_exact_probs) for exact
results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly
from .dominators import DominatorInfo, immediate_dominators
from .errors import CapExceededError, NoCutSetError, NotATreeError, ValidationError
from .tree import FaultTree, GateKind

#: Hard wall for the minimal-cut-set reduction: probabilities shrink
#: doubly exponentially, so 17+ basic events are out of reach.
MCS_CAP = 16


@dataclass
class SolveReport:
    """Result of one polynomial solve, plus instrumentation.

    ``unreliability`` is the raw computed value (float mode may stray
    from [0,1] by rounding; ``clamped()`` reports it pinned back).
    ``max_live_vars`` is the largest number of formal variables alive in
    any node expression, ``max_terms`` the largest term count,
    ``substitutions``/``multiplications`` count polynomial operations.
    With ``capture=True`` the plain algorithm also records ``history``:
    for each node, its expression after construction and after every
    substitution (the last entry is the value used at its dominator).
    """

    unreliability: object
    algorithm: str
    max_live_vars: int = 0
    max_terms: int = 0
    substitutions: int = 0
    multiplications: int = 0
    wall_time: float = 0.0
    history: dict[int, list[Poly]] | None = field(default=None, repr=False)

    def clamped(self):
        return min(max(self.unreliability, 0), 1)

    def final_poly(self, v: int) -> Poly:
        """The captured expression a node contributes to its dominator."""
        if self.history is None:
            raise ValueError("solve was run without capture=True")
        return self.history[v][-1]


def _require_plain_ft(t: FaultTree):
    if t.controllable_events():
        raise ValidationError("solver operates on fault trees without CBEs")


def _postorder(t: FaultTree):
    """Children-first processing order (DFS post-order from the root).

    Any children-first order is correct here; depth-first keeps the set
    of computed-but-unconsumed node values small, where reversing a
    breadth-like topological order would hold every leaf at once.
    """
    order = []
    done = [False] * len(t)
    stack = [(t.root, False)]
    while stack:
        v, expanded = stack.pop()
        if done[v]:
            continue
        if expanded:
            done[v] = True
            order.append(v)
        else:
            stack.append((v, True))
            for w in t.children[v]:
                if not done[w]:
                    stack.append((w, False))
    return order


def _grouped_by_idom(t: FaultTree, dom: DominatorInfo, only_multiparent=False):
    """For each node, the nodes it immediately dominates, closest first
    (forward topological order is exactly the maximal-first order the
    substitution loop needs).  The optimized algorithm only ever
    substitutes multiparent nodes, so it can ask for just those."""
    groups = {}
    for w in dom.topo_order:
        if w == t.root:
            continue
        if only_multiparent and len(t.parents[w]) == 1:
            continue
        groups.setdefault(dom.idom[w], []).append(w)
    return groups


def solve_sfpa(t: FaultTree, dom: DominatorInfo | None = None,
               capture: bool = False) -> SolveReport:
    """Plain polynomial algorithm: a formal variable per gate child."""
    _require_plain_ft(t)
    start = time.perf_counter()
    if dom is None:
        dom = immediate_dominators(t)
    groups = _grouped_by_idom(t, dom)
    report = SolveReport(unreliability=None, algorithm="sfpa",
                         history={} if capture else None)
    g: dict[int, Poly] = {}

    def record(poly):
        report.max_terms = max(report.max_terms, len(poly))
        report.max_live_vars = max(report.max_live_vars, len(poly.variables()))

    for v in _postorder(t):
        kind = t.kinds[v]
        if kind is GateKind.BE:
            gv = Poly.constant(t.probs[v])
        else:
            if kind is GateKind.AND:
                gv = Poly.constant(1)
                for w in t.children[v]:
                    gv = gv * Poly.variable(w)
                    report.multiplications += 1
            else:
                acc = Poly.constant(1)
                for w in t.children[v]:
                    acc = acc * (1 - Poly.variable(w))
                    report.multiplications += 1
                gv = 1 - acc
            record(gv)
            if capture:
                report.history[v] = [gv]
            for w in groups.get(v, ()):
                gv = gv.substitute(w, g[w])
                report.substitutions += 1
                record(gv)
                if capture:
                    report.history[v].append(gv)
                else:
                    del g[w]
        record(gv)
        if capture and kind is GateKind.BE:
            report.history[v] = [gv]
        g[v] = gv

    report.unreliability = g[t.root].constant_value()
    report.wall_time = time.perf_counter() - start
    return report


def solve_sfpa2(t: FaultTree, dom: DominatorInfo | None = None) -> SolveReport:
    """Optimized polynomial algorithm.

    Single-parent children are folded into the gate expression without
    ever becoming formal variables, so variables exist only for
    multiparent nodes; the substitution loop handles every remaining
    node whose immediate dominator is the gate.  On a tree-shaped input
    this degenerates to the classical numeric bottom-up pass.

    The body is written with flat lists and hoisted locals; on large
    DAGs the solve is memory-bound and dict/attribute traffic would
    otherwise dominate the polynomial work.
    """
    _require_plain_ft(t)
    start = time.perf_counter()
    if dom is None:
        dom = immediate_dominators(t)
    groups = _grouped_by_idom(t, dom, only_multiparent=True)
    report = SolveReport(unreliability=None, algorithm="sfpa2", max_terms=1)

    n = len(t)
    kinds, children, probs = t.kinds, t.children, t.probs
    single = [len(p) == 1 for p in t.parents]
    # node value: a plain number while no variables are live, a Poly as
    # soon as a multiparent descendant's variable appears
    g = [None] * n
    for v, p in probs.items():
        g[v] = p
    poly_cls = Poly
    variable = Poly.variable
    constant = Poly.constant
    kind_be = GateKind.BE
    kind_or = GateKind.OR
    multiplications = 0
    substitutions = 0

    for v in _postorder(t):
        kind = kinds[v]
        if kind is kind_be:
            continue
        invert = kind is kind_or  # OR(v) = 1 - prod(1 - children)
        num = 1
        poly = None
        for w in children[v]:
            val = g[w] if single[w] else variable(w)
            if invert:
                val = 1 - val
            if val.__class__ is poly_cls:
                poly = val if poly is None else poly * val
            else:
                num = num * val
        multiplications += len(children[v])
        if poly is None:
            gv = 1 - num if invert else num
        else:
            gv = poly if num == 1 else poly * num
            if invert:
                gv = 1 - gv
            report.max_terms = max(report.max_terms, len(gv))
            report.max_live_vars = max(report.max_live_vars,
                                       len(gv.variables()))
        for w in groups.get(v, ()):
            gw = g[w]
            if not isinstance(gv, poly_cls):
                continue  # variable never surfaced here
            if not isinstance(gw, poly_cls):
                gw = constant(gw)
            gv = gv.substitute(w, gw)
            substitutions += 1
            report.max_terms = max(report.max_terms, len(gv))
            report.max_live_vars = max(report.max_live_vars,
                                       len(gv.variables()))
        if isinstance(gv, poly_cls) and gv.is_constant():
            gv = gv.constant_value()
        g[v] = gv

    report.multiplications = multiplications
    report.substitutions = substitutions
    value = g[t.root]
    report.unreliability = (
        value.constant_value() if isinstance(value, poly_cls) else value
    )
    report.wall_time = time.perf_counter() - start
    return report


def solve_treelike(t: FaultTree):
    """Classical numeric bottom-up unreliability; trees only."""
    _require_plain_ft(t)
    for v in t.multiparent_nodes():
        raise NotATreeError(t.names[v])
    value = {}
    for v in _postorder(t):
        kind = t.kinds[v]
        if kind is GateKind.BE:
            value[v] = t.probs[v]
        elif kind is GateKind.AND:
            acc = 1
            for w in t.children[v]:
                acc = acc * value[w]
            value[v] = acc
        else:
            acc = 1
            for w in t.children[v]:
                acc = acc * (1 - value[w])
            value[v] = 1 - acc
    return value[t.root]


def variable_budget(t: FaultTree, dom: DominatorInfo | None = None) -> int:
    """Maximum number of simultaneously live formal variables.

    A multiparent node w is live at v when v is a strict ancestor of w
    but still at-or-below the immediate dominator of w.  The maximum of
    the live counts over all nodes bounds every polynomial's variable
    set in the optimized algorithm.
    """
    if dom is None:
        dom = immediate_dominators(t)
    live = [0] * len(t)
    for w in t.multiparent_nodes():
        ancestors = set()
        stack = [w]
        while stack:
            u = stack.pop()
            for p in t.parents[u]:
                if p not in ancestors:
                    ancestors.add(p)
                    stack.append(p)
        idw = dom.idom[w]
        below_idw = {idw}
        stack = [idw]
        while stack:
            u = stack.pop()
            for kid in t.children[u]:
                if kid not in below_idw:
                    below_idw.add(kid)
                    stack.append(kid)
        for v in ancestors & below_idw:
            live[v] += 1
    return max(live, default=0)


def minimal_cut_set_via_reduction(t: FaultTree, cap: int = MCS_CAP):
    """Extract one minimal cut set from a single exact unreliability value.

    Basic events are enumerated in name order as v_0, v_1, ...; each v_i
    gets the probability 10**(-2**i), so the exponents of the minimal
    cut sets are distinct integers whose binary digits spell out the cut
    set, and the leading decimal position of U(T) identifies the
    smallest of them.  Probabilities are exact rationals throughout.

    Returns the minimal cut set as a frozenset of failed BE ids.
    """
    bes = sorted(t.basic_events(), key=lambda v: t.names[v])
    if len(bes) > cap:
        raise CapExceededError(len(bes), cap)
    probs = {v: Fraction(1, 10 ** (2**i)) for i, v in enumerate(bes)}
    rigged = FaultTree(t.names, t.kinds, t.children, probs, t.root)
    value = solve_sfpa2(rigged).unreliability
    if value == 0:
        raise NoCutSetError("the tree has no cut sets")
    num, den = value.numerator, value.denominator
    if num >= den:
        # U(T) = 1 would require the empty event to be a cut set, which
        # monotone gates over basic events cannot produce.
        raise ValidationError("unexpected unreliability >= 1")
    kappa = 0
    while num < den:
        num *= 10
        kappa += 1
    return frozenset(bes[i] for i in range(len(bes)) if (kappa >> i) & 1)
