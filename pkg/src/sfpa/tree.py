"""Fault-tree data model and exhaustive (oracle) analysis.

A fault tree is a rooted DAG whose leaves are basic events (BEs) with
failure probabilities and whose internal nodes are AND/OR gates.  Leaves
may also be *controllable* basic events (CBEs), whose 0/1 state is set
externally rather than drawn at random; a tree with CBEs is what the
rest of the package calls a PCFT.

Nodes are identified by dense integer ids in declaration order; names
are kept for I/O only.  All objects are immutable after construction and
every function here is pure.

Safety events are represented as frozensets of *failed* BE ids (the
implicit domain is the full BE set of the tree); CBE states are passed
as mappings from CBE id to 0/1.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import CapExceededError, ValidationError

#: Default limit on the number of BEs for exhaustive enumeration
#: (2**20 assignments is about the largest that stays under seconds).
DEFAULT_ENUM_CAP = 20


class GateKind(enum.Enum):
    AND = "and"
    OR = "or"
    BE = "be"
    CBE = "cbe"


_LEAF_KINDS = (GateKind.BE, GateKind.CBE)


class FaultTree:
    """An immutable, validated fault tree (or PCFT, if CBEs are present).

    Attributes:
        names: tuple of node names, indexed by node id.
        kinds: tuple of GateKind per node.
        children: tuple of child-id tuples per node.
        parents: tuple of parent-id tuples per node (derived).
        probs: dict BE id -> failure probability (float or Fraction).
        root: id of the root node.
    """

    __slots__ = ("names", "kinds", "children", "parents", "probs", "root",
                 "name_to_id")

    def __init__(self, names, kinds, children, probs, root):
        self.names = tuple(names)
        self.kinds = tuple(kinds)
        self.children = tuple(tuple(c) for c in children)
        self.probs = dict(probs)
        self.root = root
        n = len(self.names)
        parents = [[] for _ in range(n)]
        for v, kids in enumerate(self.children):
            for w in kids:
                parents[w].append(v)
        self.parents = tuple(tuple(p) for p in parents)
        self.name_to_id = {name: i for i, name in enumerate(self.names)}
        self._validate()

    # -- construction helpers -------------------------------------------

    @classmethod
    def build(cls, root, gates, probs, cbes=()):
        """Build a tree from name-based dictionaries.

        ``gates`` maps gate name -> (kind, [child names]) with kind either
        a GateKind or the string "and"/"or".  ``probs`` maps BE name ->
        probability; ``cbes`` lists CBE names.  Ids are assigned in
        declaration order: gates first, then BEs, then CBEs.
        """
        names = []
        kinds = []
        child_names = []
        for name, (kind, kids) in gates.items():
            if isinstance(kind, str):
                kind = GateKind(kind.lower())
            names.append(name)
            kinds.append(kind)
            child_names.append(list(kids))
        id_probs = {}
        for name, p in probs.items():
            id_probs[len(names)] = p
            names.append(name)
            kinds.append(GateKind.BE)
            child_names.append([])
        for name in cbes:
            names.append(name)
            kinds.append(GateKind.CBE)
            child_names.append([])
        index = {}
        for i, name in enumerate(names):
            if name in index:
                raise ValidationError("duplicate node name %r" % name)
            index[name] = i
        children = []
        for name, kids in zip(names, child_names):
            ids = []
            for kid in kids:
                if kid not in index:
                    raise ValidationError(
                        "gate %r references unknown node %r" % (name, kid)
                    )
                ids.append(index[kid])
            children.append(ids)
        if root not in index:
            raise ValidationError("unknown root node %r" % root)
        return cls(names, kinds, children, id_probs, index[root])

    # -- validation ------------------------------------------------------

    def _validate(self):
        n = len(self.names)
        if not (0 <= self.root < n):
            raise ValidationError("root id out of range")
        if len(set(self.names)) != n:
            dupe = next(x for x in self.names if self.names.count(x) > 1)
            raise ValidationError("duplicate node name %r" % dupe)
        for v in range(n):
            kind = self.kinds[v]
            kids = self.children[v]
            if kind in _LEAF_KINDS:
                if kids:
                    raise ValidationError(
                        "leaf %r must not have children" % self.names[v]
                    )
            else:
                if not kids:
                    raise ValidationError(
                        "gate %r has no children" % self.names[v]
                    )
                if len(set(kids)) != len(kids):
                    raise ValidationError(
                        "gate %r lists a child twice" % self.names[v]
                    )
            if kind is GateKind.BE:
                if v not in self.probs:
                    raise ValidationError(
                        "basic event %r has no probability" % self.names[v]
                    )
                p = self.probs[v]
                if not (0 <= p <= 1):
                    raise ValidationError(
                        "probability %s of %r outside [0,1]" % (p, self.names[v])
                    )
            elif v in self.probs:
                raise ValidationError(
                    "node %r is not a basic event but has a probability"
                    % self.names[v]
                )
        self._check_acyclic()
        reachable = self._reachable_from(self.root)
        if len(reachable) != n:
            missing = next(v for v in range(n) if v not in reachable)
            raise ValidationError(
                "node %r is unreachable from the root" % self.names[missing]
            )

    def _check_acyclic(self):
        n = len(self.names)
        indeg = [len(p) for p in self.parents]
        queue = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in self.children[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if seen != n:
            cyc = next(v for v in range(n) if indeg[v] > 0)
            raise ValidationError("cycle detected through node %r" % self.names[cyc])

    def _reachable_from(self, v):
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.children[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.names)

    def basic_events(self):
        """BE ids in ascending id order."""
        return [v for v, k in enumerate(self.kinds) if k is GateKind.BE]

    def controllable_events(self):
        """CBE ids in ascending id order."""
        return [v for v, k in enumerate(self.kinds) if k is GateKind.CBE]

    def multiparent_nodes(self):
        """Ids of nodes with two or more parents, ascending."""
        return [v for v in range(len(self.names)) if len(self.parents[v]) >= 2]

    def is_treelike(self):
        return not self.multiparent_nodes()

    def with_exact_probs(self):
        """Copy with every probability converted to an exact Fraction."""
        probs = {v: Fraction(p) for v, p in self.probs.items()}
        return FaultTree(self.names, self.kinds, self.children, probs, self.root)

    # -- structural constructions ---------------------------------------

    def subtree(self, v):
        """The sub-tree of all descendants of ``v``, rooted at ``v``."""
        keep = sorted(self._reachable_from(v))
        remap = {old: new for new, old in enumerate(keep)}
        return FaultTree(
            [self.names[u] for u in keep],
            [self.kinds[u] for u in keep],
            [[remap[w] for w in self.children[u]] for u in keep],
            {remap[u]: p for u, p in self.probs.items() if u in remap},
            remap[v],
        )

    def restrict(self, cut):
        """Turn each node in ``cut`` into a CBE and drop what becomes unreachable.

        Nodes in ``cut`` lose their outgoing edges (and probability); the
        result is the portion still reachable from the root.
        """
        cut = set(cut)
        for v in cut:
            if not (0 <= v < len(self.names)):
                raise ValidationError("node id %d out of range" % v)
        kinds = [
            GateKind.CBE if v in cut else self.kinds[v]
            for v in range(len(self.names))
        ]
        children = [
            [] if v in cut else list(self.children[v])
            for v in range(len(self.names))
        ]
        seen = {self.root}
        stack = [self.root]
        while stack:
            u = stack.pop()
            for w in children[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        keep = sorted(seen)
        remap = {old: new for new, old in enumerate(keep)}
        return FaultTree(
            [self.names[u] for u in keep],
            [kinds[u] for u in keep],
            [[remap[w] for w in children[u]] for u in keep],
            {
                remap[u]: p
                for u, p in self.probs.items()
                if u in remap and kinds[u] is GateKind.BE
            },
            remap[self.root],
        )


def compose(t: FaultTree, v: int, t2: FaultTree) -> FaultTree:
    """Graft ``t2`` in place of the CBE ``v`` of ``t``.

    Nodes are matched up by name: the trees may share CBEs and gates
    (which must then have identical kind and child sets), but not BEs,
    and the name of ``v`` must not occur in ``t2``.  Every former parent
    of ``v`` points at the root of ``t2`` in the result.
    """
    if t.kinds[v] is not GateKind.CBE:
        raise ValidationError("node %r is not a CBE" % t.names[v])
    v_name = t.names[v]
    if v_name in t2.name_to_id:
        raise ValidationError("CBE %r also occurs in the grafted tree" % v_name)
    shared = set(t.name_to_id) & set(t2.name_to_id)
    for name in shared:
        a = t.name_to_id[name]
        b = t2.name_to_id[name]
        if t.kinds[a] is not t2.kinds[b]:
            raise ValidationError("shared node %r has conflicting kinds" % name)
        if t.kinds[a] is GateKind.BE:
            raise ValidationError("basic event %r occurs in both trees" % name)
        kids_a = sorted(t.names[w] for w in t.children[a])
        kids_b = sorted(t2.names[w] for w in t2.children[b])
        if kids_a != kids_b:
            raise ValidationError(
                "shared node %r has different children in the two trees" % name
            )

    root2_name = t2.names[t2.root]
    names = []
    kinds = []
    kid_names = []
    probs_by_name = {}
    for u in range(len(t.names)):
        if u == v:
            continue
        names.append(t.names[u])
        kinds.append(t.kinds[u])
        kid_names.append(
            [root2_name if w == v else t.names[w] for w in t.children[u]]
        )
        if u in t.probs:
            probs_by_name[t.names[u]] = t.probs[u]
    for u in range(len(t2.names)):
        if t2.names[u] in shared:
            continue
        names.append(t2.names[u])
        kinds.append(t2.kinds[u])
        kid_names.append([t2.names[w] for w in t2.children[u]])
        if u in t2.probs:
            probs_by_name[t2.names[u]] = t2.probs[u]
    index = {name: i for i, name in enumerate(names)}
    children = [[index[k] for k in kids] for kids in kid_names]
    probs = {index[name]: p for name, p in probs_by_name.items()}
    root_name = t.names[t.root] if v != t.root else root2_name
    return FaultTree(names, kinds, children, probs, index[root_name])


# -- structure function and exhaustive analysis -------------------------


def _as_failed_set(t: FaultTree, f):
    """Normalize a safety event to a frozenset of failed BE ids."""
    bes = set(t.basic_events())
    if isinstance(f, (set, frozenset)):
        extra = set(f) - bes
        if extra:
            raise ValidationError("event mentions non-BE ids %s" % sorted(extra))
        return frozenset(f)
    if set(f) != bes:
        raise ValidationError("event must be defined on exactly the BE set")
    return frozenset(v for v in f if f[v])


def _as_control(t: FaultTree, c):
    cbes = set(t.controllable_events())
    if isinstance(c, (set, frozenset)):
        extra = set(c) - cbes
        if extra:
            raise ValidationError("control mentions non-CBE ids %s" % sorted(extra))
        return frozenset(c)
    if set(c) != cbes:
        raise ValidationError("control must be defined on exactly the CBE set")
    return frozenset(v for v in c if c[v])


def structure_function(t: FaultTree, v: int, f, c=None) -> bool:
    """Evaluate the recursive Boolean structure function at node ``v``.

    ``f`` is a safety event (set of failed BE ids, or a full mapping);
    ``c`` likewise fixes the CBE states when the tree has CBEs.
    """
    failed = _as_failed_set(t, f)
    on = _as_control(t, c if c is not None else frozenset())
    order = _topo_children_first(t)
    value = {}
    for u in order:
        kind = t.kinds[u]
        if kind is GateKind.BE:
            value[u] = u in failed
        elif kind is GateKind.CBE:
            value[u] = u in on
        elif kind is GateKind.OR:
            value[u] = any(value[w] for w in t.children[u])
        else:
            value[u] = all(value[w] for w in t.children[u])
    return value[v]


def _topo_children_first(t: FaultTree):
    n = len(t.names)
    indeg = [len(t.children[v]) for v in range(n)]
    order = [v for v in range(n) if indeg[v] == 0]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for p in t.parents[v]:
            indeg[p] -= 1
            if indeg[p] == 0:
                order.append(p)
    return order


def _variable_tables(n: int):
    """Truth-table bit patterns for n Boolean variables.

    Pattern j is a 2**n-bit integer whose bit a equals bit j of a, so
    bitwise AND/OR on these integers evaluates a monotone circuit over
    all 2**n assignments at once.
    """
    patterns = []
    for j in range(n):
        block = 1 << j
        unit = ((1 << block) - 1) << block  # low `block` zeros, then ones
        period = 2 * block
        reps = (1 << n) // period
        tile = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
        patterns.append(unit * tile)
    return patterns


def _root_table(t: FaultTree, control=frozenset()):
    """Evaluate the structure function at the root over all BE assignments.

    Returns (bes, table) where bit a of ``table`` is the root value under
    the assignment whose bit j is the state of ``bes[j]``.
    """
    bes = t.basic_events()
    n = len(bes)
    patterns = _variable_tables(n)
    full = (1 << (1 << n)) - 1
    table = {}
    for j, v in enumerate(bes):
        table[v] = patterns[j]
    for v in t.controllable_events():
        table[v] = full if v in control else 0
    for u in _topo_children_first(t):
        if u in table:
            continue
        kids = t.children[u]
        acc = table[kids[0]]
        if t.kinds[u] is GateKind.OR:
            for w in kids[1:]:
                acc |= table[w]
        else:
            for w in kids[1:]:
                acc &= table[w]
        table[u] = acc
    return bes, table[t.root]


def _assignment_weights(t: FaultTree, bes):
    """Probability of each of the 2**n BE assignments, indexed by bitmask."""
    weights = [1]
    for v in bes:
        p = t.probs[v]
        q = 1 - p
        weights = [w * q for w in weights] + [w * p for w in weights]
    return weights


def _check_cap(t: FaultTree, cap):
    n = len(t.basic_events())
    if n > cap:
        raise CapExceededError(n, cap)


def cut_sets(t: FaultTree, cap=DEFAULT_ENUM_CAP):
    """All safety events that fail the root, as frozensets of failed BE ids."""
    _check_cap(t, cap)
    bes, table = _root_table(t)
    n = len(bes)
    result = set()
    for a in range(1 << n):
        if (table >> a) & 1:
            result.add(frozenset(bes[j] for j in range(n) if (a >> j) & 1))
    return result


def oracle_unreliability(t: FaultTree, cap=DEFAULT_ENUM_CAP):
    """Top-event failure probability by explicit summation over cut sets.

    This is the brute-force reference that the polynomial algorithms are
    validated against; exact when the probabilities are Fractions.
    """
    _check_cap(t, cap)
    bes, table = _root_table(t)
    weights = _assignment_weights(t, bes)
    blob = table.to_bytes((len(weights) + 7) // 8, "little")
    total = 0
    for a, w in enumerate(weights):
        if blob[a >> 3] & (1 << (a & 7)):
            total = total + w
    return total


def pcft_unreliability(t: FaultTree, c, cap=DEFAULT_ENUM_CAP):
    """Failure probability of a PCFT with its CBE states fixed to ``c``."""
    control = _as_control(t, c)
    _check_cap(t, cap)
    bes, table = _root_table(t, control)
    weights = _assignment_weights(t, bes)
    blob = table.to_bytes((len(weights) + 7) // 8, "little")
    total = 0
    for a, w in enumerate(weights):
        if blob[a >> 3] & (1 << (a & 7)):
            total = total + w
    return total
