"""Seeded random fault-tree generation for fuzzing and benchmarks.

Construction is validity-by-construction: a random rooted tree of gates
is grown first (acyclic and single-rooted by design, with node indices
increasing away from the root), basic events are attached so that no
gate is left childless, and finally extra edges are added from gates to
higher-index nodes until the requested number of multiparent nodes is
reached.  Everything is driven by one ``random.Random(seed)`` instance
(CPython's Mersenne Twister), so a config reproduces its tree bit for
bit across runs.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import InfeasibleConfigError
from .galileo import serialize_ft
from .solver import variable_budget
from .tree import FaultTree, GateKind

PRNG_NOTE = "python random.Random (Mersenne Twister), one instance per tree"


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n_be: int = 8
    n_gates: int = 6
    max_children: int = 4
    p_and: float = 0.4
    n_multiparent: int = 0
    prob_range: tuple[float, float] = (0.01, 0.5)

    def check(self):
        if self.n_be < 1:
            raise InfeasibleConfigError("need at least one basic event")
        if self.n_gates < 0:
            raise InfeasibleConfigError("negative gate count")
        if self.max_children < 2:
            raise InfeasibleConfigError("max_children must be at least 2")
        if self.n_multiparent > self.n_be + self.n_gates - 1:
            raise InfeasibleConfigError(
                "n_multiparent %d exceeds the %d non-root nodes"
                % (self.n_multiparent, self.n_be + self.n_gates - 1)
            )
        if self.n_gates == 0:
            if self.n_be != 1 or self.n_multiparent != 0:
                raise InfeasibleConfigError(
                    "without gates the tree must be a single basic event"
                )
        elif self.n_gates * self.max_children < self.n_gates - 1 + self.n_be:
            raise InfeasibleConfigError("not enough child capacity for all nodes")
        lo, hi = self.prob_range
        if not (0 <= lo <= hi <= 1):
            raise InfeasibleConfigError("prob_range must be within [0,1]")


def generate(cfg: GenConfig) -> FaultTree:
    """Deterministically generate one valid fault tree from a config."""
    cfg.check()
    rng = random.Random(cfg.seed)
    m, n = cfg.n_gates, cfg.n_be
    width = max(4, len(str(m + n)))
    gate_names = ["g%0*d" % (width, i) for i in range(m)]
    be_names = ["be%0*d" % (width, i) for i in range(n)]

    if m == 0:
        prob = rng.uniform(*cfg.prob_range)
        return FaultTree(be_names, [GateKind.BE], [[]], {0: prob}, 0)

    children = [[] for _ in range(m + n)]

    # Gates with spare child capacity, with O(1) swap-removal so the
    # whole construction stays linear in the number of nodes.
    open_gates = [0]
    open_pos = {0: 0}

    def attach(parent, child):
        children[parent].append(child)
        if len(children[parent]) == cfg.max_children:
            i = open_pos.pop(parent)
            last = open_gates.pop()
            if last != parent:
                open_gates[i] = last
                open_pos[last] = i

    # Gate tree: each new gate picks a parent among earlier gates, but
    # never lets the number of childless gates exceed the BE supply
    # (every childless gate needs a BE of its own later).
    childless = {0}
    for j in range(1, m):
        if len(childless) >= n:
            # childless gates always have spare capacity
            parent = rng.choice(sorted(childless))
        else:
            parent = open_gates[rng.randrange(len(open_gates))]
        attach(parent, j)
        childless.discard(parent)
        childless.add(j)
        open_gates.append(j)
        open_pos[j] = len(open_gates) - 1

    # Basic events: childless gates first, the rest wherever there is room.
    targets = sorted(childless)
    rng.shuffle(targets)
    for j in range(n):
        be = m + j
        if targets:
            parent = targets.pop()
        else:
            parent = open_gates[rng.randrange(len(open_gates))]
        attach(parent, be)

    # Extra edges: make single-parent nodes multiparent one at a time.
    parent_count = [0] * (m + n)
    for kids in children:
        for w in kids:
            parent_count[w] += 1
    made = 0
    candidates = list(range(1, m + n))
    rng.shuffle(candidates)
    for w in candidates:
        if made == cfg.n_multiparent:
            break
        if parent_count[w] != 1:
            continue
        limit = w if w < m else m  # edges must point away from the root
        pool = [
            u
            for u in range(limit)
            if len(children[u]) < cfg.max_children and w not in children[u]
        ]
        if not pool:
            continue
        u = rng.choice(pool)
        children[u].append(w)
        parent_count[w] += 1
        made += 1

    kinds = [
        GateKind.AND if rng.random() < cfg.p_and else GateKind.OR
        for _ in range(m)
    ] + [GateKind.BE] * n
    probs = {m + j: rng.uniform(*cfg.prob_range) for j in range(n)}
    return FaultTree(gate_names + be_names, kinds, children, probs, 0)


@dataclass
class CorpusEntry:
    file: str
    nodes: int
    bes: int
    gates: int
    multiparent: int
    c: int
    seed: int


def generate_corpus(configs, out_dir) -> list[CorpusEntry]:
    """Write one .dft file per config plus a manifest.csv.

    The manifest starts with a comment line recording the PRNG so the
    corpus can be regenerated, followed by the header
    ``file,nodes,bes,gates,multiparent,c,seed``.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, cfg in enumerate(configs):
        t = generate(cfg)
        name = "ft_%05d.dft" % i
        (out_dir / name).write_text(serialize_ft(t), encoding="utf-8")
        entries.append(
            CorpusEntry(
                file=name,
                nodes=len(t),
                bes=len(t.basic_events()),
                gates=len(t) - len(t.basic_events()),
                multiparent=len(t.multiparent_nodes()),
                c=variable_budget(t),
                seed=cfg.seed,
            )
        )
    with open(out_dir / "manifest.csv", "w", newline="", encoding="utf-8") as fh:
        fh.write("# prng: %s\n" % PRNG_NOTE)
        writer = csv.writer(fh)
        writer.writerow(["file", "nodes", "bes", "gates", "multiparent", "c", "seed"])
        for e in entries:
            writer.writerow([e.file, e.nodes, e.bes, e.gates, e.multiparent, e.c, e.seed])
    return entries
