"""Degeneration order on orbits and Hasse diagrams.

Necessary test: every invariant rank can only drop in a closure.  Sufficient
test: a toric limit.  If ``x`` lies in ``O_i`` and ``chi`` is a cocharacter
of the Cartan torus, the lowest ``chi``-level part of ``x`` lies in the
closure of ``O_i`` (orbits are cones).  Two families of ``x`` are searched:

* ``w . rep_i`` for the printed representative, limits are its faces;
* ``rep_j`` plus monomials on weights strictly above the level of ``rep_j``,
  whose limit is ``rep_j`` itself.

Orbits are recognised by their rank invariants.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

import networkx as nx
import numpy as np

from .grading import GradedLie, graded_case
from .vinberg import OrbitRecord, case_orbits, orbit_invariants

CHI_RANGE = (-2, -1, 0, 1, 2)
MAX_DEPTH = 3


@dataclass
class HasseDiagram:
    nodes: dict  # index -> dim
    edges: list  # covers (lower, upper)
    unproven: list = field(default_factory=list)  # fixture covers with no certificate
    diagnostic: dict = field(default_factory=dict)

    def order(self) -> set:
        g = nx.DiGraph(self.edges)
        g.add_nodes_from(self.nodes)
        return {(a, b) for a in g for b in nx.descendants(g, a)}

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        for i in sorted(self.nodes):
            lines.append(f'  O{i} [label="O{i} (dim {self.nodes[i]})"];')
        for a, b in sorted(self.edges):
            lines.append(f"  O{a} -> O{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "nodes": [{"i": i, "dim": self.nodes[i]} for i in sorted(self.nodes)],
            "edges": [list(e) for e in sorted(self.edges)],
            "unproven": [list(e) for e in sorted(self.unproven)],
            "diagnostic": self.diagnostic,
        }


# -- necessary conditions ---------------------------------------------------------

def dimension_filter(orbits: list) -> set:
    """Pairs ``(j, i)`` allowed by dimension alone: ``dim O_j < dim O_i``."""
    return {(a.index, b.index) for a in orbits for b in orbits if a.dim < b.dim}


def rank_filter(orbits: list) -> set:
    """Pairs ``(j, i)`` with every invariant of ``j`` at most that of ``i``."""
    out = set()
    for a in orbits:
        for b in orbits:
            if a.dim >= b.dim:
                continue
            if a.dim == 0 or all(x <= y for x, y in zip(a.invariants, b.invariants)):
                out.add((a.index, b.index))
    return out


# -- toric limits -------------------------------------------------------------------

class _Identifier:
    def __init__(self, gl: GradedLie, orbits: list):
        self.gl = gl
        self.by_inv = {o.invariants: o.index for o in orbits}
        self.cache: dict = {}

    def __call__(self, x: dict):
        key = tuple(sorted(x.items()))
        if key not in self.cache:
            if not any(x.values()):
                self.cache[key] = self.by_inv.get((0,))
            else:
                self.cache[key] = self.by_inv.get(orbit_invariants(self.gl, x))
        return self.cache[key]


@lru_cache(maxsize=None)
def _chis(rank: int) -> np.ndarray:
    return np.array(list(product(CHI_RANGE, repeat=rank)), dtype=np.int64)


def _levels(gl: GradedLie, roots) -> np.ndarray:
    """Levels of ``roots`` under every cocharacter in the box (chi x root)."""
    R = np.array(roots, dtype=np.int64).reshape(len(roots), gl.rs.rank)
    return _chis(gl.rs.rank) @ R.T


def faces(gl: GradedLie, rep: dict) -> list:
    """Distinct lowest-level parts of ``rep`` over the cocharacter box."""
    roots = sorted(rep)
    if not roots:
        return []
    L = _levels(gl, roots)
    low = L == L.min(axis=1, keepdims=True)
    seen = sorted({tuple(row) for row in low.tolist()})
    out = []
    for row in seen:
        if all(row):
            continue
        out.append({r: rep[r] for r, keep in zip(roots, row) if keep})
    return out


def raised_sets(gl: GradedLie, rep: dict) -> list:
    """Maximal sets of g_1 weights strictly above ``rep`` for some cocharacter
    constant on the support of ``rep``."""
    roots = sorted(rep)
    g1 = [b for b in gl.g1 if b not in rep]
    if not roots or not g1:
        return []
    Lr = _levels(gl, roots)
    const = (Lr == Lr[:, :1]).all(axis=1)
    Lg = _levels(gl, g1)[const]
    above = Lg > Lr[const][:, :1]
    sets = {frozenset(i for i, a in enumerate(row) if a) for row in above.tolist()}
    sets.discard(frozenset())
    maximal = [s for s in sets if not any(s < t for t in sets)]
    return sorted((tuple(g1[i] for i in sorted(s)) for s in maximal), key=lambda t: (-len(t), t))


def _raised_candidates(gl: GradedLie, rep: dict, depth: int):
    seen = set()
    for U in raised_sets(gl, rep):
        for T in combinations(U, depth):
            if T not in seen:
                seen.add(T)
                yield T


def toric_degenerates(gl: GradedLie, rec_i: OrbitRecord, rec_j: OrbitRecord, orbits: list | None = None) -> bool:
    """True if a toric limit of a point of ``O_i`` lies in ``O_j``.

    False means inconclusive.
    """
    if rec_j.dim >= rec_i.dim:
        return False
    if rec_j.dim == 0:
        return True
    orbits = orbits if orbits is not None else [rec_i, rec_j]
    ident = _Identifier(gl, orbits)
    if any(ident(f) == rec_j.index for f in faces(gl, rec_i.rep)):
        return True
    for depth in range(1, MAX_DEPTH + 1):
        for T in _raised_candidates(gl, rec_j.rep, depth):
            x = dict(rec_j.rep)
            x.update({b: 1 for b in T})
            if ident(x) == rec_i.index:
                return True
    return False


def _certificates(gl: GradedLie, orbits: list, j: int, depth: int) -> set:
    """Certified pairs ``(lower, upper)`` involving orbit ``j`` at one search depth.

    Depth 0 takes faces of ``rep_j``; depth ``d`` adds ``d`` raised monomials.
    """
    ident = _Identifier(gl, orbits)
    rec = orbits[j]
    out = set()
    if depth == 0:
        for f in faces(gl, rec.rep):
            k = ident(f)
            if k is not None and k != j:
                out.add((k, j))
        return out
    for T in _raised_candidates(gl, rec.rep, depth):
        x = dict(rec.rep)
        x.update({b: 1 for b in T})
        k = ident(x)
        if k is not None and k != j:
            out.add((j, k))
    return out


def _case_certificates(case: str, j: int, depth: int) -> set:
    return _certificates(graded_case(case), case_orbits(case), j, depth)


def certified_order(gl: GradedLie, orbits: list, jobs: int = 1, depth: int = MAX_DEPTH) -> set:
    """Transitive closure of certified degenerations ``(lower, upper)``.

    The search deepens only while pairs allowed by the rank filter remain
    undecided.
    """
    nodes = [o.index for o in orbits]
    necessary = rank_filter(orbits)
    pairs: set = {(0, i) for i in nodes if i}
    order = transitive_closure(pairs, nodes)
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 and gl.case else None
    try:
        for d in range(depth + 1):
            if not necessary - order:
                break
            todo = sorted({a for a, b in necessary - order} | {b for a, b in necessary - order})
            if pool is not None:
                results = pool.map(_case_certificates, [gl.case] * len(todo), todo, [d] * len(todo))
            else:
                results = (_certificates(gl, orbits, j, d) for j in todo)
            for s in results:
                pairs |= s
            order = transitive_closure(pairs, nodes)
    finally:
        if pool is not None:
            pool.shutdown()
    return order


def transitive_closure(pairs, nodes) -> set:
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(pairs)
    return {(a, b) for a in g for b in nx.descendants(g, a)}


def reduce(order, nodes) -> list:
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(order)
    return sorted(nx.transitive_reduction(g).edges())


def restrict(order: set, keep) -> set:
    keep = set(keep)
    return {(a, b) for a, b in order if a in keep and b in keep}


def relabel(order, mapping: dict) -> set:
    return {(mapping[a], mapping[b]) for a, b in order}


# -- diagrams ------------------------------------------------------------------------

def hasse(gl: GradedLie, orbits: list, jobs: int = 1, depth: int = MAX_DEPTH) -> HasseDiagram:
    """Hasse diagram of the certified order; gaps to the rank filter are listed."""
    nodes = {o.index: o.dim for o in orbits}
    proven = certified_order(gl, orbits, jobs=jobs, depth=depth)
    necessary = rank_filter(orbits)
    bad = proven - necessary
    if bad:
        raise RuntimeError(f"certified pairs violate the rank filter: {sorted(bad)}")
    gap = necessary - proven
    diag = HasseDiagram(nodes, reduce(proven, nodes))
    diag.diagnostic = {"undecided": [list(p) for p in sorted(gap)]}
    return diag


def reconcile(diagram: HasseDiagram, fixture_edges, mapping: dict) -> HasseDiagram:
    """Compare a computed diagram with fixture covers.

    ``mapping`` sends fixture indices to computed indices; computed orbits
    outside its image are dropped and the order restricted before the
    comparison.  Returns the diagram in fixture numbering with a diagnostic
    of missing and extra edges; fixture covers that are not certified are
    listed as unproven.
    """
    inv = {v: k for k, v in mapping.items()}
    order = relabel(restrict(diagram.order(), inv), inv)
    nodes = {inv[i]: d for i, d in diagram.nodes.items() if i in inv}
    computed = reduce(order, nodes)
    fixture_edges = sorted(tuple(e) for e in fixture_edges)
    missing = sorted(set(fixture_edges) - set(computed))
    extra = sorted(set(computed) - set(fixture_edges))
    out = HasseDiagram(nodes, computed)
    out.unproven = [e for e in fixture_edges if e not in order]
    out.diagnostic = {
        "match": not missing and not extra,
        "missing": [list(e) for e in missing],
        "extra": [list(e) for e in extra],
        "dropped": sorted(i for i in diagram.nodes if i not in inv),
    }
    return out


def swap_invariant(edges, swap) -> bool:
    perm = {}
    for a, b in swap:
        perm[a], perm[b] = b, a
    f = lambda i: perm.get(i, i)
    s = {tuple(e) for e in edges}
    return {(f(a), f(b)) for a, b in s} == s
