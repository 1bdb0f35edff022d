"""Z-gradings of a simple Lie algebra defined by one marked node."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .rootsys import RootSystem, build_root_system

CASES = {
    "E6.1": ("E6", 1),
    "E6.2": ("E6", 2),
    "E6.3": ("E6", 3),
    "E6.4": ("E6", 4),
    "F4.1": ("F4", 1),
    "F4.2": ("F4", 2),
    "F4.3": ("F4", 3),
    "F4.4": ("F4", 4),
    "G2.1": ("G2", 1),
    "G2.2": ("G2", 2),
}


@dataclass
class GradedLie:
    rs: RootSystem
    node: int  # 1-based, Bourbaki
    case: str | None = None
    components: dict = field(init=False)

    def __post_init__(self):
        if not 1 <= self.node <= self.rs.rank:
            raise ValueError(f"node {self.node} out of range for {self.rs.stype}")
        k = self.node - 1
        self.k = k
        comps: dict = {}
        for r in self.rs.roots:
            comps.setdefault(r[k], []).append(r)
        self.components = {i: sorted(v) for i, v in sorted(comps.items())}
        self.levi_nodes = tuple(j for j in range(self.rs.rank) if j != k)
        self.g1 = self.components.get(1, [])
        self._g1index = {r: i for i, r in enumerate(self.g1)}

    def degree(self, r) -> int:
        return r[self.k]

    def dim(self, i: int) -> int:
        n = len(self.components.get(i, []))
        return n + self.rs.rank if i == 0 else n

    @property
    def dims(self) -> dict:
        return {i: self.dim(i) for i in self.components}

    @cached_property
    def levi_positive(self) -> list:
        return [r for r in self.rs.positive if r[self.k] == 0]

    @cached_property
    def levi_roots(self) -> list:
        return [r for r in self.rs.roots if r[self.k] == 0]

    @cached_property
    def levi_components(self) -> list:
        """Connected components of the unmarked part of the Dynkin diagram."""
        A = self.rs.cartan
        left = set(self.levi_nodes)
        out = []
        while left:
            start = min(left)
            comp, todo = {start}, [start]
            while todo:
                a = todo.pop()
                for b in list(left):
                    if b not in comp and A[a][b]:
                        comp.add(b)
                        todo.append(b)
            left -= comp
            out.append(tuple(sorted(comp)))
        return sorted(out)

    def g1_index(self, r) -> int:
        return self._g1index[tuple(r)]

    def levi_orbit(self, weight) -> set:
        return self.rs.weyl_orbit(weight, self.levi_nodes)

    def levi_rho(self):
        from fractions import Fraction

        n = self.rs.rank
        s = [0] * n
        for r in self.levi_positive:
            for i in range(n):
                s[i] += r[i]
        return tuple(Fraction(x, 2) for x in s)

    def to_json(self) -> str:
        d = {
            "case": self.case,
            "type": str(self.rs.stype),
            "node": self.node,
            "dims": {str(i): self.dim(i) for i in self.components},
            "levi": [[j + 1 for j in c] for c in self.levi_components],
        }
        return json.dumps(d, sort_keys=True)


def grade_by_node(rs, k: int, case: str | None = None) -> GradedLie:
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    return GradedLie(rs, k, case)


_CASE_CACHE: dict = {}


def graded_case(case: str) -> GradedLie:
    if case not in CASES:
        raise KeyError(f"unknown case {case!r}; expected one of {sorted(CASES)}")
    if case not in _CASE_CACHE:
        t, k = CASES[case]
        _CASE_CACHE[case] = grade_by_node(build_root_system(t), k, case)
    return _CASE_CACHE[case]


@dataclass
class WeightPoset:
    elements: list
    covers: list  # pairs (i, j): elements[i] covered by elements[j]
    gl: GradedLie | None = None

    def __post_init__(self):
        n = len(self.elements)
        self.up = [0] * n  # bitmask of upper covers
        self.down = [0] * n
        for i, j in self.covers:
            self.up[i] |= 1 << j
            self.down[j] |= 1 << i

    def __len__(self):
        return len(self.elements)

    def maximal(self) -> list:
        return [self.elements[i] for i in range(len(self)) if not self.up[i]]

    def minimal(self) -> list:
        return [self.elements[i] for i in range(len(self)) if not self.down[i]]

    def upper_closure(self, mask: int) -> int:
        todo = mask
        while todo:
            i = (todo & -todo).bit_length() - 1
            todo &= todo - 1
            new = self.up[i] & ~mask
            mask |= new
            todo |= new
        return mask

    def to_set(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in range(len(self)) if mask >> i & 1)


def weight_poset(gl: GradedLie) -> WeightPoset:
    elems = list(gl.g1)
    idx = {r: i for i, r in enumerate(elems)}
    covers = []
    for i, b in enumerate(elems):
        for j in gl.levi_nodes:
            c = list(b)
            c[j] += 1
            c = tuple(c)
            if c in idx:
                covers.append((i, idx[c]))
    return WeightPoset(elems, covers, gl)


MAX_POSET = 32


def b_stable_subsets(wp: WeightPoset) -> list:
    """All upward closed subsets, as bitmasks over ``wp.elements``."""
    n = len(wp)
    if n > MAX_POSET:
        raise ValueError(f"weight poset has {n} elements; limit is {MAX_POSET}")
    # linear extension from the top down
    order = []
    placed = 0
    while len(order) < n:
        for i in range(n):
            if not placed >> i & 1 and wp.up[i] & ~placed == 0:
                order.append(i)
                placed |= 1 << i
    out = []

    def rec(pos, mask):
        if pos == n:
            out.append(mask)
            return
        i = order[pos]
        rec(pos + 1, mask)
        if wp.up[i] & ~mask == 0:
            rec(pos + 1, mask | 1 << i)

    rec(0, 0)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    return out


def stabilizer_nodes(gl: GradedLie, weights) -> tuple:
    """Levi nodes j whose lowering operator preserves the weight set."""
    S = set(map(tuple, weights))
    g1 = set(gl.g1)
    out = []
    for j in gl.levi_nodes:
        ok = True
        for b in S:
            c = list(b)
            c[j] -= 1
            c = tuple(c)
            if c in g1 and c not in S:
                ok = False
                break
        if ok:
            out.append(j)
    return tuple(out)
