"""Orbits of the degree-zero group on the degree-one piece of a graded algebra.

Orbits are classified through their supports: regular graded semisimple
subalgebras given by a map from the simple roots of a graded Dynkin type
into the roots of ``g`` (degrees 0 or 1), which are locally flat and
complete.  Supports are deduplicated under the Weyl group of ``g_0`` and the
orbit of a generic element of ``s_1`` is recorded.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product

import numpy as np

from ._exact import rank, rank_mod
from .grading import GradedLie, graded_case
from .rootsys import SimpleType, build_root_system


# -- graded Dynkin types -------------------------------------------------------

_SPECIAL_NAMES = {
    ("D", 4, (1, 0, 1, 1)): "D4(a1)",
    ("C", 3, (1, 0, 1)): "C3(a1)",
    ("F", 4, (0, 1, 0, 0)): "F4(a3)",
    ("G", 2, (0, 1)): "G2(a1)",
}


def _automorphisms(family: str, n: int) -> list:
    ident = tuple(range(n))
    out = [ident]
    if family == "A" and n > 1:
        out.append(tuple(reversed(ident)))
    elif family == "D":
        out.append(tuple(range(n - 2)) + (n - 1, n - 2))
        if n == 4:
            for p in [(3, 1, 0, 2), (2, 1, 3, 0), (0, 1, 3, 2), (3, 1, 2, 0), (2, 1, 0, 3)]:
                out.append(p)
    elif family == "E" and n == 6:
        out.append((5, 1, 4, 3, 2, 0))
    return out


@dataclass(frozen=True, order=True)
class Component:
    family: str
    rank: int
    labels: tuple
    short: bool = False  # simply laced component placed on short roots

    @property
    def stype(self) -> SimpleType:
        return SimpleType(self.family, self.rank)

    @property
    def principal(self) -> bool:
        return all(x == 1 for x in self.labels)

    @property
    def name(self) -> str:
        key = (self.family, self.rank, self.labels)
        if key in _SPECIAL_NAMES:
            base = _SPECIAL_NAMES[key]
        elif self.principal:
            base = f"{self.family}{self.rank}"
        else:
            base = f"{self.family}{self.rank}[{''.join(map(str, self.labels))}]"
        return ("~" if self.short else "") + base

    def sort_key(self):
        return (-self.rank, self.short, self.family, self.labels)


def canonical_labels(family: str, n: int, labels) -> tuple:
    return max(tuple(labels[p[i]] for i in range(n)) for p in _automorphisms(family, n))


@dataclass(frozen=True)
class SupportType:
    components: tuple

    @property
    def name(self) -> str:
        if not self.components:
            return "0"
        parts = []
        comps = sorted(self.components, key=Component.sort_key)
        i = 0
        while i < len(comps):
            j = i
            while j < len(comps) and comps[j] == comps[i]:
                j += 1
            k = j - i
            parts.append((f"{k}" if k > 1 else "") + comps[i].name)
            i = j
        return "+".join(parts)

    def __str__(self):
        return self.name

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @cached_property
    def nodes(self) -> list:
        """Flattened (component index, node) list in search order."""
        out = []
        for ci, c in enumerate(self.components):
            order = _bfs_order(build_root_system(c.stype).cartan)
            out.extend((ci, v) for v in order)
        return out

    def is_locally_flat(self) -> bool:
        return all(component_flat(c.family, c.rank, c.labels) for c in self.components)


def _bfs_order(A):
    n = len(A)
    seen = [0]
    i = 0
    while len(seen) < n:
        for v in range(n):
            if v not in seen and any(A[u][v] for u in seen):
                seen.append(v)
                break
        i += 1
    return seen


def component_flat(family, n, labels) -> bool:
    s0, s1 = graded_dims(family, n, labels)
    return s0 == s1


def graded_dims(family, n, labels):
    rs = build_root_system(SimpleType(family, n))
    s0 = n
    s1 = 0
    for r in rs.positive:
        d = sum(a * b for a, b in zip(r, labels))
        if d == 0:
            s0 += 2
        elif d == 1:
            s1 += 1
    return s0, s1


def _connected_types(rs_g) -> list:
    """Connected graded Dynkin types that could occur as support components."""
    fam = rs_g.stype.family
    n = rs_g.rank
    nonsimply = fam in "BCFG"
    ratio = {"B": 2, "C": 2, "F": 2, "G": 3}.get(fam)
    cands = []
    for r in range(1, n + 1):
        cands.append(("A", r))
        if r >= 4:
            cands.append(("D", r))
        if r in (6, 7, 8):
            cands.append(("E", r))
        if ratio == 2:
            if r >= 2:
                cands.append(("B", r))
            if r >= 3:
                cands.append(("C", r))
            if r == 4:
                cands.append(("F", 4))
        if ratio == 3 and r == 2:
            cands.append(("G", 2))
    out = []
    for f, r in cands:
        st = SimpleType(f, r)
        if len(build_root_system(st).roots) > len(rs_g.roots):
            continue
        seen = set()
        for labels in product((0, 1), repeat=r):
            if not any(labels):
                continue
            lab = canonical_labels(f, r, labels)
            if lab in seen or not component_flat(f, r, lab):
                continue
            seen.add(lab)
            variants = [False, True] if (nonsimply and f in "ADE") else [False]
            for short in variants:
                out.append(Component(f, r, lab, short))
    return out


def support_catalog(gl: GradedLie) -> list:
    """All graded types built from flat connected components of total rank
    at most ``rank(g)``."""
    comps = sorted(_connected_types(gl.rs), key=Component.sort_key)
    n = gl.rs.rank
    out = []
    for k in range(1, n + 1):
        for combo in combinations_with_replacement(range(len(comps)), k):
            cs = tuple(comps[i] for i in combo)
            if sum(c.rank for c in cs) <= n:
                out.append(SupportType(cs))
    return out


# -- support maps --------------------------------------------------------------

@dataclass(frozen=True)
class SupportMap:
    stype: SupportType
    images: tuple  # one root of g per entry of stype.nodes


def _node_data(gl: GradedLie, st: SupportType):
    """Per node: label, target squared length; pairwise target inner products."""
    rs = gl.rs
    short2 = min(rs.norm2(r) for r in rs.roots)
    nodes = st.nodes
    info = []
    for ci, v in nodes:
        c = st.components[ci]
        crs = build_root_system(c.stype)
        if c.family in "ADE":
            L = short2 if c.short else Fraction(2)
        else:
            L = Fraction(2) if crs.norm2(crs.simple_roots()[v]) == 2 else short2
        info.append((c.labels[v], L))
    m = len(nodes)
    target = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            ca, va = nodes[a]
            cb, vb = nodes[b]
            if ca != cb:
                target[a][b] = Fraction(0)
            else:
                A = build_root_system(st.components[ca].stype).cartan
                target[a][b] = A[va][vb] * info[a][1] / 2
    return info, target


def enumerate_support_maps(gl: GradedLie, st: SupportType, limit: int | None = None) -> list:
    """All maps satisfying the Gram-ratio, difference and degree conditions."""
    rs = gl.rs
    info, target = _node_data(gl, st)
    nodes = st.nodes
    m = len(nodes)
    pools = {}
    for lab in (0, 1):
        for L in {x[1] for x in info}:
            pools[(lab, L)] = [r for r in rs.roots if gl.degree(r) == lab and rs.norm2(r) == L]
    # identical components: force increasing first images to cut symmetry
    first_of = {}
    for idx, (ci, v) in enumerate(nodes):
        first_of.setdefault(ci, idx)
    same_prev = {}
    for ci in range(len(st.components)):
        if ci > 0 and st.components[ci] == st.components[ci - 1]:
            same_prev[first_of[ci]] = first_of[ci - 1]
    order_index = {r: i for i, r in enumerate(rs.roots)}
    out = []
    cur: list = []

    def rec(a):
        if limit is not None and len(out) >= limit:
            return
        if a == m:
            out.append(SupportMap(st, tuple(cur)))
            return
        lab, L = info[a]
        for r in pools[(lab, L)]:
            if a in same_prev and order_index[r] <= order_index[cur[same_prev[a]]]:
                continue
            ok = True
            for b in range(a):
                s = cur[b]
                if rs.inner(r, s) != target[a][b]:
                    ok = False
                    break
                d = tuple(x - y for x, y in zip(r, s))
                if not any(d) or rs.is_root(d):
                    ok = False
                    break
            if ok:
                cur.append(r)
                rec(a + 1)
                cur.pop()

    rec(0)
    return out


def support_roots(gl: GradedLie, sm: SupportMap) -> frozenset:
    """All roots of the regular subalgebra generated by the images."""
    st = sm.stype
    out = set()
    pos = 0
    for c in st.components:
        crs = build_root_system(c.stype)
        imgs = sm.images[pos: pos + c.rank]
        # node order inside the component follows the BFS order
        order = [v for ci, v in st.nodes[pos: pos + c.rank]]
        img_of = {v: imgs[k] for k, v in enumerate(order)}
        for r in crs.roots:
            v = [0] * gl.rs.rank
            for i, coef in enumerate(r):
                if coef:
                    for t in range(gl.rs.rank):
                        v[t] += coef * img_of[i][t]
            out.add(tuple(v))
        pos += c.rank
    return frozenset(out)


def is_locally_flat(gl: GradedLie, sm: SupportMap) -> bool:
    roots = support_roots(gl, sm)
    s1 = sum(1 for r in roots if gl.degree(r) == 1)
    s0 = sm.stype.rank + sum(1 for r in roots if gl.degree(r) == 0)
    return s0 == s1


def _span_rank(rows) -> int:
    return rank([list(r) for r in rows]) if rows else 0


def weyl_word_to_simple(gl: GradedLie, images, seed: int = 7):
    """A Weyl word ``w`` (list of simple reflection indices) with
    ``w(images)`` contained in the simple roots, or ``None``."""
    rs = gl.rs
    n = rs.rank
    R = [tuple(r) for r in images]
    k = _span_rank(R)
    in_span = [r for r in rs.roots if _span_rank(R + [r]) == k]
    # closure of R under the reflections it generates
    sub = set()
    for r in R:
        sub.add(r)
        sub.add(tuple(-x for x in r))
    grow = True
    while grow:
        grow = False
        for a in list(sub):
            for b in list(sub):
                c = rs.reflect(a, b)
                if c not in sub:
                    sub.add(c)
                    grow = True
    if set(in_span) != sub:
        return None
    G = [[rs.inner(a, b) for b in R] for a in R]
    # rho_R in span(R): (rho_R, r^vee) = 1 for every r in R
    M = [[G[j][i] * 2 / rs.norm2(R[j]) for i in range(k)] for j in range(k)]
    coeffs = _solve(M, [Fraction(1)] * k)
    rho_R = [sum(coeffs[i] * R[i][t] for i in range(k)) for t in range(n)]
    rng = random.Random(seed)
    for _ in range(50):
        z = [Fraction(rng.randint(-50, 50)) for _ in range(n)]
        # project z onto the orthogonal complement of span(R)
        rhs = [rs.inner(z, r) for r in R]
        c = _solve(G, rhs)
        u = [z[t] - sum(c[i] * R[i][t] for i in range(k)) for t in range(n)]
        vals = [rs.inner(u, b) for b in rs.positive if tuple(b) not in sub]
        if any(v == 0 for v in vals):
            continue
        small = min((abs(v) for v in vals), default=Fraction(1))
        big = max((abs(rs.inner(rho_R, b)) for b in rs.positive), default=Fraction(1))
        scale = (big + 1) / small
        lam = [scale * u[t] + rho_R[t] for t in range(n)]
        word = []
        while True:
            i = next((i for i in range(n) if rs.pair_simple(lam, i) < 0), None)
            if i is None:
                break
            lam = list(rs.simple_reflect(i, lam))
            word.append(i)
        imgs = R
        for i in word:
            imgs = [rs.simple_reflect(i, r) for r in imgs]
        simple = set(rs.simple_roots())
        if all(tuple(r) in simple for r in imgs):
            return word
        return None
    return None


def _solve(M, b):
    """Solve a square rational system by Gauss-Jordan elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [A[i][n] for i in range(n)]


def is_complete(gl: GradedLie, sm: SupportMap) -> bool:
    return weyl_word_to_simple(gl, sm.images) is not None


# -- the adjoint action ----------------------------------------------------------

class AdAction:
    """Matrices of ``u -> [u, e_beta]`` from ``g_k`` to ``g_{k+1}``."""

    def __init__(self, gl: GradedLie):
        self.gl = gl
        rs = gl.rs
        self.bases = {}
        for k in gl.components:
            if k == 0:
                self.bases[0] = [("h", i) for i in range(rs.rank)] + [("e", r) for r in gl.components[0]]
            else:
                self.bases[k] = [("e", r) for r in gl.components[k]]
        self.index = {k: {b: i for i, b in enumerate(B)} for k, B in self.bases.items()}
        self.g1 = list(gl.g1)
        self._mats: dict = {}

    def mats(self, k: int) -> np.ndarray:
        """Array of shape (len(g1), dim g_{k+1}, dim g_k)."""
        if k in self._mats:
            return self._mats[k]
        rs = self.gl.rs
        src = self.bases.get(k, [])
        dst = self.index.get(k + 1, {})
        T = np.zeros((len(self.g1), len(dst), len(src)), dtype=np.int64)
        for bi, beta in enumerate(self.g1):
            eb = {("e", beta): 1}
            for j, u in enumerate(src):
                for key, val in rs.bracket({u: 1}, eb).items():
                    T[bi, dst[key], j] += val
        self._mats[k] = T
        return T

    def matrix(self, x: dict, k: int = 0, cols=None) -> np.ndarray:
        """Matrix of ``u -> [u, x]`` on ``g_k`` (optionally a column subset)."""
        T = self.mats(k)
        c = np.zeros(len(self.g1), dtype=np.int64)
        for beta, v in x.items():
            c[self.gl.g1_index(beta)] = v
        M = np.tensordot(c, T, axes=1)
        if cols is not None:
            M = M[:, cols]
        return M

    @cached_property
    def factor_columns(self) -> list:
        """Columns of ``g_0`` spanned by each simple factor of the Levi."""
        out = []
        gl = self.gl
        for comp in gl.levi_components:
            cols = []
            for j, b in enumerate(self.bases[0]):
                if b[0] == "h" and b[1] in comp:
                    cols.append(j)
                elif b[0] == "e" and all(b[1][t] == 0 for t in range(gl.rs.rank) if t not in comp):
                    cols.append(j)
            out.append(cols)
        return out


_AD: dict = {}


def ad_action(gl: GradedLie) -> AdAction:
    key = id(gl)
    if key not in _AD:
        _AD[key] = AdAction(gl)
    return _AD[key]


def orbit_dimension(gl: GradedLie, rep: dict, exact: bool = True) -> int:
    """Rank of ``u -> [u, e]`` from ``g_0`` to ``g_1``."""
    if not rep:
        return 0
    M = ad_action(gl).matrix(rep, 0)
    return rank(M) if exact else rank_mod(M)


def orbit_invariants(gl: GradedLie, x: dict, exact: bool = True) -> tuple:
    """Ranks that are constant on G_0-orbits.

    Orbit dimensions under each ideal sum of simple Levi factors (with and
    without the central torus), and ranks of ``ad x`` and ``(ad x)^2`` between
    the graded pieces.
    """
    ad = ad_action(gl)
    rk = rank if exact else rank_mod
    if not x:
        return (0,)
    M0 = ad.matrix(x, 0)
    xs = np.zeros((M0.shape[0], 1), dtype=np.int64)
    for beta, v in x.items():
        xs[gl.g1_index(beta), 0] = v
    out = [rk(M0)]
    fc = ad.factor_columns
    nf = len(fc)
    for mask in range(1, 1 << nf):
        cols = [c for i in range(nf) if mask >> i & 1 for c in fc[i]]
        sub = M0[:, cols]
        out.append(rk(sub))
        out.append(rk(np.hstack([sub, xs])))
    degs = sorted(gl.components)
    for k in degs:
        if k + 1 in gl.components:
            A = ad.matrix(x, k)
            out.append(rk(A))
            if k + 2 in gl.components:
                B = ad.matrix(x, k + 1)
                out.append(rk(B @ A))
    return tuple(out)


# -- orbit records --------------------------------------------------------------

@dataclass
class OrbitRecord:
    index: int
    stype: SupportType | None
    rep: dict  # root -> coefficient
    dim: int
    images: tuple = ()
    support: frozenset = frozenset()
    fixture: dict = field(default_factory=dict)
    invariants: tuple = ()

    @property
    def type_name(self) -> str:
        return self.stype.name if self.stype else "0"

    def rep_list(self) -> list:
        return [[list(r), c] for r, c in sorted(self.rep.items())]

    def to_dict(self) -> dict:
        return {
            "i": self.index,
            "type": self.type_name,
            "dim": self.dim,
            "rep": [list(r) for r in sorted(self.rep)],
            "coeffs": [self.rep[r] for r in sorted(self.rep)],
        }


class _WeylPerm:
    """Simple reflections of W(g_0) as permutations of the roots of g."""

    def __init__(self, gl: GradedLie):
        rs = gl.rs
        self.roots = list(rs.roots)
        idx = {r: i for i, r in enumerate(self.roots)}
        self.idx = idx
        self.perms = []
        for j in gl.levi_nodes:
            self.perms.append([idx[rs.simple_reflect(j, r)] for r in self.roots])

    def orbit(self, s: frozenset) -> set:
        start = tuple(sorted(self.idx[r] for r in s))
        seen = {start}
        todo = [start]
        while todo:
            cur = todo.pop()
            for p in self.perms:
                nxt = tuple(sorted(p[i] for i in cur))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    def key(self, s: frozenset) -> tuple:
        return tuple(sorted(self.idx[r] for r in s))


def canonical_form(gl: GradedLie, s) -> tuple:
    """Lexicographically minimal index tuple over the W(g_0)-orbit of ``s``."""
    return min(_WeylPerm(gl).orbit(frozenset(s)))


def dedup_orbits(gl: GradedLie, maps: list) -> list:
    """One support map per W(g_0)-class of generated subalgebras."""
    wp = _WeylPerm(gl)
    seen: set = set()
    out = []
    for sm in maps:
        s = support_roots(gl, sm)
        k = wp.key(s)
        if k in seen:
            continue
        orb = wp.orbit(s)
        seen |= orb
        out.append((sm, s, min(orb)))
    return out


def generic_rep(gl: GradedLie, s1: list, seed: int = 0):
    """A representative of the open orbit in span(s1) and its dimension.

    All coefficients +1 are tried first; random signs and small integers are
    used when the all-ones point is not generic.
    """
    rng = random.Random(seed)
    ones = {r: 1 for r in s1}
    trials = [ones]
    for _ in range(3):
        trials.append({r: rng.choice((-1, 1)) for r in s1})
    for _ in range(3):
        trials.append({r: rng.choice([v for v in range(-9, 10) if v]) for r in s1})
    dims = [orbit_dimension(gl, t) for t in trials]
    best = max(dims)
    top_inv = orbit_invariants(gl, trials[dims.index(best)])
    for t, d in zip(trials, dims):
        if d == best and orbit_invariants(gl, t) == top_inv:
            return t, d
    return trials[dims.index(best)], best


def classify(gl: GradedLie, types=None, max_g1: int = 32) -> list:
    """All orbits, sorted by dimension (ties by support-type name)."""
    if len(gl.g1) > max_g1:
        raise ValueError(f"unsupported case: dim g1 = {len(gl.g1)} exceeds {max_g1}")
    types = support_catalog(gl) if types is None else types
    dead: set = set()
    found = []
    for st in sorted(types, key=lambda t: (len(t.components), t.rank, t.name)):
        comps = st.components
        # a type whose one-smaller subtype has no maps cannot have maps
        if len(comps) > 1 and any(
            tuple(comps[:i] + comps[i + 1:]) in dead for i in range(len(comps))
        ):
            dead.add(comps)
            continue
        maps = enumerate_support_maps(gl, st)
        if not maps:
            dead.add(comps)
            continue
        if not st.is_locally_flat():
            continue
        good = [sm for sm in maps if is_locally_flat(gl, sm)]
        for sm, s, canon in dedup_orbits(gl, good):
            if not is_complete(gl, sm):
                continue
            found.append((st, sm, s, canon))
    records = [OrbitRecord(0, None, {}, 0, invariants=(0,))]
    for st, sm, s, canon in found:
        s1 = sorted(r for r in s if gl.degree(r) == 1)
        rep, d = generic_rep(gl, s1)
        records.append(
            OrbitRecord(0, st, rep, d, images=sm.images, support=s, invariants=orbit_invariants(gl, rep))
        )
    records.sort(key=lambda o: (o.dim, o.type_name, o.invariants))
    for i, o in enumerate(records):
        o.index = i
    return records


@lru_cache(maxsize=None)
def _case_orbits(case: str) -> tuple:
    return tuple(classify(graded_case(case)))


def case_orbits(case: str) -> list:
    """Cached classification of a named case."""
    return list(_case_orbits(case))
