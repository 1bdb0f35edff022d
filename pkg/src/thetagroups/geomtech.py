"""Geometric technique for orbit closures in g_1.

A desingularization is ``Z = G_0 x_P S`` with ``S`` a ``P``-stable subspace of
``g_1`` spanned by root vectors (an up-set of the weight poset).  Weights are
handled as sums of ``g_1`` roots in root coordinates: ``eta`` has the roots of
``S``, ``xi`` the remaining roots of ``g_1``.  A straightened weight ``nu``
stands for the dual Levi module ``V(nu)^*``.

Everything is computed at the level of Euler characteristics over ``G_0/B``
(associated graded bundles); complex terms carry the ``euler-level`` flag
because ghost pairs cannot be detected here.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from ._exact import rank
from .bott import dotted_straighten
from .grading import GradedLie, b_stable_subsets, graded_case, stabilizer_nodes, weight_poset
from .vinberg import OrbitRecord, ad_action, generic_rep, orbit_invariants

FLAG = "euler-level"
STABLE_ZEROS = 3


# -- Levi data -------------------------------------------------------------------------

def _levi_pos(gl: GradedLie, nodes) -> list:
    nodes = set(nodes)
    return [r for r in gl.levi_positive if all(r[i] == 0 for i in range(gl.rs.rank) if i not in nodes)]


def _coroot_rows(gl: GradedLie, roots) -> list:
    """Integer vectors ``c`` with ``<mu, alpha^vee> = c . mu`` (root coordinates)."""
    A = gl.rs.cartan
    n = gl.rs.rank
    out = []
    for a in roots:
        cc = gl.rs.coroot_coeffs(a)
        out.append(tuple(sum(cc[i] * A[i][j] for i in range(n)) for j in range(n)))
    return out


def levi_dim(gl: GradedLie, nu, nodes=None) -> int:
    """Signed Weyl dimension of the Levi module with highest weight ``nu``."""
    nodes = gl.levi_nodes if nodes is None else nodes
    pos = _levi_pos(gl, nodes)
    rho = gl.levi_rho() if tuple(nodes) == gl.levi_nodes else _rho(gl, nodes)
    num = Fraction(1)
    den = Fraction(1)
    for c in _coroot_rows(gl, pos):
        num *= sum(ci * (x + r) for ci, x, r in zip(c, nu, rho))
        den *= sum(ci * r for ci, r in zip(c, rho))
    v = num / den
    assert v.denominator == 1
    return int(v)


def _rho(gl: GradedLie, nodes) -> tuple:
    s = [0] * gl.rs.rank
    for r in _levi_pos(gl, nodes):
        for i in range(gl.rs.rank):
            s[i] += r[i]
    return tuple(Fraction(x, 2) for x in s)


def base_dim(gl: GradedLie, p_nodes) -> int:
    """Dimension of ``G_0/P`` for the parabolic with Levi nodes ``p_nodes``."""
    return len(gl.levi_positive) - len(_levi_pos(gl, p_nodes))


@lru_cache(maxsize=None)
def _weyl_functionals(case: str) -> tuple:
    """``(c_w, sign)`` with ``<w mu, x> = c_w . mu`` over the Weyl group of ``g_0``.

    ``x`` is the coweight taking the value 2 on every Levi simple root and 0
    on the marked one; it is regular for the Levi, so ``w -> c_w`` is injective.
    """
    gl = graded_case(case)
    A = gl.rs.cartan
    n = gl.rs.rank
    start = tuple(0 if i == gl.k else 2 for i in range(n))
    seen = {start: 1}
    layer = [start]
    while layer:
        nxt = []
        for c in layer:
            for j in gl.levi_nodes:
                d = tuple(c[i] - c[j] * A[j][i] for i in range(n))
                if d not in seen:
                    seen[d] = -seen[c]
                    nxt.append(d)
        layer = nxt
    return tuple(sorted(seen.items()))


# -- bundle specs ----------------------------------------------------------------------

@dataclass(frozen=True)
class BundleSpec:
    case: str
    p_nodes: tuple  # 0-based Levi nodes of P
    eta: tuple  # roots spanning S
    xi: tuple  # the remaining g_1 roots
    orbit: int | None = None

    @property
    def gl(self) -> GradedLie:
        return graded_case(self.case)

    @property
    def base_dim(self) -> int:
        return base_dim(self.gl, self.p_nodes)

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.eta)

    @property
    def codim(self) -> int:
        return len(self.gl.g1) - self.dim

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "orbit": self.orbit,
            "p_nodes": [i + 1 for i in self.p_nodes],
            "eta": [list(r) for r in self.eta],
            "xi": [list(r) for r in self.xi],
            "dim": self.dim,
        }


def make_spec(gl: GradedLie, eta, orbit: int | None = None) -> BundleSpec:
    S = sorted(set(map(tuple, eta)))
    wp = weight_poset(gl)
    idx = {r: i for i, r in enumerate(wp.elements)}
    mask = sum(1 << idx[r] for r in S)
    if wp.upper_closure(mask) != mask:
        raise ValueError("eta is not stable under the Borel subgroup of g_0")
    xi = tuple(r for r in gl.g1 if r not in set(S))
    return BundleSpec(gl.case, stabilizer_nodes(gl, S), tuple(S), xi, orbit)


def fiber_is_finite(gl: GradedLie, spec: BundleSpec, x: dict) -> bool:
    """Injectivity of ``g_0/p -> g_1/S, u -> [u, x]`` at the base point."""
    ad = ad_action(gl)
    pos = set(_levi_pos(gl, spec.p_nodes))
    idx = ad.index[0]
    cols = [idx[("e", tuple(-v for v in a))] for a in gl.levi_positive if a not in pos]
    rows = [gl.g1_index(r) for r in spec.xi]
    if not cols:
        return True
    M = ad.matrix(x, 0)[np.ix_(rows, cols)] if rows else np.zeros((0, len(cols)), dtype=np.int64)
    return rank(M) == len(cols)


@lru_cache(maxsize=None)
def _upsets(case: str) -> tuple:
    gl = graded_case(case)
    wp = weight_poset(gl)
    return tuple(tuple(sorted(wp.to_set(m))) for m in b_stable_subsets(wp))


def candidate_desingularizations(gl: GradedLie, orbit: OrbitRecord) -> list:
    """All up-sets ``S`` whose bundle has the orbit's dimension, whose generic
    point lies in the orbit and whose fiber over it is finite."""
    if orbit.dim == 0:
        return [BundleSpec(gl.case, gl.levi_nodes, (), tuple(gl.g1), orbit.index)]
    out = []
    for S in _upsets(gl.case):
        if not S:
            continue
        p = stabilizer_nodes(gl, S)
        if base_dim(gl, p) + len(S) != orbit.dim:
            continue
        x, d = generic_rep(gl, list(S))
        if d != orbit.dim or orbit_invariants(gl, x) != orbit.invariants:
            continue
        spec = BundleSpec(gl.case, p, tuple(S), tuple(r for r in gl.g1 if r not in set(S)), orbit.index)
        if fiber_is_finite(gl, spec, x):
            out.append(spec)
    out.sort(key=lambda s: (-len(s.p_nodes), -len(s.eta), s.eta))
    return out


def desingularization(gl: GradedLie, orbit: OrbitRecord) -> BundleSpec | None:
    """Canonical candidate: the smallest Hilbert degree, then the largest
    parabolic.

    A finite fiber still allows a cover of degree ``d > 1``, which multiplies
    the degree by ``d``; the minimum is attained by birational candidates.
    """
    c = candidate_desingularizations(gl, orbit)
    if len(c) <= 1:
        return c[0] if c else None
    return min(c, key=lambda s: (hilbert_series(s).degree, -len(s.p_nodes), -len(s.eta), s.eta))


@lru_cache(maxsize=None)
def orbit_bundle(case: str, index: int) -> BundleSpec | None:
    from .vinberg import case_orbits

    return desingularization(graded_case(case), case_orbits(case)[index])


# -- Hilbert series ----------------------------------------------------------------------

def _ff(e: int, n: int) -> int:
    v = 1
    for i in range(n):
        v *= e - i
    return v


def sym_euler(spec: BundleSpec, K: int) -> list:
    """``chi(G_0/P, S^k eta)`` for ``k = 0..K``.

    The Weyl character of every weight multiset is specialised along the
    regular coweight of :func:`_weyl_functionals` and the dimension is read
    off from the ``N``-th derivative at ``q = 1``.
    """
    gl = spec.gl
    funcs = _weyl_functionals(spec.case)
    N = len(gl.levi_positive)
    rho2 = [int(2 * r) for r in gl.levi_rho()]
    S = np.array(spec.eta, dtype=np.int64).reshape(len(spec.eta), gl.rs.rank)
    C = np.array([c for c, _ in funcs], dtype=np.int64)
    signs = [s for _, s in funcs]
    E = S @ C.T  # exponent of each root under each Weyl element
    R = (C @ np.array(rho2, dtype=np.int64)) // 2
    M = int(np.abs(E).max()) if E.size else 0
    off = K * M + int(np.abs(R).max())
    width = 2 * off + 1
    F = np.zeros((K + 1, width), dtype=np.int64)
    D = np.zeros(width, dtype=np.int64)
    for w, sgn in enumerate(signs):
        A = np.zeros((K + 1, width), dtype=np.int64)
        A[0, off + R[w]] = 1
        for e in E[:, w]:
            e = int(e)
            for k in range(1, K + 1):
                if e >= 0:
                    A[k, e:] += A[k - 1, : width - e] if e else A[k - 1]
                else:
                    A[k, : width + e] += A[k - 1, -e:]
        F += sgn * A
        D[off + R[w]] += sgn
    dn = sum(int(c) * _ff(i, N) for i, c in enumerate(D.tolist()) if c)
    out = []
    for k in range(K + 1):
        fn = sum(int(c) * _ff(i, N) for i, c in enumerate(F[k].tolist()) if c)
        v = Fraction(fn, dn)
        assert v.denominator == 1
        out.append(int(v))
    return out


def _series_times(h: list, power: int, terms: int) -> list:
    """First ``terms`` coefficients of ``(sum h_k t^k) (1 - t)^power``."""
    out = []
    for m in range(terms):
        out.append(sum((-1) ** i * comb(power, i) * h[m - i] for i in range(min(m, power) + 1)))
    return out


@dataclass
class HilbertData:
    case: str
    orbit: int | None
    codim: int
    numerator: list
    flags: list = field(default_factory=lambda: [FLAG])

    @property
    def degree(self) -> int:
        return sum(self.numerator)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "orbit": self.orbit,
            "codim": self.codim,
            "numerator": list(self.numerator),
            "degree": self.degree,
            "flags": list(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def hilbert_series(spec: BundleSpec, codim: int | None = None, kmax: int = 80) -> HilbertData:
    """Numerator of the Hilbert series of ``H^0(G_0/P, Sym eta)``.

    ``codim`` is the codimension in ``g_1``; the series is ``N(t)/(1-t)^d``
    with ``d = dim g_1 - codim`` the dimension of the variety.  Higher
    cohomology of ``Sym eta`` is assumed to vanish.
    """
    n = len(spec.gl.g1)
    codim = spec.codim if codim is None else codim
    d = n - codim
    K = 8
    while True:
        h = sym_euler(spec, K)
        num = _series_times(h, d, K + 1)
        nz = [i for i, c in enumerate(num) if c]
        last = nz[-1] if nz else -1
        if K - last >= STABLE_ZEROS:
            return HilbertData(spec.case, spec.orbit, codim, num[: last + 1])
        if K >= kmax:
            raise RuntimeError(f"numerator of {spec.case} orbit {spec.orbit} does not stabilise by degree {kmax}")
        K = min(kmax, 2 * K)


# -- complexes -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Summand:
    hom: int
    deg: int
    weight: tuple  # straightened weight, root coordinates
    mult: int
    dim: int


def _ext_weights(roots, tmax=None, n: int = 0) -> list:
    """Weight multisets of all exterior powers of the span of ``roots``."""
    n = len(roots[0]) if roots else n
    tmax = len(roots) if tmax is None else tmax
    layers = [Counter({(0,) * n: 1})] + [Counter() for _ in range(tmax)]
    for r in roots:
        for t in range(tmax, 0, -1):
            for w, m in layers[t - 1].items():
                layers[t][tuple(a + b for a, b in zip(w, r))] += m
    return layers


def _sym_weights(roots, j: int, n: int = 0) -> Counter:
    n = len(roots[0]) if roots else n
    layers = [Counter({(0,) * n: 1})] + [Counter() for _ in range(j)]
    for r in roots:
        for t in range(1, j + 1):
            for w, m in layers[t - 1].items():
                layers[t][tuple(a + b for a, b in zip(w, r))] += m
    return layers[j]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def complex_terms(spec: BundleSpec, twist=None) -> list:
    """Terms of ``F(V)_i = sum_j H^j(G_0/P, Lambda^{i+j} xi (x) V)`` at Euler level.

    ``twist`` is a weight (root coordinates) of a character of ``P``.  Each
    ``Lambda^t xi (x) V`` is split into Levi modules of ``P`` by Brauer-Klimyk
    and every constituent is pushed through Bott's algorithm on ``G_0/P``.
    """
    gl = spec.gl
    rs = gl.rs
    tw = tuple(twist) if twist is not None else (0,) * rs.rank
    out: Counter = Counter()
    for t, layer in enumerate(_ext_weights(list(spec.xi), n=rs.rank)):
        irr: Counter = Counter()
        for mu, m in layer.items():
            ell, lam = dotted_straighten(rs, spec.p_nodes, _add(mu, tw))
            if ell is not None:
                irr[lam] += (-1) ** ell * m
        for lam, m in irr.items():
            if not m:
                continue
            if m < 0:
                raise RuntimeError(f"negative multiplicity for {lam} in degree {t}")
            j, nu = dotted_straighten(rs, gl.levi_nodes, lam)
            if j is None:
                continue
            out[(t - j, t, nu)] += m
    terms = []
    for (i, deg, nu), m in sorted(out.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        terms.append(Summand(i, deg, nu, m, levi_dim(gl, nu)))
    return terms


def betti(terms) -> list:
    """Total rank of each ``F_i`` (homological degrees from the lowest present)."""
    if not terms:
        return []
    lo = min(s.hom for s in terms)
    hi = max(s.hom for s in terms)
    out = [0] * (hi - lo + 1)
    for s in terms:
        out[s.hom - lo] += s.mult * s.dim
    return out


def euler_polynomial(terms) -> list:
    """``sum_i (-1)^i sum dim t^deg`` as a coefficient list."""
    top = max((s.deg for s in terms), default=0)
    out = [0] * (top + 1)
    for s in terms:
        out[s.deg] += (-1) ** s.hom * s.mult * s.dim
    return out


def is_palindromic(terms) -> bool:
    """Terms match under ``(i, deg) -> (top_i - i, top_deg - deg)`` with equal ranks."""
    if not terms:
        return True
    ti = max(s.hom for s in terms)
    td = max(s.deg for s in terms)
    a = Counter()
    b = Counter()
    for s in terms:
        a[(s.hom, s.deg)] += s.mult * s.dim
        b[(ti - s.hom, td - s.deg)] += s.mult * s.dim
    return a == b


def canonical_weight(gl: GradedLie, p_nodes) -> tuple:
    """Weight (root coordinates) of the canonical bundle of ``G_0/P``
    in the convention of :func:`complex_terms`."""
    pos = set(_levi_pos(gl, p_nodes))
    s = [0] * gl.rs.rank
    for r in gl.levi_positive:
        if r not in pos:
            for i in range(gl.rs.rank):
                s[i] += r[i]
    return tuple(s)


def duality_twist(spec: BundleSpec, twist=None) -> tuple:
    """Weight of ``V^dual = omega (x) Lambda^top xi^* (x) V^*`` for a character ``V``."""
    n = spec.gl.rs.rank
    tw = tuple(twist) if twist is not None else (0,) * n
    om = canonical_weight(spec.gl, spec.p_nodes)
    top = [0] * n
    for r in spec.xi:
        for i in range(n):
            top[i] += r[i]
    return tuple(-a + b - c for a, b, c in zip(tw, om, top))


def dual_weight(gl: GradedLie, nu) -> tuple:
    """Highest weight of the dual Levi module: ``-w_0 nu``."""
    low = tuple(-x for x in nu)
    _, dom = dotted_straighten_plain(gl, low)
    return dom


def dotted_straighten_plain(gl: GradedLie, mu):
    """Ordinary (undotted) move of ``mu`` to the dominant Levi chamber."""
    rs = gl.rs
    mu = list(mu)
    steps = 0
    while True:
        for i in gl.levi_nodes:
            c = rs.pair_simple(mu, i)
            if c < 0:
                mu[i] -= c
                steps += 1
                break
        else:
            return steps, tuple(mu)


# -- evidence for normality and rational singularities --------------------------------------

@dataclass
class VanishingReport:
    case: str
    orbit: int | None
    normal_test: bool
    rows: list  # per j: {"j", "xi", "eta", "common"}

    @property
    def empty(self) -> bool:
        return all(not r["common"] for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "orbit": self.orbit,
            "strict": not self.normal_test,
            "empty": self.empty,
            "rows": self.rows,
        }


def prop38_check(spec: BundleSpec, jmax: int = 4, normal: bool = True) -> VanishingReport:
    """Irreducibles common to ``H^i(G_0/B, Lambda^j xi')`` and ``H^*(G_0/B, S_j eta')``.

    ``i > j`` tests rational singularities of the normalization; with
    ``normal`` the range is ``i >= j``, which tests normality.
    """
    gl = spec.gl
    rs = gl.rs
    ext = _ext_weights(list(spec.xi), min(jmax, len(spec.xi)), n=rs.rank)
    rows = []
    for j in range(1, jmax + 1):
        a = set()
        if j < len(ext):
            for mu in ext[j]:
                i, nu = dotted_straighten(rs, gl.levi_nodes, mu)
                if i is not None and (i > j or (normal and i == j)):
                    a.add(nu)
        b = set()
        if spec.eta:
            for mu in _sym_weights(list(spec.eta), j):
                i, nu = dotted_straighten(rs, gl.levi_nodes, mu)
                if i is not None:
                    b.add(nu)
        rows.append({
            "j": j,
            "xi": len(a),
            "eta": len(b),
            "common": [list(v) for v in sorted(a & b)],
        })
    return VanishingReport(spec.case, spec.orbit, normal, rows)


def positive_f0(terms) -> list:
    """Summands of ``F_0`` in positive degree (obstructions to normality)."""
    return [s for s in terms if s.hom == 0 and s.deg > 0]


# -- hyperdiscriminant ------------------------------------------------------------------------

def hyperdiscriminant_bundle(gl: GradedLie) -> BundleSpec:
    """Bundle of 1-jets at the extremal weight: ``xi`` is spanned by the
    lowest ``g_1`` weight and its raises by positive roots of ``g_0``."""
    low = min(gl.g1, key=lambda r: (sum(r), r))
    g1 = set(gl.g1)
    xi = {low}
    for a in gl.levi_positive:
        r = _add(low, a)
        if r in g1:
            xi.add(r)
    eta = [r for r in gl.g1 if r not in xi]
    return make_spec(gl, eta)


# -- ghost pairs ------------------------------------------------------------------------------

def _by_slot(terms) -> dict:
    """``(deg, weight) -> {hom: mult}``."""
    out: dict = {}
    for s in terms:
        d = out.setdefault((s.deg, s.weight), {})
        d[s.hom] = d.get(s.hom, 0) + s.mult
    return out


def reduces_to(terms, target) -> bool:
    """True if ``target`` arises from ``terms`` by cancelling ghost pairs:
    equal summands in one internal degree and neighbouring homological degrees."""
    a = _by_slot(terms)
    b = _by_slot(target)
    for key in set(a) | set(b):
        x = a.get(key, {})
        y = b.get(key, {})
        homs = sorted(set(x) | set(y))
        lo, hi = homs[0], homs[-1]
        carry = 0
        for i in range(lo, hi + 1):
            d = x.get(i, 0) - y.get(i, 0) - carry
            if d < 0:
                return False
            carry = d
        if carry:
            return False
    return True


def cancel_ghosts(terms) -> list:
    """Cancel ghost pairs greedily from the highest homological degree down,
    so survivors sit as low as possible."""
    gl_dims = {(s.deg, s.weight): s.dim for s in terms}
    out = []
    for (deg, w), m in _by_slot(terms).items():
        homs = sorted(m)
        left = dict(m)
        for i in range(homs[-1], homs[0], -1):
            c = min(left.get(i, 0), left.get(i - 1, 0))
            if c:
                left[i] -= c
                left[i - 1] -= c
        for i, v in left.items():
            if v:
                out.append(Summand(i, deg, w, v, gl_dims[(deg, w)]))
    return sorted(out, key=lambda s: (s.hom, s.deg, s.weight))
