"""Partition and character combinatorics for products of general linear groups.

A ``GLWeightTuple`` is a tuple of weakly decreasing integer tuples, one per
tensor factor, e.g. ``((2, 1), (1, 1, 1), (1, 1, 1))`` for a Schur functor
of ``E (x) F (x) H`` with dims ``(2, 3, 3)``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .rootsys import SimpleType, build_root_system


def is_partition(lam) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def _pad(lam, n):
    lam = tuple(lam)
    return lam + (0,) * (n - len(lam))


# -- Littlewood-Richardson -----------------------------------------------------

def lr_coefficient(lam, mu, nu) -> int:
    """Number of LR skew tableaux of shape ``nu/lam`` and content ``mu``.

    EXAMPLES::

        >>> lr_coefficient((1,), (1, 1), (2, 1))
        1
        >>> lr_coefficient((2, 1), (2, 1), (3, 2, 1))
        2
    """
    lam = tuple(x for x in lam if x)
    mu = tuple(x for x in mu if x)
    nu = tuple(x for x in nu if x)
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    if len(lam) > len(nu) or any(a > b for a, b in zip(lam, nu)):
        return 0
    lam = _pad(lam, len(nu))
    rows = [(lam[r], nu[r]) for r in range(len(nu))]
    # cells in reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r, (a, b) in enumerate(rows) for c in range(b - 1, a - 1, -1)]
    filling: dict = {}
    count = [0] * (len(mu) + 1)
    total = 0

    def rec(k):
        nonlocal total
        if k == len(cells):
            total += 1
            return
        r, c = cells[k]
        hi = len(mu)
        # row weakly increasing left to right -> bounded by right neighbour
        if (r, c + 1) in filling:
            hi = min(hi, filling[(r, c + 1)])
        lo = 1
        if (r - 1, c) in filling:
            lo = filling[(r - 1, c)] + 1
        for v in range(lo, hi + 1):
            if count[v] >= mu[v - 1]:
                continue
            if v > 1 and count[v] + 1 > count[v - 1]:
                continue
            filling[(r, c)] = v
            count[v] += 1
            rec(k + 1)
            count[v] -= 1
            del filling[(r, c)]

    rec(0)
    return total


# -- dimensions ----------------------------------------------------------------

def gl_dim(lam) -> int:
    n = len(lam)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def tuple_dim(t) -> int:
    d = 1
    for lam in t:
        d *= gl_dim(lam)
    return d


def weyl_dim(stype, hw) -> int:
    """Dimension of the irreducible module with highest weight ``hw``.

    ``hw`` is given by its Dynkin labels (fundamental weight coordinates).

    EXAMPLES::

        >>> weyl_dim("D5", (0, 0, 0, 1, 0))
        16
        >>> weyl_dim("C3", (0, 0, 1))
        14
    """
    if any(x < 0 for x in hw):
        raise ValueError(f"weight {tuple(hw)} is not dominant")
    return int(weyl_dim_poly(stype, hw))


def weyl_dim_poly(stype, labels) -> Fraction:
    """Weyl's dimension polynomial at arbitrary Dynkin labels (may be <= 0)."""
    rs = build_root_system(stype if not isinstance(stype, SimpleType) else stype)
    num = Fraction(1)
    den = Fraction(1)
    for a in rs.positive:
        cc = rs.coroot_coeffs(a)
        num *= sum((labels[i] + 1) * cc[i] for i in range(rs.rank))
        den *= sum(cc)
    return num / den


# -- characters of products of GL factors --------------------------------------

class CharacterBag(Counter):
    """Multiset of GL weight tuples (or torus weights) with multiplicities."""

    def total_dim(self) -> int:
        return sum(m * tuple_dim(t) for t, m in self.items())

    def positive(self) -> "CharacterBag":
        return CharacterBag({k: v for k, v in self.items() if v > 0})


def _basis_weights(dims):
    """Weights of the standard basis of the tensor product of the factors."""
    out = []
    for idx in product(*(range(n) for n in dims)):
        out.append(tuple(tuple(int(i == a) for a in range(n)) for i, n in zip(idx, dims)))
    return out


def _add_w(a, b):
    return tuple(tuple(x + y for x, y in zip(p, q)) for p, q in zip(a, b))


def _zero_w(dims):
    return tuple((0,) * n for n in dims)


def straighten_gl(weight):
    """Dotted-action straightening of one GL weight.

    Returns ``(sign, dominant)`` or ``(0, None)`` when ``weight + rho`` has a
    repeated entry.
    """
    n = len(weight)
    v = [weight[i] + n - 1 - i for i in range(n)]
    if len(set(v)) < n:
        return 0, None
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] < v[j])
    v.sort(reverse=True)
    return (-1) ** inv, tuple(v[i] - (n - 1 - i) for i in range(n))


def decompose_weights(weights: Counter, dims=None) -> CharacterBag:
    """Irreducible decomposition of a character given by weight multiplicities.

    Works factor-by-factor with the Brauer-Klimyk rule: every weight is moved
    into the dominant chamber by the dotted action and contributes with the
    sign of the moving permutation.
    """
    out = CharacterBag()
    for w, m in weights.items():
        sign = 1
        parts = []
        for lam in w:
            s, d = straighten_gl(lam)
            if not s:
                sign = 0
                break
            sign *= s
            parts.append(d)
        if sign:
            out[tuple(parts)] += sign * m
    return CharacterBag({k: v for k, v in out.items() if v})


def ext_power_weights(dims, k) -> Counter:
    basis = _basis_weights(dims)
    c: Counter = Counter()
    for sub in combinations(basis, k):
        w = _zero_w(dims)
        for b in sub:
            w = _add_w(w, b)
        c[w] += 1
    return c


def sym_power_weights(dims, k) -> Counter:
    basis = _basis_weights(dims)
    # layered multiset sums keep this cheap for the sizes used here
    layer = Counter({_zero_w(dims): 1})
    for b in basis:
        nxt: Counter = Counter()
        for w, m in layer.items():
            # w + j*b for j = 0..k - |w|
            deg = sum(w[0])
            cur = w
            for j in range(k - deg + 1):
                nxt[cur] += m
                cur = _add_w(cur, b)
        layer = nxt
    return Counter({w: m for w, m in layer.items() if sum(w[0]) == k})


def ext_power_decompose(dims, k: int) -> CharacterBag:
    """``Lambda^k`` of the tensor product of standard modules of ``GL(dims)``.

    EXAMPLES::

        >>> sorted(ext_power_decompose((2, 3), 2).items())
        [(((1, 1), (2, 0, 0)), 1), (((2, 0), (1, 1, 0)), 1)]
    """
    dims = tuple(dims)
    N = 1
    for n in dims:
        N *= n
    if not 0 <= k <= N:
        raise ValueError("exterior degree out of range")
    return decompose_weights(ext_power_weights(dims, k), dims)


def sym_power_decompose(dims, k: int) -> CharacterBag:
    """``S^k`` of the tensor product of standard modules of ``GL(dims)``.

    EXAMPLES::

        >>> sorted(sym_power_decompose((2, 3), 2).items())
        [(((1, 1), (1, 1, 0)), 1), (((2, 0), (2, 0, 0)), 1)]
    """
    dims = tuple(dims)
    if k < 0:
        raise ValueError("negative symmetric degree")
    return decompose_weights(sym_power_weights(dims, k), dims)


def schur_weights(lam) -> Counter:
    """Weight multiplicities of ``S_lam C^n`` (semistandard tableaux count).

    Negative entries are handled by a determinant shift.
    """
    n = len(lam)
    c = min(lam) if lam else 0
    shift = -c if c < 0 else 0
    mu = tuple(x + shift for x in lam)
    out: Counter = Counter()
    for w in _sst_contents(mu, n):
        out[tuple(x - shift for x in w)] += 1
    return out


def _sst_contents(mu, n):
    """Contents of all semistandard tableaux of shape ``mu`` in ``1..n``."""
    shape = [x for x in mu if x]
    cells = [(r, c) for r, L in enumerate(shape) for c in range(L)]
    T: dict = {}
    cnt = [0] * n
    res = []

    def rec(k):
        if k == len(cells):
            res.append(tuple(cnt))
            return
        r, c = cells[k]
        lo = 0
        if c > 0:
            lo = T[(r, c - 1)]
        if r > 0:
            lo = max(lo, T[(r - 1, c)] + 1)
        for v in range(lo, n):
            T[(r, c)] = v
            cnt[v] += 1
            rec(k + 1)
            cnt[v] -= 1
        T.pop((r, c), None)

    rec(0)
    return res


def tuple_weights(t) -> Counter:
    out = Counter({tuple(): 1})
    for lam in t:
        sw = schur_weights(lam)
        nxt: Counter = Counter()
        for w, m in out.items():
            for v, k in sw.items():
                nxt[w + (v,)] += m * k
        out = nxt
    return out


def bag_identity(kind: str, dims, k: int) -> tuple:
    """(sum of mult*dim, expected binomial) for ``Lambda^k`` or ``S^k``."""
    N = 1
    for n in dims:
        N *= n
    if kind == "ext":
        return ext_power_decompose(dims, k).total_dim(), comb(N, k)
    return sym_power_decompose(dims, k).total_dim(), comb(N + k - 1, k)

