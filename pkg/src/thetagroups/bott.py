"""Borel-Weil-Bott cohomology of irreducible homogeneous bundles."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .rootsys import SimpleType, build_root_system


@dataclass(frozen=True)
class BottResult:
    degree: int | None  # None means all cohomology vanishes
    weight: tuple | None = None

    @property
    def zero(self) -> bool:
        return self.degree is None

    def to_dict(self) -> dict:
        if self.zero:
            return {"zero": True}
        return {"zero": False, "degree": self.degree, "weight": _jsonable(self.weight)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


ZERO = BottResult(None)


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    return int(w)


@dataclass(frozen=True)
class Grass:
    """Grassmannian of r-dimensional subspaces of C^n."""

    r: int
    n: int

    def __post_init__(self):
        if not 0 <= self.r <= self.n:
            raise ValueError(f"bad Grassmannian Grass({self.r},{self.n})")

    @property
    def dim(self) -> int:
        return self.r * (self.n - self.r)


@dataclass(frozen=True)
class FullFlag:
    stype: SimpleType

    @property
    def dim(self) -> int:
        return len(build_root_system(self.stype).positive)


@dataclass(frozen=True)
class HomSpace:
    factors: tuple

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)


def _sort_with_length(v):
    """Sort decreasingly; return (inversions, sorted) or None on repetition."""
    if len(set(v)) < len(v):
        return None
    inv = sum(1 for i in range(len(v)) for j in range(i + 1, len(v)) if v[i] < v[j])
    return inv, sorted(v, reverse=True)


def bott_gl(space: Grass, lam, mu) -> BottResult:
    """Cohomology of ``S_lam Q (x) S_mu R`` on ``Grass(r, n)``.

    ``lam`` has length ``n - r`` (quotient bundle), ``mu`` has length ``r``.

    EXAMPLES::

        >>> bott_gl(Grass(1, 2), (-1,), (0,)).zero
        True
        >>> bott_gl(Grass(1, 2), (-2,), (0,))
        BottResult(degree=1, weight=((-1,), (-1,)))
    """
    r, n = space.r, space.n
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != n - r or len(mu) != r:
        raise ValueError("weight lengths do not match the Grassmannian")
    v = lam + mu
    rho = tuple(range(n, 0, -1))
    res = _sort_with_length([a + b for a, b in zip(v, rho)])
    if res is None:
        return ZERO
    ell, s = res
    out = tuple(a - b for a, b in zip(s, rho))
    return BottResult(ell, (out[: n - r], out[n - r:]))


def dotted_straighten(rs, nodes, mu):
    """Move ``mu`` (root coordinates) to the dominant chamber of the reflection
    subgroup on ``nodes`` by the dotted action.

    Returns ``(length, weight)`` or ``(None, None)`` if ``mu + rho`` is singular.
    """
    mu = list(mu)
    A = rs.cartan
    n = rs.rank
    ell = 0
    while True:
        moved = False
        for i in nodes:
            c = sum(mu[j] * A[i][j] for j in range(n)) + 1
            if c < 0:
                mu[i] -= c
                ell += 1
                moved = True
                break
        if not moved:
            break
    for i in nodes:
        if sum(mu[j] * A[i][j] for j in range(n)) + 1 == 0:
            return None, None
    return ell, tuple(mu)


def bott_gb(stype, labels) -> BottResult:
    """Line bundle cohomology on ``G/B`` for a weight given by Dynkin labels.

    EXAMPLES::

        >>> bott_gb("A2", (1, 0))
        BottResult(degree=0, weight=(1, 0))
        >>> bott_gb("A2", (-1, 0)).zero
        True
        >>> bott_gb("A1", (-3,))
        BottResult(degree=1, weight=(1,))
    """
    rs = build_root_system(stype) if not isinstance(stype, SimpleType) else build_root_system(stype)
    A = rs.cartan
    n = rs.rank
    v = [x + 1 for x in labels]
    ell = 0
    while True:
        i = next((i for i in range(n) if v[i] < 0), None)
        if i is None:
            break
        c = v[i]
        # s_i on labels: v_j -= c * <alpha_i, alpha_j^vee>
        v = [v[j] - c * A[j][i] for j in range(n)]
        ell += 1
    if any(x == 0 for x in v):
        return ZERO
    return BottResult(ell, tuple(x - 1 for x in v))


def bott(space: HomSpace, weights) -> BottResult:
    """Kunneth product of per-factor results; a vanishing factor kills all."""
    total = 0
    parts = []
    for f, w in zip(space.factors, weights):
        if isinstance(f, Grass):
            r = bott_gl(f, w[0], w[1])
        else:
            r = bott_gb(f.stype, w)
        if r.zero:
            return ZERO
        total += r.degree
        parts.append(r.weight)
    return BottResult(total, tuple(parts))


def euler_char_line_bundles(space: HomSpace, bag) -> Counter:
    """Signed sum of Bott results over a multiset of weights."""
    out: Counter = Counter()
    for w, m in bag.items():
        r = bott(space, w)
        if not r.zero:
            out[r.weight] += (-1) ** r.degree * m
    return Counter({k: v for k, v in out.items() if v})


def serre_dual_gl(space: Grass, lam, mu):
    """Weight of ``V^* (x) omega`` for ``V = S_lam Q (x) S_mu R``."""
    r, n = space.r, space.n
    dl = tuple(-x - r for x in reversed(lam))
    dm = tuple(-x + (n - r) for x in reversed(mu))
    return dl, dm


def parse_space(text: str) -> HomSpace:
    """Parse ``grass:3,6`` or ``flag:A2`` (several joined by ``x``)."""
    factors = []
    for part in text.split("x"):
        kind, _, arg = part.strip().partition(":")
        if kind == "grass":
            r, n = (int(t) for t in arg.split(","))
            factors.append(Grass(r, n))
        elif kind == "flag":
            factors.append(FullFlag(SimpleType.parse(arg)))
        else:
            raise ValueError(f"unknown space factor {part!r}")
    return HomSpace(tuple(factors))


def parse_weight(space: HomSpace, text: str):
    """Parse per-factor weights separated by ``|``; a Grassmannian weight is
    ``lam;mu`` with comma separated entries."""
    chunks = text.split("|")
    if len(chunks) != len(space.factors):
        raise ValueError("one weight per factor is required")
    out = []
    for f, c in zip(space.factors, chunks):
        if isinstance(f, Grass):
            a, _, b = c.partition(";")
            lam = tuple(int(x) for x in a.split(",") if x.strip())
            mu = tuple(int(x) for x in b.split(",") if x.strip())
            out.append((lam, mu))
        else:
            out.append(tuple(int(x) for x in c.split(",")))
    return out
