"""Root systems of simple Lie algebras with exact arithmetic.

Roots are integer coefficient tuples over the simple roots (Bourbaki
numbering).  Weights are tuples of ``Fraction`` (or ints) in the same
basis.  The invariant form is normalized so that long roots have squared
length 2.

Structure constants follow the extraspecial-pair construction: every
extraspecial pair gets ``N = +(p+1)`` and the remaining constants are
forced by the standard quadratic relations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Root = tuple


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }
        if f not in ok or not isinstance(n, int) or not ok[f]:
            raise ValueError(f"invalid Dynkin type {f}{n}")

    @classmethod
    def parse(cls, label: str) -> "SimpleType":
        label = label.strip()
        return cls(label[0].upper(), int(label[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(st: SimpleType) -> list[list[int]]:
    """Bourbaki Cartan matrix with ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    n = st.rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        A[i][j] = a
        A[j][i] = b

    f = st.family
    if f in "ABCD":
        for i in range(n - 1 if f != "D" else n - 2):
            link(i, i + 1)
        if f == "B":
            # alpha_n short
            A[n - 1][n - 2] = -2
        elif f == "C":
            A[n - 2][n - 1] = -2
        elif f == "D":
            link(n - 3, n - 1)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif f == "F":
        link(0, 1)
        link(1, 2)
        link(2, 3)
        A[2][1] = -2
    elif f == "G":
        A[0][1] = -3
        A[1][0] = -1
    return A


def _length_squares(st: SimpleType) -> list[Fraction]:
    n = st.rank
    two = Fraction(2)
    if st.family == "B":
        return [two] * (n - 1) + [Fraction(1)]
    if st.family == "C":
        return [Fraction(1)] * (n - 1) + [two]
    if st.family == "F":
        return [two, two, Fraction(1), Fraction(1)]
    if st.family == "G":
        return [Fraction(2, 3), two]
    return [two] * n


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


@dataclass
class RootSystem:
    stype: SimpleType
    cartan: list = field(init=False)
    form: list = field(init=False)
    positive: list = field(init=False)
    roots: list = field(init=False)

    def __post_init__(self):
        st = self.stype
        self.rank = st.rank
        self.cartan = cartan_matrix(st)
        self._len2 = _length_squares(st)
        n = self.rank
        self.form = [[self.cartan[i][j] * self._len2[i] / 2 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                assert self.form[i][j] == self.form[j][i], "asymmetric form"
        self.positive = self._positive_roots()
        self.roots = self.positive + [_neg(r) for r in self.positive]
        self._rootset = frozenset(self.roots)
        self._order = {r: k for k, r in enumerate(self.positive)}
        self._nab: dict = {}
        self._ncache: dict = {}
        self._structure_constants()

    def _positive_roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        layer = list(simple)
        found = set(simple)
        out = list(simple)
        while layer:
            nxt = []
            for b in layer:
                for i in range(n):
                    # alpha_i-string through b: q = how far down we can go
                    q = 0
                    c = _sub(b, simple[i])
                    while c in found:
                        q += 1
                        c = _sub(c, simple[i])
                    p = q - self.pair_simple(b, i)
                    if p > 0:
                        r = _add(b, simple[i])
                        if r not in found:
                            found.add(r)
                            nxt.append(r)
            layer = nxt
            out.extend(layer)
        out.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        return out

    # -- form and Weyl group -------------------------------------------------
    def inner(self, a, b) -> Fraction:
        F = self.form
        n = self.rank
        s = Fraction(0)
        for i in range(n):
            if a[i]:
                for j in range(n):
                    if b[j]:
                        s += a[i] * b[j] * F[i][j]
        return s

    def norm2(self, a) -> Fraction:
        return self.inner(a, a)

    def pair_simple(self, weight, i):
        """``<weight, alpha_i^vee>``."""
        A = self.cartan
        return sum(weight[j] * A[i][j] for j in range(self.rank))

    def coroot_pair(self, weight, root):
        """``<weight, root^vee> = 2(weight, root)/(root, root)``."""
        v = 2 * self.inner(weight, root) / self.norm2(root)
        return int(v) if v.denominator == 1 else v

    def reflect(self, root, weight):
        """Reflection ``s_root`` applied to ``weight``."""
        c = self.coroot_pair(weight, root)
        return tuple(w - c * r for w, r in zip(weight, root))

    def simple_reflect(self, i, weight):
        c = self.pair_simple(weight, i)
        if not c:
            return tuple(weight)
        w = list(weight)
        w[i] -= c
        return tuple(w)

    def weyl_orbit(self, weight, nodes=None) -> set:
        """Orbit of ``weight`` under the Weyl group generated by ``nodes``."""
        nodes = range(self.rank) if nodes is None else nodes
        start = tuple(weight)
        seen = {start}
        todo = deque([start])
        while todo:
            w = todo.popleft()
            for i in nodes:
                v = self.simple_reflect(i, w)
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return seen

    @cached_property
    def rho(self):
        n = self.rank
        s = [0] * n
        for r in self.positive:
            for i in range(n):
                s[i] += r[i]
        return tuple(Fraction(x, 2) for x in s)

    @cached_property
    def highest_root(self):
        return self.positive[-1]

    # -- roots --------------------------------------------------------------
    def is_root(self, v) -> bool:
        return tuple(v) in self._rootset

    def is_positive(self, r) -> bool:
        return any(x > 0 for x in r)

    def is_long(self, r) -> bool:
        return self.norm2(r) == 2

    def simple_roots(self):
        n = self.rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def coroot_coeffs(self, r):
        """Coefficients of ``r^vee`` over the simple coroots."""
        nr = self.norm2(r)
        out = [r[i] * self._len2[i] / nr for i in range(self.rank)]
        assert all(v.denominator == 1 for v in out)
        return tuple(int(v) for v in out)

    def string_below(self, a, b) -> int:
        """Largest p with b - p*a a root."""
        p = 0
        c = _sub(b, a)
        while c in self._rootset:
            p += 1
            c = _sub(c, a)
        return p

    # -- structure constants ------------------------------------------------
    def _structure_constants(self):
        pos = self.positive
        order = self._order
        table = self._nab
        by_sum: dict = {}
        for a in pos:
            for b in pos:
                if order[a] < order[b]:
                    s = _add(a, b)
                    if s in self._rootset:
                        by_sum.setdefault(s, []).append((a, b))
        for xi in pos:
            pairs = by_sum.get(xi)
            if not pairs:
                continue
            pairs.sort(key=lambda ab: order[ab[0]])
            g, d = pairs[0]
            table[(g, d)] = self.string_below(g, d) + 1
            table[(d, g)] = -table[(g, d)]
            for a, b in pairs[1:]:
                val = Fraction(0)
                bg = _sub(b, g)
                ad = _sub(a, d)
                if bg in self._rootset and ad in self._rootset:
                    val -= Fraction(self.N(b, _neg(g)) * self.N(a, _neg(d))) / self.norm2(bg)
                ag = _sub(a, g)
                bd = _sub(b, d)
                if ag in self._rootset and bd in self._rootset:
                    val -= Fraction(self.N(_neg(g), a) * self.N(b, _neg(d))) / self.norm2(ag)
                val *= self.norm2(xi) / self.N(_neg(g), _neg(d))
                assert val.denominator == 1
                table[(a, b)] = int(val)
                table[(b, a)] = -int(val)

    def N(self, x, y) -> int:
        """Structure constant ``N_{x,y}`` with ``[e_x, e_y] = N_{x,y} e_{x+y}``.

        Returns 0 when ``x + y`` is not a root.
        """
        x = tuple(x)
        y = tuple(y)
        key = (x, y)
        hit = self._ncache.get(key)
        if hit is not None:
            return hit
        v = self._N(x, y)
        self._ncache[key] = v
        return v

    def _N(self, x, y) -> int:
        z = _add(x, y)
        if z not in self._rootset:
            return 0
        px, py = self.is_positive(x), self.is_positive(y)
        if px and py:
            return self._nab[(x, y)]
        if not px and not py:
            return -self._nab[(_neg(x), _neg(y))]
        if not px:
            return -self.N(y, x)
        if self.is_positive(z):
            v = -self.norm2(z) / self.norm2(x) * self.N(_neg(y), z)
        else:
            v = self.norm2(z) / self.norm2(y) * self.N(_neg(z), x)
        assert v.denominator == 1
        return int(v)

    @property
    def nAB(self):
        return {
            (a, b): self.N(a, b)
            for a in self.roots
            for b in self.roots
            if _add(a, b) in self._rootset
        }

    # -- Lie bracket on sparse elements ------------------------------------
    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of sparse elements.

        Basis keys are ``("e", root)`` and ``("h", i)`` (simple coroots).
        """
        out: dict = {}

        def put(k, v):
            if v:
                out[k] = out.get(k, 0) + v
                if not out[k]:
                    del out[k]

        for kx, cx in x.items():
            for ky, cy in y.items():
                c = cx * cy
                if kx[0] == "h" and ky[0] == "h":
                    continue
                if kx[0] == "h":
                    put(ky, c * self.pair_simple(ky[1], kx[1]))
                elif ky[0] == "h":
                    put(kx, -c * self.pair_simple(kx[1], ky[1]))
                else:
                    a, b = kx[1], ky[1]
                    s = _add(a, b)
                    if not any(s):
                        for i, v in enumerate(self.coroot_coeffs(a)):
                            put(("h", i), c * v)
                    elif s in self._rootset:
                        put(("e", s), c * self.N(a, b))
        return out

    def dim(self) -> int:
        return self.rank + len(self.roots)


_CACHE: dict = {}


def build_root_system(stype) -> RootSystem:
    if isinstance(stype, str):
        stype = SimpleType.parse(stype)
    if not isinstance(stype, SimpleType):
        stype = SimpleType(*stype)
    if stype not in _CACHE:
        _CACHE[stype] = RootSystem(stype)
    return _CACHE[stype]


def inner(rs: RootSystem, a, b) -> Fraction:
    return rs.inner(a, b)


def weyl_orbit(rs: RootSystem, weight) -> set:
    return rs.weyl_orbit(weight)


def reflect(rs: RootSystem, root, weight):
    return rs.reflect(root, weight)
