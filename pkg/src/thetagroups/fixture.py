"""Reference tables per case and the dictionaries used to read them.

Fixture files live in ``fixtures/`` next to this module, one YAML file per
case; ``VINBERG_FIXTURE_DIR`` points the loader somewhere else.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import yaml

from .grading import CASES, GradedLie, graded_case

FIXTURE_ENV = "VINBERG_FIXTURE_DIR"
SING_COLUMNS = ("spherical", "normal", "cm", "rs", "gorenstein")


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).with_name("fixtures")


# -- GL factors and weight tuples ------------------------------------------------

@dataclass(frozen=True)
class GLFactor:
    name: str
    nodes: tuple  # 0-based Levi nodes in chain order
    size: int  # entry sum of the tuple of a g_1 weight

    @property
    def n(self) -> int:
        return len(self.nodes) + 1


@dataclass(frozen=True)
class Layout:
    factors: tuple

    def tuple_of(self, gl: GradedLie, weight, degree: int | None = None) -> tuple:
        """GL weight tuple of a weight given in root coordinates.

        ``degree`` is the number of g_1 weights summed (defaults to the
        coefficient of the marked root).
        """
        t = weight[gl.k] if degree is None else degree
        out = []
        for f in self.factors:
            labels = [gl.rs.pair_simple(weight, j) for j in f.nodes]
            n = f.n
            num = f.size * t - sum((i + 1) * l for i, l in enumerate(labels))
            if num % n:
                raise ValueError(f"weight {weight} is not integral on factor {f.name}")
            last = num // n
            a = [last] * n
            for i in range(n - 2, -1, -1):
                a[i] = a[i + 1] + labels[i]
            out.append(tuple(int(x) for x in a))
        return tuple(out)

    def root_of_tuple(self, gl: GradedLie, t) -> tuple:
        for r in gl.g1:
            if self.tuple_of(gl, r) == tuple(map(tuple, t)):
                return r
        raise KeyError(f"no g_1 weight with tuple {t}")


def format_tuple(t) -> str:
    return ";".join(",".join(str(x) for x in part) for part in t)


def parse_tuple(text: str) -> tuple:
    return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";"))


# -- classical epsilon coordinates ----------------------------------------------

def epsilon_coords(family: str, labels) -> tuple:
    """Weight with the given Dynkin labels in the usual epsilon basis (B, C, D)."""
    n = len(labels)
    x = [Fraction(0)] * n
    for j, l in enumerate(labels):
        if family == "B" and j == n - 1:
            w = [Fraction(1, 2)] * n
        elif family == "D" and j == n - 2:
            w = [Fraction(1, 2)] * (n - 1) + [Fraction(-1, 2)]
        elif family == "D" and j == n - 1:
            w = [Fraction(1, 2)] * n
        else:
            w = [Fraction(1)] * (j + 1) + [Fraction(0)] * (n - j - 1)
        x = [a + l * b for a, b in zip(x, w)]
    return tuple(x)


def levi_labels(gl: GradedLie, nodes, weight) -> tuple:
    return tuple(gl.rs.pair_simple(weight, j) for j in nodes)


# -- the fixture object ------------------------------------------------------------

@dataclass
class FixtureOrbit:
    i: int
    type: str | None
    dim: int
    rep: list | None  # raw labels
    span: bool = False
    extra: dict = field(default_factory=dict)


@dataclass
class Fixture:
    case: str
    raw: dict
    orbits: list
    layout: Layout | None
    levi: dict | None

    @property
    def source(self) -> str:
        return self.raw.get("source", "")

    @property
    def hasse(self):
        h = self.raw.get("hasse")
        return None if h is None else sorted(tuple(e) for e in h)

    @property
    def numerators(self) -> dict:
        return {int(k): list(v) for k, v in (self.raw.get("numerators") or {}).items()}

    @property
    def degrees(self) -> dict:
        return {int(k): int(v) for k, v in (self.raw.get("degrees") or {}).items()}

    @property
    def conflicts(self) -> list:
        return list(self.raw.get("conflicts") or [])

    @property
    def complexes(self) -> dict:
        return {int(k): v for k, v in (self.raw.get("complexes") or {}).items()}

    @property
    def invariant_degree(self):
        return self.raw.get("invariant_degree")

    @property
    def swap(self) -> list:
        return [tuple(p) for p in self.raw.get("swap") or []]

    def singularity(self, row: str, column: str):
        s = self.raw.get("singularities") or {}
        vals = (s.get("rows") or {}).get(str(row))
        if vals is None:
            return None
        return vals[SING_COLUMNS.index(column)]

    def normalization_flag(self, i: int, column: str):
        """Flag of the normalization: the n(i) row when present, else row i."""
        v = self.singularity(f"n({i})", column)
        return self.singularity(str(i), column) if v is None else v

    def dims(self) -> list:
        return sorted(o.dim for o in self.orbits)

    def gl(self) -> GradedLie:
        return graded_case(self.case)

    # -- labels -> roots ------------------------------------------------------
    def resolve_label(self, label: str):
        """``(root, sign)`` for one printed representative label."""
        gl = self.gl()
        label = label.strip()
        sign = 1
        if label.startswith("-"):
            sign, label = -1, label[1:].strip()
        scheme = self.raw.get("labels", "root")
        if scheme == "root":
            r = tuple(int(x) for x in label.split(","))
            if r not in gl.g1:
                raise KeyError(f"{label} is not a g_1 root of {self.case}")
            return r, sign
        body = label.strip("[]")
        if scheme == "subset":
            idx = {int(c) for c in body}
            fam = self.levi["family"]
            n = self.levi["rank"]
            target = tuple(Fraction(-1, 2) if i + 1 in idx else Fraction(1, 2) for i in range(n))
            for r in gl.g1:
                if epsilon_coords(fam, levi_labels(gl, self.levi_nodes, r)) == target:
                    return r, sign
            raise KeyError(f"no g_1 weight for [{body}]")
        if scheme == "tuple":
            parts = body.split(";")
            t = []
            for f, p in zip(self.layout.factors, parts):
                v = [0] * f.n
                for c in p:
                    v[int(c) - 1] += 1
                t.append(tuple(v))
            return self.layout.root_of_tuple(gl, t), sign
        raise ValueError(f"unknown label scheme {scheme!r}")

    @property
    def levi_nodes(self) -> tuple:
        return tuple(j - 1 for j in self.levi["nodes"])

    def rep_dict(self, orbit: FixtureOrbit) -> dict:
        if not orbit.rep:
            return {}
        out = {}
        for lab in orbit.rep:
            r, s = self.resolve_label(lab)
            out[r] = s
        return out


def _layout(raw) -> Layout | None:
    fs = raw.get("factors")
    if not fs:
        return None
    return Layout(tuple(GLFactor(f["name"], tuple(j - 1 for j in f["nodes"]), f["size"]) for f in fs))


@lru_cache(maxsize=None)
def _load(path: str) -> Fixture:
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    orbits = []
    for o in raw.get("orbits", []):
        extra = {k: v for k, v in o.items() if k not in ("i", "type", "dim", "rep", "span")}
        orbits.append(FixtureOrbit(o["i"], o.get("type"), o["dim"], o.get("rep"), bool(o.get("span")), extra))
    return Fixture(raw["case"], raw, orbits, _layout(raw), raw.get("levi"))


def load_fixture(case: str) -> Fixture:
    if case not in CASES:
        raise KeyError(f"unknown case {case!r}")
    path = fixture_dir() / f"{case}.yaml"
    if not path.exists():
        raise FileNotFoundError(f"no fixture for {case} in {path.parent}")
    return _load(str(path))


def parse_poly(coeffs) -> list:
    return [int(c) for c in coeffs]


def fixture_element(fx: Fixture, orbit: FixtureOrbit) -> dict | None:
    """The printed representative as an element of g_1 (None if not printed)."""
    if orbit.rep is None:
        return None
    rep = fx.rep_dict(orbit)
    if orbit.span:
        from .vinberg import generic_rep

        rep, _ = generic_rep(fx.gl(), sorted(rep))
    return rep


def match_fixture(gl: GradedLie, records: list, fx: Fixture) -> dict:
    """Map fixture index -> computed record index.

    Printed representatives are matched through the orbit invariants; orbits
    without one are matched on (dimension, type) when that pair is unique.
    """
    from .vinberg import orbit_invariants

    by_inv: dict = {}
    for r in records:
        by_inv.setdefault(r.invariants, []).append(r.index)
    out = {}
    for o in fx.orbits:
        x = fixture_element(fx, o)
        if x is not None:
            hits = by_inv.get(orbit_invariants(gl, x), [])
        else:
            hits = [
                r.index for r in records if r.dim == o.dim and o.type in (None, r.type_name)
            ]
        if len(hits) == 1:
            out[o.i] = hits[0]
    return out


def numbering(case: str) -> dict:
    """Public orbit number -> computed record index.

    Fixture rows keep their printed numbers; computed orbits without a row
    follow in order of dimension.  Without a fixture the computed order is used.
    """
    from .vinberg import case_orbits

    records = case_orbits(case)
    try:
        fx = load_fixture(case)
    except FileNotFoundError:
        return {r.index: r.index for r in records}
    out = match_fixture(graded_case(case), records, fx)
    nxt = max((o.i for o in fx.orbits), default=-1) + 1
    used = set(out.values())
    for r in sorted(records, key=lambda r: (r.dim, r.index)):
        if r.index not in used:
            out[nxt] = r.index
            nxt += 1
    return dict(sorted(out.items()))
