"""Figures and files for the regression report."""
from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .closure import HasseDiagram  # noqa: E402

_PNG_META = {"Software": None}


def _layout(diagram: HasseDiagram) -> dict:
    """Levels by dimension, ordered by the mean position of lower covers."""
    below: dict = {}
    for a, b in diagram.edges:
        below.setdefault(b, []).append(a)
    levels: dict = {}
    for i in sorted(diagram.nodes):
        levels.setdefault(diagram.nodes[i], []).append(i)
    pos: dict = {}
    for d in sorted(levels):
        nodes = levels[d]
        bary = {i: sum(pos[j][0] for j in below.get(i, [])) / max(len(below.get(i, [])), 1) for i in nodes}
        nodes = sorted(nodes, key=lambda i: (bary[i], i))
        if len(nodes) == 1:
            pos[nodes[0]] = (bary[nodes[0]], d)
            continue
        for k, i in enumerate(nodes):
            pos[i] = (k - (len(nodes) - 1) / 2, d)
    return pos


def hasse_figure(diagram: HasseDiagram, path, title: str = "") -> Path:
    """Draw covers bottom-up with orbits placed at height = dimension."""
    pos = _layout(diagram)
    fig, ax = plt.subplots(figsize=(5, 6))
    for a, b in sorted(diagram.edges):
        ax.annotate("", xy=pos[b], xytext=pos[a], zorder=1,
                    arrowprops=dict(arrowstyle="-", color="0.4", lw=1, shrinkA=8, shrinkB=8,
                                    connectionstyle="arc3,rad=0.15"))
    for i, (x, y) in sorted(pos.items()):
        ax.scatter([x], [y], s=260, color="white", edgecolors="black", zorder=2)
        ax.annotate(str(i), (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_ylabel("dimension")
    ax.yaxis.get_major_locator().set_params(integer=True)
    ax.set_xticks([])
    ax.margins(0.12)
    ax.set_title(title)
    return _save(fig, path)


def numerator_figure(rows: dict, path, title: str = "") -> Path:
    """Coefficients of the Hilbert numerators, one line per orbit."""
    fig, ax = plt.subplots(figsize=(6, 4))
    colors = plt.get_cmap("tab20").colors
    for k, (i, num) in enumerate(sorted(rows.items())):
        if len(num) < 2:
            continue
        ax.plot(range(len(num)), num, marker="o", lw=1, color=colors[k % 20], label=f"O{i}")
    ax.set_xlabel("power of t")
    ax.set_ylabel("coefficient")
    ax.set_title(title)
    if ax.lines:
        ax.legend(fontsize=7, ncol=2)
    return _save(fig, path)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_META)
    plt.close(fig)
    return path


def write_report(reports: list, outdir, strict: bool = False, jobs: int = 1) -> Path:
    """Write report.md, report.json and per-case figures into ``outdir``."""
    from .fixture import load_fixture, numbering
    from .geomtech import hilbert_series, orbit_bundle
    from .verify import markdown, numbered_hasse

    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    md = markdown(reports, strict)
    figs = []
    for r in reports:
        if r.error:
            continue
        diag = numbered_hasse(r.case, jobs=jobs)
        if len(diag.nodes) > 1:
            name = f"hasse_{r.case}.png"
            hasse_figure(diag, out / name, f"{r.case} closure order")
            figs.append((r.case, "closure order", name))
        fx = load_fixture(r.case)
        if fx.numerators:
            num = numbering(r.case)
            rows = {}
            for i in sorted(fx.numerators):
                spec = orbit_bundle(r.case, num[i])
                if spec is not None:
                    rows[i] = hilbert_series(spec).numerator
            name = f"numerators_{r.case}.png"
            numerator_figure(rows, out / name, f"{r.case} Hilbert numerators")
            figs.append((r.case, "Hilbert numerators", name))
    if figs:
        md += "\n## Figures\n\n" + "".join(f"- {c}, {what}: ![{c}]({n})\n" for c, what, n in figs)
    (out / "report.md").write_text(md)
    data = {"strict": strict, "cases": [r.to_dict() for r in reports]}
    (out / "report.json").write_text(json.dumps(data, sort_keys=True, indent=1, default=str) + "\n")
    return out / "report.md"
