"""Rendered views of an algebra: truth table grid and interval order diagram.

Everything draws through the Agg backend so the report path works headless;
figures land next to the delimited files produced by ``write_report``.
"""
from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .chain import Algebra, ValidationReport
from .interval import Interval
from .intervals import IntervalAlgebra


def render_truth_table(
    alg: Algebra, path: str, report: ValidationReport | None = None
) -> str:
    """Draw the conjunction table as an annotated grid.

    Axiom violations from ``report`` get their witness cells outlined so a
    reader can spot what went wrong without scanning the whole matrix.
    """
    n = alg.n
    labels = alg.chain.labels
    fig, ax = plt.subplots(figsize=(1.0 + 0.6 * n, 1.0 + 0.6 * n))
    ax.imshow([[alg.t(i, j) for j in range(n)] for i in range(n)], cmap="YlGnBu", vmin=0, vmax=n - 1)
    for i in range(n):
        for j in range(n):
            ax.text(j, i, labels[alg.t(i, j)], ha="center", va="center", fontsize=9)
    bad = set()
    if report is not None:
        for v in report.violations:
            if len(v.witness) >= 2:
                bad.add((v.witness[0], v.witness[1]))
    for i, j in bad:
        ax.add_patch(
            plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False, edgecolor="red", lw=2)
        )
    ax.set_xticks(range(n), labels)
    ax.set_yticks(range(n), labels)
    ax.set_title("conjunction")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _layers(ia: IntervalAlgebra) -> dict[Interval, int]:
    # longest path from the bottom along cover edges
    rank = {v: 0 for v in ia.carrier}
    edges = ia.hasse
    changed = True
    while changed:
        changed = False
        for lo, hi in edges:
            if rank[hi] < rank[lo] + 1:
                rank[hi] = rank[lo] + 1
                changed = True
    return rank


def render_hasse(alg: Algebra, path: str) -> str:
    """Layered drawing of the interval order, colored by sign class."""
    ia = IntervalAlgebra(alg)
    rank = _layers(ia)
    by_rank: dict[int, list[Interval]] = {}
    for v, r in rank.items():
        by_rank.setdefault(r, []).append(v)
    pos = {}
    for r, vs in by_rank.items():
        vs.sort()
        for i, v in enumerate(vs):
            pos[v] = (i - (len(vs) - 1) / 2, r)

    classes = ia.sign_classes
    color = {}
    for v in classes.negatives:
        color[v] = "#6baed6"
    for v in classes.fixed:
        color[v] = "#969696"
    for v in classes.positives:
        color[v] = "#fb6a4a"
    for v in classes.indefinite:
        color[v] = "#fdd835"

    height = max(rank.values()) + 1
    width = max(len(vs) for vs in by_rank.values())
    fig, ax = plt.subplots(figsize=(1.5 + 0.9 * width, 1.0 + 0.7 * height))
    for lo, hi in ia.hasse:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="#bbbbbb", lw=1, zorder=1)
    labels = alg.chain.labels
    for v, (x, y) in pos.items():
        ax.scatter([x], [y], s=340, color=color[v], zorder=2, edgecolors="black", lw=0.5)
        text = labels[v.lo] if v.is_point else f"[{labels[v.lo]},{labels[v.hi]}]"
        ax.text(x, y, text, ha="center", va="center", fontsize=7, zorder=3)
    ax.set_axis_off()
    ax.set_title("interval order")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(alg: Algebra, outdir: str) -> list[str]:
    """Figures plus delimited companions: the table as CSV, the interval
    carrier with sign classes as TSV, cover edges as TSV, and a JSON index."""
    os.makedirs(outdir, exist_ok=True)
    ia = IntervalAlgebra(alg)
    labels = alg.chain.labels
    paths = []

    conj_csv = os.path.join(outdir, "conj.csv")
    with open(conj_csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["T"] + list(labels))
        for i in range(alg.n):
            w.writerow([labels[i]] + [labels[alg.t(i, j)] for j in range(alg.n)])
    paths.append(conj_csv)

    classes = ia.sign_classes
    kind = {}
    for name, group in (
        ("negative", classes.negatives),
        ("fixed", classes.fixed),
        ("positive", classes.positives),
        ("indefinite", classes.indefinite),
    ):
        for v in group:
            kind[v] = name
    intervals_tsv = os.path.join(outdir, "intervals.tsv")
    with open(intervals_tsv, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t")
        w.writerow(["lo", "hi", "lo_label", "hi_label", "sign"])
        for v in ia.carrier:
            w.writerow([v.lo, v.hi, labels[v.lo], labels[v.hi], kind[v]])
    paths.append(intervals_tsv)

    hasse_tsv = os.path.join(outdir, "hasse.tsv")
    with open(hasse_tsv, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t")
        w.writerow(["lower", "upper"])
        for lo, hi in ia.hasse:
            w.writerow([str(lo), str(hi)])
    paths.append(hasse_tsv)

    paths.append(render_truth_table(alg, os.path.join(outdir, "truth_table.png")))
    paths.append(render_hasse(alg, os.path.join(outdir, "hasse.png")))

    index = os.path.join(outdir, "report.json")
    with open(index, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "chain": list(labels),
                "files": [os.path.basename(p) for p in paths],
            },
            fh,
            indent=2,
        )
    paths.append(index)
    return paths
