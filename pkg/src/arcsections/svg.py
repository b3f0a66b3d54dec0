"""Static SVG figures: the dual graph of a resolution and fiber-root trajectories."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .monodromy.crossing import _chart_loop
from .monodromy.tracking import TrackingError, run_loop
from .resolve import ResolutionTree

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def dual_graph_svg(tree: ResolutionTree, size: int = 420) -> str:
    """Components of the total transform as vertices, normal crossings as edges."""
    labels: list[str] = []
    for x in tree.crossings:
        for d in x.branch_pair:
            if d.label not in labels:
                labels.append(d.label)
    labels.sort(key=lambda s: (s[0] != "E", s))
    c, rad = size / 2, size / 2 - 50
    pos = {}
    for i, lab in enumerate(labels):
        ang = 2 * math.pi * i / max(1, len(labels)) - math.pi / 2
        pos[lab] = (c + rad * math.cos(ang), c + rad * math.sin(ang))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">', '<rect width="100%" height="100%" fill="white"/>']
    for x in tree.crossings:
        (x1, y1), (x2, y2) = (pos[d.label] for d in x.branch_pair)
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                   f'stroke="#555" stroke-width="2"/>')
        out.append(f'<text x="{(x1 + x2) / 2:.1f}" y="{(y1 + y2) / 2 - 4:.1f}" font-size="11" '
                   f'fill="#555" text-anchor="middle">{escape(x.id)}</text>')
    for lab, (x, y) in pos.items():
        fill = "#fde3c8" if lab.startswith("E") else "#cfe3f7"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="20" fill="{fill}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{y + 4:.1f}" font-size="13" text-anchor="middle">'
                   f'{escape(lab)}</text>')
    out.append("</svg>")
    return "\n".join(out)


def trajectory_svg(thetas: list[float], traj: list[list[complex]], title: str = "",
                   width: int = 520, height: int = 300) -> str:
    """Real parts of the fiber roots against the loop angle."""
    ys = [z.real for row in traj for z in row]
    lo, hi = min(ys), max(ys)
    if hi - lo < 1e-12:
        lo, hi = lo - 1, hi + 1
    pad = 40

    def px(th):
        return pad + (width - 2 * pad) * th / (2 * math.pi)

    def py(v):
        return height - pad - (height - 2 * pad) * (v - lo) / (hi - lo)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">', '<rect width="100%" height="100%" fill="white"/>',
           f'<text x="{width / 2}" y="18" font-size="13" text-anchor="middle">{escape(title)}</text>',
           f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
           f'<text x="{width - pad}" y="{height - pad + 16}" font-size="11" text-anchor="end">theta = 2pi</text>']
    for k in range(len(traj[0])):
        pts = " ".join(f"{px(th):.1f},{py(row[k].real):.1f}" for th, row in zip(thetas, traj))
        out.append(f'<polyline fill="none" stroke="{_COLORS[k % len(_COLORS)]}" stroke-width="1.5" '
                   f'points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out)


def write_svgs(directory: Path, setup, tree: ResolutionTree) -> list[str]:
    """Write the dual graph and one trajectory plot per crossing loop; returns file names."""
    directory.mkdir(parents=True, exist_ok=True)
    names = ["dual_graph.svg"]
    (directory / names[0]).write_text(dual_graph_svg(tree))
    for x in tree.crossings:
        chart = tree.chart(x.chart_id)
        for which in (1, 2):
            loop = _chart_loop(chart, x, which, label=f"{x.id}:B{which}")
            try:
                res = run_loop(setup.F_adapted, loop, d=setup.d, delta=tree.delta, record=True)
            except TrackingError:
                continue
            traj = [[row[i] for i in res.local] for row in res.trajectory]
            name = f"{x.id}_B{which}.svg"
            title = f"{x.id} loop around {x.branch_pair[which - 1].label}: {res.permutation}"
            (directory / name).write_text(trajectory_svg(res.thetas, traj, title))
            names.append(name)
    return names
