"""Matplotlib drawings of envelope graphs (Agg backend, written straight to files)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .blocks import BlockPath  # noqa: E402
from .envelope import EnvelopeSpace, TransitionSystem  # noqa: E402
from .export import PALETTE  # noqa: E402


def block_layout(S: EnvelopeSpace, bp: BlockPath) -> dict[int, tuple[float, float]]:
    """Blocks side by side from x to y; inner vertices fanned out between a block's two ends."""
    ends = [S.x, *bp.cuts, S.y]
    pos: dict[int, tuple[float, float]] = {}
    for i, block in enumerate(bp.blocks):
        a, b = ends[i], ends[i + 1]
        pos.setdefault(a, (float(i), 0.0))
        pos.setdefault(b, (float(i + 1), 0.0))
        inner = sorted(v for v in block if v not in (a, b))
        m = len(inner)
        for k, v in enumerate(inner):
            t = (k // 2 + 1) / (m // 2 + 2) if m > 1 else 0.5
            side = 1 if k % 2 == 0 else -1
            pos[v] = (i + t, side * 0.35 * math.sin(math.pi * t) * (1 + 0.15 * (k // 2)))
    return pos


def draw_envelope(S: EnvelopeSpace, M: TransitionSystem, bp: BlockPath, path: str | Path, title: str | None = None) -> Path:
    pos = block_layout(S, bp)
    names = S.alphabet.names
    cuts = set(bp.cuts)
    width = max(4.0, 2.6 * len(bp.blocks) + 1)
    fig, ax = plt.subplots(figsize=(width, 3.4))
    for b, block in enumerate(bp.blocks):
        colour = PALETTE[b % len(PALETTE)]
        for p in sorted(block):
            for q in sorted(block):
                if p < q and M.letters_between(p, q):
                    (x0, y0), (x1, y1) = pos[p], pos[q]
                    ax.plot([x0, x1], [y0, y1], color=colour, lw=1.4, zorder=1)
                    label = ",".join(names[a] for a in M.letters_between(p, q))
                    ax.text((x0 + x1) / 2, (y0 + y1) / 2, label, fontsize=7, color=colour,
                            ha="center", va="center", backgroundcolor="white", zorder=2)
    for v, (vx, vy) in pos.items():
        marker = "s" if v in cuts else "o"
        face = "black" if v in (S.x, S.y) else "white"
        ax.scatter([vx], [vy], s=60, marker=marker, facecolor=face, edgecolor="black", zorder=3)
        ax.annotate(repr(S.points[v]), (vx, vy), textcoords="offset points", xytext=(0, 8),
                    fontsize=7, ha="center")
    ax.set_axis_off()
    ax.set_title(title if title is not None else f"d(x,y) = {S.F!r}: {len(bp.blocks)} block(s)", fontsize=9)
    ax.margins(0.15)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
