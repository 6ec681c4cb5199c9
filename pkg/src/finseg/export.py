"""DOT text for transition graphs and block paths."""

from __future__ import annotations

from .blocks import BlockPath
from .envelope import EnvelopeSpace, TransitionSystem

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def transition_dot(S: EnvelopeSpace, M: TransitionSystem, bp: BlockPath | None = None) -> str:
    """Undirected graph of ``M``; loops dropped, edges labelled by the letters read along them.

    With a block path, edges are coloured by block and cut vertices drawn as boxes.
    """
    names = S.alphabet.names
    block_of = {}
    cuts = set()
    if bp is not None:
        cuts = set(bp.cuts)
        for b, block in enumerate(bp.blocks):
            for v in block:
                block_of.setdefault(v, set()).add(b)
    lines = ["graph envelope {", "  node [fontname=\"Helvetica\"];"]
    for i, p in enumerate(S.points):
        attrs = [f"label={_quote(f'{i}: {p!r}')}"]
        if i == S.x or i == S.y:
            attrs.append("peripheries=2")
        if i in cuts:
            attrs.append("shape=box")
        lines.append(f"  {i} [{', '.join(attrs)}];")
    for p in range(M.states):
        for q in range(p + 1, M.states):
            fwd = M.letters_between(p, q)
            if not fwd:
                continue
            label = ",".join(names[a] for a in fwd)
            attrs = [f"label={_quote(label)}"]
            if bp is not None:
                shared = block_of.get(p, set()) & block_of.get(q, set())
                if shared:
                    attrs.append(f"color={_quote(PALETTE[min(shared) % len(PALETTE)])}")
            lines.append(f"  {p} -- {q} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
