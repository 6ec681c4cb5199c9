"""Cut vertices and blocks of envelope graphs, and factorization read off the block path."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .envelope import EnvelopeSpace, TransitionSystem, automaton_language, build_envelope, to_transition_system
from .errors import DomainError, InvariantViolation
from .factorization import Factorization
from .upsets import UpSet, concat


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; loops are implicit and never stored."""

    vertices: int
    edges: frozenset  # of (p, q) with p < q

    def neighbours(self) -> list[list[int]]:
        adj = [[] for _ in range(self.vertices)]
        for p, q in sorted(self.edges):
            adj[p].append(q)
            adj[q].append(p)
        return adj


@dataclass(frozen=True)
class BlockPath:
    blocks: tuple[frozenset, ...]
    cuts: tuple[int, ...]

    def to_json(self) -> dict:
        return {"blocks": [sorted(b) for b in self.blocks], "cuts": list(self.cuts)}


def graph_of(M: TransitionSystem) -> Graph:
    edges = frozenset((min(p, q), max(p, q)) for (p, _, q) in M.trans if p != q)
    return Graph(M.states, edges)


def biconnected_components(g: Graph) -> tuple[list[frozenset], set[int]]:
    """Blocks (as vertex sets) and cut vertices, by DFS with low-link values.

    A vertex without edges forms a block on its own.
    """
    adj = g.neighbours()
    disc = [-1] * g.vertices
    low = [0] * g.vertices
    blocks: list[frozenset] = []
    cuts: set[int] = set()
    counter = 0
    for root in range(g.vertices):
        if disc[root] != -1:
            continue
        if not adj[root]:
            disc[root] = counter
            counter += 1
            blocks.append(frozenset((root,)))
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(adj[root]))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
                comp = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (parent, v):
                        break
                blocks.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


def block_decomposition(g: Graph, x: int, y: int) -> BlockPath:
    """Blocks ordered along the block tree from the block holding x to the one holding y.

    Raises if the graph is disconnected or the block tree is not such a path.
    """
    blocks, cuts = biconnected_components(g)
    if g.vertices > 1 and not _connected(g):
        raise DomainError("graph is disconnected")
    if x in cuts or y in cuts:
        raise InvariantViolation("envelope structure violation: x or y is a cut vertex")
    bx = [i for i, b in enumerate(blocks) if x in b]
    by = [i for i, b in enumerate(blocks) if y in b]
    if len(bx) != 1 or len(by) != 1:
        raise InvariantViolation("envelope structure violation: x or y in several blocks")
    # block-cut tree: blocks adjacent through shared cut vertices
    prev = {bx[0]: None}
    queue = deque([bx[0]])
    while queue:
        i = queue.popleft()
        for c in blocks[i] & cuts:
            for j, b in enumerate(blocks):
                if j not in prev and c in b:
                    prev[j] = (i, c)
                    queue.append(j)
    path, path_cuts = [by[0]], []
    while prev[path[-1]] is not None:
        i, c = prev[path[-1]]
        path.append(i)
        path_cuts.append(c)
    path.reverse()
    path_cuts.reverse()
    if len(path) != len(blocks):
        raise InvariantViolation("envelope structure violation: block tree is not a path from x to y")
    return BlockPath(tuple(blocks[i] for i in path), tuple(path_cuts))


def _connected(g: Graph) -> bool:
    adj = g.neighbours()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertices


def block_languages(S: EnvelopeSpace, M: TransitionSystem, bp: BlockPath) -> list[UpSet]:
    ends = [S.x, *bp.cuts, S.y]
    out = []
    for i, block in enumerate(bp.blocks):
        states = sorted(block)
        sub, index = M.restrict(states)
        out.append(automaton_language(sub, index[ends[i]], index[ends[i + 1]]))
    return out


def factorize_via_blocks(F: UpSet, max_points: int | None = None) -> Factorization:
    """Irreducible factors of ``F`` read off the blocks of its envelope graph."""
    if F.is_empty or F.is_full:
        raise DomainError("block factorization needs a segment other than ∅ and A*")
    S = build_envelope(F, check=False, max_points=max_points)
    M = to_transition_system(S)
    bp = block_decomposition(graph_of(M), S.x, S.y)
    if len(bp.blocks) == 1:
        return Factorization((F,))
    factors = block_languages(S, M, bp)
    prod = UpSet.full(F.alphabet)
    for f in factors:
        prod = concat(prod, f)
    if prod != F:
        raise InvariantViolation(f"block factors {factors} multiply to {prod}, not {F}")
    return Factorization(tuple(factors))
