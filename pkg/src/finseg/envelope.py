"""Distances valued in final segments, injective envelopes of two-point spaces,
and the reflexive involutive transition systems they induce.

Distances live in the monoid ordered by *reverse* inclusion: "d <= e" means
``d ⊇ e`` and the join of two distances is their intersection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation
from .order import Alphabet, Word
from .upsets import (
    UpSet,
    concat,
    contains,
    intersect,
    involute_upset,
    member,
    quotient,
    residual,
    union_meet,
)


@lru_cache(maxsize=1 << 16)
def d_V(p: UpSet, q: UpSet) -> UpSet:
    """Least ``r`` (in reverse inclusion) with ``p ⊇ q·r̄`` and ``q ⊇ p·r``."""
    first = residual(involute_upset(p), involute_upset(q), "right")
    second = residual(q, p, "left")
    return intersect(first, second)


@dataclass(frozen=True)
class EnvelopeSpace:
    """A finite metric space over final segments with two marked points.

    For built envelopes ``points[i]`` is the segment itself and equals
    ``dist[x][i]``; glued spaces keep that labelling convention.
    """

    alphabet: Alphabet
    points: tuple[UpSet, ...]
    dist: tuple[tuple[UpSet, ...], ...]
    x: int
    y: int

    def __len__(self) -> int:
        return len(self.points)

    @property
    def F(self) -> UpSet:
        return self.dist[self.x][self.y]

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "x": self.x,
            "y": self.y,
            "dist": [[d.to_json() for d in row] for row in self.dist],
        }


def _sort_points(points: Iterable[UpSet]) -> list[UpSet]:
    return sorted(points, key=lambda p: (p.is_empty, len(p.gens[0]) if p.gens else 0, p.max_len, p))


def envelope_points(F: UpSet, max_points: int | None = None) -> list[UpSet]:
    """The residuals ``{r : r·β ⊆ F}``: word quotients of F, their finite meets, and A*.

    With ``max_points`` the search stops as soon as the count is exceeded.
    """
    A = F.alphabet

    full = UpSet.full(A)

    def guard():
        if max_points is not None and len(seen) + (full not in seen) > max_points:
            raise DomainError(f"envelope of {F} exceeds the limit of {max_points} points")

    seen = {F}
    stack = [F]
    while stack:
        G = stack.pop()
        for c in A.letters:
            Q = quotient(G, (c,), "right")
            if Q not in seen:
                seen.add(Q)
                stack.append(Q)
                guard()
    # every point is a finite intersection of word quotients, so meeting the
    # frontier with the quotients alone reaches the whole closure
    base = sorted(seen, key=lambda u: u.gens)
    frontier = base
    while frontier:
        new = {intersect(p, b) for p in frontier for b in base} - seen
        seen |= new
        guard()
        frontier = sorted(new, key=lambda u: u.gens)
    seen.add(full)
    return _sort_points(seen)


def build_envelope(F: UpSet, check: bool = True, max_points: int | None = None) -> EnvelopeSpace:
    """The space of residuals ``{r : r·β ⊆ F}`` with the induced distance."""
    A = F.alphabet
    points = envelope_points(F, max_points)
    # d_V(p, q) = ⌈p̄·q̄⁻¹⌉ ∩ ⌈p⁻¹·q⌉, and the first residual is the involute of
    # residual(p, q, left); compute each left residual once
    left = [[residual(q, p, "left") for q in points] for p in points]
    dist = tuple(
        tuple(intersect(involute_upset(left[j][i]), left[i][j]) for j in range(len(points)))
        for i in range(len(points))
    )
    S = EnvelopeSpace(A, tuple(points), dist, points.index(UpSet.full(A)), points.index(F))
    if check:
        check_envelope(S, F)
    return S


# -- invariants ---------------------------------------------------------------


def _interned(S: EnvelopeSpace) -> tuple[list[UpSet], list[list[int]]]:
    """Distinct distance values and the matrix of their indices."""
    ids: dict[UpSet, int] = {}
    vals: list[UpSet] = []
    mat = []
    for row in S.dist:
        out = []
        for v in row:
            if v not in ids:
                ids[v] = len(vals)
                vals.append(v)
            out.append(ids[v])
        mat.append(out)
    return vals, mat


@lru_cache(maxsize=1 << 18)
def _contains_cached(F: UpSet, G: UpSet) -> bool:
    return contains(F, G)


def _contains_product(D: UpSet, P: UpSet, Q: UpSet) -> bool:
    """``D ⊇ P·Q``, i.e. ``Q`` lies in the left quotient of ``D`` by each generator of ``P``."""
    return all(_contains_cached(quotient(D, g, "left"), Q) for g in P.gens)


def metric_violations(S: EnvelopeSpace) -> list[str]:
    """Distance axioms: identity of indiscernibles, triangle law, involution symmetry."""
    out = []
    n = len(S)
    d = S.dist
    vals, m = _interned(S)
    for i in range(n):
        if not d[i][i].is_full:
            out.append(f"d1: d({i},{i}) = {d[i][i]}")
        for j in range(n):
            if i != j and d[i][j].is_full:
                out.append(f"d1: d({i},{j}) = A* for distinct points")
            if d[j][i] != involute_upset(d[i][j]):
                out.append(f"d3: d({j},{i}) is not the involute of d({i},{j})")
    # d2 depends only on the three values, so test each value triple once
    memo: dict[tuple[int, int, int], bool] = {}
    for i in range(n):
        mi = m[i]
        for k in range(n):
            a = mi[k]
            mk = m[k]
            for j in range(n):
                key = (mi[j], a, mk[j])
                ok = memo.get(key)
                if ok is None:
                    ok = memo[key] = _contains_product(vals[key[0]], vals[a], vals[key[2]])
                if not ok:
                    out.append(f"d2: d({i},{j}) ⊉ d({i},{k})·d({k},{j})")
    return out


def metricsup_violations(S: EnvelopeSpace) -> list[str]:
    """``d(p,q)`` must equal the join (intersection) over z of d_V(d(z,p), d(z,q)).

    An intersection equals ``D`` iff one term equals ``D`` and every term
    contains it. The term at z = p is computed outright; for the others we use
    that d_V(a, b) is the largest r with ``a·r ⊆ b`` and ``b·r̄ ⊆ a``, so it
    contains ``D`` iff ``a·D ⊆ b`` and ``b·D̄ ⊆ a``.
    """
    out = []
    n = len(S)
    d = S.dist
    vals, m = _interned(S)
    memo: dict[tuple[int, int, int], bool] = {}
    for i in range(n):
        for j in range(n):
            D = d[i][j]
            own = d_V(d[i][i], D)
            if own != D:
                out.append(f"metricsup: d_V(d({i},{i}), d({i},{j})) = {own}, expected {D}")
                continue
            Dbar = involute_upset(D)
            dij = m[i][j]
            for z in range(n):
                key = (m[z][i], m[z][j], dij)
                ok = memo.get(key)
                if ok is None:
                    a, b = vals[key[0]], vals[key[1]]
                    ok = memo[key] = _contains_product(b, a, D) and _contains_product(a, b, Dbar)
                if not ok:
                    out.append(f"metricsup: d_V(d({z},{i}), d({z},{j})) does not contain d({i},{j}) = {D}")
                    break
    return out


def metricsup_literal(S: EnvelopeSpace) -> list[str]:
    """Same check, intersecting every d_V term outright (slow; used to test the fast one)."""
    out = []
    n = len(S)
    d = S.dist
    for i in range(n):
        for j in range(n):
            acc = UpSet.full(S.alphabet)
            for z in range(n):
                acc = intersect(acc, d_V(d[z][i], d[z][j]))
            if acc != d[i][j]:
                out.append(f"metricsup: d({i},{j}) = {d[i][j]} but sup gives {acc}")
    return out


def split_violations(S: EnvelopeSpace) -> list[str]:
    """Every split ``αβ`` of a minimal word of ``d(p,q)`` routes through some point."""
    out = []
    n = len(S)
    d = S.dist
    rows: dict[tuple[int, Word], int] = {}  # (p, α) -> bitmask of z with α ∈ d(p,z)
    cols: dict[tuple[int, Word], int] = {}  # (q, β) -> bitmask of z with β ∈ d(z,q)

    def row(p: int, w: Word) -> int:
        key = (p, w)
        if key not in rows:
            rows[key] = sum(1 << z for z in range(n) if member(d[p][z], w))
        return rows[key]

    def col(q: int, w: Word) -> int:
        key = (q, w)
        if key not in cols:
            cols[key] = sum(1 << z for z in range(n) if member(d[z][q], w))
        return cols[key]

    for p in range(n):
        for q in range(n):
            for g in d[p][q].gens:
                for k in range(1, len(g)):
                    alpha, beta = g[:k], g[k:]
                    if not row(p, alpha) & col(q, beta):
                        out.append(f"split: {g} in d({p},{q}) has no point for {alpha}|{beta}")
    return out


def check_envelope(S: EnvelopeSpace, F: UpSet | None = None) -> None:
    problems = metric_violations(S) + metricsup_violations(S)
    if F is not None and S.dist[S.x][S.y] != F:
        problems.append(f"d(x,y) = {S.dist[S.x][S.y]} differs from {F}")
    if problems:
        raise InvariantViolation("envelope check failed: " + "; ".join(problems[:5]))


def ball(S: EnvelopeSpace, center: int, radius: UpSet) -> set[int]:
    return {z for z in range(len(S)) if contains(S.dist[center][z], radius)}


def two_ball_violations(S: EnvelopeSpace, radii: Sequence[UpSet]) -> list[str]:
    """Balls with compatible radii must meet."""
    out = []
    n = len(S)
    for p1 in range(n):
        for p2 in range(n):
            for r1 in radii:
                for r2 in radii:
                    if contains(S.dist[p1][p2], concat(r1, involute_upset(r2))):
                        if not ball(S, p1, r1) & ball(S, p2, r2):
                            out.append(f"convexity: B({p1},{r1}) ∩ B({p2},{r2}) empty")
    return out


def is_nonexpansive(S: EnvelopeSpace, f: Sequence[int]) -> bool:
    n = len(S)
    d = S.dist
    return all(contains(d[f[i]][f[j]], d[i][j]) for i in range(n) for j in range(n))


def nontrivial_fixing_maps(S: EnvelopeSpace) -> list[tuple[int, ...]]:
    """Non-expansive self-maps fixing x and y other than the identity (should be none)."""
    n = len(S)
    others = [i for i in range(n) if i not in (S.x, S.y)]
    found = []
    for images in itertools.product(range(n), repeat=len(others)):
        f = list(range(n))
        for i, img in zip(others, images):
            f[i] = img
        if f != list(range(n)) and is_nonexpansive(S, f):
            found.append(tuple(f))
    return found


# -- transition systems -------------------------------------------------------


@dataclass(frozen=True)
class TransitionSystem:
    alphabet: Alphabet
    states: int
    trans: frozenset  # of (p, letter, q)

    def letters_between(self, p: int, q: int) -> tuple[int, ...]:
        return tuple(sorted(a for (s, a, t) in self.trans if s == p and t == q))

    def violations(self) -> list[str]:
        A = self.alphabet
        out = []
        for p in range(self.states):
            for a in A.letters:
                if (p, a, p) not in self.trans:
                    out.append(f"not reflexive at {p} for {A.names[a]}")
        for p, a, q in self.trans:
            if (q, A.bar[a], p) not in self.trans:
                out.append(f"not involutive: ({p},{A.names[a]},{q})")
            for b in A.up(a):
                if (p, b, q) not in self.trans:
                    out.append(f"not upward closed: ({p},{A.names[a]},{q})")
        return out

    def restrict(self, states: Sequence[int]) -> tuple["TransitionSystem", dict[int, int]]:
        """Restriction to ``states``, renumbered 0..k-1; loops are reinstated."""
        index = {s: i for i, s in enumerate(states)}
        trans = {(index[p], a, index[q]) for (p, a, q) in self.trans if p in index and q in index}
        trans |= {(i, a, i) for i in range(len(states)) for a in self.alphabet.letters}
        return TransitionSystem(self.alphabet, len(states), frozenset(trans)), index

    def to_json(self) -> dict:
        names = self.alphabet.names
        return {
            "states": self.states,
            "trans": [[p, names[a], q] for (p, a, q) in sorted(self.trans)],
        }


def to_transition_system(S: EnvelopeSpace) -> TransitionSystem:
    A = S.alphabet
    n = len(S)
    trans = frozenset(
        (p, a, q) for p in range(n) for q in range(n) for a in A.letters if (a,) in S.dist[p][q]
    )
    M = TransitionSystem(A, n, trans)
    problems = M.violations()
    if problems:
        raise InvariantViolation("transition system: " + "; ".join(problems[:5]))
    return M


def _languages_from(M: TransitionSystem, source: int) -> list[UpSet]:
    A = M.alphabet
    arcs = {}
    for p, a, q in M.trans:
        if p != q:
            arcs.setdefault((p, q), []).append((a,))
    arcs = {k: UpSet(A, v) for k, v in arcs.items()}
    E = [UpSet.empty(A) for _ in range(M.states)]
    E[source] = UpSet.full(A)
    changed = True
    while changed:
        changed = False
        for (r, q), step in sorted(arcs.items()):
            if E[r].is_empty:
                continue
            new = union_meet(E[q], concat(E[r], step))
            if new != E[q]:
                E[q] = new
                changed = True
    return E


def automaton_language(M: TransitionSystem, x: int, y: int) -> UpSet:
    """Labels of all paths from ``x`` to ``y``, as a least fixpoint over final segments.

    Round-robin sweeps of ``E(q) ⊇ E(r)·↑{a : (r,a,q)}`` from ``E(x) = A*``
    until nothing changes; ascending chains of final segments are finite.
    """
    return _languages_from(M, x)[y]


def language_matrix(M: TransitionSystem) -> list[list[UpSet]]:
    return [_languages_from(M, p) for p in range(M.states)]


def path_labels(M: TransitionSystem, x: int, y: int, L: int) -> set[Word]:
    """Brute force: every label of length <= L of a path from x to y."""
    out = {()} if x == y else set()
    frontier = {((), x)}
    for _ in range(L):
        nxt = set()
        for word, p in frontier:
            for (s, a, t) in M.trans:
                if s == p:
                    nxt.add((word + (a,), t))
        frontier = nxt
        out.update(w for w, t in frontier if t == y)
    return out


# -- gluing and isometry ------------------------------------------------------


def glue(S1: EnvelopeSpace, S2: EnvelopeSpace) -> EnvelopeSpace:
    """Identify ``y`` of S1 with ``x`` of S2; cross distances pass through that point."""
    A = S1.alphabet
    n1, n2 = len(S1), len(S2)
    where = []  # (side, index) for each glued point
    where.extend((1, i) for i in range(n1))
    index2 = {}
    for j in range(n2):
        if j == S2.x:
            index2[j] = S1.y
        else:
            index2[j] = len(where)
            where.append((2, j))
    d1, d2 = S1.dist, S2.dist

    def d(a, b):
        (sa, ia), (sb, ib) = a, b
        if sa == 1 and sb == 1:
            return d1[ia][ib]
        if sa == 2 and sb == 2:
            return d2[ia][ib]
        if sa == 1:
            return concat(d1[ia][S1.y], d2[S2.x][ib])
        return concat(d2[ia][S2.x], d1[S1.y][ib])

    dist = tuple(tuple(d(a, b) for b in where) for a in where)
    x = S1.x
    points = tuple(dist[x][i] for i in range(len(where)))
    S = EnvelopeSpace(A, points, dist, x, index2[S2.y])
    problems = metric_violations(S)
    if problems:
        raise InvariantViolation("glued space: " + "; ".join(problems[:5]))
    return S


def spaces_isomorphic(S1: EnvelopeSpace, S2: EnvelopeSpace) -> bool:
    """Search for a distance-preserving bijection sending x to x and y to y."""
    n = len(S1)
    if n != len(S2):
        return False
    if (S1.x == S1.y) != (S2.x == S2.y):
        return False
    d1, d2 = S1.dist, S2.dist

    def signature(S, i):
        return (S.dist[S.x][i], S.dist[i][S.y], tuple(sorted(S.dist[i], key=lambda u: u.gens)))

    sig2: dict = {}
    for j in range(n):
        sig2.setdefault(signature(S2, j), []).append(j)
    cands = []
    for i in range(n):
        c = sig2.get(signature(S1, i))
        if not c:
            return False
        cands.append(c)

    f = {S1.x: S2.x, S1.y: S2.y}
    if any(j not in cands[i] for i, j in f.items()):
        return False
    if any(d1[i][k] != d2[f[i]][f[k]] for i in f for k in f):
        return False
    order = [i for i in range(n) if i not in f]
    used = set(f.values())

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            if all(d1[i][m] == d2[j][f[m]] and d1[m][i] == d2[f[m]][j] for m in f):
                f[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del f[i]
                used.discard(j)
        return False

    return extend(0)


# -- minimal pairs ------------------------------------------------------------


def derive_minimal_pairs(S: EnvelopeSpace) -> list[tuple[UpSet, UpSet]]:
    """Pairs ``(s, x2)`` with ``x̄2`` the largest language r such that ``s·r ⊆ F``."""
    F = S.F
    pairs = []
    for s in S.points:
        x2 = involute_upset(residual(F, s, "left"))
        pairs.append((s, x2))
    for s, x2 in pairs:
        if not contains(F, concat(s, involute_upset(x2))):
            raise InvariantViolation(f"pair ({s}, {x2}) is not above {F}")
    for P in pairs:
        for Q in pairs:
            if Q != P and contains(Q[0], P[0]) and contains(Q[1], P[1]):
                raise InvariantViolation(f"pair {P} is dominated by {Q}")
    return pairs
