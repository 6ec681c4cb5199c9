"""Irreducibility and unique factorization of non-empty final segments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import DomainError, InvariantViolation
from .order import higman_leq, words_up_to
from .upsets import UpSet, concat, contains, graduation, residual


@dataclass(frozen=True)
class Factorization:
    """Irreducible factors, left to right. Empty for A*."""

    factors: tuple[UpSet, ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def product(self, alphabet) -> UpSet:
        out = UpSet.full(alphabet)
        for f in self.factors:
            out = concat(out, f)
        return out

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors]}


def _divides_into(gens: Sequence, U: Sequence, V: Sequence) -> bool:
    target = set(gens)
    prods = {u + v for u in U for v in V}
    return len(prods) == len(target) and prods == target


def two_factor_splits(F: UpSet) -> list[tuple[UpSet, UpSet]]:
    """Every ``(F1, F2)`` with ``F1·F2 = F`` and neither factor equal to A*.

    Each such split has ``Min(F) = Min(F1)·Min(F2)`` with the product map a
    bijection, so the shortest generator splits as ``u0·v0`` with ``u0`` in
    ``Min(F1)`` and ``v0`` in ``Min(F2)``; the rest is a subset search.
    """
    if F.is_empty or F.is_full:
        raise DomainError("two-factor splits need a segment other than ∅ and A*")
    A = F.alphabet
    gens = F.gens
    gen_set = set(gens)
    n = len(gens)
    z0 = gens[0]
    found: dict[tuple, tuple[UpSet, UpSet]] = {}
    for k in range(1, len(z0)):
        u0, v0 = z0[:k], z0[k:]
        u_cand = sorted({z[: len(z) - len(v0)] for z in gens if len(z) > len(v0) and z[len(z) - len(v0):] == v0} - {u0})
        v_cand = sorted({z[len(u0):] for z in gens if len(z) > len(u0) and z[: len(u0)] == u0} - {v0})
        for size_u in range(1, n + 1):
            if n % size_u:
                continue
            size_v = n // size_u
            if size_u - 1 > len(u_cand) or size_v - 1 > len(v_cand):
                continue
            for extra_u in itertools.combinations(u_cand, size_u - 1):
                U = (u0,) + extra_u
                # V must keep every u·v inside the generators
                v_ok = [v for v in v_cand if all(u + v in gen_set for u in U)]
                if size_v - 1 > len(v_ok):
                    continue
                if any(u + v0 not in gen_set for u in U):
                    continue
                for extra_v in itertools.combinations(v_ok, size_v - 1):
                    V = (v0,) + extra_v
                    if _divides_into(gens, U, V):
                        F1 = UpSet(A, U)
                        F2 = UpSet(A, V)
                        found[(F1.gens, F2.gens)] = (F1, F2)
    splits = sorted(found.values(), key=lambda p: (graduation(p[0]), p[0], p[1]))
    for F1, F2 in splits:
        if concat(F1, F2) != F:
            raise InvariantViolation(f"split {F1}·{F2} does not reproduce {F}")
    return splits


def is_irreducible(F: UpSet) -> bool:
    if F.is_empty:
        return True
    if F.is_full:
        return False
    return not two_factor_splits(F)


SplitChooser = Callable[[list], int]


def _leftmost(splits: list) -> int:
    # splits are sorted by the graduation of the left factor, so index 0 peels
    # off the shortest left factor, which is the first irreducible
    return 0


def factorize(F: UpSet, choose: SplitChooser = _leftmost) -> Factorization:
    """Unique decomposition into irreducibles; ``choose`` picks which split to recurse on."""
    if F.is_empty:
        raise DomainError("empty segment has no factorization in the free monoid of non-empty segments")
    return Factorization(tuple(_factorize(F, choose)))


def _factorize(F: UpSet, choose: SplitChooser) -> list[UpSet]:
    if F.is_full:
        return []
    splits = two_factor_splits(F)
    if not splits:
        return [F]
    F1, F2 = splits[choose(splits)]
    return _factorize(F1, choose) + _factorize(F2, choose)


def all_recursion_results(F: UpSet) -> set[tuple[UpSet, ...]]:
    """Factor sequences reachable by every possible choice of split at every level."""
    memo: dict[UpSet, set] = {}

    def go(G: UpSet) -> set:
        if G in memo:
            return memo[G]
        if G.is_full:
            res = {()}
        else:
            splits = two_factor_splits(G)
            if not splits:
                res = {(G,)}
            else:
                res = {a + b for G1, G2 in splits for a in go(G1) for b in go(G2)}
        memo[G] = res
        return res

    if F.is_empty:
        raise DomainError("empty segment")
    return go(F)


# -- equidivisibility and the decomposition property -------------------------


def equidivisibility_witness(F1: UpSet, F2: UpSet, G1: UpSet, G2: UpSet) -> tuple[str, UpSet]:
    """Given ``F1·F2 = G1·G2``, return ``(side, W)``.

    ``"F1-prefix"``: ``G1 = F1·W`` and ``F2 = W·G2``.
    ``"G1-prefix"``: ``F1 = G1·W`` and ``G2 = W·F2``.
    """
    for X in (F1, F2, G1, G2):
        if X.is_empty:
            raise DomainError("equidivisibility is stated for non-empty segments")
    if concat(F1, F2) != concat(G1, G2):
        raise DomainError(f"products differ: {F1}·{F2} vs {G1}·{G2}")
    attempts = [("F1-prefix", F1, F2, G1, G2), ("G1-prefix", G1, G2, F1, F2)]
    if graduation(F1) > graduation(G1):
        attempts.reverse()
    for side, short1, short2, long1, long2 in attempts:
        W = residual(long1, short1, "left")
        if not W.is_empty and concat(short1, W) == long1 and concat(W, long2) == short2:
            return side, W
    raise InvariantViolation(f"no equidivisibility witness for {F1}·{F2} = {G1}·{G2}")


@dataclass
class SummabilityOutcome:
    candidate: tuple[UpSet, UpSet]
    minimal: bool
    witness_12: UpSet | None = None  # witness U12 with U1·U12 ⊆ V1, V1 ⊆ U1, U2 = U12·V2
    witness_21: UpSet | None = None  # witness U21 with U21·U2 ⊆ V2, V2 ⊆ U2, U1 = V1·U21
    notes: list[str] = field(default_factory=list)

    @property
    def convex(self) -> bool:
        return self.witness_12 is not None or self.witness_21 is not None

    def to_json(self) -> dict:
        return {
            "candidate": [self.candidate[0].to_json(), self.candidate[1].to_json()],
            "minimal": self.minimal,
            "witness_12": None if self.witness_12 is None else self.witness_12.to_json(),
            "witness_21": None if self.witness_21 is None else self.witness_21.to_json(),
            "notes": list(self.notes),
        }


def _strictly_larger(P: tuple[UpSet, UpSet], Q: tuple[UpSet, UpSet]) -> bool:
    """P ⊋ Q componentwise (as sets), i.e. P strictly below Q in the reversed order."""
    return contains(P[0], Q[0]) and contains(P[1], Q[1]) and P != Q


def verify_summable(V1: UpSet, V2: UpSet, candidates: Sequence[tuple[UpSet, UpSet]]) -> list[SummabilityOutcome]:
    """Check the convexity conditions for candidate pairs sitting inside ``V1·V2``."""
    if V1.is_empty or V2.is_empty:
        raise DomainError("V1 and V2 must be non-empty")
    V = concat(V1, V2)
    for U1, U2 in candidates:
        if U1.is_empty or U2.is_empty or not contains(V, concat(U1, U2)):
            raise DomainError(f"candidate ({U1}, {U2}) is not a non-empty pair inside {V}")
    out = []
    for cand in candidates:
        U1, U2 = cand
        minimal = not any(_strictly_larger(other, cand) for other in candidates)
        res = SummabilityOutcome(candidate=cand, minimal=minimal)
        if not minimal:
            res.notes.append("not minimal among candidates")
            out.append(res)
            continue
        U12 = residual(U2, V2, "right")
        if (
            not U12.is_empty
            and concat(U12, V2) == U2
            and contains(V1, concat(U1, U12))
            and contains(U1, V1)
        ):
            res.witness_12 = U12
        U21 = residual(U1, V1, "left")
        if (
            not U21.is_empty
            and concat(V1, U21) == U1
            and contains(V2, concat(U21, U2))
            and contains(U2, V2)
        ):
            res.witness_21 = U21
        if not res.convex:
            res.notes.append("no witness for either condition")
        out.append(res)
    return out


def maximize_pair(V: UpSet, U1: UpSet, U2: UpSet) -> tuple[UpSet, UpSet]:
    """Enlarge ``(U1, U2)`` with ``U1·U2 ⊆ V`` to a pair minimal above ``V``.

    Alternates the two residuals; at a fixed point neither side can grow, which
    is exactly minimality for the product order.
    """
    while True:
        new1 = residual(V, U2, "right")
        new2 = residual(V, new1, "left")
        if new1 == U1 and new2 == U2:
            return U1, U2
        U1, U2 = new1, new2


# -- the two-generator prefix/suffix criterion --------------------------------


def prefix_suffix_audit(alphabet, max_len: int = 4) -> dict:
    """Compare irreducibility of every ``↑{u,v}`` with the prefix/suffix criterion.

    The criterion says ``↑{u,v}`` is irreducible iff ``u`` and ``v`` share
    neither a first nor a last letter. Mismatches are returned, not raised.
    """
    words = [w for w in words_up_to(alphabet, max_len) if w]
    checked = 0
    findings = []
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            if higman_leq(alphabet, u, v) or higman_leq(alphabet, v, u):
                continue
            checked += 1
            predicted = u[0] != v[0] and u[-1] != v[-1]
            F = UpSet(alphabet, (u, v))
            actual = is_irreducible(F)
            if actual != predicted:
                findings.append({"upset": F.to_json(), "irreducible": actual, "criterion": predicted})
    return {"letters": len(alphabet), "max_len": max_len, "antichains": checked, "findings": findings}
