"""Final segments of A* stored as their finite antichain of minimal words.

Set order is the usual inclusion; the monoid order used elsewhere is its
reverse, so "F <= G" in that order is ``contains(F, G)`` here.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Literal

from .errors import DomainError, InvariantViolation, ParseError
from .order import Alphabet, Word, format_word, higman_leq, involute_word, parse_word, show_word

Side = Literal["left", "right"]


def _key(w: Word):
    return (len(w), w)


class UpSet:
    """An upward-closed language given by its canonical antichain ``gens``.

    ``gens == ()`` is the empty segment and ``gens == ((),)`` is all of A*.
    Equality and hashing are structural on ``gens`` and the alphabet.
    """

    __slots__ = ("alphabet", "gens", "_hash")

    def __init__(self, alphabet: Alphabet, gens: Iterable[Word] = (), *, canonical: bool = False):
        self.alphabet = alphabet
        if canonical:
            self.gens = tuple(gens)
        else:
            self.gens = _minimal(alphabet, gens)
        self._hash = hash((hash(alphabet), self.gens))

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "UpSet":
        return cls(alphabet, (), canonical=True)

    @classmethod
    def full(cls, alphabet: Alphabet) -> "UpSet":
        return cls(alphabet, ((),), canonical=True)

    @classmethod
    def principal(cls, alphabet: Alphabet, w: Word) -> "UpSet":
        return cls(alphabet, (tuple(w),), canonical=True)

    @classmethod
    def of(cls, alphabet: Alphabet, *words) -> "UpSet":
        """Convenience constructor from word literals: ``UpSet.of(A, "ab", "ba")``."""
        return cls(alphabet, [parse_word(alphabet, w) for w in words])

    @property
    def is_empty(self) -> bool:
        return not self.gens

    @property
    def is_full(self) -> bool:
        return self.gens == ((),)

    @property
    def max_len(self) -> int:
        return max((len(g) for g in self.gens), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UpSet):
            return NotImplemented
        return self.gens == other.gens and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "UpSet") -> bool:
        # arbitrary but total; used only for deterministic sorting
        return (len(self.gens), [_key(g) for g in self.gens]) < (
            len(other.gens),
            [_key(g) for g in other.gens],
        )

    def __repr__(self) -> str:
        if self.is_empty:
            return "∅"
        if self.is_full:
            return "A*"
        return "↑{" + ",".join(show_word(self.alphabet, g) for g in self.gens) + "}"

    def __contains__(self, w: Word) -> bool:
        return member(self, w)

    def __mul__(self, other: "UpSet") -> "UpSet":
        return concat(self, other)

    def __and__(self, other: "UpSet") -> "UpSet":
        return intersect(self, other)

    def __or__(self, other: "UpSet") -> "UpSet":
        return union_meet(self, other)

    def to_json(self) -> dict:
        return {"gens": [format_word(self.alphabet, g) for g in self.gens]}


def upset_from_json(alphabet: Alphabet, doc) -> UpSet:
    """Read ``{"gens": [...]}``; a bare list of words is also accepted."""
    if isinstance(doc, dict):
        if "gens" not in doc:
            raise ParseError('UpSet JSON needs a "gens" array')
        doc = doc["gens"]
    if not isinstance(doc, list):
        raise ParseError(f"cannot read an UpSet from {doc!r}")
    return UpSet(alphabet, [parse_word(alphabet, w) for w in doc])


def _minimal(alphabet: Alphabet, words: Iterable[Word]) -> tuple[Word, ...]:
    kept: list[Word] = []
    for w in sorted({tuple(w) for w in words}, key=_key):
        if any(higman_leq(alphabet, k, w) for k in kept):
            continue
        if not alphabet.discrete:
            # equal-length words can be comparable through the letter order
            kept = [k for k in kept if len(k) < len(w) or not higman_leq(alphabet, w, k)]
        kept.append(w)
    return tuple(kept)


def minimize(alphabet: Alphabet, words: Iterable[Word]) -> UpSet:
    return UpSet(alphabet, words)


def member(F: UpSet, w: Word) -> bool:
    A = F.alphabet
    return any(higman_leq(A, g, w) for g in F.gens)


def contains(F: UpSet, G: UpSet) -> bool:
    """True iff ``F ⊇ G`` as languages."""
    return all(member(F, g) for g in G.gens)


def concat(F: UpSet, G: UpSet) -> UpSet:
    if F.is_empty or G.is_empty:
        return UpSet.empty(F.alphabet)
    if F.is_full:
        return G
    if G.is_full:
        return F
    raw = {f + g for f in F.gens for g in G.gens}
    res = UpSet(F.alphabet, raw)
    if len(res.gens) != len(F.gens) * len(G.gens):
        raise InvariantViolation(f"product of antichains {F} and {G} is not an antichain")
    return res


def union_meet(F: UpSet, G: UpSet) -> UpSet:
    """Set union, which is the meet for reverse inclusion."""
    if F.is_empty:
        return G
    if G.is_empty:
        return F
    return UpSet(F.alphabet, F.gens + G.gens)


@lru_cache(maxsize=1 << 18)
def _mub(alphabet: Alphabet, u: Word, v: Word) -> frozenset:
    if not u:
        return frozenset((v,))
    if not v:
        return frozenset((u,))
    cands = set()
    a, b = u[0], v[0]
    cands.update((a,) + w for w in _mub(alphabet, u[1:], v))
    cands.update((b,) + w for w in _mub(alphabet, u, v[1:]))
    for c in alphabet.min_common_upper(a, b):
        cands.update((c,) + w for w in _mub(alphabet, u[1:], v[1:]))
    return frozenset(_minimal(alphabet, cands))


def min_upper_bounds(alphabet: Alphabet, u: Word, v: Word) -> list[Word]:
    """Minimal words above both ``u`` and ``v`` (the antichain of ↑u ∩ ↑v)."""
    return sorted(_mub(alphabet, tuple(u), tuple(v)), key=_key)


def intersect(F: UpSet, G: UpSet) -> UpSet:
    if F.is_empty or G.is_empty:
        return UpSet.empty(F.alphabet)
    if F.is_full:
        return G
    if G.is_full:
        return F
    if G.gens < F.gens:
        F, G = G, F
    return _intersect(F, G)


@lru_cache(maxsize=1 << 18)
def _intersect(F: UpSet, G: UpSet) -> UpSet:
    A = F.alphabet
    raw = set()
    for u in F.gens:
        for v in G.gens:
            raw.update(_mub(A, u, v))
    return UpSet(A, raw)


def _quotient_letter(F: UpSet, c: int, side: Side) -> UpSet:
    leq = F.alphabet.leq
    raw = list(F.gens)
    if side == "right":
        raw.extend(z[:-1] for z in F.gens if z and leq[z[-1]][c])
    else:
        raw.extend(z[1:] for z in F.gens if z and leq[z[0]][c])
    return UpSet(F.alphabet, raw)


@lru_cache(maxsize=1 << 18)
def quotient(F: UpSet, w: Word, side: Side = "right") -> UpSet:
    """``{u : uw ∈ F}`` for the right side, ``{u : wu ∈ F}`` for the left."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    letters = reversed(w) if side == "right" else iter(w)
    for c in letters:
        if F.is_empty or F.is_full:
            break
        F = _quotient_letter(F, c, side)
    return F


def residual(F: UpSet, B: UpSet, side: Side = "right") -> UpSet:
    """Largest language ``r`` with ``rB ⊆ F`` (right) or ``Br ⊆ F`` (left)."""
    res = UpSet.full(F.alphabet)
    for b in B.gens:
        res = intersect(res, quotient(F, b, side))
        if res.is_empty:
            break
    return res


def graduation(F: UpSet) -> int:
    if F.is_empty:
        raise DomainError("graduation undefined on the empty segment")
    return len(F.gens[0])


def involute_upset(F: UpSet) -> UpSet:
    A = F.alphabet
    return UpSet(A, [involute_word(A, g) for g in F.gens])
