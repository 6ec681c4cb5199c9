"""Cone operators and the MacNeille closure on finitely generated final segments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .order import Alphabet, Word, format_word, higman_leq, show_word, words_below
from .upsets import UpSet, intersect, union_meet


@dataclass(frozen=True)
class DownSetMax:
    """A finite lower set, stored as its antichain of maximal words."""

    alphabet: Alphabet
    maxgens: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "maxgens", _maximal(self.alphabet, self.maxgens))

    def __contains__(self, w: Word) -> bool:
        return any(higman_leq(self.alphabet, w, m) for m in self.maxgens)

    def __repr__(self) -> str:
        return "↓{" + ",".join(show_word(self.alphabet, m) for m in self.maxgens) + "}"

    def to_json(self) -> dict:
        return {"maxgens": [format_word(self.alphabet, m) for m in self.maxgens]}


def _maximal(alphabet: Alphabet, words: Iterable[Word]) -> tuple[Word, ...]:
    kept: list[Word] = []
    for w in sorted({tuple(w) for w in words}, key=lambda w: (-len(w), w)):
        if any(higman_leq(alphabet, w, k) for k in kept):
            continue
        if not alphabet.discrete:
            kept = [k for k in kept if len(k) > len(w) or not higman_leq(alphabet, k, w)]
        kept.append(w)
    return tuple(sorted(kept, key=lambda w: (len(w), w)))


def lower_cone(F: UpSet) -> DownSetMax:
    """Maximal words lying below every generator of ``F``."""
    if F.is_empty:
        raise DomainError("lower cone of the empty segment is all of A* (not finitely representable)")
    A = F.alphabet
    g0, rest = F.gens[0], F.gens[1:]
    common = [w for w in words_below(A, g0) if all(higman_leq(A, w, g) for g in rest)]
    return DownSetMax(A, tuple(common))


def concat_down(D1: DownSetMax, D2: DownSetMax) -> DownSetMax:
    return DownSetMax(D1.alphabet, tuple(x + y for x in D1.maxgens for y in D2.maxgens))


def upper_cone(alphabet: Alphabet, words: Iterable[Word]) -> UpSet:
    """Intersection of the principal segments ``↑w``; the empty family gives A*."""
    out = UpSet.full(alphabet)
    for w in words:
        out = intersect(out, UpSet.principal(alphabet, w))
    return out


def closure(F: UpSet) -> UpSet:
    if F.is_empty:
        return F
    return upper_cone(F.alphabet, lower_cone(F).maxgens)


def is_closed(F: UpSet) -> bool:
    return closure(F) == F


def closed_union(Fs: Iterable[UpSet], alphabet: Alphabet | None = None) -> UpSet:
    Fs = list(Fs)
    if not Fs:
        if alphabet is None:
            raise DomainError("closed union of an empty family needs an alphabet")
        return UpSet.empty(alphabet)
    acc = Fs[0]
    for G in Fs[1:]:
        acc = union_meet(acc, G)
    return closure(acc)
