"""Brute-force ground truth over length-bounded languages.

Nothing here touches the antichain algebra: languages are explicit finite
word sets, truncated at a length cap, and every operation is computed by
enumeration. Only the word order from :mod:`finseg.order` is shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .errors import DomainError
from .order import Alphabet, Word, higman_leq, words_up_to

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class BoundedLanguage:
    L: int
    words: frozenset

    def __post_init__(self):
        if any(len(w) > self.L for w in self.words):
            raise ValueError("word longer than the truncation level")

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w) -> bool:
        return w in self.words

    def cut(self, L: int) -> "BoundedLanguage":
        if L > self.L:
            raise DomainError(f"cannot extend a truncation from {self.L} to {L}")
        return BoundedLanguage(L, frozenset(w for w in self.words if len(w) <= L))


def _check_cap(alphabet: Alphabet, L: int, cap: int) -> None:
    n = len(alphabet)
    total = sum(n**k for k in range(L + 1))
    if total > cap:
        raise DomainError(f"enumerating {total} words exceeds the cap {cap}")


def truncate_gens(alphabet: Alphabet, gens: Iterable[Word], L: int, cap: int = DEFAULT_CAP) -> BoundedLanguage:
    """All words of length <= L lying above one of ``gens``."""
    _check_cap(alphabet, L, cap)
    gens = [tuple(g) for g in gens]
    return BoundedLanguage(
        L,
        frozenset(w for w in words_up_to(alphabet, L) if any(higman_leq(alphabet, g, w) for g in gens)),
    )


def truncate(F, L: int, cap: int = DEFAULT_CAP) -> BoundedLanguage:
    """Truncate an UpSet (only its generator list is read)."""
    return truncate_gens(F.alphabet, F.gens, L, cap)


def truncate_down(alphabet: Alphabet, maxgens: Iterable[Word], L: int, cap: int = DEFAULT_CAP) -> BoundedLanguage:
    """All words of length <= L lying below one of ``maxgens``."""
    _check_cap(alphabet, L, cap)
    maxgens = [tuple(m) for m in maxgens]
    return BoundedLanguage(
        L,
        frozenset(w for w in words_up_to(alphabet, L) if any(higman_leq(alphabet, w, m) for m in maxgens)),
    )


def explicit(L: int, words: Iterable[Word]) -> BoundedLanguage:
    return BoundedLanguage(L, frozenset(tuple(w) for w in words if len(w) <= L))


def minimal_words(alphabet: Alphabet, words: Iterable[Word]) -> set[Word]:
    words = set(map(tuple, words))
    return {w for w in words if not any(v != w and higman_leq(alphabet, v, w) for v in words)}


def maximal_words(alphabet: Alphabet, words: Iterable[Word]) -> set[Word]:
    words = set(map(tuple, words))
    return {w for w in words if not any(v != w and higman_leq(alphabet, w, v) for v in words)}


def is_upward_closed(alphabet: Alphabet, lang: BoundedLanguage) -> bool:
    for w in lang.words:
        for v in words_up_to(alphabet, lang.L):
            if v not in lang.words and higman_leq(alphabet, w, v):
                return False
    return True


def oracle_concat(X: BoundedLanguage, Y: BoundedLanguage) -> BoundedLanguage:
    """``XY`` truncated at the smaller level (exact when both are truncations at that level)."""
    L = min(X.L, Y.L)
    return BoundedLanguage(L, frozenset(x + y for x in X.words for y in Y.words if len(x) + len(y) <= L))


def oracle_concat_min(alphabet: Alphabet, X: BoundedLanguage, Y: BoundedLanguage) -> set[Word]:
    """Minimal elements of the full pairwise product of two finite word sets."""
    return minimal_words(alphabet, {x + y for x in X.words for y in Y.words})


def oracle_union(X: BoundedLanguage, Y: BoundedLanguage) -> BoundedLanguage:
    L = min(X.L, Y.L)
    return BoundedLanguage(L, frozenset(w for w in X.words | Y.words if len(w) <= L))


def oracle_intersection(X: BoundedLanguage, Y: BoundedLanguage) -> BoundedLanguage:
    L = min(X.L, Y.L)
    return BoundedLanguage(L, frozenset(w for w in X.words & Y.words if len(w) <= L))


def oracle_residual(
    F_trunc: BoundedLanguage, w: Word, side: Literal["left", "right"] = "right", L: int | None = None
) -> BoundedLanguage:
    """``{u : uw ∈ F}`` (right) or ``{u : wu ∈ F}`` (left), up to length ``L``.

    ``L`` defaults to the largest level the truncation supports.
    """
    w = tuple(w)
    room = F_trunc.L - len(w)
    if L is None:
        L = room
    if L < 0 or L > room:
        raise DomainError(f"truncation at {F_trunc.L} cannot answer a quotient by a length-{len(w)} word at {L}")
    if side == "right":
        out = {v[: len(v) - len(w)] for v in F_trunc.words if len(v) - len(w) <= L and v[len(v) - len(w):] == w}
    else:
        out = {v[len(w):] for v in F_trunc.words if len(v) - len(w) <= L and v[: len(w)] == w}
    return BoundedLanguage(L, frozenset(u for u in out if len(u) <= L))


def oracle_residual_set(
    alphabet: Alphabet,
    F_trunc: BoundedLanguage,
    B_words: Iterable[Word],
    side: Literal["left", "right"],
    L: int,
) -> BoundedLanguage:
    """Largest ``r`` (up to length L) with ``rB ⊆ F``, checking every listed word of B.

    The caller must list every word of B up to some length K covering B's
    generators, and supply ``F_trunc`` at level >= L + K.
    """
    B_words = [tuple(b) for b in B_words]
    K = max((len(b) for b in B_words), default=0)
    if F_trunc.L < L + K:
        raise DomainError(f"truncation at {F_trunc.L} too short for margin {L}+{K}")
    out = set()
    for u in words_up_to(alphabet, L):
        if side == "right":
            ok = all(u + b in F_trunc.words for b in B_words)
        else:
            ok = all(b + u in F_trunc.words for b in B_words)
        if ok:
            out.add(u)
    return BoundedLanguage(L, frozenset(out))


def embeddings_exist(alphabet: Alphabet, u: Word, v: Word) -> bool:
    """Exhaustive search over all strictly increasing position maps."""
    if len(u) > len(v):
        return False
    return any(
        all(alphabet.leq[u[i]][v[pos[i]]] for i in range(len(u)))
        for pos in combinations(range(len(v)), len(u))
    )
