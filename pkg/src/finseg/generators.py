"""Seeded random alphabets, words, antichains and segments for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .envelope import envelope_points
from .errors import AlphabetError, DomainError
from .order import Alphabet, Word, higman_leq, validate_alphabet
from .factorization import is_irreducible
from .upsets import UpSet, concat


@dataclass(frozen=True)
class Limits:
    max_gens: int = 8
    max_len: int = 6
    max_letters: int = 4
    max_points: int = 100

    def admits(self, F: UpSet) -> bool:
        return len(F.gens) <= self.max_gens and F.max_len <= self.max_len


LETTER_NAMES = "abcdefgh"


def random_alphabet(rng: random.Random, n_letters: int | None = None, *, ordered: bool = True) -> Alphabet:
    """A random poset on 2..4 letters with a random order-preserving involution."""
    n = n_letters if n_letters is not None else rng.randint(2, 4)
    names = list(LETTER_NAMES[:n])
    for _ in range(50):
        pairs = []
        if ordered:
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.25:
                        pairs.append((names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i]))
        perm = list(range(n))
        if rng.random() < 0.5:
            rest = list(range(n))
            rng.shuffle(rest)
            while len(rest) >= 2 and rng.random() < 0.6:
                a, b = rest.pop(), rest.pop()
                perm[a], perm[b] = b, a
        inv = [(names[i], names[perm[i]]) for i in range(n)]
        try:
            return validate_alphabet(names, pairs, inv)
        except AlphabetError:
            continue
    return validate_alphabet(names)


def random_word(rng: random.Random, alphabet: Alphabet, lo: int, hi: int) -> Word:
    return tuple(rng.randrange(len(alphabet)) for _ in range(rng.randint(lo, hi)))


def random_antichain(
    rng: random.Random, alphabet: Alphabet, max_gens: int = 5, min_len: int = 1, max_len: int = 4
) -> list[Word]:
    words: list[Word] = []
    target = rng.randint(1, max_gens)
    for _ in range(10 * target):
        if len(words) >= target:
            break
        w = random_word(rng, alphabet, min_len, max_len)
        if all(not higman_leq(alphabet, w, v) and not higman_leq(alphabet, v, w) for v in words):
            words.append(w)
    return words


def random_upset(rng: random.Random, alphabet: Alphabet, max_gens: int = 5, max_len: int = 4) -> UpSet:
    return UpSet(alphabet, random_antichain(rng, alphabet, max_gens, 1, max_len))


def random_word_set(rng: random.Random, alphabet: Alphabet, max_size: int = 4, max_len: int = 3) -> list[Word]:
    """Arbitrary (not necessarily antichain) non-empty finite word set."""
    return [random_word(rng, alphabet, 0, max_len) for _ in range(rng.randint(1, max_size))]


def random_irreducible(rng: random.Random, alphabet: Alphabet, max_gens: int = 3, max_len: int = 3) -> UpSet:
    for _ in range(100):
        P = random_upset(rng, alphabet, max_gens, max_len)
        if is_irreducible(P):
            return P
    return UpSet.principal(alphabet, (rng.randrange(len(alphabet)),))


def random_product(
    rng: random.Random, alphabet: Alphabet, limits: Limits = Limits(), n_factors: int | None = None
) -> tuple[UpSet, list[UpSet]]:
    """A product of 1..4 random irreducible segments that stays within ``limits``.

    The pieces are drawn small so that the product keeps at most
    ``limits.max_gens`` generators of length at most ``limits.max_len``.
    """
    k = n_factors if n_factors is not None else rng.randint(1, 4)
    for _ in range(200):
        pieces = []
        F = UpSet.full(alphabet)
        budget_len = limits.max_len
        budget_gens = limits.max_gens
        for i in range(k):
            remaining = k - i - 1
            max_len_i = max(1, min(3, budget_len - remaining))
            max_gens_i = max(1, min(3, budget_gens))
            P = random_irreducible(rng, alphabet, max_gens_i, max_len_i)
            pieces.append(P)
            F = concat(F, P)
            budget_len -= P.max_len
            budget_gens //= max(1, len(P.gens))
        if limits.admits(F) and not F.is_full:
            return F, pieces
    return random_upset(rng, alphabet, 2, 2), []


def random_instance(rng: random.Random, kind: str, limits: Limits = Limits()) -> UpSet:
    """One non-empty test segment: ``"product"`` of irreducibles or a plain ``"antichain"``.

    Plain antichains stay on at most three letters, and draws whose envelope
    would exceed ``limits.max_points`` points are redrawn. Over four unordered
    letters a handful of length-4 generators can already give envelopes with
    thousands of points, and the envelope checks are cubic in that count.
    """
    if kind not in ("product", "antichain"):
        raise ValueError(f"unknown instance kind {kind!r}")
    while True:
        if kind == "product":
            A = random_alphabet(rng, rng.randint(2, limits.max_letters))
            F = random_product(rng, A, limits)[0]
        else:
            A = random_alphabet(rng, rng.randint(2, min(3, limits.max_letters)))
            F = random_upset(rng, A, min(4, limits.max_gens), min(4, limits.max_len))
        try:
            envelope_points(F, limits.max_points)
        except DomainError:
            continue
        return F
