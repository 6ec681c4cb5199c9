"""Finite ordered alphabets with an involution, words, and the Higman ordering.

Letters are interned as small integers; a word is a plain tuple of letter ids.
All comparisons go through the precomputed ``leq`` matrix of the alphabet.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import AlphabetError, ParseError

Word = tuple  # tuple[int, ...]; the empty tuple is the empty word

EMPTY: Word = ()


class Alphabet:
    """A finite poset of letters together with an order-preserving involution."""

    __slots__ = ("names", "index", "leq", "bar", "discrete", "_hash", "_mub")

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]], bar: Sequence[int]):
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self.bar = tuple(bar)
        n = len(self.names)
        self.discrete = all(self.leq[i][j] == (i == j) for i in range(n) for j in range(n))
        self._hash = hash((self.names, self.leq, self.bar))
        self._mub = {}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Alphabet):
            return NotImplemented
        return (self.names, self.leq, self.bar) == (other.names, other.leq, other.bar)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        pairs = [
            (self.names[i], self.names[j])
            for i in range(len(self))
            for j in range(len(self))
            if i != j and self.leq[i][j]
        ]
        return f"Alphabet({list(self.names)}, order={pairs})"

    @property
    def letters(self) -> range:
        return range(len(self.names))

    def letter_leq(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def down(self, a: int) -> tuple[int, ...]:
        """Letters below ``a`` (including ``a``)."""
        return tuple(b for b in self.letters if self.leq[b][a])

    def up(self, a: int) -> tuple[int, ...]:
        return tuple(b for b in self.letters if self.leq[a][b])

    def min_common_upper(self, a: int, b: int) -> tuple[int, ...]:
        """Minimal letters above both ``a`` and ``b``; possibly none or several."""
        key = (a, b) if a <= b else (b, a)
        res = self._mub.get(key)
        if res is None:
            common = [c for c in self.letters if self.leq[a][c] and self.leq[b][c]]
            res = tuple(c for c in common if not any(d != c and self.leq[d][c] for d in common))
            self._mub[key] = res
        return res

    @property
    def single_char(self) -> bool:
        return all(len(name) == 1 for name in self.names)

    def to_json(self) -> dict:
        order = [
            [self.names[i], self.names[j]]
            for i in self.letters
            for j in self.letters
            if i != j and self.leq[i][j]
        ]
        return {
            "letters": list(self.names),
            "order": order,
            "involution": [[self.names[i], self.names[self.bar[i]]] for i in self.letters],
        }


def validate_alphabet(
    letters: Iterable[str],
    order: Iterable[Sequence[str]] = (),
    involution: Iterable[Sequence[str]] | None = None,
) -> Alphabet:
    """Build an :class:`Alphabet`, closing ``order`` reflexively and transitively.

    An involution pair ``(p, q)`` sets ``bar(p) = q``; when ``q`` has no pair of
    its own, ``bar(q) = p`` is filled in. Unmentioned letters are fixed points.
    """
    names = list(letters)
    if not names:
        raise AlphabetError("alphabet must have at least one letter")
    if len(set(names)) != len(names):
        raise AlphabetError("duplicate letter names")
    for name in names:
        if not isinstance(name, str) or not name:
            raise AlphabetError(f"letter names must be non-empty strings, got {name!r}")
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    def lookup(name) -> int:
        try:
            return index[name]
        except (KeyError, TypeError):
            raise AlphabetError(f"unknown letter {name!r}") from None

    leq = [[i == j for j in range(n)] for i in range(n)]
    for pair in order:
        if len(pair) != 2:
            raise AlphabetError(f"order pair must have two letters, got {pair!r}")
        leq[lookup(pair[0])][lookup(pair[1])] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise AlphabetError(
                    f"order has a cycle through {names[i]!r} and {names[j]!r} (not antisymmetric)"
                )

    explicit: dict[int, int] = {}
    for pair in involution or ():
        if len(pair) != 2:
            raise AlphabetError(f"involution pair must have two letters, got {pair!r}")
        p, q = lookup(pair[0]), lookup(pair[1])
        if explicit.get(p, q) != q:
            raise AlphabetError(f"letter {names[p]!r} is mapped twice by the involution")
        explicit[p] = q
    bar = list(range(n))
    for p, q in explicit.items():
        bar[p] = q
    for p, q in explicit.items():
        if q not in explicit:
            bar[q] = p
    if sorted(bar) != list(range(n)):
        raise AlphabetError("involution is not a bijection")
    for i in range(n):
        if bar[bar[i]] != i:
            raise AlphabetError(f"involution is not involutive at {names[i]!r}")
    for i in range(n):
        for j in range(n):
            if leq[i][j] and not leq[bar[i]][bar[j]]:
                raise AlphabetError(
                    f"involution does not preserve the order: {names[i]} <= {names[j]}"
                )
    return Alphabet(names, leq, bar)


def alphabet_from_json(doc: dict) -> Alphabet:
    if not isinstance(doc, dict) or "letters" not in doc:
        raise ParseError('alphabet JSON needs a "letters" array')
    return validate_alphabet(doc["letters"], doc.get("order", ()), doc.get("involution"))


def trivial_alphabet(letters: str | Sequence[str] = "ab") -> Alphabet:
    return validate_alphabet(list(letters))


# -- words -------------------------------------------------------------------


def parse_word(alphabet: Alphabet, value) -> Word:
    """Accept a list of letter names, or a compact string for single-char alphabets."""
    if isinstance(value, str):
        if value and not alphabet.single_char:
            raise ParseError("compact word strings need single-character letter names")
        names = list(value)
    elif isinstance(value, (list, tuple)):
        names = list(value)
    else:
        raise ParseError(f"cannot read a word from {value!r}")
    try:
        return tuple(alphabet.index[c] for c in names)
    except (KeyError, TypeError):
        raise ParseError(f"word {value!r} uses letters outside the alphabet") from None


def format_word(alphabet: Alphabet, word: Word):
    if alphabet.single_char:
        return "".join(alphabet.names[c] for c in word)
    return [alphabet.names[c] for c in word]


def show_word(alphabet: Alphabet, word: Word) -> str:
    if not word:
        return "ε"
    if alphabet.single_char:
        return "".join(alphabet.names[c] for c in word)
    return "·".join(alphabet.names[c] for c in word)


@lru_cache(maxsize=1 << 20)
def higman_leq(alphabet: Alphabet, u: Word, v: Word) -> bool:
    """Subword embedding with letterwise order, by greedy leftmost matching."""
    if len(u) > len(v):
        return False
    if alphabet.discrete:
        it = iter(v)
        return all(c in it for c in u)
    leq = alphabet.leq
    j, m = 0, len(v)
    for a in u:
        row = leq[a]
        while j < m and not row[v[j]]:
            j += 1
        if j == m:
            return False
        j += 1
    return True


def higman_lt(alphabet: Alphabet, u: Word, v: Word) -> bool:
    return u != v and higman_leq(alphabet, u, v)


def involute_word(alphabet: Alphabet, u: Word) -> Word:
    bar = alphabet.bar
    return tuple(bar[c] for c in reversed(u))


def words_up_to(alphabet: Alphabet, length: int) -> Iterable[Word]:
    """All words of length at most ``length``, shortest first."""
    for k in range(length + 1):
        yield from itertools.product(alphabet.letters, repeat=k)


def words_below(alphabet: Alphabet, w: Word) -> set[Word]:
    """Every word ``u`` with ``u <= w``: subsequences of ``w`` with letters lowered."""
    downs = [alphabet.down(c) for c in w]
    out: set[Word] = set()
    for keep in itertools.product((False, True), repeat=len(w)):
        choices = [downs[i] for i in range(len(w)) if keep[i]]
        out.update(itertools.product(*choices))
    return out
