import ast
import inspect

import pytest

import finseg.oracle as oracle_mod
from finseg.errors import DomainError
from finseg.oracle import (
    BoundedLanguage,
    explicit,
    is_upward_closed,
    oracle_concat_min,
    oracle_residual,
    truncate,
    truncate_gens,
)
from finseg.order import parse_word, trivial_alphabet, words_up_to
from finseg.upsets import UpSet


def words(A, *texts):
    return {parse_word(A, t) for t in texts}


def test_truncate_examples(ab):
    assert truncate(UpSet.of(ab, "ab"), 3).words == words(ab, "ab", "aab", "aba", "abb", "bab")
    assert truncate(UpSet.full(ab), 1).words == words(ab, "", "a", "b")
    assert truncate(UpSet.empty(ab), 4).words == frozenset()


def test_truncate_checks_every_short_word(ab):
    # 15 words of length <= 3 over two letters; the five above are exactly those containing ab
    assert len(list(words_up_to(ab, 3))) == 15


def test_truncate_cap(ab):
    with pytest.raises(DomainError, match="cap"):
        truncate_gens(ab, [(0,)], 10, cap=100)


def test_concat_min_examples(ab):
    X = explicit(4, words(ab, "a"))
    Y = explicit(4, words(ab, "b"))
    assert oracle_concat_min(ab, X, Y) == words(ab, "ab")
    XY = explicit(4, words(ab, "a", "b"))
    assert oracle_concat_min(ab, XY, XY) == words(ab, "aa", "ab", "ba", "bb")
    Z = explicit(4, words(ab, "ab", "a", "bb"))
    assert oracle_concat_min(ab, Z, explicit(4, {()})) == words(ab, "a", "bb")


def test_residual_examples(ab):
    t = truncate(UpSet.of(ab, "ab"), 4)
    right = oracle_residual(t, parse_word(ab, "b"), "right")
    assert min(right.words, key=len) == parse_word(ab, "a")
    assert right.words == truncate(UpSet.of(ab, "a"), 3).words
    F = truncate(UpSet.of(ab, "ab", "ba"), 4)
    assert oracle_residual(F, (), "right").words == F.words
    assert oracle_residual(truncate(UpSet.empty(ab), 4), (0,), "left").words == frozenset()


def test_residual_margin(ab):
    t = truncate(UpSet.of(ab, "ab"), 3)
    with pytest.raises(DomainError, match="cannot answer"):
        oracle_residual(t, parse_word(ab, "ab"), "right", L=2)


def test_bounded_language_invariants(ab):
    with pytest.raises(ValueError):
        BoundedLanguage(1, frozenset({(0, 0)}))
    t = truncate(UpSet.of(ab, "a"), 3)
    assert t.cut(2) == truncate(UpSet.of(ab, "a"), 2)
    with pytest.raises(DomainError):
        t.cut(4)
    assert is_upward_closed(ab, t)
    assert not is_upward_closed(ab, explicit(2, words(ab, "a")))


def test_oracle_does_not_import_the_algebra():
    tree = ast.parse(inspect.getsource(oracle_mod))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module)
    assert imported <= {"__future__", "dataclasses", "itertools", "typing", "errors", "order"}


def test_three_letter_example():
    A = trivial_alphabet("abc")
    assert truncate(UpSet.of(A, "c"), 1).words == words(A, "c")
