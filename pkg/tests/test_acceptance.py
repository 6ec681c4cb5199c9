"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
pass/fail line per criterion.
"""

import random
import time

import pytest

from finseg.blocks import biconnected_components, block_decomposition, factorize_via_blocks, graph_of
from finseg.envelope import (
    automaton_language,
    build_envelope,
    envelope_points,
    glue,
    metric_violations,
    metricsup_violations,
    spaces_isomorphic,
    split_violations,
    to_transition_system,
)
from finseg.errors import DomainError
from finseg.factorization import (
    Factorization,
    all_recursion_results,
    equidivisibility_witness,
    factorize,
    is_irreducible,
    prefix_suffix_audit,
)
from finseg.generators import random_alphabet, random_instance, random_product, random_upset, random_word_set
from finseg.macneille import closure, concat_down, is_closed, lower_cone, upper_cone
from finseg.oracle import (
    BoundedLanguage,
    explicit,
    maximal_words,
    oracle_concat,
    oracle_concat_min,
    oracle_residual_set,
    truncate,
)
from finseg.order import higman_leq, involute_word, trivial_alphabet, words_up_to
from finseg.selfcheck import selfcheck
from finseg.upsets import UpSet, concat, contains, graduation, minimize, union_meet

L = 6
N_PRODUCTS = 200
N_ANTICHAINS = 200

_instances: list[UpSet] = []
_envelopes: dict[UpSet, object] = {}


def instances() -> list[UpSet]:
    """200 products of 1–4 irreducibles and 200 plain antichains, fixed by seed."""
    if not _instances:
        for i in range(N_PRODUCTS):
            _instances.append(random_instance(random.Random(f"acceptance/product/{i}"), "product"))
        for i in range(N_ANTICHAINS):
            _instances.append(random_instance(random.Random(f"acceptance/antichain/{i}"), "antichain"))
    return _instances


def envelope(F: UpSet):
    if F not in _envelopes:
        _envelopes[F] = build_envelope(F, check=False)
    return _envelopes[F]


def product(A, pieces) -> UpSet:
    out = UpSet.full(A)
    for p in pieces:
        out = concat(out, p)
    return out


@pytest.mark.criterion(1, "unique factorization")
def test_criterion_1_unique_factorization():
    start = time.perf_counter()
    Fs = instances()
    assert len(Fs) == N_PRODUCTS + N_ANTICHAINS
    for F in Fs:
        fac = factorize(F)
        assert fac.product(F.alphabet) == F, F
        assert all(is_irreducible(f) for f in fac), F
        assert all_recursion_results(F) == {fac.factors}, F
    assert time.perf_counter() - start <= 300


@pytest.mark.criterion(2, "block/algebra agreement")
def test_criterion_2_blocks_agree():
    start = time.perf_counter()
    for F in instances():
        assert factorize_via_blocks(F).factors == factorize(F).factors, F
        S = envelope(F)
        _, cuts = biconnected_components(graph_of(to_transition_system(S)))
        assert is_irreducible(F) == (not cuts), F
    assert time.perf_counter() - start <= 600


def _oracle_distance(p: UpSet, q: UpSet, R: int) -> BoundedLanguage:
    """Words w, |w| <= R, with p·w ⊆ q and q·w̄ ⊆ p, by enumeration."""
    A = p.alphabet
    K = max(p.max_len, q.max_len)

    def left(target, source):
        return oracle_residual_set(A, truncate(target, R + K), truncate(source, K).words, "left", R).words

    fwd = left(q, p)
    back = {involute_word(A, w) for w in left(p, q)}
    return BoundedLanguage(R, frozenset(fwd & back))


@pytest.mark.criterion(3, "worked envelope of ↑ab")
def test_criterion_3_worked_envelope():
    ab = trivial_alphabet("ab")

    def up(*words):
        return UpSet.of(ab, *words)

    S = build_envelope(up("ab"))
    assert S.points == (UpSet.full(ab), up("a"), up("ab"))
    assert S.dist[0][1] == up("a") and S.dist[1][2] == up("b") and S.dist[0][2] == up("ab")
    # every entry agrees with the enumeration oracle
    for i in range(3):
        for j in range(3):
            assert truncate(S.dist[i][j], 4) == _oracle_distance(S.points[i], S.points[j], 4)
    M = to_transition_system(S)
    bp = block_decomposition(graph_of(M), S.x, S.y)
    assert len(bp.blocks) == 2
    assert factorize_via_blocks(up("ab")).factors == (up("a"), up("b"))


@pytest.mark.criterion(4, "monoid laws")
def test_criterion_4_monoid_laws():
    rng = random.Random("acceptance/monoid")
    counts = {"min": 0, "cardinality": 0, "cancellation": 0, "equidivisibility": 0}
    while min(counts.values()) < 500:
        A = random_alphabet(rng, rng.randint(2, 3))
        if counts["min"] < 500:
            X, Y = random_word_set(rng, A, 4, 3), random_word_set(rng, A, 4, 3)
            lhs = set(concat(minimize(A, X), minimize(A, Y)).gens)
            assert lhs == oracle_concat_min(A, explicit(L, X), explicit(L, Y)), (X, Y)
            counts["min"] += 1
        if counts["cardinality"] < 500:
            F, G = random_upset(rng, A, 3, 3), random_upset(rng, A, 3, 3)
            FG = concat(F, G)
            assert len(FG.gens) == len(F.gens) * len(G.gens), (F, G)
            assert truncate(FG, L) == oracle_concat(truncate(F, L), truncate(G, L)), (F, G)
            counts["cardinality"] += 1
        if counts["cancellation"] < 500:
            F, G, H = (random_upset(rng, A, 3, 3) for _ in range(3))
            if G != H:
                assert concat(F, G) != concat(F, H) and concat(G, F) != concat(H, F), (F, G, H)
                # the difference shows up in the truncations as well
                if G.max_len + F.max_len <= L and H.max_len + F.max_len <= L:
                    assert truncate(concat(F, G), L) != truncate(concat(F, H), L)
                counts["cancellation"] += 1
        if counts["equidivisibility"] < 500:
            P, pieces = random_product(rng, A, n_factors=rng.randint(2, 4))
            if len(pieces) < 2:
                continue
            i, j = rng.randint(1, len(pieces) - 1), rng.randint(1, len(pieces) - 1)
            F1, F2 = product(A, pieces[:i]), product(A, pieces[i:])
            G1, G2 = product(A, pieces[:j]), product(A, pieces[j:])
            side, W = equidivisibility_witness(F1, F2, G1, G2)
            if side == "F1-prefix":
                assert concat(F1, W) == G1 and concat(W, G2) == F2
                short, long_ = (F1, W), G1
            else:
                assert concat(G1, W) == F1 and concat(W, F2) == G2
                short, long_ = (G1, W), F1
            assert oracle_concat(truncate(short[0], L), truncate(short[1], L)) == truncate(long_, L)
            counts["equidivisibility"] += 1
    assert min(counts.values()) >= 500


@pytest.mark.criterion(5, "MacNeille cones and closed factors")
def test_criterion_5_macneille():
    rng = random.Random("acceptance/macneille")
    for _ in range(200):
        A = random_alphabet(rng, rng.randint(2, 3))
        X, Y = random_word_set(rng, A, 3, 3), random_word_set(rng, A, 3, 3)
        XY = [x + y for x in X for y in Y]
        down = lower_cone(minimize(A, XY))
        assert down == concat_down(lower_cone(minimize(A, X)), lower_cone(minimize(A, Y))), (X, Y)
        below = [w for w in words_up_to(A, L) if all(higman_leq(A, w, z) for z in XY)]
        assert set(down.maxgens) == maximal_words(A, below), (X, Y)
        up = upper_cone(A, XY)
        assert up == concat(upper_cone(A, X), upper_cone(A, Y)), (X, Y)
        above = {w for w in words_up_to(A, L) if all(higman_leq(A, z, w) for z in XY)}
        assert truncate(up, L).words == above, (X, Y)
    closed_seen = 0
    while closed_seen < 200:
        A = random_alphabet(rng, rng.randint(2, 3))
        G = random_upset(rng, A, 3, 4)
        H = random_upset(rng, A, 3, 4)
        c = closure(G)
        assert closure(c) == c
        assert contains(closure(union_meet(G, H)), c)
        if c.is_full:
            continue
        for f in factorize(c):
            assert is_closed(f), (c, f)
        closed_seen += 1


@pytest.mark.criterion(6, "metric axioms and fixpoint semantics")
def test_criterion_6_metric_semantics():
    for F in instances():
        S = envelope(F)
        problems = metric_violations(S) + metricsup_violations(S) + split_violations(S)
        assert not problems, (F, problems[:3])
        assert automaton_language(to_transition_system(S), S.x, S.y) == F, F


@pytest.mark.criterion(7, "gluing isometry")
def test_criterion_7_gluing():
    rng = random.Random("acceptance/gluing")
    checked = 0
    while checked < 100:
        A = random_alphabet(rng, rng.randint(2, 3))
        F1, F2 = random_upset(rng, A, 3, 3), random_upset(rng, A, 3, 3)
        try:
            envelope_points(concat(F1, F2), 100)
        except DomainError:
            continue
        lhs = build_envelope(concat(F1, F2), check=False)
        rhs = glue(build_envelope(F1, check=False), build_envelope(F2, check=False))
        assert spaces_isomorphic(lhs, rhs), (F1, F2)
        checked += 1


@pytest.mark.criterion(8, "boundary cases")
def test_criterion_8_boundaries():
    ab = trivial_alphabet("ab")
    full, empty = UpSet.full(ab), UpSet.empty(ab)
    S = build_envelope(full)
    assert len(S) == 1
    assert factorize(full) == Factorization(())
    S = build_envelope(empty)
    assert len(S) == 2 and S.F.is_empty
    assert graph_of(to_transition_system(S)).edges == frozenset()
    assert is_irreducible(empty)
    with pytest.raises(DomainError):
        graduation(empty)
    X, Y = UpSet.of(ab, "a", "b"), UpSet.of(ab, "aa", "bb")
    assert is_irreducible(X) and is_irreducible(Y)
    assert contains(concat(X, X), Y)


@pytest.mark.criterion(9, "prefix/suffix audit")
def test_criterion_9_prefix_suffix_audit():
    start = time.perf_counter()
    reports = [prefix_suffix_audit(trivial_alphabet(letters), 4) for letters in ("ab", "abc")]
    assert time.perf_counter() - start <= 120
    assert all(r["antichains"] > 0 for r in reports)
    # mismatches are findings for the report, not failures
    for r in reports:
        print(f"prefix/suffix audit on {r['letters']} letters: {r['antichains']} antichains, "
              f"{len(r['findings'])} findings")
    assert selfcheck(0, 0, audit_len=4)["findings"]["prefix_suffix"] == reports
