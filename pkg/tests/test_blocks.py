import random

import networkx as nx
import pytest

from finseg.blocks import (
    BlockPath,
    Graph,
    biconnected_components,
    block_decomposition,
    block_languages,
    factorize_via_blocks,
    graph_of,
)
from finseg.envelope import build_envelope, to_transition_system
from finseg.errors import DomainError, InvariantViolation
from finseg.factorization import factorize, is_irreducible
from finseg.generators import random_alphabet, random_instance, random_product
from finseg.upsets import UpSet


def U(A, *words):
    return UpSet.of(A, *words)


def G(n, *edges):
    return Graph(n, frozenset((min(p, q), max(p, q)) for p, q in edges))


def test_three_path():
    bp = block_decomposition(G(3, (0, 1), (1, 2)), 0, 2)
    assert bp.blocks == (frozenset({0, 1}), frozenset({1, 2}))
    assert bp.cuts == (1,)
    assert bp.to_json() == {"blocks": [[0, 1], [1, 2]], "cuts": [1]}


def test_triangle():
    bp = block_decomposition(G(3, (0, 1), (1, 2), (0, 2)), 0, 2)
    assert bp == BlockPath((frozenset({0, 1, 2}),), ())


def test_four_path():
    bp = block_decomposition(G(4, (0, 1), (1, 2), (2, 3)), 0, 3)
    assert bp.blocks == (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}))
    assert bp.cuts == (1, 2)


def test_isolated_vertices_are_their_own_blocks():
    blocks, cuts = biconnected_components(G(2))
    assert blocks == [frozenset({0}), frozenset({1})] and cuts == set()
    assert biconnected_components(G(1)) == ([frozenset({0})], set())


def test_structure_violations():
    with pytest.raises(DomainError, match="disconnected"):
        block_decomposition(G(3, (0, 1)), 0, 2)
    # x is a cut vertex
    with pytest.raises(InvariantViolation, match="cut vertex"):
        block_decomposition(G(3, (0, 1), (0, 2)), 0, 1)
    # a star with three arms is not a path of blocks
    with pytest.raises(InvariantViolation, match="not a path"):
        block_decomposition(G(5, (0, 1), (1, 2), (1, 3), (3, 4)), 0, 2)


def _random_graph(rng):
    n = rng.randint(1, 9)
    edges = {(p, q) for p in range(n) for q in range(p + 1, n) if rng.random() < 0.3}
    return Graph(n, frozenset(edges))


@pytest.mark.parametrize("seed", range(60))
def test_biconnectivity_matches_networkx(seed):
    g = _random_graph(random.Random(seed))
    ref = nx.Graph()
    ref.add_nodes_from(range(g.vertices))
    ref.add_edges_from(g.edges)
    blocks, cuts = biconnected_components(g)
    isolated = {frozenset({v}) for v in nx.isolates(ref)}
    assert set(blocks) == {frozenset(c) for c in nx.biconnected_components(ref)} | isolated
    assert cuts == set(nx.articulation_points(ref))


def test_envelope_graphs(ab):
    S = build_envelope(U(ab, "ab"))
    g = graph_of(to_transition_system(S))
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert graph_of(to_transition_system(build_envelope(UpSet.full(ab)))) == Graph(1, frozenset())
    assert graph_of(to_transition_system(build_envelope(UpSet.empty(ab)))) == Graph(2, frozenset())


def test_block_factorization_examples(ab):
    assert factorize_via_blocks(U(ab, "ab")).factors == (U(ab, "a"), U(ab, "b"))
    assert factorize_via_blocks(U(ab, "aa", "bb")).factors == (U(ab, "aa", "bb"),)
    assert factorize_via_blocks(U(ab, "abb")).factors == (U(ab, "a"), U(ab, "b"), U(ab, "b"))


def test_block_factorization_preconditions(ab):
    for F in (UpSet.empty(ab), UpSet.full(ab)):
        with pytest.raises(DomainError):
            factorize_via_blocks(F)


def _instances(n, seed):
    rng = random.Random(seed)
    return [random_instance(rng, "product" if i % 2 else "antichain") for i in range(n)]


@pytest.mark.parametrize("F", _instances(30, 8), ids=str)
def test_blocks_agree_with_the_algebra(F):
    if F.is_full:
        return
    assert factorize_via_blocks(F).factors == factorize(F).factors
    S = build_envelope(F, check=False)
    M = to_transition_system(S)
    g = graph_of(M)
    _, cuts = biconnected_components(g)
    assert is_irreducible(F) == (not cuts)
    bp = block_decomposition(g, S.x, S.y)
    # blocks partition the edges
    seen = set()
    for block in bp.blocks:
        inside = {e for e in g.edges if e[0] in block and e[1] in block}
        assert not inside & seen
        seen |= inside
        sub, _ = M.restrict(sorted(block))
        assert sub.violations() == []
    assert seen == g.edges
    assert len(bp.cuts) == len(bp.blocks) - 1
    for i in range(len(bp.cuts)):
        assert bp.blocks[i] & bp.blocks[i + 1] == {bp.cuts[i]}
    for lang in block_languages(S, M, bp):
        assert not lang.is_empty


def test_ordered_alphabet_products():
    rng = random.Random(99)
    checked = 0
    while checked < 15:
        A = random_alphabet(rng, 3)
        if A.discrete:
            continue
        F, pieces = random_product(rng, A)
        if not pieces:
            continue
        assert factorize_via_blocks(F).factors == tuple(pieces)
        checked += 1
