"""Seeded cross-module property suites with a JSON pass/fail report.

Every case draws its instance from ``random.Random(f"{seed}/{suite}/{case}")``
so a report depends only on the seed and the case count, never on worker
scheduling.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .blocks import biconnected_components, factorize_via_blocks, graph_of
from .envelope import (
    automaton_language,
    build_envelope,
    glue,
    metric_violations,
    metricsup_violations,
    spaces_isomorphic,
    split_violations,
    to_transition_system,
)
from .errors import FinsegError
from .factorization import (
    all_recursion_results,
    equidivisibility_witness,
    factorize,
    is_irreducible,
    prefix_suffix_audit,
)
from .generators import Limits, random_alphabet, random_instance, random_product, random_upset, random_word_set
from .macneille import closure, concat_down, lower_cone, upper_cone
from .oracle import (
    explicit,
    maximal_words,
    oracle_concat,
    oracle_concat_min,
    oracle_intersection,
    oracle_residual,
    oracle_residual_set,
    oracle_union,
    truncate,
    truncate_gens,
)
from .order import higman_leq, trivial_alphabet, words_up_to
from .upsets import UpSet, concat, contains, graduation, intersect, minimize, quotient, residual, union_meet

ORACLE_L = 6


class CaseFailure(Exception):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _expect(cond: bool, message: str, **payload) -> None:
    if not cond:
        raise CaseFailure(message, {k: _jsonable(v) for k, v in payload.items()})


def _jsonable(v):
    if isinstance(v, UpSet):
        return {"alphabet": v.alphabet.to_json(), **v.to_json()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# -- suites -------------------------------------------------------------------


def suite_factorization(rng: random.Random) -> None:
    F = random_instance(rng, rng.choice(("product", "antichain")))
    fac = factorize(F)
    _expect(fac.product(F.alphabet) == F, "factors do not multiply back", F=F, factors=list(fac.factors))
    for f in fac:
        _expect(is_irreducible(f), "reducible factor", F=F, factor=f)
    _expect(sum(graduation(f) for f in fac) == graduation(F), "graduation not additive", F=F)
    results = all_recursion_results(F)
    _expect(results == {fac.factors}, "recursion orders disagree", F=F, results=[list(r) for r in results])


def suite_blocks(rng: random.Random) -> None:
    F = random_instance(rng, rng.choice(("product", "antichain")))
    if F.is_full:
        return
    algebraic = factorize(F)
    geometric = factorize_via_blocks(F)
    _expect(
        algebraic.factors == geometric.factors,
        "block factorization differs from the algebraic one",
        F=F,
        algebraic=list(algebraic.factors),
        blocks=list(geometric.factors),
    )
    S = build_envelope(F, check=False)
    _, cuts = biconnected_components(graph_of(to_transition_system(S)))
    _expect(is_irreducible(F) == (not cuts), "irreducibility does not match the absence of cut vertices", F=F)


def suite_oracle(rng: random.Random) -> None:
    A = random_alphabet(rng, rng.randint(2, 3))
    F = random_upset(rng, A, 3, 3)
    G = random_upset(rng, A, 3, 3)
    L = ORACLE_L
    tF, tG = truncate(F, L), truncate(G, L)
    _expect(truncate(concat(F, G), L) == oracle_concat(tF, tG), "concat vs oracle", F=F, G=G)
    _expect(truncate(intersect(F, G), L) == oracle_intersection(tF, tG), "intersect vs oracle", F=F, G=G)
    _expect(truncate(union_meet(F, G), L) == oracle_union(tF, tG), "union vs oracle", F=F, G=G)
    w = tuple(rng.randrange(len(A)) for _ in range(rng.randint(0, 2)))
    for side in ("left", "right"):
        got = truncate(quotient(F, w, side), L - len(w))
        _expect(got == oracle_residual(tF, w, side), f"{side} quotient vs oracle", F=F, w=list(w))
    words = random_word_set(rng, A, 4, 3)
    M = minimize(A, words)
    _expect(truncate(M, L) == truncate_gens(A, words, L), "minimize vs oracle", words=[list(w) for w in words])
    # residual answers up to length R need F up to R + (longest generator of G)
    R, K = 4, G.max_len
    deep = truncate(F, R + K)
    for side in ("left", "right"):
        want = oracle_residual_set(A, deep, truncate(G, K).words, side, R)
        _expect(truncate(residual(F, G, side), R) == want, f"{side} residual vs oracle", F=F, G=G)
    for u in words:
        _expect((u in F) == (u in tF), "member vs oracle", F=F, word=list(u))


def suite_monoid(rng: random.Random) -> None:
    A = random_alphabet(rng, rng.randint(2, 3))
    X = random_word_set(rng, A, 4, 3)
    Y = random_word_set(rng, A, 4, 3)
    lhs = set(concat(minimize(A, X), minimize(A, Y)).gens)
    rhs = oracle_concat_min(A, explicit(6, X), explicit(6, Y))
    _expect(lhs == rhs, "Min(XY) differs from Min(X)Min(Y)", X=[list(w) for w in X], Y=[list(w) for w in Y])
    F, G, H = (random_upset(rng, A, 3, 3) for _ in range(3))
    FG = concat(F, G)
    _expect(len(FG.gens) == len(F.gens) * len(G.gens), "|UV| != |U||V|", F=F, G=G)
    if G != H:
        _expect(concat(F, G) != concat(F, H), "left cancellation fails", F=F, G=G, H=H)
        _expect(concat(G, F) != concat(H, F), "right cancellation fails", F=F, G=G, H=H)
    P, pieces = random_product(rng, A, Limits(), rng.randint(2, 4))
    if len(pieces) >= 2:
        i = rng.randint(1, len(pieces) - 1)
        j = rng.randint(1, len(pieces) - 1)
        F1, F2 = _product(A, pieces[:i]), _product(A, pieces[i:])
        G1, G2 = _product(A, pieces[:j]), _product(A, pieces[j:])
        side, W = equidivisibility_witness(F1, F2, G1, G2)
        if side == "F1-prefix":
            ok = concat(F1, W) == G1 and concat(W, G2) == F2
        else:
            ok = concat(G1, W) == F1 and concat(W, F2) == G2
        _expect(ok, "equidivisibility witness does not verify", F1=F1, F2=F2, G1=G1, G2=G2, W=W)


def _product(A, pieces) -> UpSet:
    out = UpSet.full(A)
    for p in pieces:
        out = concat(out, p)
    return out


def suite_macneille(rng: random.Random) -> None:
    A = random_alphabet(rng, rng.randint(2, 3))
    X = random_upset(rng, A, 3, 3)
    Y = random_upset(rng, A, 3, 3)
    XY = concat(X, Y)
    got = lower_cone(XY)
    _expect(got == concat_down(lower_cone(X), lower_cone(Y)), "(XY)∇ differs from X∇Y∇", X=X, Y=Y)
    below = [w for w in words_up_to(A, XY.max_len) if all(higman_leq(A, w, g) for g in XY.gens)]
    _expect(set(got.maxgens) == maximal_words(A, below), "lower cone vs oracle", X=X, Y=Y)
    up = upper_cone(A, XY.gens)
    _expect(up == concat(upper_cone(A, X.gens), upper_cone(A, Y.gens)), "(XY)Δ differs from XΔYΔ", X=X, Y=Y)
    c = closure(X)
    _expect(contains(c, X), "closure is not extensive", X=X)
    _expect(closure(c) == c, "closure is not idempotent", X=X)
    Z = union_meet(X, Y)
    _expect(contains(closure(Z), closure(X)), "closure is not monotone", X=X, Z=Z)


def suite_metric(rng: random.Random) -> None:
    A = random_alphabet(rng, rng.randint(2, 3))
    F = random_upset(rng, A, 3, 3)
    S = build_envelope(F, check=False)
    problems = metric_violations(S) + metricsup_violations(S) + split_violations(S)
    _expect(not problems, "; ".join(problems[:3]), F=F)
    M = to_transition_system(S)
    _expect(automaton_language(M, S.x, S.y) == F, "accepted language differs from F", F=F)


def suite_gluing(rng: random.Random) -> None:
    A = random_alphabet(rng, rng.randint(2, 3))
    F1 = random_upset(rng, A, 2, 2)
    F2 = random_upset(rng, A, 2, 2)
    lhs = build_envelope(concat(F1, F2), check=False)
    rhs = glue(build_envelope(F1, check=False), build_envelope(F2, check=False))
    _expect(spaces_isomorphic(lhs, rhs), "S_{F1F2} is not isometric to the glued space", F1=F1, F2=F2)


SUITES: dict[str, Callable[[random.Random], None]] = {
    "factorization": suite_factorization,
    "blocks": suite_blocks,
    "oracle": suite_oracle,
    "monoid": suite_monoid,
    "macneille": suite_macneille,
    "metric": suite_metric,
    "gluing": suite_gluing,
}


def run_case(seed: int, suite: str, case: int) -> dict | None:
    """Run one case; ``None`` on success, else a failure record."""
    rng = random.Random(f"{seed}/{suite}/{case}")
    try:
        SUITES[suite](rng)
    except CaseFailure as exc:
        return {"case": case, "message": str(exc), "counterexample": exc.payload}
    except (FinsegError, ValueError, AssertionError) as exc:
        return {"case": case, "message": f"{type(exc).__name__}: {exc}", "counterexample": {}}
    return None


def _run_task(task: tuple[int, str, int]) -> dict | None:
    return run_case(*task)


def selfcheck(seed: int = 0, cases: int = 20, workers: int = 1, suites: list[str] | None = None,
              audit_len: int = 4) -> dict:
    names = list(SUITES) if suites is None else list(suites)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    tasks = [(seed, name, case) for name in names for case in range(cases)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        results = [_run_task(t) for t in tasks]
    report: dict = {"seed": seed, "cases": cases, "suites": {}}
    for (_, name, _), res in zip(tasks, results):
        entry = report["suites"].setdefault(name, {"passed": True, "failures": []})
        if res is not None:
            entry["passed"] = False
            entry["failures"].append(res)
    report["findings"] = {
        "prefix_suffix": [prefix_suffix_audit(trivial_alphabet("abc"[:k]), audit_len) for k in (2, 3)]
    }
    report["passed"] = all(e["passed"] for e in report["suites"].values())
    return report
