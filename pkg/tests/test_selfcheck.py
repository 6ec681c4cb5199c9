import json

import pytest

import finseg.selfcheck as sc
from finseg.factorization import Factorization
from finseg.selfcheck import SUITES, run_case, selfcheck


def test_seed_42_passes():
    report = selfcheck(42, 50)
    assert report["passed"]
    assert set(report["suites"]) == set(SUITES)
    assert all(entry["failures"] == [] for entry in report["suites"].values())
    audits = report["findings"]["prefix_suffix"]
    assert [a["letters"] for a in audits] == [2, 3]
    assert all(a["findings"] == [] for a in audits)


def test_report_is_deterministic():
    first = json.dumps(selfcheck(5, 4, audit_len=3), sort_keys=True)
    second = json.dumps(selfcheck(5, 4, audit_len=3), sort_keys=True)
    assert first == second


def test_cases_are_independent_of_order():
    assert run_case(9, "factorization", 3) == run_case(9, "factorization", 3)
    one = selfcheck(9, 3, suites=["monoid"], audit_len=3)
    both = selfcheck(9, 3, suites=["oracle", "monoid"], audit_len=3)
    assert one["suites"]["monoid"] == both["suites"]["monoid"]


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        selfcheck(0, 1, suites=["nope"])


def test_injected_fault_is_reported(monkeypatch):
    real = sc.factorize

    def drop_last(F, *args, **kwargs):
        fac = real(F, *args, **kwargs)
        return Factorization(fac.factors[:-1])

    monkeypatch.setattr(sc, "factorize", drop_last)
    report = selfcheck(1, 6, suites=["factorization"], audit_len=3)
    assert not report["passed"]
    failures = report["suites"]["factorization"]["failures"]
    assert failures
    first = failures[0]
    assert first["message"] == "factors do not multiply back"
    F = first["counterexample"]["F"]
    assert F["gens"] and "alphabet" in F


def test_injected_fault_in_the_block_route(monkeypatch):
    def everything_irreducible(F, max_points=None):
        return Factorization((F,))

    monkeypatch.setattr(sc, "factorize_via_blocks", everything_irreducible)
    report = selfcheck(2, 10, suites=["blocks"], audit_len=3)
    assert not report["passed"]
    payload = report["suites"]["blocks"]["failures"][0]["counterexample"]
    assert set(payload) == {"F", "algebraic", "blocks"}


def test_crashing_case_is_a_failure_not_an_exception(monkeypatch):
    from finseg.errors import InvariantViolation

    def boom(rng):
        raise InvariantViolation("synthetic")

    monkeypatch.setitem(SUITES, "factorization", boom)
    record = run_case(0, "factorization", 0)
    assert record["message"] == "InvariantViolation: synthetic"
