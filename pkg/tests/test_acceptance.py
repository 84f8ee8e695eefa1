"""Acceptance criteria, one test each.

Every test runs the corresponding suite with its default configuration,
adds the criterion's specific instances, enforces the runtime limit and
prints a single PASS/FAIL line.
"""

import time
from fractions import Fraction

import pytest

from virmod.quotient import NElement, gtilde_spec, q_spec, remark_parameters, remark_witness
from virmod.suites import build_suite, run_suite
from virmod.witt import lower_central_series, positive_virasoro_bracket


@pytest.fixture
def report_line(capsys):
    def emit(number, name, ok, detail, elapsed, limit):
        status = "PASS" if ok else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number} {name}: {detail} ({elapsed:.2f} s, limit {limit} s)")
    return emit


def _run(number, name, limit, report_line, extra=None):
    start = time.perf_counter()
    report = run_suite(name)
    extra_ok, extra_detail = extra() if extra else (True, "")
    elapsed = time.perf_counter() - start
    ok = report.passed and extra_ok and elapsed < limit
    detail = f"{report.cases} cases, {len(report.failures)} failures"
    if extra_detail:
        detail += f"; {extra_detail}"
    report_line(number, name, ok, detail, elapsed, limit)
    assert report.passed, report.failures[:3]
    assert extra_ok, extra_detail
    assert elapsed < limit
    return report


def test_criterion_01_core_axioms(report_line):
    _run(1, "core-axioms", 5, report_line)


def test_criterion_02_pbw(report_line):
    def counts():
        cases, _ = build_suite("pbw")
        assoc = sum(c.case_id.startswith("assoc/") for c in cases)
        trips = sum(c.case_id.startswith("roundtrip/") for c in cases)
        return assoc >= 200 and trips >= 500, f"{assoc} associativity triples, {trips} round trips"

    _run(2, "pbw", 30, report_line, counts)


def test_criterion_03_iterated_ad(report_line):
    _run(3, "lemma37", 5, report_line)


def test_criterion_04_induced_descent(report_line):
    def counts():
        cases, _ = build_suite("theorem1")
        return len(cases) == 4 * 2 * 100, "4 specs x 2 theta x 100 elements"

    _run(4, "theorem1", 120, report_line, counts)


def test_criterion_05_quotient_descent(report_line):
    _run(5, "lemma31", 60, report_line)


def test_criterion_06_grel(report_line):
    def relation():
        from virmod.quotient import grel_relations
        ok = True
        for lam4 in (1, 2):
            spec = gtilde_spec(4, 1, lam4)
            (rel,) = grel_relations(4, {1: 1, 4: lam4})
            ok &= rel == NElement(spec, {(2,): 4 * lam4, (3, 3): -1}) and bool(rel)
        return ok, "relation 4 lambda_4 l_2 - l_3^2 nonzero for lambda_4 in {1, 2}"

    _run(6, "grel", 120, report_line, relation)


def test_criterion_07_whittaker_witnesses(report_line):
    def anchors():
        case1 = q_spec(4, {3, 4}, {3: 0, 4: 1})
        case2 = q_spec(6, {1, 6}, {1: 0, 6: 1})
        ok = remark_parameters(case1).case == 1 and remark_witness(case1) == NElement.monomial(case1, (2,))
        w2 = NElement.monomial(case2, (5, 5), 3) - NElement.monomial(case2, (4,), 8)
        ok &= remark_parameters(case2).case == 2 and remark_witness(case2) == w2
        ids = {c.case_id for c in build_suite("remark39")[0]}
        ok &= {"k4/S3-4", "k6/S1-6"} <= ids
        return ok, "Case 1 (k=4, S={3,4}) and Case 2 (k=6, S={1,6}) included"

    _run(7, "remark39", 60, report_line, anchors)


def test_criterion_08_pullback_trichotomy(report_line):
    report = _run(8, "prop25", 10, report_line)
    assert any("1/2" in n and "fails" in n for n in report.notes)
    assert any(n.startswith("l_0 -> 2 ") and "validates" in n for n in report.notes)


def test_criterion_09_witt_brackets(report_line):
    def counts():
        cases, _ = build_suite("witt-prop62")
        oracle = sum(c.case_id.startswith("oracle/") for c in cases)
        shapes = {c.inputs["i"] == c.inputs["j"] for c in cases if c.case_id.startswith("prop62/")}
        return oracle >= 200 and shapes == {True, False}, f"{oracle} oracle pairs, both commutator shapes"

    _run(9, "witt-prop62", 30, report_line, counts)


def test_criterion_10_lower_central_series(report_line):
    def codims():
        series = lower_central_series(positive_virasoro_bracket, range(1, 31), 10, 30)
        cs = [t.codim for t in series]
        steps = [b - a for a, b in zip(cs[1:], cs[2:])]
        return all(s == 1 for s in steps), f"codimensions {cs}"

    _run(10, "qnilp", 5, report_line, codims)
