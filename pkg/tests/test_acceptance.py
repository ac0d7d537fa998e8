"""Acceptance gate: the full-preset suites, each under its time budget.

One PASS/FAIL line per criterion is printed at the end of the pytest run
(and directly when this file is run as a script).
"""
import time
from fractions import Fraction

import pytest

from lipfree import suites

pytestmark = pytest.mark.acceptance

RESULTS = []


def _check(criterion, suite_ids, budget, extra=None):
    start = time.perf_counter()
    reports = [suites.run_suite(sid, "full", seed=0) for sid in suite_ids]
    elapsed = time.perf_counter() - start
    problems = []
    for rep in reports:
        if rep.failures:
            problems.append(f"{rep.suite}: {len(rep.failures)} failures, first {rep.failures[0]['instance']}")
    if extra and not problems:
        problems += extra(reports)
    if elapsed >= budget:
        problems.append(f"{elapsed:.2f}s over the {budget}s budget")
    count = sum(len(r.records) for r in reports)
    line = (f"{'PASS' if not problems else 'FAIL'} criterion {criterion:>2} "
            f"{'+'.join(suite_ids)}: {count} instances, {elapsed:.2f}s / {budget}s")
    if problems:
        line += " :: " + "; ".join(problems)
    RESULTS.append(line)
    assert not problems, line


def _expect(cond, message):
    return [] if cond else [message]


def _sequence_count(reports):
    return _expect(len(reports[0].records) == 121, "sample is not all sequences of length <= 4")


def _concavity_nontrivial(reports):
    gaps = [r["data"]["gap"] for r in reports[0].records]
    return _expect(all(g > 0 for g in gaps), "nonpositive concavity gap")


def _trees_nontrivial(reports):
    nodes = [r["data"]["tree_nodes"] for r in reports[0].records]
    far = [r["data"]["far_copies"] for r in reports[0].records]
    bound = [r["data"]["max_entry"] for r in reports[1].records]
    return (_expect(max(nodes) > 1 and min(far) > 0, "trees do not exercise both branches")
            + _expect(max(bound) == Fraction(5, 2), "far distance never attained"))


def _branch_nontrivial(reports):
    data = [r["data"] for r in reports[0].records]
    return (_expect(all(d["pairs"] == 15 for d in data), "a chain of length 6 was not fully checked")
            + _expect(sum(d["matrix_pairs"] > 0 for d in data) >= len(data) // 2,
                      "too few chains fit inside the truncated matrix"))


def _max_below(key, tol):
    def check(reports):
        worst = reports[0].summary()[key]
        return _expect(worst <= tol, f"{key} = {worst:.3g} exceeds {tol}")
    return check


def _compactness_shape(reports):
    recs = [r["data"] for r in reports[0].records]
    flat = [d for d in recs if d["p_member"]]
    rows = [d for d in recs if not d["p_member"]]
    problems = _expect(flat and rows, "missing one of the two SetSpec families")
    for d in flat:
        for eps in ("eps=1/4", "eps=1/8"):
            problems += _expect(len(set(d[eps])) == 1, f"{eps} not constant for {d['E']}")
    for d in rows:
        s = d["sizes"]
        problems += _expect(all(a < b for a, b in zip(s, s[1:])), f"no growth for {d['E']}")
    return problems


CRITERIA = [
    (1, ("rho-form",), 1, _sequence_count),
    (2, ("concavity-rho",), 5, None),
    (3, ("order-lemma",), 1, None),
    (4, ("separation", "boundedness"), 10, _trees_nontrivial),
    (5, ("concavity-delta",), 30, _concavity_nontrivial),
    (6, ("branch-embed",), 5, _branch_nontrivial),
    (7, ("duality",), 60, _max_below("max_gap", 1e-7)),
    (8, ("oracle",), 60, _max_below("max_err", 1e-9)),
    (9, ("delta-isometry",), 30, _max_below("max_err", 1e-9)),
    (10, ("locality",), 10, _max_below("max_err", 1e-9)),
    (11, ("mcshane",), 10, None),
    (12, ("compactness",), 10, _compactness_shape),
    (13, ("monotone-truncation",), 5, None),
]


@pytest.mark.parametrize("criterion,suite_ids,budget,extra", CRITERIA,
                         ids=[f"c{c[0]:02d}-{c[1][0]}" for c in CRITERIA])
def test_criterion(criterion, suite_ids, budget, extra):
    _check(criterion, suite_ids, budget, extra)


if __name__ == "__main__":
    for c in CRITERIA:
        try:
            _check(*c)
        except AssertionError:
            pass
    print("\n".join(RESULTS))
