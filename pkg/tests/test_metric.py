import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipfree import metric as mc
from lipfree.errors import (Asymmetric, BasePointMissing, NonzeroDiagonal, NotSquare, SinglePoint,
                            TriangleViolation, ZeroOffDiagonal)

from conftest import metrics


def test_validate_two_point():
    m = mc.validate([[0, 1], [1, 0]])
    assert m.n == 2 and m[0, 1] == 1


@pytest.mark.parametrize("matrix, err, witness", [
    ([[0, 1], [2, 0]], Asymmetric, (0, 1)),
    ([[0, 1, 5], [1, 0, 1], [5, 1, 0]], TriangleViolation, (0, 1, 2)),
    ([[1, 1], [1, 0]], NonzeroDiagonal, (0,)),
    ([[0, 0], [0, 0]], ZeroOffDiagonal, (0, 1)),
    ([[0, -1], [-1, 0]], ZeroOffDiagonal, (0, 1)),
])
def test_validate_errors(matrix, err, witness):
    with pytest.raises(err) as info:
        mc.validate(matrix)
    assert info.value.witness == witness


def test_validate_rejects_nonsquare():
    with pytest.raises(NotSquare):
        mc.validate([[0, 1]])
    with pytest.raises(NotSquare):
        mc.validate([])


def test_validate_accepts_rational_strings():
    m = mc.validate([["0", "1/2"], ["2/4", "0"]])
    assert m[0, 1] == Fraction(1, 2)


def test_restrict(path3):
    r = mc.restrict(path3, {0, 2})
    assert r.rows() == [[0, 2], [2, 0]]
    assert mc.restrict(path3, range(3)) == path3
    assert mc.restrict(path3, [0]).n == 1
    with pytest.raises(BasePointMissing):
        mc.restrict(path3, [1, 2])


def test_min_separation():
    assert mc.min_separation(mc.validate([[0, 1], [1, 0]])) == 1
    q = Fraction(5, 2)
    assert mc.min_separation(mc.validate([[0, q, q], [q, 0, q], [q, q, 0]])) == q
    with pytest.raises(SinglePoint):
        mc.min_separation(mc.validate([[0]]))


def test_separated_set_size_examples(path3):
    assert mc.separated_set_size(path3, 3) == mc.SeparatedSet(1, True)
    eq = mc.validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert mc.separated_set_size(eq, 1).size == 3


def test_separated_set_size_is_flagged_above_threshold():
    n = mc.EXACT_SEARCH_LIMIT + 1
    m = mc.validate([[0 if i == j else 1 for j in range(n)] for i in range(n)])
    r = mc.separated_set_size(m, 1)
    assert not r.exact and r.size == n


def test_concavity_gap_examples(path3):
    assert mc.concavity_gap(path3, 0) == 0
    eq = mc.validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert mc.concavity_gap(eq, 0) == 1
    assert mc.concavity_gap(eq, 2) is None
    assert mc.concavity_gap(mc.validate([[0, 1], [1, 0]]), 0) is None


def _gap_bruteforce(m, eps):
    vals = [m[x, y] + m[y, z] - m[x, z]
            for x in range(m.n) for y in range(m.n) for z in range(m.n)
            if len({x, y, z}) == 3 and m[x, y] >= eps and m[y, z] >= eps]
    return min(vals) if vals else None


@given(metrics(min_n=1, max_n=7), st.fractions(0, 10, max_denominator=6))
def test_concavity_gap_matches_bruteforce(m, eps):
    assert mc.concavity_gap(m, eps) == _gap_bruteforce(m, eps)


@given(metrics(min_n=2, max_n=8))
def test_restrict_preserves_invariants(m):
    keep = [0] + [i for i in range(1, m.n) if i % 2]
    r = mc.restrict(m, keep)
    assert mc.validate(r.rows()) == mc.PointedMetric(r.dist)


@given(metrics(min_n=1, max_n=8), st.fractions(1, 8, max_denominator=4),
       st.fractions(1, 8, max_denominator=4))
def test_separated_antitone_and_gap_monotone(m, e1, e2):
    lo, hi = min(e1, e2), max(e1, e2)
    assert mc.separated_set_size(m, hi).size <= mc.separated_set_size(m, lo).size
    g_lo, g_hi = mc.concavity_gap(m, lo), mc.concavity_gap(m, hi)
    if g_hi is not None:
        assert g_lo is not None and g_lo <= g_hi


@given(metrics(min_n=1, max_n=8), st.fractions(1, 10, max_denominator=4))
def test_greedy_is_a_lower_bound(m, eps):
    assert mc.greedy_separated(m, eps) <= mc.exact_separated(m, eps)


@given(metrics(min_n=1, max_n=7), st.fractions(1, 10, max_denominator=3))
@settings(max_examples=50)
def test_exact_separated_matches_enumeration(m, eps):
    from itertools import combinations
    best = max(k for k in range(1, m.n + 1)
               for S in combinations(range(m.n), k)
               if all(m[i, j] >= eps for i, j in combinations(S, 2)))
    assert mc.exact_separated(m, eps) == best


def test_serialization_is_canonical_and_round_trips():
    m = mc.validate([["0", "2/4"], ["1/2", "0"]], tags=[mc.BasePoint(), mc.TreeNode((0, 1))])
    text = m.dumps()
    assert text == ('{"dist":[["0","1/2"],["1/2","0"]],"n":2,'
                    '"tags":[{"kind":"BasePoint"},{"kind":"TreeNode","seq":[0,1]}]}\n')
    assert mc.loads(text) == m
    assert mc.loads(text).dumps() == text


def test_all_tag_kinds_round_trip():
    tags = [mc.BasePoint(), mc.FarCopy(()), mc.InfinityAtom(Fraction(1, 4)),
            mc.GridAtom((2, 3), Fraction(1, 4)), mc.AmbientSample(7), None]
    back = [mc.tag_from_json(t.to_json()) if t else None for t in tags]
    assert back == tags
    json.dumps([t.to_json() for t in tags if t])
