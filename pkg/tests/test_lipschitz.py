from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lipfree import lip_constant, mcshane_extend, restrict
from lipfree.errors import BaseNotZero, BasePointMissing, ConstantTooSmall
from lipfree.lipschitz import LipFunction, dumps_values, parse_values
from lipfree.oracles import lipschitz_bruteforce

from conftest import metrics


def test_lip_constant_examples(path3):
    assert lip_constant(LipFunction((0, 0, 0), path3)) == 0
    assert lip_constant(LipFunction(tuple(path3[0, i] for i in range(3)), path3)) == 1
    assert lip_constant(LipFunction((0, 1, 0), path3)) == 1


def test_base_must_vanish(path3):
    with pytest.raises(BaseNotZero):
        LipFunction((1, 0, 0), path3)


def test_mcshane_examples(path3):
    lo = mcshane_extend(path3, {0: 0}, 3)
    assert lo.values == (0, 3, 6)
    assert mcshane_extend(path3, {0: 0, 1: 1}, 1, "lower")[2] == 2
    assert mcshane_extend(path3, {0: 0, 1: 1}, 1, "upper")[2] == 0


def test_mcshane_errors(path3):
    with pytest.raises(ConstantTooSmall):
        mcshane_extend(path3, {0: 0, 2: 3}, 1)
    with pytest.raises(BasePointMissing):
        mcshane_extend(path3, {1: 0}, 1)


@given(metrics(min_n=2, max_n=7), st.data())
def test_extension_and_sandwich(m, data):
    S = [0] + sorted(data.draw(st.lists(st.integers(1, m.n - 1), unique=True, max_size=m.n - 1)))
    g = {0: Fraction(0)}
    for x in S[1:]:
        g[x] = Fraction(data.draw(st.integers(-20, 20)), data.draw(st.integers(1, 4)))
    L = lipschitz_bruteforce([g[x] for x in S], restrict(m, S).dist) if len(S) > 1 else 0
    L = Fraction(L) + data.draw(st.fractions(0, 3, max_denominator=4))
    if L == 0:
        L = Fraction(1)
    lo = mcshane_extend(m, g, L, "lower")
    hi = mcshane_extend(m, g, L, "upper")
    for x in S:
        assert lo[x] == hi[x] == g[x]
    assert lip_constant(lo) <= L and lip_constant(hi) <= L
    assert all(hi[x] <= lo[x] for x in range(m.n))


@given(metrics(min_n=2, max_n=7))
def test_unit_ball_extension_from_window(m):
    # any 1-Lipschitz f on a window {0..N} extends with the same bound
    N = m.n // 2
    f = {i: m[0, i] if i % 2 else -m[0, i] for i in range(N + 1)}
    f[0] = Fraction(0)
    window = restrict(m, range(N + 1))
    if lip_constant(LipFunction(tuple(f[i] for i in range(N + 1)), window)) <= 1:
        ext = mcshane_extend(m, f, 1)
        assert lip_constant(ext) <= 1


def test_function_file_round_trip():
    vals = {0: Fraction(0), 2: Fraction(-3, 4)}
    assert parse_values(__import__("json").loads(dumps_values(vals))) == vals
    assert parse_values([0, "1/2"]) == {0: 0, 1: Fraction(1, 2)}
