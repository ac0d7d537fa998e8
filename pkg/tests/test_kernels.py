"""Compiled kernels agree with the pure-Python fallback."""
import random
from fractions import Fraction

import numpy as np
import pytest

from lipfree import _pykernels as py
from lipfree import kernels, metric as mc
from lipfree.suites import random_metric

needs_c = pytest.mark.skipif(not kernels.COMPILED, reason="compiled extension not built")


@needs_c
@pytest.mark.parametrize("seed", range(30))
def test_exact_kernels_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    D = [[Fraction(0) if i == j else Fraction(rng.randint(1, 9), rng.randint(1, 4))
          for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            D[i][j] = D[j][i]
    m = mc.PointedMetric(tuple(map(tuple, D)))
    M, den = m.scaled()
    assert kernels.c.triangle_violation(M) == py.triangle_violation(D)
    for eps in (Fraction(0), Fraction(1, 2), Fraction(2)):
        g = kernels.c.concavity_gap(M, -((-eps.numerator * den) // eps.denominator))
        want = py.concavity_gap(D, eps)
        assert (g is None and want is None) or Fraction(int(g), den) == want
    adj = [sum(1 << j for j in range(n) if j != i and D[i][j] >= 2) for i in range(n)]
    assert kernels.c.max_clique(adj) == py.max_clique(adj)


@needs_c
@pytest.mark.parametrize("seed", range(30))
def test_transport_agrees(seed):
    rng = random.Random(seed)
    m = random_metric(rng, rng.randint(2, 10))
    b = [rng.randint(-5, 5) for _ in range(m.n)]
    b[0] = -sum(b[1:])
    cost = [[float(x) for x in row] for row in m.dist]
    vc, pc = kernels.c.transport([float(x) for x in b], cost)
    vp, pp = py.transport([float(x) for x in b], cost)
    assert vc == pytest.approx(vp, abs=1e-9)
    assert pc == pp


def test_scaled_falls_back_when_too_large():
    big = Fraction(2 ** 62)
    m = mc.validate([[0, big], [big, 0]])
    assert m.scaled() is None
    assert mc.concavity_gap(m, 0) is None


def test_pure_fallback_selected_by_env(monkeypatch):
    import importlib
    monkeypatch.setenv("LIPFREE_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert not mod.COMPILED
        assert mod.transport([1.0, -1.0], [[0, 2], [2, 0]])[0] == pytest.approx(2)
    finally:
        monkeypatch.delenv("LIPFREE_PURE")
        importlib.reload(kernels)


@pytest.mark.parametrize("seed", range(30))
def test_numpy_fallback_matches_exact_loops(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    D = [[0 if i == j else rng.randint(1, 9) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            D[i][j] = D[j][i]
    M = np.array(D, dtype=np.int64)
    assert py.triangle_violation_int(M) == py.triangle_violation(D)
    for eps in (0, 3, 8):
        assert py.concavity_gap_int(M, eps) == py.concavity_gap(D, eps)
