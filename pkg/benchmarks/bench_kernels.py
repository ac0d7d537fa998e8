"""Compiled vs pure-Python kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are the same for both backends; the script also checks that the
results agree before reporting times.
"""
import argparse
import random
import timeit
from fractions import Fraction

from lipfree import _pykernels as py
from lipfree import kernels
from lipfree.reductions import build_thm1
from lipfree.suites import random_metric, random_tree


def _cases():
    rng = random.Random("bench")
    thm = build_thm1(random_tree(rng, 4), 64)
    M, den = thm.scaled()
    D = [list(r) for r in thm.dist]
    eps = Fraction(0)
    edges = {(i, j) for i in range(60) for j in range(i) if rng.random() < 0.5}
    adj = [sum(1 << j for j in range(60) if (i, j) in edges or (j, i) in edges)
           for i in range(60)]
    m = random_metric(rng, 40)
    b = [float(rng.randint(-5, 5)) for _ in range(m.n)]
    b[0] = -sum(b[1:])
    cost = [[float(x) for x in row] for row in m.dist]
    # (compiled, fallback picked at import, plain loops on Fractions or None)
    return {
        "triangle n=64": (lambda: kernels.c.triangle_violation(M),
                          lambda: py.triangle_violation_int(M), lambda: py.triangle_violation(D)),
        "concavity n=64": (lambda: kernels.c.concavity_gap(M, 0),
                           lambda: py.concavity_gap_int(M, 0), lambda: py.concavity_gap(D, eps)),
        "max_clique n=60": (lambda: kernels.c.max_clique(adj), lambda: py.max_clique(adj), None),
        "transport n=40": (lambda: kernels.c.transport(b, cost), lambda: py.transport(b, cost), None),
    }


def _ms(f, repeat):
    return min(timeit.repeat(f, number=1, repeat=repeat)) * 1e3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.COMPILED:
        raise SystemExit("compiled extension not available; build with pip install -e .")
    print(f"{'kernel':<18}{'compiled ms':>12}{'fallback ms':>12}{'speedup':>9}{'loops ms':>11}")
    for name, (fc, fp, fl) in _cases().items():
        rc, rp = fc(), fp()
        if name.startswith("transport"):
            assert abs(rc[0] - rp[0]) < 1e-9, name
        else:
            assert rc == rp, name
        tc, tp = _ms(fc, args.repeat), _ms(fp, args.repeat)
        loops = f"{_ms(fl, 1):>11.1f}" if fl else f"{'-':>11}"
        print(f"{name:<18}{tc:>12.3f}{tp:>12.3f}{tp / tc:>8.1f}x{loops}")


if __name__ == "__main__":
    main()
