"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``LIPFREE_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels as py

try:
    if os.environ.get("LIPFREE_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as c
except ImportError:
    c = None

COMPILED = c is not None

# largest magnitude an int64 kernel entry may have (sums of two stay in range)
INT64_LIMIT = 1 << 61


def transport(supply, cost, tol=1e-12):
    return (c or py).transport(supply, cost, tol)


def max_clique(adj):
    if c is not None and len(adj) <= 64:
        return c.max_clique(adj)
    return py.max_clique(adj)


def triangle_violation_int(M):
    return py.triangle_violation_int(M) if c is None else c.triangle_violation(M)


def concavity_gap_int(M, eps):
    return py.concavity_gap_int(M, eps) if c is None else c.concavity_gap(M, eps)
