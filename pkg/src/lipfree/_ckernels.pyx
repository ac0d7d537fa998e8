# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Same contracts as ``_pykernels``.

Exact kernels take int64 matrices already scaled to a common denominator;
callers guarantee |entries| < 2**61 so sums of two entries cannot overflow.
"""
import numpy as np

from libc.math cimport INFINITY
from libc.stdint cimport int64_t, uint64_t


def triangle_violation(const int64_t[:, ::1] D):
    cdef Py_ssize_t n = D.shape[0], i, j, k
    cdef int64_t dij
    for i in range(n):
        for j in range(n):
            dij = D[i, j]
            for k in range(n):
                if D[i, k] > dij + D[j, k]:
                    return (i, j, k)
    return None


def concavity_gap(const int64_t[:, ::1] D, int64_t eps):
    cdef Py_ssize_t n = D.shape[0], x, y, z
    cdef int64_t g, best = 0, dxy
    cdef bint found = False
    for y in range(n):
        for x in range(n):
            if x == y or D[y, x] < eps:
                continue
            dxy = D[y, x]
            for z in range(n):
                if z == x or z == y or D[y, z] < eps:
                    continue
                g = dxy + D[y, z] - D[x, z]
                if not found or g < best:
                    best = g
                    found = True
    return best if found else None


cdef inline int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _lowbit(uint64_t x) nogil:
    cdef int v = 0
    while not (x & 1):
        x >>= 1
        v += 1
    return v


cdef void _expand(const uint64_t* adj, int size, uint64_t cand, int* best) nogil:
    cdef int v
    while True:
        if cand == 0:
            if size > best[0]:
                best[0] = size
            return
        if size + _popcount(cand) <= best[0]:
            return
        v = _lowbit(cand)
        _expand(adj, size + 1, cand & adj[v], best)
        cand &= ~((<uint64_t>1) << v)


def max_clique(adj):
    cdef Py_ssize_t n = len(adj), v
    if n == 0:
        return 0
    if n > 64:
        raise ValueError("max_clique kernel supports at most 64 vertices")
    cdef uint64_t[::1] a = np.asarray([int(x) for x in adj], dtype=np.uint64)
    cdef int best = 0
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<uint64_t>1) << n) - 1)
    with nogil:
        _expand(&a[0], 0, full, &best)
    return best


def transport(supply, cost, double tol=1e-12):
    s = np.asarray(supply, dtype=np.float64)
    C = np.asarray(cost, dtype=np.float64)
    srcs = [i for i in range(len(s)) if s[i] > tol]
    dsts = [j for j in range(len(s)) if s[j] < -tol]
    if not srcs or not dsts:
        return 0.0, []
    cdef int p = len(srcs), q = len(dsts)
    cdef int N = p + q + 2, T = p + q + 1
    cdef double[::1] excess = np.ascontiguousarray(s[srcs])
    cdef double[::1] deficit = np.ascontiguousarray(-s[dsts])
    cdef double[:, ::1] c = np.ascontiguousarray(C[np.ix_(srcs, dsts)])
    cdef double[:, ::1] flow = np.zeros((p, q))
    cdef double[::1] pot = np.zeros(N)
    cdef double[::1] dist = np.empty(N)
    cdef int[::1] prev = np.empty(N, dtype=np.intc)
    cdef char[::1] done = np.empty(N, dtype=np.int8)
    cdef double total = 0.0, shipped = 0.0, eps, du, nd, cap, amt, value
    cdef int u, v, a, b, w
    cdef long rounds = 0, max_rounds = 50 * N * N + 1000
    for a in range(p):
        total += excess[a]
    eps = tol * (total if total > 1.0 else 1.0)
    with nogil:
        while total - shipped > eps:
            rounds += 1
            if rounds > max_rounds:
                break
            for v in range(N):
                dist[v] = INFINITY
                prev[v] = -1
                done[v] = 0
            dist[0] = 0.0
            while True:
                u = -1
                du = INFINITY
                for v in range(N):
                    if not done[v] and dist[v] < du:
                        du = dist[v]
                        u = v
                if u < 0 or u == T:
                    break
                done[u] = 1
                if u == 0:
                    for a in range(p):
                        if excess[a] > eps:
                            nd = du + pot[0] - pot[1 + a]
                            if nd < dist[1 + a] and not done[1 + a]:
                                dist[1 + a] = nd
                                prev[1 + a] = 0
                elif u <= p:
                    a = u - 1
                    for b in range(q):
                        w = p + 1 + b
                        nd = du + c[a, b] + pot[u] - pot[w]
                        if nd < dist[w] and not done[w]:
                            dist[w] = nd
                            prev[w] = u
                else:
                    b = u - p - 1
                    if deficit[b] > eps:
                        nd = du + pot[u] - pot[T]
                        if nd < dist[T]:
                            dist[T] = nd
                            prev[T] = u
                    for a in range(p):
                        if flow[a, b] > eps:
                            nd = du - c[a, b] + pot[u] - pot[1 + a]
                            if nd < dist[1 + a] and not done[1 + a]:
                                dist[1 + a] = nd
                                prev[1 + a] = u
            if dist[T] == INFINITY:
                break
            cap = dist[T]
            for v in range(N):
                pot[v] += dist[v] if dist[v] < cap else cap
            amt = INFINITY
            v = T
            while v != 0:
                u = prev[v]
                if u == 0:
                    amt = min(amt, excess[v - 1])
                elif v == T:
                    amt = min(amt, deficit[u - p - 1])
                elif u > p:
                    amt = min(amt, flow[v - 1, u - p - 1])
                v = u
            v = T
            while v != 0:
                u = prev[v]
                if u == 0:
                    excess[v - 1] -= amt
                elif v == T:
                    deficit[u - p - 1] -= amt
                elif u <= p:
                    flow[u - 1, v - p - 1] += amt
                else:
                    flow[v - 1, u - p - 1] -= amt
                v = u
            shipped += amt
    if total - shipped > eps:
        raise RuntimeError("unbalanced transport instance")
    value = 0.0
    plan = []
    for a in range(p):
        for b in range(q):
            if flow[a, b] > eps:
                value += flow[a, b] * c[a, b]
                plan.append((srcs[a], dsts[b], flow[a, b]))
    return value, plan
