"""Pure-Python hot loops.  Same contracts as ``_ckernels``.

The exact kernels accept any matrix of mutually comparable exact numbers
(Fractions or ints), so this module also serves inputs whose common
denominator would overflow the int64 fast path.  The ``*_int`` variants are
numpy-vectorised versions for exact int64 matrices.
"""
import numpy as np

INF = float("inf")


def triangle_violation(D):
    """First (i, j, k) in row-major order with D[i][k] > D[i][j] + D[j][k], else None."""
    n = len(D)
    for i in range(n):
        Di = D[i]
        for j in range(n):
            dij = Di[j]
            Dj = D[j]
            for k in range(n):
                if Di[k] > dij + Dj[k]:
                    return (i, j, k)
    return None


def concavity_gap(D, eps):
    """min of D[x][y] + D[y][z] - D[x][z] over distinct x, y, z with both legs >= eps."""
    n = len(D)
    best = None
    for y in range(n):
        Dy = D[y]
        legs = [x for x in range(n) if x != y and Dy[x] >= eps]
        for x in legs:
            Dx = D[x]
            dxy = Dy[x]
            for z in legs:
                if z == x:
                    continue
                g = dxy + Dy[z] - Dx[z]
                if best is None or g < best:
                    best = g
    return best


def triangle_violation_int(M):
    """Vectorised triangle_violation on an exact int64 matrix."""
    n = M.shape[0]
    for i in range(n):
        bad = M[i][None, :] > M[i][:, None] + M   # bad[j, k]: D[i][k] > D[i][j] + D[j][k]
        flat = bad.argmax()
        if bad.flat[flat]:
            return (i, *divmod(int(flat), n))
    return None


def concavity_gap_int(M, eps):
    """Vectorised concavity_gap on an exact int64 matrix; ``eps`` already scaled."""
    n = M.shape[0]
    best = None
    for y in range(n):
        legs = np.flatnonzero(M[y] >= eps)
        legs = legs[legs != y]
        if len(legs) < 2:
            continue
        row = M[y, legs]
        G = row[:, None] + row[None, :] - M[np.ix_(legs, legs)]
        np.fill_diagonal(G, np.iinfo(np.int64).max)
        g = G.min()
        if best is None or g < best:
            best = g
    return None if best is None else int(best)


def max_clique(adj):
    """Exact maximum clique size; ``adj[v]`` is the neighbour bitmask of vertex v."""
    n = len(adj)
    if n == 0:
        return 0
    best = 0

    def expand(size, cand):
        nonlocal best
        if cand == 0:
            if size > best:
                best = size
            return
        if size + bin(cand).count("1") <= best:
            return
        v = (cand & -cand).bit_length() - 1
        expand(size + 1, cand & adj[v])
        expand(size, cand & ~(1 << v))

    expand(0, (1 << n) - 1)
    return best


def transport(supply, cost, tol=1e-12):
    """Successive shortest paths with node potentials on the bipartite
    source/sink network (super source S, super sink T).

    ``supply[i] > 0`` exports, ``< 0`` imports; the totals must balance.
    Returns (total cost, [(src, dst, mass), ...]) in row-major order.
    """
    n = len(supply)
    srcs = [i for i in range(n) if supply[i] > tol]
    dsts = [j for j in range(n) if supply[j] < -tol]
    if not srcs or not dsts:
        return 0.0, []
    p, q = len(srcs), len(dsts)
    # node ids: 0 = S, 1..p sources, p+1..p+q sinks, p+q+1 = T
    N = p + q + 2
    T = N - 1
    excess = [float(supply[i]) for i in srcs]
    deficit = [float(-supply[j]) for j in dsts]
    c = [[float(cost[i][j]) for j in dsts] for i in srcs]
    flow = [[0.0] * q for _ in range(p)]
    pot = [0.0] * N
    total = sum(excess)
    eps = tol * max(1.0, total)
    shipped = 0.0
    rounds = 0
    while total - shipped > eps:
        rounds += 1
        if rounds > 50 * N * N + 1000:
            raise RuntimeError("transport did not converge")
        dist = [INF] * N
        prev = [-1] * N
        done = [False] * N
        dist[0] = 0.0
        while True:
            u = -1
            du = INF
            for v in range(N):
                if not done[v] and dist[v] < du:
                    du, u = dist[v], v
            if u < 0 or u == T:
                break
            done[u] = True
            if u == 0:
                for a in range(p):
                    if excess[a] > eps:
                        nd = du + pot[0] - pot[1 + a]
                        if nd < dist[1 + a] and not done[1 + a]:
                            dist[1 + a], prev[1 + a] = nd, 0
            elif u <= p:
                a = u - 1
                for b in range(q):
                    w = p + 1 + b
                    nd = du + c[a][b] + pot[u] - pot[w]
                    if nd < dist[w] and not done[w]:
                        dist[w], prev[w] = nd, u
            else:
                b = u - p - 1
                if deficit[b] > eps:
                    nd = du + pot[u] - pot[T]
                    if nd < dist[T]:
                        dist[T], prev[T] = nd, u
                for a in range(p):
                    if flow[a][b] > eps:
                        nd = du - c[a][b] + pot[u] - pot[1 + a]
                        if nd < dist[1 + a] and not done[1 + a]:
                            dist[1 + a], prev[1 + a] = nd, u
        if dist[T] == INF:
            raise RuntimeError("unbalanced transport instance")
        cap = dist[T]
        for v in range(N):
            pot[v] += min(dist[v], cap)
        amt = INF
        v = T
        while v != 0:
            u = prev[v]
            if u == 0:
                amt = min(amt, excess[v - 1])
            elif v == T:
                amt = min(amt, deficit[u - p - 1])
            elif u > p:  # sink -> source cancels existing flow
                amt = min(amt, flow[v - 1][u - p - 1])
            v = u
        v = T
        while v != 0:
            u = prev[v]
            if u == 0:
                excess[v - 1] -= amt
            elif v == T:
                deficit[u - p - 1] -= amt
            elif u <= p:
                flow[u - 1][v - p - 1] += amt
            else:
                flow[v - 1][u - p - 1] -= amt
            v = u
        shipped += amt
    value = 0.0
    plan = []
    for a in range(p):
        for b in range(q):
            if flow[a][b] > eps:
                value += flow[a][b] * c[a][b]
                plan.append((srcs[a], dsts[b], flow[a][b]))
    return value, plan
