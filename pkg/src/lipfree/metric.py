"""Finite pointed metric spaces on indices 0..n-1 (index 0 is the base point).

Distances are exact Fractions.  Builders attach optional provenance tags
(``TreeNode``, ``FarCopy``, ...) that never influence distances.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from . import _pykernels, kernels
from ._rational import as_fraction, fmt
from .errors import (Asymmetric, BasePointMissing, InputError, NonzeroDiagonal, NotSquare,
                     SinglePoint, TriangleViolation, ZeroOffDiagonal)

EXACT_SEARCH_LIMIT = 20


# -- tags -------------------------------------------------------------------

@dataclass(frozen=True)
class BasePoint:
    def to_json(self):
        return {"kind": "BasePoint"}


@dataclass(frozen=True)
class TreeNode:
    seq: tuple

    def to_json(self):
        return {"kind": "TreeNode", "seq": list(self.seq)}


@dataclass(frozen=True)
class FarCopy:
    seq: tuple

    def to_json(self):
        return {"kind": "FarCopy", "seq": list(self.seq)}


@dataclass(frozen=True)
class InfinityAtom:
    scale: Fraction

    def to_json(self):
        return {"kind": "InfinityAtom", "scale": fmt(self.scale)}


@dataclass(frozen=True)
class GridAtom:
    coord: tuple
    scale: Fraction

    def to_json(self):
        return {"kind": "GridAtom", "coord": list(self.coord), "scale": fmt(self.scale)}


@dataclass(frozen=True)
class AmbientSample:
    index: int

    def to_json(self):
        return {"kind": "AmbientSample", "index": self.index}


def tag_from_json(d):
    try:
        kind = d["kind"]
        if kind == "BasePoint":
            return BasePoint()
        if kind == "TreeNode":
            return TreeNode(tuple(int(e) for e in d["seq"]))
        if kind == "FarCopy":
            return FarCopy(tuple(int(e) for e in d["seq"]))
        if kind == "InfinityAtom":
            return InfinityAtom(as_fraction(d["scale"]))
        if kind == "GridAtom":
            return GridAtom(tuple(int(e) for e in d["coord"]), as_fraction(d["scale"]))
        if kind == "AmbientSample":
            return AmbientSample(int(d["index"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad tag {d!r}") from exc
    raise InputError(f"unknown tag kind {kind!r}")


# -- the metric type -------------------------------------------------------

@dataclass(frozen=True, eq=True)
class PointedMetric:
    """Use :func:`validate` to construct; the dataclass init does not check."""

    dist: tuple
    tags: tuple = None

    @property
    def n(self):
        return len(self.dist)

    def __getitem__(self, ij):
        i, j = ij
        return self.dist[i][j]

    def rows(self):
        return [list(r) for r in self.dist]

    def scaled(self):
        """(int64 matrix, denominator) if the matrix fits the int64 kernels, else None."""
        den = 1
        for row in self.dist:
            for q in row:
                den = lcm(den, q.denominator)
        top = max((q for row in self.dist for q in row), default=Fraction(0)) * den
        if top >= kernels.INT64_LIMIT:
            return None
        M = np.array([[q.numerator * (den // q.denominator) for q in row] for row in self.dist],
                     dtype=np.int64).reshape(self.n, self.n)
        return M, den

    def diameter(self):
        return max((q for row in self.dist for q in row), default=Fraction(0))

    def to_json(self):
        d = {"n": self.n, "dist": [[fmt(q) for q in row] for row in self.dist]}
        if self.tags is not None:
            d["tags"] = [t.to_json() if t is not None else None for t in self.tags]
        return d

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def _triangle_violation(dist):
    sc = PointedMetric(dist).scaled()
    if sc is not None:
        return kernels.triangle_violation_int(sc[0])
    return _pykernels.triangle_violation(dist)


def validate(matrix, tags=None):
    """Check a square matrix of rationals and return the PointedMetric."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n < 1 or any(len(r) != n for r in rows):
        raise NotSquare(f"matrix must be square with n >= 1 (got {n} rows)")
    dist = tuple(tuple(as_fraction(x) for x in r) for r in rows)
    for i in range(n):
        for j in range(n):
            if i == j:
                if dist[i][i] != 0:
                    raise NonzeroDiagonal(i)
            elif dist[i][j] != dist[j][i]:
                raise Asymmetric(i, j)
            elif dist[i][j] <= 0:
                raise ZeroOffDiagonal(i, j)
    bad = _triangle_violation(dist)
    if bad is not None:
        raise TriangleViolation(*bad)
    if tags is not None:
        tags = tuple(tags)
        if len(tags) != n:
            raise InputError("tags must have one entry per point")
    return PointedMetric(dist, tags)


def from_points(points, distance, tags=None):
    """Matrix of ``distance`` over ``points``.  Not validated."""
    n = len(points)
    dist = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        dist[i][j] = dist[j][i] = Fraction(distance(points[i], points[j]))
    return PointedMetric(tuple(map(tuple, dist)), tuple(tags) if tags is not None else None)


def restrict(m, keep):
    keep = sorted(set(keep))
    if 0 not in keep:
        raise BasePointMissing("restriction must keep the base point 0")
    if keep[-1] >= m.n or keep[0] < 0:
        raise InputError(f"indices out of range for n={m.n}")
    dist = tuple(tuple(m.dist[i][j] for j in keep) for i in keep)
    tags = tuple(m.tags[i] for i in keep) if m.tags is not None else None
    return PointedMetric(dist, tags)


def min_separation(m):
    if m.n < 2:
        raise SinglePoint("separation needs at least two points")
    return min(m.dist[i][j] for i, j in combinations(range(m.n), 2))


@dataclass(frozen=True)
class SeparatedSet:
    size: int
    exact: bool

    def __int__(self):
        return self.size


def _separation_graph(m, eps):
    adj = [0] * m.n
    for i, j in combinations(range(m.n), 2):
        if m.dist[i][j] >= eps:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def greedy_separated(m, eps):
    """Lowest-index-first greedy eps-separated set size (a lower bound)."""
    chosen = []
    for i in range(m.n):
        if all(m.dist[i][j] >= eps for j in chosen):
            chosen.append(i)
    return len(chosen)


def exact_separated(m, eps):
    return kernels.max_clique(_separation_graph(m, eps))


def separated_set_size(m, eps):
    """Largest subset with pairwise distances >= eps.

    Exact (exhaustive branch and bound) for n <= 20, otherwise the greedy lower
    bound with ``exact=False``.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    if m.n <= EXACT_SEARCH_LIMIT:
        return SeparatedSet(exact_separated(m, eps), True)
    return SeparatedSet(greedy_separated(m, eps), False)


def concavity_gap(m, eps=0):
    """min d(x,y) + d(y,z) - d(x,z) over distinct x, y, z with d(x,y), d(y,z) >= eps.

    None when no triple qualifies.
    """
    eps = as_fraction(eps)
    if eps < 0:
        raise InputError("eps must be non-negative")
    sc = m.scaled()
    if sc is not None:
        M, den = sc
        # ceil keeps 'd >= eps' exact on the integer grid
        g = kernels.concavity_gap_int(M, -((-eps.numerator * den) // eps.denominator))
        return None if g is None else Fraction(int(g), den)
    return _pykernels.concavity_gap(m.dist, eps)


# -- file format -----------------------------------------------------------

def from_json(data):
    if not isinstance(data, dict) or "dist" not in data:
        raise InputError("metric file needs a 'dist' field")
    dist = data["dist"]
    if "n" in data and data["n"] != len(dist):
        raise InputError(f"n={data['n']} disagrees with {len(dist)} rows")
    tags = data.get("tags")
    if tags is not None:
        tags = [tag_from_json(t) if t is not None else None for t in tags]
    return validate(dist, tags)


def loads(text):
    try:
        return from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"metric file is not valid JSON: {exc}") from exc
