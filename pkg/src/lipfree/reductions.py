"""Reduction builders: sets of indices in, truncated distance matrices out.

Every builder goes through :func:`build_generic_delta`: index k is sent to
phi0(k) when k is in A, otherwise to phi1(k) or phi2(k) depending on whether
tau(k) belongs to the input set E, and the output matrix is the ambient
distance between the images of 0..n-1.  Enlarging ``n`` only appends rows and
columns.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable

from . import metric as mc
from ._rational import as_fraction, dyadic, fmt
from .errors import InputError, RangeCollision, RankOverflow
from .metric import AmbientSample, BasePoint, FarCopy, GridAtom, InfinityAtom, TreeNode
from .trees import FinTree, as_seq, canonical_enum, prefixes, rank, rho, unpair


# -- ambient spaces ----------------------------------------------------------

class BallC0:
    """Unit ball of c0, points are finite rational tuples with sup-norm <= 1."""

    name = "c0"
    diameter = Fraction(2)

    def enum(self, k):
        # (a, b) = unpair(k): denominator b + 1, numerators from the a-th sequence
        a, b = unpair(k)
        q = b + 1
        v = [Fraction(c % (2 * q + 1) - q, q) for c in canonical_enum(a)]
        while v and v[-1] == 0:
            v.pop()
        return tuple(v)

    @staticmethod
    def distance(x, y):
        w = max(len(x), len(y))
        x = x + (Fraction(0),) * (w - len(x))
        y = y + (Fraction(0),) * (w - len(y))
        return max((abs(p - r) for p, r in zip(x, y)), default=Fraction(0))

    def to_json(self):
        return "c0"


class ExplicitSample:
    """A finite metric used as the ambient space; points are its indices."""

    name = "explicit"

    def __init__(self, m):
        self.metric = m
        self.diameter = m.diameter()

    def enum(self, k):
        return k % self.metric.n

    def distance(self, x, y):
        return self.metric.dist[x][y]

    def to_json(self):
        return self.metric.to_json()


def ambient_from_json(data):
    if data in (None, "c0"):
        return BallC0()
    return ExplicitSample(mc.from_json(data))


class DenseSample:
    """x_i = ambient.enum(first coordinate of unpair(i)).

    Each ambient enumeration value is hit for infinitely many i, so every
    sample point repeats infinitely often.
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self._cache = {}

    def __call__(self, i):
        if i not in self._cache:
            self._cache[i] = self.ambient.enum(unpair(i)[0])
        return self._cache[i]

    def theta(self, i, j):
        if i == j:
            return Fraction(0)
        return Fraction(self.ambient.distance(self(i), self(j)))


def containing_metric(sample, s, t):
    """rho(s, t) + theta(x_|s|, x_|t|)."""
    if s == t:
        return Fraction(0)
    return rho(s, t) + sample.theta(len(s), len(t))


# -- generic builder -------------------------------------------------------

@dataclass
class ReductionSpec:
    distance: Callable[[Any, Any], Fraction]
    phi1: Callable[[int], Any]
    phi2: Callable[[int], Any]
    tau: Callable[[int], Any]
    member: Callable[[Any], bool]
    n: int
    in_A: Callable[[int], bool] = lambda k: False
    phi0: Callable[[int], Any] = None
    tag: Callable[[Any, int], Any] = None


def psi(spec):
    """[(branch, point)] for indices 0..n-1; branch is 0, 1 or 2."""
    out = []
    seen = {}
    for k in range(spec.n):
        if spec.in_A(k):
            cands = [(0, spec.phi0(k))]
        else:
            cands = [(1, spec.phi1(k)), (2, spec.phi2(k))]
        for branch, x in cands:
            if x in seen:
                raise RangeCollision(f"phi{branch}({k}) = phi{seen[x][0]}({seen[x][1]}) = {x!r}")
            seen[x] = (branch, k)
        if len(cands) == 1:
            out.append(cands[0])
        else:
            out.append(cands[1] if spec.member(spec.tau(k)) else cands[0])
    return out


def build_generic_delta(spec):
    if spec.n < 2:
        raise InputError("truncation size must be at least 2")
    images = psi(spec)
    points = [x for _, x in images]
    tags = None
    if spec.tag is not None:
        tags = [spec.tag(x, b) for b, x in images]
    return mc.from_points(points, spec.distance, tags)


# -- tree builders ---------------------------------------------------------

THM1_FAR = Fraction(5, 2)


def tree_space_distance(sample, far):
    def distance(x, y):
        if x == y:
            return Fraction(0)
        if x[0] == "node" and y[0] == "node":
            return containing_metric(sample, x[1], y[1])
        return far
    return distance


def _tree_tag(x, branch):
    return TreeNode(x[1]) if x[0] == "node" else FarCopy(x[1])


def tree_spec(T, n, ambient):
    """Index k goes to tau(k) when tau(k) is in T, else to the far copy (tau(k), 0)."""
    sample = DenseSample(ambient)
    far = Fraction(1, 2) + ambient.diameter
    return ReductionSpec(
        distance=tree_space_distance(sample, far),
        phi1=lambda k: ("far", canonical_enum(k)),
        phi2=lambda k: ("node", canonical_enum(k)),
        tau=canonical_enum,
        member=lambda s: s in T,
        n=n,
        tag=_tree_tag,
    )


def build_thm2(T, n, ambient=None):
    return build_generic_delta(tree_spec(T, n, ambient or BallC0()))


def build_thm1(T, n):
    return build_thm2(T, n, BallC0())


def branch_indices(q, n):
    """Ranks of q|0, q|1, ..., q in chain order; all must lie below ``n``."""
    ranks = [rank(p) for p in prefixes(as_seq(q))]
    if max(ranks) >= n:
        raise RankOverflow(max(ranks) + 1)
    return ranks


# -- compactness builder --------------------------------------------------

@dataclass(frozen=True)
class SetSpec:
    """E = explicit pairs  union  {i} x omega for each i in full_rows."""

    explicit: frozenset = field(default_factory=frozenset)
    full_rows: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        explicit = frozenset((int(i), int(j)) for i, j in self.explicit)
        rows = frozenset(int(i) for i in self.full_rows)
        if any(i < 0 or j < 0 for i, j in explicit) or any(i < 0 for i in rows):
            raise InputError("set entries must be naturals")
        clash = sorted(p for p in explicit if p[0] in rows)
        if clash:
            raise InputError(f"explicit pairs {clash} lie inside full rows")
        object.__setattr__(self, "explicit", explicit)
        object.__setattr__(self, "full_rows", rows)

    def __contains__(self, pair):
        return pair in self.explicit or pair[0] in self.full_rows

    def to_json(self):
        return {"explicit": [list(p) for p in sorted(self.explicit)],
                "full_rows": sorted(self.full_rows)}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise InputError("set file must be an object with 'explicit' and 'full_rows'")
        try:
            return cls(frozenset(tuple(p) for p in data.get("explicit", [])),
                       frozenset(data.get("full_rows", [])))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad set file: {exc}") from exc


def p_member(E):
    """Every row of E is finite."""
    return not E.full_rows


def grid_tau(k):
    """Bijection omega minus {0} -> omega x omega."""
    return unpair(k - 1)


def l1_atom_distance(x, y):
    # atoms are (coordinate, scale); the origin is (None, 0)
    if x[0] == y[0]:
        return abs(x[1] - y[1])
    return x[1] + y[1]


def _atom_tag(x, branch):
    coord, scale = x
    if coord is None:
        return BasePoint()
    if coord == "inf":
        return InfinityAtom(scale)
    return GridAtom(coord, scale)


def compactness_spec(E, n):
    return ReductionSpec(
        distance=l1_atom_distance,
        in_A=lambda k: k == 0,
        phi0=lambda k: (None, Fraction(0)),
        phi1=lambda k: ("inf", dyadic(k)),
        phi2=lambda k: (grid_tau(k), dyadic(grid_tau(k)[0])),
        tau=grid_tau,
        member=lambda g: g in E,
        n=n,
        tag=_atom_tag,
    )


def build_compactness(E, n):
    return build_generic_delta(compactness_spec(E, n))


# -- generic spec file -----------------------------------------------------

def _key(g):
    return json.dumps(g, sort_keys=True)


def spec_from_json(data):
    """Generic builder spec over an explicit ambient metric.

    Fields: ambient (metric file object), n, A (indices), phi0/phi1/phi2
    (lists of ambient indices, one per truncated index), tau (list of JSON
    values), E (list of JSON values).
    """
    try:
        amb = ExplicitSample(mc.from_json(data["ambient"]))
        n = int(data["n"])
        A = {int(k) for k in data.get("A", [])}
        phi = {b: data.get(f"phi{b}") for b in (0, 1, 2)}
        tau = data["tau"]
        E = {_key(g) for g in data.get("E", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad reduction spec: {exc}") from exc

    def lookup(b):
        table = phi[b]

        def f(k):
            try:
                x = int(table[k])
            except (TypeError, IndexError, ValueError) as exc:
                raise InputError(f"phi{b}({k}) undefined") from exc
            if not 0 <= x < amb.metric.n:
                raise InputError(f"phi{b}({k}) = {x} is not an ambient point")
            return x
        return f

    def tau_k(k):
        try:
            return _key(tau[k])
        except IndexError as exc:
            raise InputError(f"tau({k}) undefined") from exc

    return ReductionSpec(
        distance=amb.distance,
        in_A=lambda k: k in A,
        phi0=lookup(0), phi1=lookup(1), phi2=lookup(2),
        tau=tau_k,
        member=lambda g: g in E,
        n=n,
        tag=lambda x, b: AmbientSample(x),
    )
