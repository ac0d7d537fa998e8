"""Base-point-normalized Lipschitz functions and McShane extension."""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._rational import as_fraction, fmt
from .errors import BaseNotZero, BasePointMissing, ConstantTooSmall, InputError


@dataclass(frozen=True)
class LipFunction:
    values: tuple
    metric: object

    def __post_init__(self):
        if len(self.values) != self.metric.n:
            raise InputError("one value per metric point is required")
        if self.values[0] != 0:
            raise BaseNotZero(f"f(0) = {self.values[0]} must vanish at the base point")

    def __getitem__(self, i):
        return self.values[i]


def _lip(values, idx, dist):
    best = 0
    for i, j in combinations(idx, 2):
        r = abs(values[i] - values[j]) / dist[i][j]
        if r > best:
            best = r
    return best


def lip_constant(f):
    """Optimal Lipschitz constant; exact when the values are rational."""
    if f.values[0] != 0:
        raise BaseNotZero("f(0) must be 0")
    best = _lip(f.values, range(f.metric.n), f.metric.dist)
    return Fraction(best) if not isinstance(best, float) else best


def mcshane_extend(m, g, L, form="lower"):
    """Extend ``g`` (a dict index -> value containing 0) to all of ``m``.

    ``lower`` gives min_y g(y) + L d(x, y), the largest L-Lipschitz extension;
    ``upper`` gives max_y g(y) - L d(x, y), the smallest.
    """
    if form not in ("lower", "upper"):
        raise InputError(f"form must be 'lower' or 'upper', not {form!r}")
    if 0 not in g:
        raise BasePointMissing("the extension domain must contain the base point")
    g = {int(i): as_fraction(v) if not isinstance(v, float) else v for i, v in g.items()}
    if any(i < 0 or i >= m.n for i in g):
        raise InputError("domain index out of range")
    if g[0] != 0:
        raise BaseNotZero("g(0) must be 0")
    L = as_fraction(L) if not isinstance(L, float) else L
    S = sorted(g)
    if _lip(g, S, m.dist) > L:
        raise ConstantTooSmall(f"L = {L} is below the Lipschitz constant of g")
    if form == "lower":
        vals = [g[x] if x in g else min(g[y] + L * m.dist[x][y] for y in S) for x in range(m.n)]
    else:
        vals = [g[x] if x in g else max(g[y] - L * m.dist[x][y] for y in S) for x in range(m.n)]
    return LipFunction(tuple(vals), m)


# -- file format: {"values": {"index": "p/q", ...}} ------------------------

def parse_values(data):
    if isinstance(data, dict) and "values" in data:
        data = data["values"]
    if isinstance(data, list):
        data = dict(enumerate(data))
    if not isinstance(data, dict):
        raise InputError("function file must map indices to rationals")
    try:
        return {int(k): as_fraction(v) for k, v in data.items()}
    except ValueError as exc:
        raise InputError(f"bad index in function file: {exc}") from exc


def dumps_values(values):
    body = {str(i): fmt(v) for i, v in sorted(values.items())}
    return json.dumps({"values": body}, separators=(",", ":")) + "\n"


def to_function(m, values):
    """Complete a dict of values into a LipFunction (every index required)."""
    missing = [i for i in range(m.n) if i not in values]
    if missing:
        raise InputError(f"function undefined at indices {missing}")
    return LipFunction(tuple(values[i] for i in range(m.n)), m)
