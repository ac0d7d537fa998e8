"""The Lipschitz-free norm of a finitely supported element sum_i a_i delta(i).

Two independent routes:

* ``free_norm_dual``: maximize sum a_i f_i over 1-Lipschitz f with f(0) = 0,
  solved here with a dense Bland-rule simplex;
* ``free_norm_flow``: the minimum-cost transport of the balanced vector
  (base point absorbs the imbalance), by successive shortest paths.

Solvers run in double precision; rational inputs are converted at the boundary.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from ._rational import as_fraction, fmt
from .errors import DualityGapExceeded, InputError, SupportOutOfRange
from .lipschitz import LipFunction, lip_constant

TOL = 1e-9
GAP_RTOL = 1e-7
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class MassVector:
    """Sparse rational weights {index: a_i}; zero weights are dropped."""

    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, a in self.weights.items():
            i = int(i)
            if i < 0:
                raise SupportOutOfRange(f"negative index {i}")
            a = as_fraction(a)
            if a:
                clean[i] = a
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    @classmethod
    def delta(cls, i, j=None):
        """delta(i), or delta(i) - delta(j)."""
        w = {i: 1}
        if j is not None:
            w[j] = w.get(j, 0) - 1
        return cls(w)

    @classmethod
    def dense(cls, seq):
        return cls(dict(enumerate(seq)))

    def support(self):
        return sorted(self.weights)

    def __add__(self, other):
        w = dict(self.weights)
        for i, a in other.weights.items():
            w[i] = w.get(i, 0) + a
        return MassVector(w)

    def scale(self, lam):
        lam = as_fraction(lam)
        return MassVector({i: lam * a for i, a in self.weights.items()})

    def dense_on(self, n):
        check_support(self, n)
        out = [Fraction(0)] * n
        for i, a in self.weights.items():
            out[i] = a
        return out

    def to_json(self):
        return {"weights": {str(i): fmt(a) for i, a in self.weights.items()}}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict) and "weights" in data:
            data = data["weights"]
        if isinstance(data, list):
            data = dict(enumerate(data))
        if not isinstance(data, dict):
            raise InputError("mass file must map indices to rationals")
        try:
            return cls({int(k): v for k, v in data.items()})
        except ValueError as exc:
            raise InputError(f"bad mass index: {exc}") from exc


def check_support(a, n):
    bad = [i for i in a.weights if i >= n]
    if bad:
        raise SupportOutOfRange(f"support {bad} outside 0..{n - 1}")


@dataclass
class NormCertificate:
    value: float
    method: str
    dual_value: float = None
    dual_witness: LipFunction = None
    primal_value: float = None
    primal_witness: list = None
    gap: float = None

    def to_json(self):
        d = {"value": self.value, "method": self.method}
        if self.dual_witness is not None:
            d["dual"] = {"value": self.dual_value, "f": list(self.dual_witness.values)}
        if self.primal_witness is not None:
            d["primal"] = {"value": self.primal_value,
                           "plan": [[s, t, mass] for s, t, mass in self.primal_witness]}
        if self.gap is not None:
            d["gap"] = self.gap
        return d

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


# -- dual route: dense simplex ---------------------------------------------

def simplex_max(c, A, b):
    """max c.x  s.t.  A x <= b, x >= 0, with b >= 0 (slack basis is feasible).

    Bland's rule (lowest index enters, lowest basic index breaks ratio ties),
    so the pivot sequence is deterministic and cannot cycle.
    Returns (x, objective).
    """
    A = np.asarray(A, dtype=float)
    m, k = A.shape
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = A
    T[:m, k:k + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :k] = -np.asarray(c, dtype=float)
    basis = list(range(k, k + m))
    while True:
        neg = np.nonzero(T[m, :-1] < -PIVOT_TOL)[0]
        if neg.size == 0:
            break
        j = int(neg[0])
        col = T[:m, j]
        rows = np.nonzero(col > PIVOT_TOL)[0]
        if rows.size == 0:
            raise RuntimeError("LP unbounded")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        r = int(min(ties, key=lambda i: basis[i]))
        T[r] /= T[r, j]
        others = np.arange(m + 1) != r
        T[others] -= np.outer(T[others, j], T[r])
        basis[r] = j
    x = np.zeros(k + m)
    x[basis] = T[:m, -1]
    return x[:k], float(T[m, -1])


def free_norm_dual(m, a):
    """(norm, optimal f) from the Lipschitz-ball LP over every point of ``m``."""
    n = m.n
    check_support(a, n)
    idx = [i for i in a.weights if i != 0]
    if not idx or n == 1:
        return 0.0, LipFunction((0.0,) * n, m)
    d0 = [m.dist[0][i] for i in range(n)]
    k = n - 1
    # shift g_i = f_i + d(0, i) >= 0; the slack basis g = 0 is then feasible
    rows, rhs = [], []
    for i in range(1, n):
        for j in range(1, n):
            if i != j:
                r = [0] * k
                r[i - 1], r[j - 1] = 1, -1
                rows.append(r)
                rhs.append(float(m.dist[i][j] + d0[i] - d0[j]))
    for i in range(1, n):
        r = [0] * k
        r[i - 1] = 1
        rows.append(r)
        rhs.append(float(2 * d0[i]))
    c = [float(a.weights.get(i, 0)) for i in range(1, n)]
    g, _ = simplex_max(c, rows, rhs)
    f = (0.0,) + tuple(float(g[i - 1]) - float(d0[i]) for i in range(1, n))
    value = sum(float(w) * f[i] for i, w in a.weights.items())
    return value, LipFunction(f, m)


# -- primal route: transport ------------------------------------------------

def balanced(a, n):
    """Replace the base-point weight by -(sum of the rest); the total is then zero."""
    b = a.dense_on(n)
    b[0] = -sum(b[1:], Fraction(0))
    return b


def free_norm_flow(m, a):
    """(norm, plan) where plan ships ``mass`` from exporting to importing points."""
    check_support(a, m.n)
    b = balanced(a, m.n)
    if not any(b):
        return 0.0, []
    cost = [[float(q) for q in row] for row in m.dist]
    value, plan = kernels.transport([float(x) for x in b], cost)
    return value, plan


def free_norm(m, a, method="both"):
    if method not in ("dual", "flow", "both"):
        raise InputError(f"unknown method {method!r}")
    cert = NormCertificate(value=0.0, method=method)
    if method in ("dual", "both"):
        cert.dual_value, cert.dual_witness = free_norm_dual(m, a)
        cert.value = cert.dual_value
    if method in ("flow", "both"):
        cert.primal_value, cert.primal_witness = free_norm_flow(m, a)
        cert.value = cert.primal_value
    if method == "both":
        cert.gap = cert.primal_value - cert.dual_value
        if abs(cert.gap) > GAP_RTOL * (1 + abs(cert.value)):
            raise DualityGapExceeded(f"primal {cert.primal_value} vs dual {cert.dual_value}")
        lip = lip_constant(cert.dual_witness)
        if lip > 1 + TOL:
            raise DualityGapExceeded(f"dual witness has Lipschitz constant {lip}")
    return cert


def xi_map(m, v, method="both"):
    """Norm of sum_i v(i) delta(i + 1): coordinate i never weights the base point."""
    if isinstance(v, dict):
        items = v.items()
    else:
        items = enumerate(v)
    w = {}
    for i, x in items:
        i = int(i)
        x = as_fraction(x)
        if x == 0:
            continue
        if i < 0 or i + 1 >= m.n:
            raise SupportOutOfRange(f"v({i}) would weight point {i + 1} of an {m.n}-point metric")
        w[i + 1] = x
    return free_norm(m, MassVector(w), method).value
