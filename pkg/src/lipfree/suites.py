"""Named verification suites and the batch runner.

Every suite is a list of instances; instance ``i`` of suite ``id`` with seed
``s`` draws its randomness from ``random.Random(f"{id}:{s}:{i}")`` (Mersenne
Twister seeded through SHA-512 of the string), so any single instance can be
re-run in isolation and reports are byte-identical across runs.
"""
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from . import metric as mc
from ._rational import dyadic, fmt
from .errors import CheckFailed, RankOverflow, UnknownSuite
from .freenorm import MassVector, free_norm, free_norm_dual, free_norm_flow, xi_map
from .lipschitz import lip_constant, mcshane_extend
from .metric import FarCopy, TreeNode
from .oracles import norm_by_vertices
from .reductions import (BallC0, DenseSample, SetSpec, branch_indices, build_compactness,
                         build_thm1, containing_metric, p_member)
from .trees import (FinTree, chains, meet, omega_embed, prefixes, rho, rho_embedded,
                    sample_sequences, sup_distance)

NORM_TOL = 1e-9
GAP_RTOL = 1e-7


# -- random instance generators --------------------------------------------

def random_metric(rng, n, max_num=20, max_den=6):
    """Shortest-path closure of a complete graph with random rational weights."""
    D = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        D[i][j] = D[j][i] = Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
    return mc.validate(_closure(D))


def _closure(D):
    n = len(D)
    for k in range(n):
        Dk = D[k]
        for i in range(n):
            dik = D[i][k]
            Di = D[i]
            for j in range(n):
                if dik + Dk[j] < Di[j]:
                    Di[j] = dik + Dk[j]
    return D


def extend_metric(rng, base, extra):
    """A metric on base.n + extra points whose restriction to 0..base.n-1 is ``base``.

    Edges from new points to old ones weigh at least diam/2, so no path
    through a new point can shorten an old distance.
    """
    n0 = base.n
    n = n0 + extra
    diam = base.diameter() or Fraction(1)
    D = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n0):
        for j in range(n0):
            D[i][j] = base.dist[i][j]
    for p in range(n0, n):
        for x in range(n):
            if x == p or (x >= n0 and x < p):
                continue
            if x < n0:
                w = diam / 2 + diam * Fraction(rng.randint(0, 12), 8)
            else:
                w = diam * Fraction(rng.randint(1, 8), 8)
            D[p][x] = D[x][p] = w
    return mc.validate(_closure(D))


def random_tree(rng, depth, keep=(0.8, 0.55, 0.35)):
    """Random finite tree of the given maximum depth.

    Child ``e`` of a node is kept with probability ``keep[e]``; small entries
    are favoured because they carry small ranks and so land inside
    truncation windows.
    """
    nodes = {()}
    frontier = [()]
    while frontier:
        s = frontier.pop()
        if len(s) >= depth:
            continue
        kids = [e for e, pr in enumerate(keep) if rng.random() < pr]
        if not s and not kids:
            kids = [0]
        for e in kids:
            nodes.add(s + (e,))
            frontier.append(s + (e,))
    return FinTree(nodes)


def random_chain_tree(rng, length=6, p_one=0.25):
    """A random depth <= 4 tree grafted with a 0/1 branch of ``length`` nodes."""
    q = tuple(int(rng.random() < p_one) for _ in range(length - 1))
    base = random_tree(rng, 4)
    return FinTree(set(base.nodes) | set(prefixes(q)))


# -- report ----------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, tuple):
        return [_jsonable(e) for e in x]
    if isinstance(x, list):
        return [_jsonable(e) for e in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


@dataclass
class SuiteReport:
    suite: str
    preset: str
    seed: int
    params: dict
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self):
        return [r for r in self.records if not r["ok"]]

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        out = {}
        for r in self.records:
            for k, v in r["data"].items():
                if k.startswith("max_") and isinstance(v, (int, float)):
                    out[k] = max(out.get(k, v), v)
        return out

    def header(self, timing=False):
        h = {"suite": self.suite, "preset": self.preset, "seed": self.seed,
             "params": self.params, "instances": len(self.records),
             "failures": len(self.failures), "summary": self.summary()}
        if timing:
            h["wall_time"] = round(self.wall_time, 3)
        return h

    def lines(self, timing=False):
        out = [json.dumps(_jsonable(self.header(timing)), sort_keys=True)]
        for r in self.records:
            out.append(json.dumps(_jsonable(r), sort_keys=True))
        return out

    def dumps(self, timing=False):
        return "\n".join(self.lines(timing)) + "\n"


# -- suites ----------------------------------------------------------------

_SAMPLES = {}


def _sample(max_len, max_entry):
    key = (max_len, max_entry)
    if key not in _SAMPLES:
        seqs = sample_sequences(max_len, max_entry)
        index = {s: i for i, s in enumerate(seqs)}
        R = [[rho(s, t) for t in seqs] for s in seqs]
        den = lcm(*[q.denominator for row in R for q in row])
        Rint = np.array([[int(q * den) for q in row] for row in R], dtype=np.int64)
        lens = np.array([len(s) for s in seqs])
        meets = np.array([[index[meet(s, t)] for t in seqs] for s in seqs])
        strict_prefix = np.array([[len(r) < len(s) and s[:len(r)] == r for s in seqs]
                                  for r in seqs])
        # coordinates are dyadic: scale by 2**max_len so sup-norms stay exact integers
        scale = 1 << max_len
        emb = [{r: int(x * scale) for r, x in omega_embed(s).items()} for s in seqs]
        _SAMPLES[key] = (seqs, R, Rint, den, lens, meets, strict_prefix, emb)
    return _SAMPLES[key]


def _rho_form(i, p, rng):
    seqs, R, *_, emb = _sample(p["max_len"], p["max_entry"])
    scale = 1 << p["max_len"]
    s = seqs[i]
    for j, t in enumerate(seqs):
        e = Fraction(sup_distance(emb[i], emb[j]), scale)
        if R[i][j] != e or rho(t, s) != R[i][j]:
            return False, {"s": s, "t": t, "closed_form": R[i][j], "embedded": e}
    return True, {"s": s, "pairs": len(seqs)}


def _distinct_mask(N, i):
    m = np.ones((N, N), dtype=bool)
    m[i, :] = m[:, i] = False
    np.fill_diagonal(m, False)
    return m


def _concavity_rho(i, p, rng):
    # fixed s = seqs[i]; rows t, columns u
    seqs, R, Rint, den, lens, *_ = _sample(p["max_len"], p["max_entry"])
    N = len(seqs)
    s_len = lens[i]
    delta = np.minimum(den >> (s_len + 1), den >> (lens + 1))          # indexed by u
    lhs = Rint[i][None, :]                                            # rho(s, u)
    rhs = Rint[i][:, None] + Rint - delta[None, :]                    # rho(s,t)+rho(t,u)-delta
    bad = np.argwhere((lhs > rhs) & _distinct_mask(N, i))
    if bad.size:
        t, u = bad[0]
        return False, {"s": seqs[i], "t": seqs[t], "u": seqs[u]}
    gap = (rhs - lhs)[_distinct_mask(N, i)]
    return True, {"s": seqs[i], "triples": int(gap.size),
                  "min_slack": Fraction(int(gap.min()), den) if gap.size else None}


def _order_lemma(i, p, rng):
    seqs, _, _, _, _, meets, strict_prefix, _ = _sample(p["max_len"], p["max_entry"])
    N = len(seqs)
    su = meets[i][None, :]          # s ^ u, columns u
    st = meets[i][:, None]          # s ^ t, rows t
    tu = meets                      # t ^ u
    premise = strict_prefix[su, st]
    bad = np.argwhere(premise & (su != tu) & _distinct_mask(N, i))
    if bad.size:
        t, u = bad[0]
        return False, {"s": seqs[i], "t": seqs[t], "u": seqs[u]}
    return True, {"s": seqs[i], "premises": int((premise & _distinct_mask(N, i)).sum())}


def _thm1_tree(p, i, seed):
    rng = random.Random(f"trees:{seed}:{i}")
    return random_tree(rng, p["depth"])


def _separation(i, p, rng, seed):
    T = _thm1_tree(p, i, seed)
    m = build_thm1(T, p["n"])
    nodes = fars = 0
    for x in range(m.n):
        tag = m.tags[x]
        others = [m.dist[x][y] for y in range(m.n) if y != x]
        if isinstance(tag, TreeNode):
            nodes += 1
            bound = dyadic(len(tag.seq) + 1)
            if min(others) < bound:
                y = min((y for y in range(m.n) if y != x), key=lambda y: m.dist[x][y])
                return False, {"tree": T.to_json(), "index": x, "other": y,
                               "distance": m.dist[x][y], "bound": bound}
        elif isinstance(tag, FarCopy):
            fars += 1
            if any(d != Fraction(5, 2) for d in others):
                return False, {"tree": T.to_json(), "index": x, "far": False}
    return True, {"tree": T.to_json(), "tree_nodes": nodes, "far_copies": fars}


def _boundedness(i, p, rng, seed):
    T = _thm1_tree(p, i, seed)
    m = build_thm1(T, p["n"])
    mc.validate(m.rows())
    top = m.diameter()
    return top <= Fraction(5, 2), {"tree": T.to_json(), "max_entry": top}


def _concavity_delta(i, p, rng, seed):
    T = _thm1_tree(p, i, seed)
    m = build_thm1(T, p["concavity_n"])
    g = mc.concavity_gap(m, 0)
    return g is not None and g > 0, {"tree": T.to_json(), "gap": g}


def _monotone_truncation(i, p, rng, seed):
    T = _thm1_tree(p, i, seed)
    small = build_thm1(T, p["n"] // 2)
    big = build_thm1(T, p["n"])
    same = small.dumps() == mc.restrict(big, range(p["n"] // 2)).dumps()
    return same, {"tree": T.to_json(), "sizes": [small.n, big.n]}


def _branch_embed(i, p, rng):
    T = random_chain_tree(rng, p["chain"])
    sample = DenseSample(BallC0())
    long_chains = [c for c in chains(T) if len(c) >= p["chain"]]
    matrix = build_thm1(T, p["n"])
    checked = via_matrix = 0
    for c in long_chains:
        c = c[:p["chain"]]
        try:
            idx = branch_indices(c[-1], p["n"])
        except RankOverflow:
            idx = None   # chain ranks exceed the truncation; the identity is still checked
        for a, b in combinations(range(len(c)), 2):
            d = containing_metric(sample, c[a], c[b])
            excess = d - sample.theta(a, b)
            if excess != dyadic(min(a, b) + 1):
                return False, {"tree": T.to_json(), "s": c[a], "t": c[b], "excess": excess}
            if idx is not None:
                via_matrix += 1
                if matrix.dist[idx[a]][idx[b]] != d:
                    return False, {"tree": T.to_json(), "s": c[a], "t": c[b], "matrix": True}
            checked += 1
    return bool(long_chains), {"tree": T.to_json(), "chains": len(long_chains),
                               "pairs": checked, "matrix_pairs": via_matrix}


def _eq1_decay(i, p, rng):
    q = tuple(rng.randrange(p["max_entry"]) for _ in range(p["chain"] - 1))
    c = prefixes(q)
    for a, b in combinations(range(len(c)), 2):
        r = rho(c[a], c[b])
        if r != dyadic(min(a, b) + 1) or r != rho_embedded(c[a], c[b]):
            return False, {"q": q, "i": a, "j": b, "rho": r}
        # tail bound: anything at depth >= k is within 2^-(k+1)
        for k in range(min(a, b) + 1):
            if r > dyadic(k + 1):
                return False, {"q": q, "i": a, "j": b, "k": k}
    return True, {"q": q}


def _random_mass(rng, n, bound):
    return MassVector({k: rng.randint(-bound, bound) for k in range(n)})


def _duality_instance(p, i, seed):
    rng = random.Random(f"duality:{seed}:{i}")
    n = rng.randint(2, p["max_n"])
    return rng, random_metric(rng, n)


def _duality(i, p, rng, seed):
    rng, m = _duality_instance(p, i, seed)
    a = _random_mass(rng, m.n, p["mass_bound"])
    dual, f = free_norm_dual(m, a)
    primal, plan = free_norm_flow(m, a)
    gap = primal - dual
    ok = abs(gap) <= GAP_RTOL * (1 + abs(primal)) and lip_constant(f) <= 1 + NORM_TOL
    return ok, {"n": m.n, "metric": m.to_json()["dist"], "mass": a.to_json()["weights"],
                "primal": primal, "dual": dual, "max_gap": abs(gap)}


def _delta_isometry(i, p, rng, seed):
    _, m = _duality_instance(p, i, seed)
    worst = 0.0
    for a, b in combinations(range(m.n), 2):
        v = free_norm(m, MassVector.delta(a, b)).value
        err = abs(v - float(m.dist[a][b]))
        worst = max(worst, err)
        if err > NORM_TOL:
            return False, {"metric": m.to_json()["dist"], "i": a, "j": b, "value": v}
    return True, {"n": m.n, "max_err": worst}


def _oracle(i, p, rng):
    n = rng.randint(2, p["max_n"])
    m = random_metric(rng, n)
    a = _random_mass(rng, n, p["mass_bound"])
    got = free_norm(m, a).value
    want = norm_by_vertices(m.dist, a.dense_on(n))
    err = abs(got - want)
    return err <= NORM_TOL, {"metric": m.to_json()["dist"], "mass": a.to_json()["weights"],
                             "solver": got, "oracle": want, "max_err": err}


def _locality(i, p, rng):
    N = rng.randint(1, p["max_window"])
    base = random_metric(rng, N + 1)
    m = extend_metric(rng, base, rng.randint(1, p["max_extra"]))
    m2 = extend_metric(rng, base, rng.randint(1, p["max_extra"]))
    v = [rng.randint(-3, 3) for _ in range(N)]
    x, x2, x0 = xi_map(m, v), xi_map(m2, v), xi_map(base, v)
    err = max(abs(x - x2), abs(x - x0))
    return err <= NORM_TOL, {"N": N, "v": v, "metric": m.to_json()["dist"],
                             "metric2": m2.to_json()["dist"], "values": [x, x2, x0],
                             "max_err": err}


def _mcshane(i, p, rng):
    n = rng.randint(2, p["max_n"])
    m = random_metric(rng, n)
    S = [0] + sorted(rng.sample(range(1, n), rng.randint(0, n - 1)))
    g = {0: Fraction(0)}
    for x in S[1:]:
        g[x] = Fraction(rng.randint(-10, 10), rng.randint(1, 4))
    cur = max((abs(g[x] - g[y]) / m.dist[x][y] for x, y in combinations(S, 2)), default=0)
    L = max(Fraction(cur) * Fraction(rng.choice([1, 1, 3, 2]), 1 if cur else 1), Fraction(1, 2))
    lo = mcshane_extend(m, g, L, "lower")
    hi = mcshane_extend(m, g, L, "upper")
    agree = all(lo[x] == g[x] == hi[x] for x in S)
    lips = (lip_constant(lo), lip_constant(hi))
    sandwich = all(hi[x] <= lo[x] for x in range(n))
    ok = agree and max(lips) <= L and sandwich
    return ok, {"metric": m.to_json()["dist"], "S": S, "g": g, "L": L,
                "lip": list(lips), "agree": agree, "sandwich": sandwich}


def _compactness_specs(p):
    low = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0)]   # tau-ranks 1..7
    specs = []
    for k in range(p["specs"]):
        rng = random.Random(f"compactness-specs:{k}")
        explicit = frozenset(x for x in low if rng.random() < 0.5)
        specs.append(SetSpec(explicit))
    for k in range(p["specs"]):
        rng = random.Random(f"compactness-rows:{k}")
        explicit = frozenset(x for x in low if x[0] != 2 and rng.random() < 0.5)
        specs.append(SetSpec(explicit, frozenset({2})))
    return specs


def _compactness(i, p, rng):
    E = _compactness_specs(p)[i]
    sizes = p["sizes"]
    data = {"E": E.to_json(), "p_member": p_member(E)}
    if p_member(E):
        ok = True
        for eps in (Fraction(1, 4), Fraction(1, 8)):
            vals = []
            for n in sizes:
                m = build_compactness(E, n)
                r = mc.separated_set_size(m, eps)
                exact = r.size if r.exact else mc.exact_separated(m, eps)
                ok = ok and r.size <= exact
                vals.append(exact)
            data[f"eps={fmt(eps)}"] = vals
            ok = ok and len(set(vals)) == 1
        return ok, data
    eps = Fraction(1, 4)
    vals, atoms = [], []
    for n in sizes:
        m = build_compactness(E, n)
        vals.append(mc.separated_set_size(m, eps).size)
        atoms.append(sum(1 for t in m.tags if isinstance(t, mc.GridAtom) and t.coord[0] == 2))
    data.update({"sizes": vals, "row_atoms": atoms})
    ok = all(a < b for a, b in zip(vals, vals[1:])) and all(v >= a for v, a in zip(vals, atoms))
    return ok, data


@dataclass(frozen=True)
class Suite:
    run: object
    count: object
    quick: dict
    full: dict
    seeded: bool = False     # run(i, params, rng, seed) instead of run(i, params, rng)


def _sample_count(p):
    return len(sample_sequences(p["max_len"], p["max_entry"]))


_SEQ_QUICK = {"max_len": 3, "max_entry": 3}
_SEQ_FULL = {"max_len": 4, "max_entry": 3}
_TREE_QUICK = {"trees": 5, "depth": 4, "n": 32, "concavity_n": 24}
_TREE_FULL = {"trees": 20, "depth": 4, "n": 64, "concavity_n": 48}
_DUAL_QUICK = {"instances": 60, "max_n": 8, "mass_bound": 5}
_DUAL_FULL = {"instances": 500, "max_n": 10, "mass_bound": 5}
_trees = lambda p: p["trees"]
_inst = lambda p: p["instances"]

SUITES = {
    "rho-form": Suite(_rho_form, _sample_count, _SEQ_QUICK, _SEQ_FULL),
    "concavity-rho": Suite(_concavity_rho, _sample_count, _SEQ_QUICK, _SEQ_FULL),
    "order-lemma": Suite(_order_lemma, _sample_count, _SEQ_QUICK, _SEQ_FULL),
    "separation": Suite(_separation, _trees, _TREE_QUICK, _TREE_FULL, True),
    "boundedness": Suite(_boundedness, _trees, _TREE_QUICK, _TREE_FULL, True),
    "concavity-delta": Suite(_concavity_delta, _trees, _TREE_QUICK, _TREE_FULL, True),
    "monotone-truncation": Suite(_monotone_truncation, _trees, _TREE_QUICK, _TREE_FULL, True),
    "branch-embed": Suite(_branch_embed, _inst, {"instances": 5, "chain": 6, "n": 32},
                          {"instances": 20, "chain": 6, "n": 64}),
    "eq1-decay": Suite(_eq1_decay, _inst, {"instances": 20, "chain": 8, "max_entry": 3},
                       {"instances": 200, "chain": 10, "max_entry": 3}),
    "duality": Suite(_duality, _inst, _DUAL_QUICK, _DUAL_FULL, True),
    "delta-isometry": Suite(_delta_isometry, _inst, _DUAL_QUICK, _DUAL_FULL, True),
    "oracle": Suite(_oracle, _inst, {"instances": 30, "max_n": 5, "mass_bound": 3},
                    {"instances": 200, "max_n": 5, "mass_bound": 3}),
    "locality": Suite(_locality, _inst, {"instances": 20, "max_window": 4, "max_extra": 3},
                      {"instances": 100, "max_window": 5, "max_extra": 4}),
    "mcshane": Suite(_mcshane, _inst, {"instances": 40, "max_n": 8},
                     {"instances": 200, "max_n": 10}),
    "compactness": Suite(lambda i, p, rng: _compactness(i, p, rng),
                         lambda p: 2 * p["specs"],
                         {"specs": 2, "sizes": [8, 16, 32]},
                         {"specs": 6, "sizes": [8, 16, 32]}),
}

SUITE_IDS = tuple(SUITES)


def params_for(suite_id, preset="quick", overrides=None):
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; choose from {', '.join(SUITE_IDS)}")
    if preset not in ("quick", "full"):
        raise UnknownSuite(f"unknown preset {preset!r}")
    p = dict(getattr(SUITES[suite_id], preset))
    p.update(overrides or {})
    return p


def run_instance(suite_id, i, params, seed):
    suite = SUITES[suite_id]
    rng = random.Random(f"{suite_id}:{seed}:{i}")
    try:
        if suite.seeded:
            ok, data = suite.run(i, params, rng, seed)
        else:
            ok, data = suite.run(i, params, rng)
    except CheckFailed as exc:
        ok, data = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"instance": i, "ok": bool(ok), "data": data}


def _run_packed(args):
    return run_instance(*args)


def run_suite(suite_id, preset="quick", seed=0, overrides=None, instances=None, jobs=1):
    """Run a suite and return its SuiteReport; records are sorted by instance id."""
    params = params_for(suite_id, preset, overrides)
    ids = list(range(SUITES[suite_id].count(params))) if instances is None else sorted(instances)
    t0 = time.perf_counter()
    work = [(suite_id, i, params, seed) for i in ids]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_packed, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        records = [run_instance(*w) for w in work]
    records.sort(key=lambda r: r["instance"])
    return SuiteReport(suite_id, preset, seed, params, records, time.perf_counter() - t0)
