"""Finite sequences of naturals, finite trees, and the tree metric rho.

Sequences are plain tuples of non-negative ints.  ``rho(s, t)`` is the sup-norm
distance between the weighted prefix embeddings ``omega_embed(s)`` and
``omega_embed(t)``; the closed form ``2**-(|s ^ t| + 1)`` is used everywhere
and the embedding is kept around as its independent check.
"""
from fractions import Fraction
from math import isqrt

from ._rational import dyadic
from .errors import InputError


def as_seq(entries):
    s = tuple(entries)
    for e in s:
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise InputError(f"sequence entries must be naturals: {entries!r}")
    return s


def is_prefix(r, s):
    return len(r) <= len(s) and s[:len(r)] == r


def meet(s, t):
    """Longest common prefix; for comparable s, t this is the shorter one."""
    k = 0
    for a, b in zip(s, t):
        if a != b:
            break
        k += 1
    return tuple(s[:k])


def prefixes(s):
    return [tuple(s[:k]) for k in range(len(s) + 1)]


def omega_embed(s):
    """Sparse vector {r: 2**-|r|} over the prefixes r of s."""
    return {r: dyadic(len(r)) for r in prefixes(s)}


def sup_distance(u, v):
    return max((abs(u.get(k, 0) - v.get(k, 0)) for k in set(u) | set(v)),
               default=Fraction(0))


def rho(s, t):
    if s == t:
        return Fraction(0)
    return dyadic(len(meet(s, t)) + 1)


def rho_embedded(s, t):
    return sup_distance(omega_embed(s), omega_embed(t))


# -- canonical bijection omega <-> omega^{<omega} -----------------------------

def pair(a, b):
    """Cantor pairing."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z):
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def _pack(s):
    # iterated pairing: omega^L <-> omega for L >= 1
    code = s[-1]
    for e in reversed(s[:-1]):
        code = pair(e, code)
    return code


def _unpack(code, length):
    out = []
    for _ in range(length - 1):
        e, code = unpair(code)
        out.append(e)
    out.append(code)
    return tuple(out)


def rank(s):
    """Inverse of ``canonical_enum``: () -> 0, otherwise 1 + pair(|s| - 1, pack(s))."""
    s = as_seq(s)
    if not s:
        return 0
    return 1 + pair(len(s) - 1, _pack(s))


def canonical_enum(k):
    if k < 0:
        raise InputError("rank must be a natural")
    if k == 0:
        return ()
    length, code = unpair(k - 1)
    return _unpack(code, length + 1)


# -- finite trees -----------------------------------------------------------

def is_tree(nodes):
    nodes = set(nodes)
    return all(s[:-1] in nodes for s in nodes if s)


class FinTree:
    """A finite prefix-closed set of sequences."""

    def __init__(self, nodes):
        nodes = frozenset(as_seq(s) for s in nodes)
        if not is_tree(nodes):
            missing = min((s[:-1] for s in nodes if s and s[:-1] not in nodes), key=rank)
            raise InputError(f"not prefix-closed: missing {list(missing)}")
        self.nodes = nodes

    @classmethod
    def from_branches(cls, branches):
        nodes = set()
        for b in branches:
            nodes.update(prefixes(as_seq(b)))
        return cls(nodes)

    def __contains__(self, s):
        return tuple(s) in self.nodes

    def __iter__(self):
        return iter(sorted(self.nodes, key=rank))

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        return isinstance(other, FinTree) and self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        return f"FinTree({[list(s) for s in self]})"

    @property
    def depth(self):
        return max((len(s) for s in self.nodes), default=-1)

    def leaves(self):
        children = {s[:-1] for s in self.nodes if s}
        return [s for s in self if s not in children]

    def to_json(self):
        return [list(s) for s in self]

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
            raise InputError("tree file must be a list of integer arrays")
        return cls(data)


def chains(tree):
    """Maximal chains (root-to-leaf paths), each as a list of prefixes, ordered by leaf rank."""
    return [prefixes(leaf) for leaf in sorted(tree.leaves(), key=rank)]


def sample_sequences(max_len, max_entry):
    """Every sequence of length <= max_len with entries < max_entry."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [s + (e,) for s in layer for e in range(max_entry)]
        out.extend(layer)
    return out
