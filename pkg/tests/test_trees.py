from fractions import Fraction
from itertools import product

import pytest

from lipfree.errors import InputError
from lipfree.trees import (FinTree, canonical_enum, chains, is_tree, meet, omega_embed, pair,
                           rank, rho, rho_embedded, sample_sequences, unpair)

SAMPLE = sample_sequences(4, 3)


def test_meet_examples():
    assert meet((1, 2, 3), (1, 2, 5)) == (1, 2)
    assert meet((4, 4), (4, 4)) == (4, 4)
    assert meet((0,), (1,)) == ()
    assert meet((3, 1), (3, 1, 4)) == (3, 1)


def test_omega_embed_examples():
    assert omega_embed(()) == {(): 1}
    assert omega_embed((4,)) == {(): 1, (4,): Fraction(1, 2)}
    assert omega_embed((4, 7)) == {(): 1, (4,): Fraction(1, 2), (4, 7): Fraction(1, 4)}


def test_rho_examples():
    assert rho((0,), (1,)) == Fraction(1, 2)
    assert rho((2, 2), (2, 2)) == 0
    assert rho((3, 1), (3, 1, 4)) == Fraction(1, 8)


def test_sample_size():
    assert len(SAMPLE) == 1 + 3 + 9 + 27 + 81


def test_closed_form_equals_embedding_exhaustive():
    for s, t in product(SAMPLE, repeat=2):
        assert rho(s, t) == rho_embedded(s, t)


def test_rho_is_a_metric_exhaustive():
    small = sample_sequences(3, 3)
    for s, t in product(small, repeat=2):
        assert rho(s, t) == rho(t, s)
        assert (rho(s, t) == 0) == (s == t)
    for s, t, u in product(small, repeat=3):
        assert rho(s, u) <= rho(s, t) + rho(t, u)


def test_order_lemma_and_uniform_concavity_exhaustive():
    small = sample_sequences(3, 3)
    for s, t, u in product(small, repeat=3):
        if len({s, t, u}) < 3:
            continue
        su, st = meet(s, u), meet(s, t)
        if len(su) < len(st) and st[:len(su)] == su:
            assert su == meet(t, u)
        delta = min(Fraction(1, 2 ** (len(s) + 1)), Fraction(1, 2 ** (len(u) + 1)))
        assert rho(s, u) <= rho(s, t) + rho(t, u) - delta


def test_chain_decay():
    q = (2, 0, 1, 1, 0, 2)
    c = [q[:k] for k in range(len(q) + 1)]
    for i in range(len(c)):
        for j in range(len(c)):
            if i != j:
                assert rho(c[i], c[j]) == Fraction(1, 2 ** (min(i, j) + 1))


def test_pairing_round_trip():
    for z in range(5000):
        assert pair(*unpair(z)) == z
    assert pair(0, 0) == 0 and unpair(1) == (1, 0) and unpair(2) == (0, 1)


def test_canonical_enum():
    assert canonical_enum(0) == ()
    assert all(rank(canonical_enum(k)) == k for k in range(10000))
    assert len({canonical_enum(k) for k in range(100)}) == 100
    for s in SAMPLE:
        assert canonical_enum(rank(s)) == s


def test_is_tree_and_chains():
    assert is_tree({(), (0,), (0, 0)})
    assert chains(FinTree({(), (0,), (0, 0)})) == [[(), (0,), (0, 0)]]
    assert not is_tree({(0,)})
    t = FinTree({(), (0,), (1,)})
    assert len(chains(t)) == 2
    with pytest.raises(InputError):
        FinTree({(0,)})


def test_tree_file_round_trip():
    t = FinTree.from_branches([(1, 0), (0,)])
    data = t.to_json()
    assert data == [[], [0], [1], [1, 0]]
    assert FinTree.from_json(data) == t
    assert t.depth == 2 and FinTree([]).depth == -1
