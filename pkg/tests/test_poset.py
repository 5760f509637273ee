import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsset.acceptance import sphere
from nsset.colimits import collapse
from nsset.desing import desingularize
from nsset.iso import are_isomorphic
from nsset.poset import (
    FinPoset,
    MonotoneMap,
    PosetError,
    antichain,
    chain,
    compose_monotone,
    is_cosieve,
    is_sieve,
    nerve,
    nerve_map,
    pc,
    poset_iso,
    q,
    random_poset,
    sharp,
    sharp_map,
)
from nsset.simpset import SimplicialError, compose_maps, standard
from nsset.subcomplex import standard_subcomplex


def test_poset_axioms_checked():
    with pytest.raises(PosetError):
        FinPoset(2, [(0, 1), (1, 0)])
    with pytest.raises(PosetError):
        FinPoset(3, [(0, 1), (1, 2)])
    assert FinPoset(3, [(0, 1), (1, 2)], close=True).le(0, 2)


def test_nerve_of_chain_is_simplex():
    assert nerve(chain(2)).counts == (3, 3, 1)
    assert are_isomorphic(nerve(chain(2)), standard("simplex", 2)) is not None
    assert nerve(chain(3)) == standard("simplex", 3)


def test_nerve_of_face_poset():
    assert nerve(sharp(standard("simplex", 2))).counts == (7, 12, 6)
    assert nerve(antichain(4)).counts == (4,)
    assert nerve(antichain(0)).is_empty()


def test_sharp_examples():
    P = sharp(standard("simplex", 2))
    assert P.size == 7 and len(P.strict_pairs()) == 12
    assert sharp(standard("boundary", 2)).height() == 2
    assert sharp(sphere(2)).size == 2


def test_sharp_map_functorial():
    D2 = standard("simplex", 2)
    A = standard_subcomplex("horn", 2, 1)
    f = A.inclusion()
    g = collapse(D2, A).left_leg
    assert sharp_map(f).is_monotone()
    assert compose_monotone(sharp_map(g), sharp_map(f)) == sharp_map(compose_maps(g, f))


def test_sharp_of_subcomplex_is_sieve():
    X = standard("simplex", 3)
    P = sharp(X)
    for kind, k in (("boundary", None), ("horn", 0), ("horn", 2)):
        A = standard_subcomplex(kind, 3, k)
        S = [P.position[x] for x in A.members]
        assert is_sieve(P, S)
        assert is_cosieve(P, set(range(P.size)) - set(S))
    assert not is_sieve(P, [P.size - 1])


def test_pc_examples(circle):
    for n in range(4):
        assert pc(standard("simplex", n)) == chain(n)
    assert pc(collapse(standard("simplex", 1), standard_subcomplex("boundary", 1)).apex).size == 1
    assert pc(circle).size == 1
    assert pc(standard("boundary", 2)) == chain(2)


def test_q_requires_nonsingular(s2):
    with pytest.raises(SimplicialError):
        q(s2)
    assert q(desingularize(s2).dx).size == 1


def test_pc_agrees_with_q_of_desing():
    from nsset.corpus import CorpusSpec, corpus

    for X in corpus(CorpusSpec(0, 3, 12, 15)):
        assert poset_iso(pc(X), q(desingularize(X).dx)) is not None


def brute_iso(P, Q):
    if P.size != Q.size:
        return False
    return any(all(P.le(i, j) == Q.le(p[i], p[j]) for i in range(P.size) for j in range(P.size)) for p in permutations(range(Q.size)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_poset_iso_matches_brute_force(seed, size):
    rng = random.Random(seed)
    P = random_poset(rng, size, 0.4)
    perm = list(range(size))
    rng.shuffle(perm)
    Q = FinPoset(size, [(perm[i], perm[j]) for i, j in P.pairs()])
    h = poset_iso(P, Q)
    assert h is not None and h.is_monotone()
    R = random_poset(rng, size, 0.4)
    assert (poset_iso(P, R) is not None) == brute_iso(P, R)


def test_nerve_map_functorial():
    P = chain(2)
    f = MonotoneMap(P, P, [0, 0, 2])
    g = MonotoneMap(P, P, [1, 1, 2])
    assert compose_maps(nerve_map(g), nerve_map(f)) == nerve_map(compose_monotone(g, f))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_nerve_is_nonsingular_with_pc_recovering_poset(seed):
    P = random_poset(random.Random(seed), 5, 0.4)
    N = nerve(P)
    assert N.is_nonsingular()
    assert poset_iso(pc(N), P) is not None
