import pytest

from nsset.corpus import CorpusSpec, eden_pairs, subcomplex_pairs
from nsset.simpset import SimplicialError, standard
from nsset.subcomplex import (
    Subcomplex,
    abyss_characteristic,
    complement_full,
    eden_characteristic,
    end_fiber,
    full_subcomplex,
    generated_by,
    is_abyss,
    is_abyss_by_first_vertex,
    is_cartesian_over_vertex,
    is_eden,
    is_eden_by_last_vertex,
    is_full,
    preimage,
    standard_subcomplex,
    whole,
)
from nsset.subdivision import iterated_sd, sd_map

from conftest import edge01


def vertex(X, v):
    return Subcomplex(X, [(0, v)])


def test_subcomplex_must_be_closed():
    with pytest.raises(SimplicialError):
        Subcomplex(standard("simplex", 1), [(1, 0)])


def test_full_examples():
    D2 = standard("simplex", 2)
    assert is_full(D2, edge01(D2))
    assert not is_full(D2, standard_subcomplex("boundary", 2))
    assert not is_full(D2, standard_subcomplex("horn", 2, 0))
    assert is_full(D2, whole(D2))


def test_eden_abyss_examples():
    D1 = standard("simplex", 1)
    assert is_eden(D1, vertex(D1, 0)) and not is_abyss(D1, vertex(D1, 0))
    assert not is_eden(D1, vertex(D1, 1)) and is_abyss(D1, vertex(D1, 1))
    D2 = standard("simplex", 2)
    assert is_eden(D2, edge01(D2))
    assert is_abyss(D2, vertex(D2, 2))
    assert not is_eden(D2, vertex(D2, 1))
    empty = Subcomplex(D2, [])
    assert is_eden(D2, empty) and is_abyss(D2, empty)


def test_characteristic_maps():
    D2 = standard("simplex", 2)
    A = edge01(D2)
    chi = eden_characteristic(D2, A)
    assert end_fiber(chi, 0) == A
    assert end_fiber(chi, 1) == vertex(D2, 2)
    assert is_cartesian_over_vertex(chi, A, 0)
    with pytest.raises(SimplicialError):
        eden_characteristic(D2, vertex(D2, 1))
    psi = abyss_characteristic(D2, vertex(D2, 2))
    assert end_fiber(psi, 1) == vertex(D2, 2)


def test_eden_characterizations_agree():
    pairs = subcomplex_pairs(CorpusSpec(0, 3, 12, 40))
    edens = 0
    for X, A in pairs:
        assert is_eden(X, A) == is_eden_by_last_vertex(X, A)
        assert is_abyss(X, A) == is_abyss_by_first_vertex(X, A)
        edens += is_eden(X, A)
    assert edens >= 3


def test_eden_fiber_is_cartesian_on_corpus():
    for X, A in eden_pairs(CorpusSpec(0, 3, 12, 20)):
        chi = eden_characteristic(X, A)
        assert end_fiber(chi, 0) == A
        assert is_cartesian_over_vertex(chi, A, 0)
        V = complement_full(X, A)
        assert end_fiber(chi, 1) == V
        assert is_abyss(X, V)


def test_complement_full_in_double_subdivision():
    X = iterated_sd(standard("simplex", 2), 2)
    inc = sd_map(sd_map(standard_subcomplex("boundary", 2).inclusion()))
    from nsset.subcomplex import image_subcomplex

    A = image_subcomplex(inc)
    assert is_eden(X, A)
    V = complement_full(X, A)
    assert len(V.vertices()) == 13
    assert is_abyss(X, V)


def test_generated_full_and_preimage():
    D3 = standard("simplex", 3)
    A = full_subcomplex(D3, [0, 1])
    assert A == generated_by(D3, [(1, 0)])
    chi = eden_characteristic(D3, A)
    assert preimage(chi, Subcomplex(standard("simplex", 1), [(0, 0)])) == A
