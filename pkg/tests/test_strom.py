import pytest

from nsset.colimits import coproduct, pushout
from nsset.corpus import CorpusSpec, eden_pairs, item_rng, strom_targets
from nsset.desing import desingularize
from nsset.homology import homology
from nsset.iso import are_isomorphic
from nsset.simpset import (
    SimpMap,
    SimplicialError,
    compose_maps,
    constant_map,
    empty,
    identity_map,
    nondegenerate,
    standard,
)
from nsset.strom import (
    StromStructure,
    cobase_change,
    cobase_change_strom,
    pushout_comparison_check,
    strom_from_barratt_eden,
    strom_sd2,
    trivial_structure,
    verify_strom,
)
from nsset.subcomplex import Subcomplex, standard_subcomplex, whole

from conftest import edge01, zigzag_suspension


def vertex0(X):
    return Subcomplex(X, [(0, 0)])


def labels_of(S, sub_map):
    return sorted(S.B.label(sub_map.image(x).base) for x in sub_map.source.simplices(0))


def test_barratt_structure_on_interval():
    D1 = standard("simplex", 1)
    S = strom_from_barratt_eden(D1, vertex0(D1))
    assert all(verify_strom(S).values())
    assert S.W.counts == (2, 1)
    assert labels_of(S, S.j) == ["0", "01"]
    assert {S.r.image(x).index for x in S.W.simplices(0)} == {0}


def test_wrong_constant_retraction_fails_clause_three():
    D2 = standard("simplex", 2)
    S = strom_from_barratt_eden(D2, edge01(D2))
    point = [x for x in S.A.simplices(0)][1]
    wrong = constant_map(S.W, S.A, vertex=point.index)
    report = verify_strom(StromStructure(S.k, S.i, S.j, wrong, S.eps))
    assert report["eden"] and report["abyss"] and not report["retraction"]


def test_barratt_structure_on_triangle_edge():
    D2 = standard("simplex", 2)
    S = strom_from_barratt_eden(D2, edge01(D2))
    assert all(verify_strom(S).values())
    assert S.W.count(0) == 6
    assert labels_of(S, S.j) == ["0", "01", "012", "02", "1", "12"]
    r_of = {S.B.label(S.j.image(x).base): S.A.label(S.r.image(x).base) for x in S.W.simplices(0)}
    assert r_of["02"] == "0" and r_of["12"] == "1" and r_of["012"] == "01"


def test_full_subcomplex_gives_identity_retraction():
    D2 = standard("simplex", 2)
    S = strom_from_barratt_eden(D2, whole(D2))
    assert all(verify_strom(S).values())
    assert S.W == S.B and S.r == identity_map(S.A)


def test_preconditions():
    D2 = standard("simplex", 2)
    with pytest.raises(SimplicialError):
        strom_from_barratt_eden(D2, standard_subcomplex("boundary", 2))


def test_sd2_examples():
    D2 = standard("simplex", 2)
    for A in (standard_subcomplex("boundary", 2), standard_subcomplex("horn", 2, 0)):
        S = strom_sd2(D2, A)
        assert all(verify_strom(S).values())
    S = strom_sd2(standard("simplex", 0), Subcomplex(standard("simplex", 0), []))
    assert S.A.is_empty() and S.W.is_empty()
    assert all(verify_strom(S).values())


def test_trivial_structure_and_empty_cobase_change():
    D1 = standard("simplex", 1)
    S = trivial_structure(D1)
    assert all(verify_strom(S).values())
    C = standard("simplex", 2)
    T = cobase_change_strom(S, SimpMap(empty(), C, []))
    assert all(verify_strom(T).values())
    assert are_isomorphic(T.B, coproduct([D1, C])[0]) is not None


def test_cobase_change_examples():
    D1 = standard("simplex", 1)
    S = strom_from_barratt_eden(D1, vertex0(D1))
    f = identity_map(S.A)
    assert all(verify_strom(cobase_change_strom(S, f)).values())
    assert pushout_comparison_check(S, f)
    g = SimpMap(S.A, D1, [[nondegenerate(0, 1)]])
    T = cobase_change_strom(S, g)
    assert all(verify_strom(T).values()) and T.B.counts == (4, 3)
    assert pushout_comparison_check(S, g)


def test_collapsed_boundary_cobase_change():
    S = strom_sd2(standard("simplex", 2), standard_subcomplex("boundary", 2))
    f = constant_map(S.A, standard("simplex", 0))
    ch = cobase_change(S, f)
    T = ch.structure
    assert all(verify_strom(T).values())
    assert T.B.counts == (14, 36, 24)
    assert homology(T.B).lines() == ["H_0 = Z", "H_1 = 0", "H_2 = Z"]
    assert are_isomorphic(T.B, zigzag_suspension(6)) is not None
    assert pushout_comparison_check(S, f, ch)


def test_cobase_change_on_corpus():
    n = 0
    for k, (X, A) in enumerate(eden_pairs(CorpusSpec(0, 3, 12, 6))):
        S = strom_from_barratt_eden(X, A)
        for _, f in strom_targets(item_rng(0, k, "targets"), S.A):
            ch = cobase_change(S, f)
            assert all(verify_strom(ch.structure).values())
            assert pushout_comparison_check(S, f, ch)
            n += 1
    assert n >= 20


def test_cobase_change_rejects_singular_target(s2):
    D1 = standard("simplex", 1)
    S = strom_from_barratt_eden(D1, vertex0(D1))
    with pytest.raises(SimplicialError):
        cobase_change(S, constant_map(S.A, s2))


def test_two_stage_composite_pushout_homology():
    D2 = standard("simplex", 2)
    first = strom_sd2(D2, standard_subcomplex("horn", 2, 0))
    X = first.B
    D1 = standard("simplex", 1)
    arm = strom_from_barratt_eden(D1, vertex0(D1))
    corner = SimpMap(arm.A, X, [[first.k.image((0, 0))]])
    second = cobase_change_strom(arm, corner)
    composite = compose_maps(second.k, first.k)
    for _, g in strom_targets(item_rng(0, 0, "composite"), first.A):
        apex = pushout(composite, g).apex
        assert homology(apex) == homology(desingularize(apex).dx)
