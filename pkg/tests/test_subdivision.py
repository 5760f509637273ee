from hypothesis import given, settings
from hypothesis import strategies as st

from nsset.acceptance import sphere
from nsset.colimits import collapse
from nsset.corpus import CorpusSpec, corpus, corpus_item, item_rng, random_subcomplex
from nsset.desing import desingularize
from nsset.homology import homology, induces_homology_iso
from nsset.iso import are_isomorphic
from nsset.simpset import compose_maps, identity_map, is_degreewise_injective, is_isomorphism, standard, validate_map
from nsset.subcomplex import image_subcomplex, is_eden, is_eden_by_last_vertex, standard_subcomplex
from nsset.subdivision import b_map, barratt, iterated_sd, last_vertex, sd, sd_map, sd_skeletal

from conftest import edge01


def test_sd_counts():
    assert sd(standard("simplex", 1)).counts == (3, 2)
    assert sd(standard("boundary", 2)).counts == (6, 6)
    assert iterated_sd(standard("boundary", 2), 2).counts == (12, 12)
    assert sd(standard("simplex", 2)).counts == (7, 12, 6)
    assert iterated_sd(standard("simplex", 2), 2).counts == (25, 60, 36)
    assert sd(standard("simplex", 0)) == standard("simplex", 0)


def test_sd_of_spheres():
    assert sd(sphere(1)).counts == (2, 2)
    assert sd(sphere(2)).counts == (2, 6, 6)


def test_barratt_is_nerve_of_face_poset(s2):
    assert barratt(standard("simplex", 2)).counts == (7, 12, 6)
    assert barratt(s2).counts == (2, 1)
    assert barratt(s2).is_nonsingular()


def test_skeletal_construction_agrees():
    spaces = [standard("simplex", 2), standard("horn", 3, 1), sphere(1), sphere(2)]
    spaces += corpus(CorpusSpec(0, 3, 12, 15))
    for X in spaces:
        assert are_isomorphic(sd(X), sd_skeletal(X)) is not None


def test_sd_map_functorial():
    D2 = standard("simplex", 2)
    A = standard_subcomplex("horn", 2, 0)
    f = A.inclusion()
    g = collapse(D2, A).left_leg
    assert sd_map(compose_maps(g, f)) == compose_maps(sd_map(g), sd_map(f))
    assert sd_map(identity_map(D2)) == identity_map(sd(D2))


def test_sd_preserves_injectivity_and_edens():
    for k, X in enumerate(corpus(CorpusSpec(0, 3, 12, 20))):
        A = random_subcomplex(item_rng(0, k, "pair"), X)
        if A.is_empty():
            continue
        f = sd_map(A.inclusion())
        assert validate_map(f) and is_degreewise_injective(f)
        assert is_eden(sd(X), image_subcomplex(f))


def test_b_map_iso_iff_nonsingular(s2, triangle_mod_edge):
    for X in (standard("simplex", 2), standard("boundary", 3), s2, triangle_mod_edge, sphere(1)):
        assert is_isomorphism(b_map(X)) == X.is_nonsingular()


def test_last_vertex_examples():
    D1 = standard("simplex", 1)
    d = last_vertex(D1)
    assert validate_map(d)
    assert [d.image((0, i)).index for i in range(3)] == [0, 1, 1]
    assert induces_homology_iso(last_vertex(sphere(2)))
    assert induces_homology_iso(last_vertex(standard("horn", 3, 2)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_sd_preserves_homology(seed):
    X = corpus_item(CorpusSpec(seed, 3, 10, 1), 0)
    assert homology(sd(X)) == homology(X)
    assert sd(X).is_nonsingular() or not desingularize(sd(X)).dx.is_empty()


def test_sd_of_edge_subcomplex_is_eden():
    D2 = standard("simplex", 2)
    A = image_subcomplex(sd_map(edge01(D2).inclusion()))
    assert is_eden(sd(D2), A) and is_eden_by_last_vertex(sd(D2), A)
