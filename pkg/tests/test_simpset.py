import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsset.acceptance import check_associativity, check_embeddedness, check_normal_forms, sphere
from nsset.corpus import CorpusSpec, corpus, corpus_item
from nsset.delta import Operator, OperatorError, all_operators
from nsset.desing import desingularize
from nsset.simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    SimplicialError,
    compose_maps,
    constant_map,
    identity_map,
    inverse_map,
    is_degreewise_injective,
    is_degreewise_surjective,
    is_embedded,
    is_isomorphism,
    is_nonsingular,
    nondegenerate,
    standard,
    standard_element,
    validate_map,
)
from nsset.subcomplex import standard_subcomplex
from nsset.subdivision import sd

from conftest import edge01


def test_standard_f_vectors():
    assert standard("simplex", 2).counts == (3, 3, 1)
    assert standard("boundary", 2).counts == (3, 3)
    assert standard("horn", 2, 0).counts == (3, 2)
    assert standard("simplex", 3).counts == (4, 6, 4, 1)
    assert standard("boundary", 0).is_empty()


@pytest.mark.parametrize("args", [("horn", 0, 0), ("horn", 2, 3), ("simplex", -1), ("cube", 2)])
def test_standard_rejects(args):
    with pytest.raises(SimplicialError):
        standard(*args)


def test_act_examples(circle):
    D2 = standard("simplex", 2)
    top = nondegenerate(2, 0)
    assert D2.act(top, Operator((0, 2), 2)) == standard_element(2, (0, 2))
    assert D2.act(top, Operator((0, 1, 2), 2)) == top
    e = nondegenerate(1, 0)
    assert circle.act(e, Operator((1, 1), 1)) == NormalSimplex(0, 0, (0, 0))


def test_act_dimension_mismatch():
    with pytest.raises(OperatorError):
        standard("simplex", 2).act(nondegenerate(2, 0), Operator((0, 1), 1))


def test_embedded_examples(circle, s2):
    assert is_embedded(standard("simplex", 3), (3, 0))
    assert not is_embedded(circle, (1, 0))
    assert not is_embedded(s2, (2, 0))


def test_nonsingular_examples(s2):
    for n in range(4):
        assert is_nonsingular(standard("simplex", n))
        assert is_nonsingular(standard("boundary", n))
    assert is_nonsingular(standard("horn", 3, 1))
    assert not is_nonsingular(s2)
    assert is_nonsingular(sd(sphere(1)))


def test_validate_map_examples():
    D1 = standard("simplex", 1)
    assert validate_map(identity_map(standard("simplex", 2)))
    const = SimpMap(D1, D1, [[nondegenerate(0, 0), nondegenerate(0, 0)], [NormalSimplex(0, 0, (0, 0))]])
    assert validate_map(const)
    clash = SimpMap(D1, D1, [[nondegenerate(0, 1), nondegenerate(0, 1)], [nondegenerate(1, 0)]])
    assert not validate_map(clash)


def test_compose_collapse_maps_is_constant(triangle_mod_edge):
    from nsset.colimits import collapse

    D2 = standard("simplex", 2)
    q1 = collapse(D2, edge01(D2)).left_leg
    q2 = constant_map(q1.target, standard("simplex", 0))
    assert compose_maps(q2, q1) == constant_map(D2, standard("simplex", 0))
    f = identity_map(D2)
    assert compose_maps(f, f) == f


def test_injectivity_examples(s2):
    A = standard_subcomplex("boundary", 2)
    assert is_degreewise_injective(A.inclusion())
    assert not is_degreewise_injective(constant_map(standard("simplex", 1), standard("simplex", 0)))
    assert not is_degreewise_injective(desingularize(s2).eta)


def brute_injective(f):
    X = f.source
    for n in range(X.dim + 3):
        images = [f(s) for s in X.degree_elements(n)]
        if len(set(images)) != len(images):
            return False
    return True


def corpus_maps():
    from nsset.corpus import item_rng, maps_to_nonsingular

    out = []
    for k, X in enumerate(corpus(CorpusSpec(0, 3, 12, 20))):
        out += [g for _, g in maps_to_nonsingular(item_rng(0, k, "maps"), X)]
        out.append(identity_map(X))
    return out


def test_injectivity_matches_brute_force():
    maps = corpus_maps() + [standard_subcomplex("horn", 3, 1).inclusion()]
    assert any(is_degreewise_injective(f) for f in maps)
    assert any(not is_degreewise_injective(f) for f in maps)
    for f in maps:
        assert is_degreewise_injective(f) == brute_injective(f)


def test_surjectivity_matches_brute_force():
    for f in corpus_maps():
        T = f.target
        hit = all(
            set(T.degree_elements(n)) <= {f(s) for s in f.source.degree_elements(n)} for n in range(T.dim + 3)
        )
        assert is_degreewise_surjective(f) == hit


def test_inverse_map():
    X = standard("simplex", 2)
    f = identity_map(X)
    assert is_isomorphism(f) and inverse_map(f) == f
    with pytest.raises(SimplicialError):
        inverse_map(constant_map(X, standard("simplex", 0)))


def test_kernel_invariants_standard():
    for X in (standard("simplex", 3), standard("boundary", 3), sphere(2), sphere(3)):
        assert check_associativity(X, 3)
        assert check_normal_forms(X, X.dim + 2)
        assert check_embeddedness(X)


def test_corrupted_faces_rejected():
    X = standard("simplex", 2)
    faces = [list(level) for level in X.faces]
    faces[2][0] = (faces[2][0][1], faces[2][0][0], faces[2][0][2])
    with pytest.raises(SimplicialError):
        FinSimpSet(faces)
    with pytest.raises(SimplicialError):
        FinSimpSet([[()], [(nondegenerate(0, 0), nondegenerate(0, 3))]])


def test_labels_do_not_affect_equality():
    X = standard("simplex", 1)
    Y = FinSimpSet(X.faces)
    assert X.labels and not Y.labels and X == Y and hash(X) == hash(Y)


def test_degree_elements_are_distinct():
    X = sphere(2)
    for n in range(5):
        elems = X.degree_elements(n)
        assert len(set(elems)) == len(elems)
        for s in elems:
            assert X._act(s, tuple(range(n + 1))) == s


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_associativity_on_random_sets(seed):
    X = corpus_item(CorpusSpec(seed, 2, 8, 1), 0)
    assert check_associativity(X, 2)
    assert check_normal_forms(X, X.dim + 2)
    assert check_embeddedness(X)


def test_face_lookup():
    X = standard("simplex", 2)
    assert X.face((2, 0), 0) == standard_element(2, (1, 2))
    assert X.vertices((2, 0)) == (0, 1, 2)
    assert SimplexId(1, 2) in X.faces_of((2, 0))
    with pytest.raises(SimplicialError):
        X.face((3, 0), 0)


def test_operator_action_through_all_operators():
    X = standard("simplex", 2)
    top = nondegenerate(2, 0)
    for m in range(4):
        for a in all_operators(m, 2):
            assert X.element_vertices(X._act(top, a)) == a
