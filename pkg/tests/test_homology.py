from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from nsset.acceptance import sphere
from nsset.corpus import CorpusSpec, corpus, corpus_item, item_rng, maps_to_nonsingular
from nsset.desing import desingularize
from nsset.homology import (
    chains,
    cone,
    cone_is_acyclic,
    euler_characteristic,
    f_vector,
    homology,
    homology_dense,
    homology_of_complex,
    homology_of_map,
    induces_homology_iso,
    invariant_factors,
    smith_normal_form,
)
from nsset.iso import are_isomorphic
from nsset.simpset import compose_maps, constant_map, identity_map, standard
from nsset.subdivision import iterated_sd, last_vertex

from conftest import ordered_complex

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def groups(X):
    return [line.split(" = ")[1] for line in homology(X).lines()]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
    assert smith_normal_form([[0, 0], [0, 0]])[0] == [[0, 0], [0, 0]]
    assert smith_normal_form([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_matches_sympy(M):
    D, U, V, Ui, Vi = smith_normal_form(M, inverses=True)
    assert matmul(matmul(U, M), V) == D
    assert matmul(U, Ui) == [[int(i == j) for j in range(len(U))] for i in range(len(U))]
    assert matmul(V, Vi) == [[int(i == j) for j in range(len(V))] for i in range(len(V))]
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]) if a) and all(d >= 0 for d in diag)
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    S = sympy_snf(Matrix(M), domain=ZZ)
    theirs = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i])
    assert sorted(d for d in diag if d) == theirs


def test_chains_examples(s2, circle):
    assert chains(standard("simplex", 0)).ranks == [1]
    C = chains(s2)
    assert C.ranks == [1, 0, 1] and C.boundary[2] == [{}]
    assert chains(circle).boundary[1] == [{}]
    assert chains(standard("simplex", 1)).boundary[1] == [{0: -1, 1: 1}]


def test_homology_examples(s2):
    for n in range(4):
        assert groups(standard("simplex", n)) == ["Z"] + ["0"] * n
    assert groups(s2) == ["Z", "0", "Z"]
    assert groups(desingularize(iterated_sd(s2, 2)).dx) == ["Z", "0", "Z"]
    assert groups(ordered_complex(RP2)) == ["Z", "Z/2", "0"]
    assert groups(standard("boundary", 3)) == ["Z", "0", "Z"]


def test_f_vector_and_euler(s2):
    X = iterated_sd(standard("simplex", 2), 2)
    assert f_vector(X) == (25, 60, 36) and euler_characteristic(X) == 1
    assert f_vector(s2) == (1, 0, 1) and euler_characteristic(s2) == 2
    assert euler_characteristic(ordered_complex(RP2)) == 1


def test_corpus_invariants():
    for X in corpus(CorpusSpec(0, 3, 12, 50)):
        C = chains(X)
        assert C.boundary_squares_vanish()
        h = homology(X)
        assert h == homology_dense(X)
        assert euler_characteristic(X) == sum((-1) ** n * b for n, b in enumerate(h.betti))
        Y = are_isomorphic(X, X).target
        assert homology(Y) == h


def test_map_examples(s2):
    X = ordered_complex(RP2)
    H = homology_of_map(identity_map(X))
    assert H.is_isomorphism()
    assert H.matrices[1] == [[1]]
    assert induces_homology_iso(last_vertex(standard("simplex", 1)))
    assert not induces_homology_iso(constant_map(s2, standard("simplex", 0)))
    assert not induces_homology_iso(constant_map(X, standard("simplex", 0)))
    S2 = iterated_sd(s2, 2)
    unit = desingularize(S2).eta
    assert induces_homology_iso(unit) and cone_is_acyclic(unit)


def test_cone_of_identity_is_acyclic():
    X = ordered_complex(RP2)
    assert cone(identity_map(X)).boundary_squares_vanish()
    assert homology_of_complex(cone(identity_map(X))).trimmed() == ()


def test_map_routes_agree_on_corpus():
    for k, X in enumerate(corpus(CorpusSpec(0, 3, 12, 25))):
        for _, f in maps_to_nonsingular(item_rng(0, k, "maps"), X):
            assert cone(f).boundary_squares_vanish()
            assert induces_homology_iso(f) == cone_is_acyclic(f)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_isomorphisms_compose(seed):
    X = corpus_item(CorpusSpec(seed, 3, 10, 1), 0)
    f = identity_map(X)
    assert induces_homology_iso(compose_maps(f, f))
    assert homology_of_map(f).source == homology(X)


def test_sphere_helper():
    for n in range(1, 4):
        assert groups(sphere(n)) == ["Z"] + ["0"] * (n - 1) + ["Z"]
