"""Deterministic random corpora of finite simplicial sets, pairs and maps.

Every item is a pure function of ``(seed, index)``: the generator for item
``k`` is seeded by a string built from the seed, ``k`` and a purpose tag, so corpora are reproducible
byte for byte and items can be produced independently.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .colimits import collapse, coproduct
from .desing import desingularize
from .poset import nerve, nerve_element, pc
from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    _face_images,
    compose_maps,
    constant_map,
    identity_map,
    map_from_function,
    standard,
)
from .subcomplex import Subcomplex, eden_characteristic, edge_preorder, full_subcomplex, generated_by, is_eden

_SEARCH_BUDGET = 3000


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 0
    max_dim: int = 3
    max_cells: int = 12
    count: int = 50

    def __post_init__(self):
        if not 0 <= self.max_dim <= 3:
            raise ValueError("max_dim must lie in 0..3")
        if not 1 <= self.max_cells <= 12:
            raise ValueError("max_cells must lie in 1..12")
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def item_rng(seed: int, k: int, purpose: str = "set") -> random.Random:
    return random.Random(f"nsset:{purpose}:{seed}:{k}")


def _random_boundary(rng: random.Random, X: FinSimpSet, n: int, nonsingular: bool):
    """Faces ``(d_0, ..., d_n)`` for a new ``n``-simplex, or ``None`` if the search fails."""
    pool = X.degree_elements(n - 1)
    if nonsingular:
        pool = [s for s in pool if not s.is_degenerate()]
    budget = [_SEARCH_BUDGET]
    chosen: list[NormalSimplex] = []

    def fits(j: int, s: NormalSimplex) -> bool:
        if n == 1:
            return True
        for a in range(j):
            if X._act(s, _face_images(a, n - 1)) != X._act(chosen[a], _face_images(j - 1, n - 1)):
                return False
        return True

    def vertices_ok() -> bool:
        # vertex k of the new simplex is a vertex of d_0 (k >= 1) or of d_1 (k = 0)
        vs = (X.element_vertices(chosen[1])[0],) + X.element_vertices(chosen[0])
        return len(set(vs)) == len(vs)

    def rec(j: int) -> bool:
        if j == n + 1:
            return not nonsingular or vertices_ok()
        options = list(pool)
        rng.shuffle(options)
        for s in options:
            budget[0] -= 1
            if budget[0] < 0:
                return False
            if fits(j, s):
                chosen.append(s)
                if rec(j + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if rec(0) else None


def _embedded_vertices(faces, n: int, i: int) -> tuple[int, ...]:
    if n == 0:
        return (i,)
    d0, d1 = faces[n][i][0], faces[n][i][1]
    return (_embedded_vertices(faces, d1.dim, d1.index)[0],) + _embedded_vertices(faces, d0.dim, d0.index)


def _attach_embedded(rng: random.Random, faces: list[list[tuple]], vs: tuple[int, ...], cons: dict) -> NormalSimplex:
    """An embedded simplex on the vertex tuple ``vs`` whose faces satisfy ``cons``.

    Reuses a matching simplex when one exists (usually), otherwise creates it,
    filling each missing face recursively under the constraints imposed by
    the faces already fixed.  Only valid on non-singular tables, where faces
    of non-degenerate simplices are table lookups.
    """
    n = len(vs) - 1
    if n == 0:
        return NormalSimplex(0, vs[0], (0,))
    level = faces[n] if len(faces) > n else []
    matches = [
        i for i, fs in enumerate(level)
        if _embedded_vertices(faces, n, i) == vs and all(fs[a] == c for a, c in cons.items())
    ]
    if matches and rng.random() < 0.75:
        return NormalSimplex(n, rng.choice(matches), tuple(range(n + 1)))
    det = dict(cons)
    for j in range(n + 1):
        if j in det:
            continue
        sub = {}
        for a, f in det.items() if n > 1 else ():
            if a < j:
                sub[a] = faces[f.dim][f.index][j - 1]
            elif a > j:
                sub[a - 1] = faces[f.dim][f.index][j]
        det[j] = _attach_embedded(rng, faces, vs[:j] + vs[j + 1:], sub)
    while len(faces) <= n:
        faces.append([])
    faces[n].append(tuple(det[j] for j in range(n + 1)))
    return NormalSimplex(n, len(faces[n]) - 1, tuple(range(n + 1)))


def random_simpset(rng: random.Random, max_dim: int = 3, max_cells: int = 12, nonsingular: bool = False) -> FinSimpSet:
    """Attach random simplices along validated boundaries until ``max_cells`` is approached.

    In non-singular mode every new simplex gets pairwise distinct vertices and
    missing faces are created along with it.
    """
    faces: list[list[tuple]] = [[() for _ in range(rng.randint(1, min(3, max_cells)))]]
    target = rng.randint(min(2, max_cells), max_cells)
    X = FinSimpSet(faces)
    for _ in range(4 * max_cells):
        if len(X) >= target:
            break
        if max_dim == 0 or rng.random() < 0.12:
            faces[0].append(())
            X = FinSimpSet(faces)
            continue
        if nonsingular:
            n = rng.randint(1, min(max_dim, X.count(0) - 1)) if X.count(0) > 1 else 0
            if n == 0:
                continue
            trial = [list(level) for level in faces]
            _attach_embedded(rng, trial, tuple(rng.sample(range(X.count(0)), n + 1)), {})
            if sum(map(len, trial)) > max_cells:
                continue
            faces = trial
            X = FinSimpSet(faces)
            continue
        top = min(max_dim, X.dim + 1)
        n = top if rng.random() < 0.5 else rng.randint(1, top)
        bd = _random_boundary(rng, X, n, nonsingular)
        if bd is None:
            v = rng.randrange(X.count(0))
            bd = tuple(NormalSimplex(0, v, (0,) * n) for _ in range(n + 1))
        while len(faces) <= n:
            faces.append([])
        faces[n].append(bd)
        X = FinSimpSet(faces)
    return X


def corpus_item(spec: CorpusSpec, k: int) -> FinSimpSet:
    rng = item_rng(spec.seed, k)
    nonsingular = rng.random() < 0.5
    return random_simpset(rng, spec.max_dim, spec.max_cells, nonsingular)


def corpus(spec: CorpusSpec) -> list[FinSimpSet]:
    return [corpus_item(spec, k) for k in range(spec.count)]


# -- pairs -----------------------------------------------------------------

def random_subcomplex(rng: random.Random, X: FinSimpSet) -> Subcomplex:
    """Subcomplex generated by a random set of non-degenerate simplices (possibly empty)."""
    ids = list(X.simplices())
    picked = [x for x in ids if rng.random() < 0.3]
    return generated_by(X, picked)


def subcomplex_pairs(spec: CorpusSpec) -> list[tuple[FinSimpSet, Subcomplex]]:
    out = []
    for k in range(spec.count):
        X = corpus_item(spec, k)
        out.append((X, random_subcomplex(item_rng(spec.seed, k, "pair"), X)))
    return out


def random_eden(rng: random.Random, X: FinSimpSet, proper: bool = True) -> Subcomplex | None:
    """Full subcomplex on a random predecessor-closed vertex set."""
    g = edge_preorder(X)
    nv = X.count(0)
    for _ in range(10):
        seeds = [v for v in range(nv) if rng.random() < 0.5]
        if not seeds and nv:
            seeds = [rng.randrange(nv)]
        closed = set(seeds)
        for v in seeds:
            closed |= nx.ancestors(g, v)
        if proper and len(closed) == nv and nv > 1:
            continue
        A = full_subcomplex(X, closed)
        if is_eden(X, A):
            return A
    return None


def nonsingular_ambient(X: FinSimpSet) -> FinSimpSet:
    return X if X.is_nonsingular() else desingularize(X).dx


def eden_pairs(spec: CorpusSpec, needed: int | None = None) -> list[tuple[FinSimpSet, Subcomplex]]:
    """Eden pairs in non-singular ambients (``D`` of the corpus set when it is singular).

    Items are drawn in order until ``needed`` pairs (default ``spec.count``) exist;
    zero-dimensional ambients and failed eden searches are skipped.
    """
    needed = spec.count if needed is None else needed
    out = []
    k = 0
    while len(out) < needed and k < 20 * max(needed, 1):
        X = nonsingular_ambient(corpus_item(spec, k))
        A = random_eden(item_rng(spec.seed, k, "eden"), X) if X.dim > 0 else None
        if A is not None:
            out.append((X, A))
        k += 1
    return out


# -- maps --------------------------------------------------------------------

def pc_map(X: FinSimpSet) -> SimpMap:
    """``X -> N(pc X)`` sending a simplex to the weak chain of its vertex classes."""
    P = pc(X)
    N = nerve(P)
    cls = _vertex_classes(X)
    return map_from_function(X, N, lambda x: nerve_element(N, [cls[v] for v in X.vertices(x)]))


def _vertex_classes(X: FinSimpSet) -> dict[int, int]:
    g = edge_preorder(X)
    comps = sorted((min(c), sorted(c)) for c in nx.strongly_connected_components(g))
    return {v: k for k, (_, members) in enumerate(comps) for v in members}


def maps_to_nonsingular(rng: random.Random, X: FinSimpSet) -> list[tuple[str, SimpMap]]:
    """Maps out of ``X`` whose targets are non-singular, tagged by kind."""
    out = [("constant", constant_map(X, standard("simplex", 0))), ("pc", pc_map(X))]
    if X.count(0):
        A = random_eden(rng, X)
        if A is not None:
            out.append(("eden", eden_characteristic(X, A)))
    r = desingularize(X)
    out.append(("eta", r.eta))
    return out


def strom_targets(rng: random.Random, A: FinSimpSet) -> list[tuple[str, SimpMap]]:
    """Maps ``f: A -> C`` into non-singular ``C`` used for cobase change."""
    out = [("constant", constant_map(A, standard("simplex", 0))), ("identity", identity_map(A))]
    if len(A) > 1:
        sub = random_subcomplex(rng, A)
        if not sub.is_empty():
            po = collapse(A, sub)
            r = desingularize(po.apex)
            out.append(("collapse", compose_maps(r.eta, po.left_leg)))
    C, inj = coproduct([A, standard("simplex", 1)])
    out.append(("coproduct", inj[0]))
    return out

