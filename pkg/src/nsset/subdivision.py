"""Barratt nerve, Kan subdivision, the comparison ``b_X`` and the last vertex map.

A non-degenerate ``m``-simplex of ``Sd X`` is a pair ``(x, S)`` where ``x`` is a
non-degenerate ``n``-simplex of ``X`` and ``S = (S_0 < ... < S_m)`` is a strict
chain of non-empty subsets of ``[n]`` with ``S_m = [n]``: ``Sd`` preserves
colimits and attaches, for each cell of ``X``, the simplices of ``Sd Delta[n]``
not lying in ``Sd (boundary Delta[n])``.  A general simplex of ``Sd Delta[n]``
(a weak chain with arbitrary top ``T``) is carried by the face ``x . delta_T``
and is normalized through the normal form of that face.

:func:`sd_skeletal` builds the same object literally by skeletal pushouts of
Barratt nerves of standard simplices and serves as an independent check.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .colimits import coproduct, pushout
from .poset import nerve, nerve_element, sharp
from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    compose_maps,
    map_from_function,
    nondegenerate,
    standard,
    standard_element,
    standard_subset,
)
from .subcomplex import Subcomplex

Subset = tuple[int, ...]
Chain = tuple[Subset, ...]


def barratt(X: FinSimpSet) -> FinSimpSet:
    """``B X``, the nerve of the face poset; always non-singular."""
    P = sharp(X)
    B = nerve(P)
    B.face_poset = P
    return B


def _top_chains(n: int) -> list[list[Chain]]:
    """Strict chains of non-empty subsets of ``[n]`` ending in ``[n]``, by length."""
    full = tuple(range(n + 1))
    proper = [s for k in range(1, n + 1) for s in combinations(full, k)]
    levels: list[list[Chain]] = [[(full,)]]
    current = [(full,)]
    while True:
        nxt = []
        for c in current:
            bottom = set(c[0])
            for s in proper:
                if len(s) < len(bottom) and bottom.issuperset(s):
                    nxt.append((s,) + c)
        if not nxt:
            break
        levels.append(sorted(nxt))
        current = nxt
    return levels


_TOP_CHAINS: dict[int, list[list[Chain]]] = {}


def top_chains(n: int) -> list[list[Chain]]:
    hit = _TOP_CHAINS.get(n)
    if hit is None:
        hit = _TOP_CHAINS[n] = _top_chains(n)
    return hit


def _push(chain: Sequence[Subset], alpha: Sequence[int]) -> list[Subset]:
    return [tuple(sorted({alpha[v] for v in s})) for s in chain]


def _strictify(chain: Sequence[Subset]) -> tuple[Chain, tuple[int, ...]]:
    strict: list[Subset] = []
    epi = []
    for s in chain:
        if not strict or strict[-1] != s:
            strict.append(s)
        epi.append(len(strict) - 1)
    return tuple(strict), tuple(epi)


class Subdivision:
    """``Sd X`` with the bookkeeping to name its simplices as ``(x, chain)`` pairs."""

    def __init__(self, X: FinSimpSet):
        self.base = X
        keys: list[list[tuple[SimplexId, Chain]]] = []
        for x in X.simplices():
            for m, level in enumerate(top_chains(x.dim)):
                while len(keys) <= m:
                    keys.append([])
                for c in level:
                    keys[m].append((x, c))
        self.keys = [sorted(level) for level in keys]
        self.index = {key: (m, k) for m, level in enumerate(self.keys) for k, key in enumerate(level)}
        faces = []
        labels = {}
        for m, level in enumerate(self.keys):
            row = []
            for k, (x, c) in enumerate(level):
                if m == 0:
                    row.append(())
                    labels[SimplexId(0, k)] = X.label(x)
                    continue
                fs = [self._generator(x, c[:j] + c[j + 1:]) for j in range(m)]
                fs.append(self.element(x, c[:-1]))
                row.append(tuple(fs))
            faces.append(row)
        self.space = FinSimpSet(faces, labels, check=False)

    def _generator(self, x: SimplexId, c: Chain) -> NormalSimplex:
        m, k = self.index[(x, c)]
        return nondegenerate(m, k)

    def element(self, x, chain: Sequence[Subset]) -> NormalSimplex:
        """Normal form of the simplex of ``Sd X`` given by ``x`` and a weak chain."""
        x = SimplexId(*x)
        X = self.base
        top = chain[-1]
        z = X._act(nondegenerate(x.dim, x.index), top)
        # position inside ``top`` of each vertex, then push along z's degeneracy
        where = {v: p for p, v in enumerate(top)}
        sigma = z.degeneracy
        pushed = [tuple(sorted({sigma[where[v]] for v in s})) for s in chain]
        strict, epi = _strictify(pushed)
        m, k = self.index[(z.base, strict)]
        return NormalSimplex(m, k, epi)

    def key(self, y) -> tuple[SimplexId, Chain]:
        return self.keys[y[0]][y[1]]


def subdivision(X: FinSimpSet) -> Subdivision:
    return Subdivision(X)


def sd(X: FinSimpSet) -> FinSimpSet:
    S = Subdivision(X)
    S.space.subdivision = S
    return S.space


def _sd_data(SX: FinSimpSet, X: FinSimpSet) -> Subdivision:
    S = getattr(SX, "subdivision", None)
    if S is None or S.base != X:
        S = Subdivision(X)
        if S.space != SX:
            raise ValueError("given set is not the subdivision of the given base")
    return S


def iterated_sd(X: FinSimpSet, k: int) -> FinSimpSet:
    for _ in range(k):
        X = sd(X)
    return X


def sd_map(f: SimpMap, source: FinSimpSet | None = None, target: FinSimpSet | None = None) -> SimpMap:
    """``Sd f``: ``(x, S) -> (y, tau(S))`` where ``f(x) = y . tau``."""
    SX = source if source is not None else sd(f.source)
    SY = target if target is not None else sd(f.target)
    A = _sd_data(SX, f.source)
    B = _sd_data(SY, f.target)

    def image(g: SimplexId) -> NormalSimplex:
        x, c = A.key(g)
        y = f.image(x)
        strict, epi = _strictify(_push(c, y.degeneracy))
        m, k = B.index[(y.base, strict)]
        return NormalSimplex(m, k, epi)

    return map_from_function(SX, SY, image)


def b_map(X: FinSimpSet, source: FinSimpSet | None = None, target: FinSimpSet | None = None) -> SimpMap:
    """``b_X: Sd X -> B X``, sending ``(x, S)`` to the chain of faces ``x . delta_{S_k}``."""
    SX = source if source is not None else sd(X)
    BX = target if target is not None else barratt(X)
    S = _sd_data(SX, X)
    P = BX.face_poset if hasattr(BX, "face_poset") else sharp(X)

    def image(g: SimplexId) -> NormalSimplex:
        x, c = S.key(g)
        s = nondegenerate(*x)
        return nerve_element(BX, [P.position[X._act(s, part).base] for part in c])

    return map_from_function(SX, BX, image)


def last_vertex(X: FinSimpSet, source: FinSimpSet | None = None) -> SimpMap:
    """``d_X: Sd X -> X``, sending ``(x, S)`` to ``x . alpha`` with ``alpha(k) = max S_k``."""
    SX = source if source is not None else sd(X)
    S = _sd_data(SX, X)

    def image(g: SimplexId) -> NormalSimplex:
        x, c = S.key(g)
        return X._act(nondegenerate(*x), tuple(part[-1] for part in c))

    return map_from_function(SX, X, image)


# -- literal skeletal construction ----------------------------------------

def _simplex_poset_element(P, n: int, subset: Subset) -> int:
    return P.position[standard_element(n, subset).base]


def sd_skeletal(X: FinSimpSet) -> FinSimpSet:
    """``Sd X`` by attaching one ``B Delta[n]`` per non-degenerate ``n``-simplex.

    ``Sd X^n`` is the pushout of ``Sd X^{n-1} <- coprod Sd(boundary) -> coprod B Delta[n]``.
    The attaching map sends a chain with top ``T`` through the cell of the
    carrier ``x . delta_T = z . sigma``, using ``Sd`` only on standard simplices.
    """
    if X.is_empty():
        return X
    model, points = coproduct([standard("simplex", 0)] * X.count(0))
    cells: dict[SimplexId, SimpMap] = {SimplexId(0, i): points[i] for i in range(X.count(0))}
    posets = {0: sharp(standard("simplex", 0))}
    nerves = {0: nerve(posets[0])}
    for n in range(1, X.dim + 1):
        Dn = standard("simplex", n)
        posets[n] = sharp(Dn)
        nerves[n] = nerve(posets[n])
        if X.count(n) == 0:
            continue
        BD = nerves[n]
        full = posets[n].position[SimplexId(n, 0)]
        boundary = Subcomplex(BD, [y for y in BD.simplices() if full not in BD.chain_list[y.dim][y.index]], check=False)
        dB = boundary.space
        ids = list(X.simplices(n))
        src, src_inj = coproduct([dB] * len(ids))
        tgt, tgt_inj = coproduct([BD] * len(ids))
        incl = boundary.inclusion()
        left_images = [[None] * c for c in src.counts]
        right_images = [[None] * c for c in src.counts]
        for x, s_inj, t_inj in zip(ids, src_inj, tgt_inj):
            sx = nondegenerate(*x)
            for y in dB.simplices():
                yy = incl.image(y)
                chain = [posets[n].simplex_ids[e] for e in BD.chain_list[yy.dim][yy.index]]
                subsets = [standard_subset(n, e) for e in chain]
                top = subsets[-1]
                z = X._act(sx, top)
                where = {v: p for p, v in enumerate(top)}
                pushed = [tuple(sorted({z.degeneracy[where[v]] for v in s})) for s in subsets]
                p = z.dim
                elem = nerve_element(nerves[p], [_simplex_poset_element(posets[p], p, s) for s in pushed])
                g = s_inj.image(y)
                left_images[g.dim][g.index] = cells[z.base](elem)
                right_images[g.dim][g.index] = t_inj(yy)
        attach = SimpMap(src, model, left_images)
        inclusion = SimpMap(src, tgt, right_images)
        po = pushout(attach, inclusion)
        cells = {z: compose_maps(po.left_leg, c) for z, c in cells.items()}
        for x, t_inj in zip(ids, tgt_inj):
            cells[x] = compose_maps(po.right_leg, t_inj)
        model = po.apex
    return model
