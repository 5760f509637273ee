"""Finite posets, nerves, face posets and the reflection ``pc``.

``pc(X)`` is the poset reflection of the categorification of ``X``: the
vertices of ``X`` preordered by reachability along non-degenerate edges, with
strongly connected classes collapsed.  Composition relations in the
categorification never change reachability, so they are not needed.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .simpset import FinSimpSet, NormalSimplex, SimpMap, SimplexId, SimplicialError, nondegenerate


class PosetError(ValueError):
    pass


class FinPoset:
    """A partial order on ``range(size)`` stored as a reflexive ``leq`` matrix."""

    def __init__(self, size: int, pairs: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None,
                 close: bool = False, check: bool = True):
        self.size = size
        self.leq = [[i == j for j in range(size)] for i in range(size)]
        for i, j in pairs:
            self.leq[i][j] = True
        if close:
            self._close()
        self.labels = list(labels) if labels is not None else None
        if check:
            self._check()

    def _close(self) -> None:
        n = self.size
        for k in range(n):
            row_k = self.leq[k]
            for i in range(n):
                if self.leq[i][k]:
                    row_i = self.leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True

    def _check(self) -> None:
        n = self.size
        for i in range(n):
            if not self.leq[i][i]:
                raise PosetError("relation is not reflexive")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise PosetError(f"relation is not antisymmetric at {i}, {j}")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise PosetError(f"relation is not transitive at {i}, {j}, {k}")

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.leq[i][j]]

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in self.pairs() if i != j]

    def hasse(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i, j in self.strict_pairs()
            if not any(self.lt(i, k) and self.lt(k, j) for k in range(self.size))
        ]

    def down(self, j: int) -> list[int]:
        return [i for i in range(self.size) if self.leq[i][j]]

    def up(self, i: int) -> list[int]:
        return [j for j in range(self.size) if self.leq[i][j]]

    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        order = sorted(range(self.size), key=lambda i: len(self.down(i)))
        h = [0] * self.size
        for j in order:
            h[j] = max((h[i] + 1 for i in self.down(j) if i != j), default=0)
        return h

    def height(self) -> int:
        """Number of elements in a longest chain."""
        return max(self.heights(), default=-1) + 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.size == other.size and self.leq == other.leq

    __hash__ = None

    def __repr__(self) -> str:
        return f"FinPoset(size={self.size}, relations={len(self.strict_pairs())})"


class MonotoneMap:
    def __init__(self, source: FinPoset, target: FinPoset, images: Sequence[int]):
        self.source = source
        self.target = target
        self.images = tuple(images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_monotone(self) -> bool:
        return all(self.target.le(self.images[i], self.images[j]) for i, j in self.source.pairs())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.images == other.images and self.source == other.source and self.target == other.target

    __hash__ = None


def compose_monotone(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    return MonotoneMap(f.source, g.target, [g(v) for v in f.images])


def chain(n: int) -> FinPoset:
    """The ordinal ``[n]``."""
    return FinPoset(n + 1, [(i, j) for i in range(n + 1) for j in range(i, n + 1)], check=False)


def antichain(n: int) -> FinPoset:
    return FinPoset(n, check=False)


def product_with_arrow(P: FinPoset) -> FinPoset:
    """``P x [1]`` with element ``(p, e)`` numbered ``2 p + e``."""
    pairs = [
        (2 * p + a, 2 * q + b)
        for p, q in P.pairs()
        for a in (0, 1)
        for b in (0, 1)
        if a <= b
    ]
    return FinPoset(2 * P.size, pairs, check=False)


# -- nerve -----------------------------------------------------------------

def chains(P: FinPoset) -> list[list[tuple[int, ...]]]:
    """Strictly increasing chains by length, each level sorted lexicographically.

    Elements are listed in a linear extension so that every chain is an
    increasing tuple of positions in that extension.
    """
    order = linear_extension(P)
    levels: list[list[tuple[int, ...]]] = []
    current = [(v,) for v in order]
    while current:
        levels.append(current)
        nxt = []
        for c in current:
            last = c[-1]
            for v in order:
                if P.lt(last, v):
                    nxt.append(c + (v,))
        current = nxt
    return [sorted(level) for level in levels]


def linear_extension(P: FinPoset) -> list[int]:
    """Elements sorted by number of predecessors, ties by index."""
    return sorted(range(P.size), key=lambda i: (len(P.down(i)), i))


def nerve(P: FinPoset) -> FinSimpSet:
    """Nerve: non-degenerate ``n``-simplices are strict chains of ``n + 1`` elements."""
    levels = chains(P)
    index = [{c: k for k, c in enumerate(level)} for level in levels]
    faces = []
    labels = {}
    for d, level in enumerate(levels):
        row = []
        for k, c in enumerate(level):
            labels[SimplexId(d, k)] = "<".join(P.label(v) for v in c)
            if d == 0:
                row.append(())
            else:
                row.append(tuple(nondegenerate(d - 1, index[d - 1][c[:j] + c[j + 1:]]) for j in range(d + 1)))
        faces.append(row)
    X = FinSimpSet(faces, labels, check=False)
    X.chain_index = index
    X.chain_list = levels
    return X


def nerve_chain(X: FinSimpSet, x) -> tuple[int, ...]:
    """The chain of poset elements behind a non-degenerate simplex of a nerve."""
    return X.chain_list[x[0]][x[1]]


def nerve_element(X: FinSimpSet, weak_chain: Sequence[int]) -> NormalSimplex:
    """Normal form of the simplex of a nerve given by a weakly increasing chain."""
    mono: list[int] = []
    epi = []
    for v in weak_chain:
        if not mono or mono[-1] != v:
            mono.append(v)
        epi.append(len(mono) - 1)
    d = len(mono) - 1
    try:
        return NormalSimplex(d, X.chain_index[d][tuple(mono)], tuple(epi))
    except KeyError:
        raise SimplicialError(f"{tuple(weak_chain)} is not a chain") from None


def nerve_map(f: MonotoneMap, source: FinSimpSet | None = None, target: FinSimpSet | None = None) -> SimpMap:
    X = source if source is not None else nerve(f.source)
    Y = target if target is not None else nerve(f.target)
    images = [[nerve_element(Y, [f(v) for v in c]) for c in level] for level in X.chain_list]
    return SimpMap(X, Y, images)


# -- face poset ------------------------------------------------------------

def sharp(X: FinSimpSet) -> FinPoset:
    """Non-degenerate simplices ordered by the face relation.

    Element ``k`` is the ``k``-th simplex of ``X`` in (dim, index) order.
    """
    ids = list(X.simplices())
    pos = {x: k for k, x in enumerate(ids)}
    pairs = []
    for x in ids:
        for y in X.faces_of(x):
            pairs.append((pos[y], pos[x]))
    P = FinPoset(len(ids), pairs, labels=[X.label(x) for x in ids], check=False)
    P.simplex_ids = ids
    P.position = pos
    return P


def sharp_map(f: SimpMap, source: FinPoset | None = None, target: FinPoset | None = None) -> MonotoneMap:
    P = source if source is not None else sharp(f.source)
    Q = target if target is not None else sharp(f.target)
    return MonotoneMap(P, Q, [Q.position[f.image(x).base] for x in P.simplex_ids])


def is_sieve(P: FinPoset, S: Iterable[int]) -> bool:
    S = set(S)
    return all(i in S for j in S for i in P.down(j))


def is_cosieve(P: FinPoset, S: Iterable[int]) -> bool:
    S = set(S)
    return all(j in S for i in S for j in P.up(i))


# -- reflection -------------------------------------------------------------

def edge_graph(X: FinSimpSet) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(X.count(0)))
    for i in range(X.count(1)):
        v0, v1 = X.vertices((1, i))
        g.add_edge(v0, v1)
    return g


def pc(X: FinSimpSet) -> FinPoset:
    """Vertices under edge reachability, strongly connected classes collapsed.

    Classes are numbered by their smallest vertex.
    """
    g = edge_graph(X)
    comps = sorted((min(c), sorted(c)) for c in nx.strongly_connected_components(g))
    cls = {}
    for k, (_, members) in enumerate(comps):
        for v in members:
            cls[v] = k
    closure = nx.transitive_closure_dag(nx.DiGraph((cls[a], cls[b]) for a, b in g.edges() if cls[a] != cls[b]))
    pairs = list(closure.edges())
    return FinPoset(len(comps), pairs, check=False)


def q(X: FinSimpSet) -> FinPoset:
    """``pc`` restricted to non-singular simplicial sets."""
    if not X.is_nonsingular():
        raise SimplicialError("q is defined on non-singular simplicial sets")
    return pc(X)


# -- isomorphism -------------------------------------------------------------

def poset_iso(P: FinPoset, Q: FinPoset) -> MonotoneMap | None:
    """An order isomorphism ``P -> Q`` or ``None`` (backtracking with invariants)."""
    if P.size != Q.size or len(P.strict_pairs()) != len(Q.strict_pairs()):
        return None
    hp, hq = P.heights(), Q.heights()

    def signature(R: FinPoset, h, i):
        return (h[i], len(R.down(i)), len(R.up(i)))

    sp = [signature(P, hp, i) for i in range(P.size)]
    sq = [signature(Q, hq, i) for i in range(Q.size)]
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(P.size), key=lambda i: (hp[i], i))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i, j) -> bool:
        for a, b in assign.items():
            if P.le(a, i) != Q.le(b, j) or P.le(i, a) != Q.le(j, b):
                return False
        return True

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for j in range(Q.size):
            if j not in used and sp[i] == sq[j] and consistent(i, j):
                assign[i] = j
                used.add(j)
                if rec(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    if not rec(0):
        return None
    return MonotoneMap(P, Q, [assign[i] for i in range(P.size)])


def random_poset(rng, size: int, density: float = 0.3) -> FinPoset:
    """Transitive closure of a random relation respecting ``0 < 1 < ... < size-1``."""
    pairs = [(i, j) for i, j in combinations(range(size), 2) if rng.random() < density]
    return FinPoset(size, pairs, close=True, check=False)

