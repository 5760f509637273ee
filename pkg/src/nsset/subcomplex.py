"""Simplicial subsets, fullness, edens and abysses, characteristic maps.

A subset ``A`` of ``X`` is *full* when every non-degenerate simplex whose
vertices all lie in ``A`` belongs to ``A``.  A full ``A`` is an *eden* when no
non-degenerate edge runs from outside ``A`` into ``A`` (every edge ending in
``A`` starts in ``A``), and an *abyss* when no edge leaves ``A``.
"""
from __future__ import annotations

from typing import Iterable

from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    SimplicialError,
    map_from_function,
    nondegenerate,
    standard,
    standard_element,
)


class Subcomplex:
    """A face-closed set of non-degenerate simplices of ``ambient``."""

    def __init__(self, ambient: FinSimpSet, members: Iterable, check: bool = True):
        self.ambient = ambient
        self.members = frozenset(SimplexId(*m) for m in members)
        if check:
            for x in self.members:
                ambient._require(x)
                if x.dim > 0:
                    for f in ambient.faces[x.dim][x.index]:
                        if f.base not in self.members:
                            raise SimplicialError(f"subcomplex is not closed under faces at {x}")
        self._space = None
        self._inclusion = None

    def __contains__(self, x) -> bool:
        return SimplexId(*x) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.members == other.members and self.ambient == other.ambient

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subcomplex({len(self.members)} of {len(self.ambient)} simplices)"

    def sorted_members(self) -> list[SimplexId]:
        return sorted(self.members)

    def vertices(self) -> frozenset[int]:
        return frozenset(x.index for x in self.members if x.dim == 0)

    def is_empty(self) -> bool:
        return not self.members

    def _build(self) -> None:
        X = self.ambient
        order = self.sorted_members()
        renumber = {}
        counts: dict[int, int] = {}
        for x in order:
            renumber[x] = SimplexId(x.dim, counts.get(x.dim, 0))
            counts[x.dim] = counts.get(x.dim, 0) + 1
        top = max(counts, default=-1)
        faces = [[] for _ in range(top + 1)]
        labels = {}
        for x in order:
            if x.dim == 0:
                faces[0].append(())
            else:
                faces[x.dim].append(
                    tuple(NormalSimplex(f.dim, renumber[f.base].index, f.degeneracy) for f in X.faces[x.dim][x.index])
                )
            if x in X.labels:
                labels[renumber[x]] = X.labels[x]
        self._space = FinSimpSet(faces, labels, check=False)
        images = [[None] * c for c in self._space.counts]
        for x, y in renumber.items():
            images[y.dim][y.index] = nondegenerate(*x)
        self._inclusion = SimpMap(self._space, X, images)
        self._renumber = renumber

    @property
    def space(self) -> FinSimpSet:
        if self._space is None:
            self._build()
        return self._space

    def inclusion(self) -> SimpMap:
        if self._inclusion is None:
            self._build()
        return self._inclusion

    def local_id(self, x) -> SimplexId:
        """Id in :attr:`space` of the ambient simplex ``x``."""
        if self._space is None:
            self._build()
        return self._renumber[SimplexId(*x)]


def generated_by(X: FinSimpSet, simplices: Iterable) -> Subcomplex:
    members = set()
    for x in simplices:
        members |= X.faces_of(SimplexId(*x))
    return Subcomplex(X, members, check=False)


def whole(X: FinSimpSet) -> Subcomplex:
    return Subcomplex(X, X.simplices(), check=False)


def full_subcomplex(X: FinSimpSet, vertices: Iterable[int]) -> Subcomplex:
    vs = set(vertices)
    return Subcomplex(X, (x for x in X.simplices() if set(X.vertices(x)) <= vs), check=False)


def image_subcomplex(f: SimpMap) -> Subcomplex:
    return Subcomplex(f.target, {y.base for level in f.images for y in level}, check=False)


def preimage(f: SimpMap, A: Subcomplex) -> Subcomplex:
    return Subcomplex(f.source, (x for x in f.source.simplices() if f.image(x).base in A.members), check=False)


def standard_subcomplex(kind: str, n: int, k: int | None = None) -> Subcomplex:
    """``boundary``/``horn``/``simplex`` as a subcomplex of ``Delta[n]``."""
    from .simpset import standard_subsets

    X = standard("simplex", n)
    members = []
    for s in standard_subsets(kind, n, k):
        e = standard_element(n, s)
        members.append(e.base)
    return Subcomplex(X, members, check=False)


def face_subcomplex(X: FinSimpSet, x) -> Subcomplex:
    return generated_by(X, [x])


# -- fullness, edens, abysses ---------------------------------------------

def is_full(X: FinSimpSet, A: Subcomplex) -> bool:
    vs = A.vertices()
    return all(x in A.members for x in X.simplices() if set(X.vertices(x)) <= vs)


def _edges(X: FinSimpSet):
    for i in range(X.count(1)):
        yield X.vertices((1, i))


def is_eden(X: FinSimpSet, A: Subcomplex) -> bool:
    """Full, and every non-degenerate edge whose end vertex is in ``A`` starts in ``A``."""
    vs = A.vertices()
    return is_full(X, A) and all(v0 in vs for v0, v1 in _edges(X) if v1 in vs)


def is_abyss(X: FinSimpSet, A: Subcomplex) -> bool:
    """Full, and every non-degenerate edge whose start vertex is in ``A`` ends in ``A``."""
    vs = A.vertices()
    return is_full(X, A) and all(v1 in vs for v0, v1 in _edges(X) if v0 in vs)


def is_eden_by_last_vertex(X: FinSimpSet, A: Subcomplex, max_degree: int | None = None) -> bool:
    """Every simplex (of any degree) whose last vertex lies in ``A`` lies in ``A``.

    Brute-force form of the eden condition, used to cross-check :func:`is_eden`.
    """
    top = X.dim + 2 if max_degree is None else max_degree
    vs = A.vertices()
    for n in range(top + 1):
        for s in X.degree_elements(n):
            last = X.element_vertices(s)[-1]
            if last in vs and s.base not in A.members:
                return False
    return True


def is_abyss_by_first_vertex(X: FinSimpSet, A: Subcomplex, max_degree: int | None = None) -> bool:
    top = X.dim + 2 if max_degree is None else max_degree
    vs = A.vertices()
    for n in range(top + 1):
        for s in X.degree_elements(n):
            if X.element_vertices(s)[0] in vs and s.base not in A.members:
                return False
    return True


def eden_characteristic(X: FinSimpSet, A: Subcomplex) -> SimpMap:
    """The map ``X -> Delta[1]`` labelling vertices of ``A`` by 0 and the rest by 1."""
    if not is_eden(X, A):
        raise SimplicialError("subcomplex is not an eden")
    return _vertex_labelling(X, A.vertices())


def abyss_characteristic(X: FinSimpSet, A: Subcomplex) -> SimpMap:
    """The map ``X -> Delta[1]`` labelling vertices of ``A`` by 1 and the rest by 0."""
    if not is_abyss(X, A):
        raise SimplicialError("subcomplex is not an abyss")
    vs = A.vertices()
    return _vertex_labelling(X, set(range(X.count(0))) - vs)


def _vertex_labelling(X: FinSimpSet, zeros) -> SimpMap:
    interval = standard("simplex", 1)

    def image(x: SimplexId) -> NormalSimplex:
        labels = tuple(0 if v in zeros else 1 for v in X.vertices(x))
        if any(a > b for a, b in zip(labels, labels[1:])):
            raise SimplicialError(f"vertex labels of {x} are not monotone")
        return standard_element(1, labels)

    return map_from_function(X, interval, image)


def end_fiber(chi: SimpMap, end: int) -> Subcomplex:
    """The simplices of the source sent into vertex ``end`` of ``Delta[1]``."""
    return Subcomplex(chi.source, (x for x in chi.source.simplices() if chi.image(x).base == SimplexId(0, end)), check=False)


def is_cartesian_over_vertex(chi: SimpMap, A: Subcomplex, end: int, max_degree: int | None = None) -> bool:
    """Degreewise check that ``A`` is exactly the fiber of ``chi`` over ``end``."""
    X = chi.source
    top = X.dim + 2 if max_degree is None else max_degree
    for n in range(top + 1):
        for s in X.degree_elements(n):
            y = chi(s)
            in_fiber = y.base == SimplexId(0, end)
            if in_fiber != (s.base in A.members):
                return False
    return True


def complement_full(X: FinSimpSet, A: Subcomplex) -> Subcomplex:
    return full_subcomplex(X, set(range(X.count(0))) - A.vertices())


def edge_preorder(X: FinSimpSet):
    """Reachability digraph on vertices: an edge for each non-degenerate 1-simplex."""
    import networkx as nx

    g = nx.DiGraph()
    g.add_nodes_from(range(X.count(0)))
    for v0, v1 in _edges(X):
        if v0 != v1:
            g.add_edge(v0, v1)
    return g

