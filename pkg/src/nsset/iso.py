"""Isomorphism search between finite simplicial sets.

Generators are first split by an iterated colour refinement (dimension,
face colours, coface colours).  The search then assigns maximal simplices
(those that are no proper face of another) one at a time; an assignment
``x -> y`` forces the images of all faces of ``x`` through the face table, so
contradictions surface early.  Every returned map is validated.
"""
from __future__ import annotations

from collections import Counter

from .simpset import FinSimpSet, SimpMap, SimplexId, is_isomorphism, nondegenerate, validate_map


def _refined(X: FinSimpSet) -> dict[SimplexId, tuple]:
    """Colour refinement with colours expressed canonically (independent of numbering)."""
    ids = list(X.simplices())
    cofaces: dict[SimplexId, list[tuple[SimplexId, int, tuple]]] = {x: [] for x in ids}
    for x in ids:
        if x.dim:
            for j, f in enumerate(X.faces[x.dim][x.index]):
                cofaces[f.base].append((x, j, f.degeneracy))
    colour: dict[SimplexId, object] = {x: x.dim for x in ids}
    classes = len(set(colour.values()))
    for _ in range(len(ids) + 1):
        raw = {}
        for x in ids:
            fs = tuple((colour[f.base], f.degeneracy) for f in X.faces[x.dim][x.index]) if x.dim else ()
            up = tuple(sorted(((colour[c], j, d) for c, j, d in cofaces[x]), key=repr))
            raw[x] = (colour[x], fs, up)
        keyed = {x: hash(repr(raw[x])) for x in ids}
        n = len(set(keyed.values()))
        colour = keyed
        if n == classes:
            break
        classes = n
    return colour


def are_isomorphic(X: FinSimpSet, Y: FinSimpSet) -> SimpMap | None:
    """An isomorphism ``X -> Y`` or ``None``."""
    if X.counts != Y.counts:
        return None
    if X == Y:
        return SimpMap(X, Y, [[nondegenerate(d, i) for i in range(c)] for d, c in enumerate(X.counts)])
    cx, cy = _refined(X), _refined(Y)
    if Counter(cx.values()) != Counter(cy.values()):
        return None
    by_colour: dict = {}
    for y in Y.simplices():
        by_colour.setdefault(cy[y], []).append(y)
    maximal = _maximal(X)
    # most constrained first: larger dimension, rarer colour
    freq = Counter(cx.values())
    maximal.sort(key=lambda x: (-x.dim, freq[cx[x]], x))
    maximal = _connected_order(X, maximal)
    assign: dict[SimplexId, SimplexId] = {}
    used: set[SimplexId] = set()

    def force(x: SimplexId, y: SimplexId, trail: list) -> bool:
        """Assign ``x -> y`` and all faces; record new assignments in ``trail``."""
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            have = assign.get(a)
            if have is not None:
                if have != b:
                    return False
                continue
            if b in used or a.dim != b.dim or cx[a] != cy[b]:
                return False
            assign[a] = b
            used.add(b)
            trail.append(a)
            if a.dim:
                for fa, fb in zip(X.faces[a.dim][a.index], Y.faces[b.dim][b.index]):
                    if fa.degeneracy != fb.degeneracy:
                        return False
                    stack.append((fa.base, fb.base))
        return True

    def undo(trail: list) -> None:
        for a in trail:
            used.discard(assign.pop(a))

    def rec(k: int) -> bool:
        if k == len(maximal):
            return len(assign) == len(X)
        x = maximal[k]
        if x in assign:
            return rec(k + 1)
        for y in by_colour.get(cx[x], []):
            if y in used:
                continue
            trail: list = []
            if force(x, y, trail) and rec(k + 1):
                return True
            undo(trail)
        return False

    if not rec(0):
        return None
    f = SimpMap(X, Y, [[nondegenerate(*assign[SimplexId(d, i)]) for i in range(c)] for d, c in enumerate(X.counts)])
    if not (validate_map(f) and is_isomorphism(f)):
        return None
    return f


def _maximal(X: FinSimpSet) -> list[SimplexId]:
    covered = set()
    for x in X.simplices():
        if x.dim:
            for f in X.faces[x.dim][x.index]:
                covered.add(f.base)
    return [x for x in X.simplices() if x not in covered]


def _connected_order(X: FinSimpSet, ranked: list[SimplexId]) -> list[SimplexId]:
    """Reorder so each simplex shares a vertex with an earlier one when possible."""
    by_vertex: dict[int, list[SimplexId]] = {}
    for x in ranked:
        for v in set(X.vertices(x)):
            by_vertex.setdefault(v, []).append(x)
    rank = {x: k for k, x in enumerate(ranked)}
    seen: set[SimplexId] = set()
    out = []
    for seed in ranked:
        if seed in seen:
            continue
        frontier = [seed]
        seen.add(seed)
        while frontier:
            frontier.sort(key=lambda x: rank[x])
            x = frontier.pop(0)
            out.append(x)
            for v in set(X.vertices(x)):
                for y in by_vertex[v]:
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
    return out
