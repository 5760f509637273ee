"""Desingularization ``D`` and its unit ``eta: X -> D X``.

If a non-singular quotient identifies vertices ``i < j`` of the image of a
simplex ``x``, that image is ``y . sigma`` with ``y`` embedded, so ``sigma`` is
constant on ``[i..j]`` and the image is unchanged by the operator ``mu rho``
(``rho`` collapses ``[i..j]``, ``mu`` is its minimal section).  Hence every
quotient map to a non-singular set identifies ``x`` with ``x . (mu rho)``.
:func:`desingularize` imposes exactly these forced relations until none
applies; the result is the finest non-singular quotient.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .colimits import Congruence, collapse
from .delta import all_operators, interval_collapse, minimal_section
from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    SimplicialError,
    _face_images,
    compose_maps,
    is_degreewise_injective,
    nondegenerate,
)
from .subcomplex import (
    Subcomplex,
    _vertex_labelling,
    complement_full,
    end_fiber,
    image_subcomplex,
    is_abyss,
    is_cartesian_over_vertex,
    is_eden,
)


@dataclass
class Step:
    simplex: SimplexId
    i: int
    j: int

    def as_dict(self) -> dict:
        return {"simplex": f"{self.simplex.dim}/{self.simplex.index}", "i": self.i, "j": self.j}


@dataclass
class DesingResult:
    source: FinSimpSet
    dx: FinSimpSet
    eta: SimpMap
    steps: list[Step] = field(default_factory=list)
    quotient: object = None


def _collapse_operator(n: int, i: int, j: int) -> tuple[int, ...]:
    """Images of ``mu o rho`` where ``rho`` collapses ``[i..j]``."""
    rho = interval_collapse(n, i, j)
    mu = minimal_section(rho)
    return tuple(mu.images[r] for r in rho.images)


def desingularize(X: FinSimpSet, reverse: bool = False) -> DesingResult:
    """Quotient ``X`` by forced interval collapses until it is non-singular.

    Candidates ``(x, i, j)`` are scanned in canonical order (dimension, index,
    then ``(i, j)`` lexicographically), or in the opposite order when
    ``reverse`` is set.  The scan restarts only when vertex classes merge.
    """
    cong = Congruence(X)
    steps: list[Step] = []
    ids = list(X.simplices())
    if reverse:
        ids.reverse()
    while True:
        restart = False
        seen: set[tuple[int, int]] = set()
        for x in ids:
            if x.dim == 0:
                continue
            e = nondegenerate(*x)
            root = cong.class_of(e)
            if cong.degenerate[x.dim][root] or (x.dim, root) in seen:
                continue
            seen.add((x.dim, root))
            verts = [cong.class_of(NormalSimplex(0, v, (0,))) for v in X.vertices(x)]
            pairs = [(i, j) for i, j in combinations(range(x.dim + 1), 2) if verts[i] == verts[j]]
            if not pairs:
                continue
            i, j = pairs[-1] if reverse else pairs[0]
            before = cong.vertex_class_count()
            cong.relate(e, X._act(e, _collapse_operator(x.dim, i, j)))
            steps.append(Step(x, i, j))
            if cong.vertex_class_count() != before:
                restart = True
                break
        if not restart:
            break
    q = cong.quotient()
    return DesingResult(X, q.space, q.map, steps, q)


def desing(X: FinSimpSet) -> FinSimpSet:
    return desingularize(X).dx


# -- brute-force oracle ------------------------------------------------------

def _closure(X: FinSimpSet, top: int, classes: list[dict]) -> list[dict]:
    """Saturate per-degree partitions (element -> label) under the action."""
    label = [dict(c) for c in classes]
    changed = True
    while changed:
        changed = False
        for n in range(top + 1):
            groups: dict = {}
            for e, c in label[n].items():
                groups.setdefault(c, []).append(e)
            for members in groups.values():
                a = members[0]
                for b in members[1:]:
                    for m in range(top + 1):
                        for alpha in all_operators(m, n):
                            s, t = X._act(a, alpha), X._act(b, alpha)
                            ls, lt = label[m][s], label[m][t]
                            if ls != lt:
                                keep, drop = min(ls, lt), max(ls, lt)
                                for k, v in label[m].items():
                                    if v == drop:
                                        label[m][k] = keep
                                changed = True
    return label


def _freeze(label: list[dict]) -> tuple:
    out = []
    for level in label:
        groups: dict = {}
        for e, c in level.items():
            groups.setdefault(c, []).append(e)
        out.append(frozenset(frozenset(g) for g in groups.values()))
    return tuple(out)


def _nonsingular_partition(X: FinSimpSet, label: list[dict]) -> bool:
    for n in range(1, len(label)):
        groups: dict = {}
        for e, c in label[n].items():
            groups.setdefault(c, []).append(e)
        for members in groups.values():
            if any(e.is_degenerate() for e in members):
                continue
            e = members[0]
            vs = [label[0][X._act(e, (k,))] for k in range(n + 1)]
            if len(set(vs)) != len(vs):
                return False
    return True


def desing_oracle(X: FinSimpSet, max_simplices: int = 6, max_dim: int = 2) -> FinSimpSet:
    """Finest non-singular quotient by exhaustive enumeration of congruences.

    Explores every congruence reachable from the trivial one by adding
    identifications one pair at a time, keeps those with non-singular
    quotient and intersects them.  Only for tiny inputs.
    """
    if len(X) > max_simplices or X.dim > max_dim:
        raise SimplicialError(f"oracle limited to {max_simplices} simplices and dimension {max_dim}")
    top = X.dim
    elements = [X.degree_elements(n) for n in range(top + 1)]
    start = [{e: k for k, e in enumerate(level)} for level in elements]
    start = _closure(X, top, start)
    seen = {_freeze(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for label in frontier:
            for n in range(top + 1):
                level = elements[n]
                for a, b in combinations(level, 2):
                    if label[n][a] == label[n][b]:
                        continue
                    new = [dict(c) for c in label]
                    la, lb = new[n][a], new[n][b]
                    for k, v in new[n].items():
                        if v == lb:
                            new[n][k] = la
                    new = _closure(X, top, new)
                    key = _freeze(new)
                    if key not in seen:
                        seen[key] = new
                        nxt.append(new)
        frontier = nxt
    good = [key for key, label in seen.items() if _nonsingular_partition(X, label)]
    meet = _meet(good, top)
    return _space_from_partition(X, meet)


def _meet(keys: list[tuple], top: int) -> list[list[frozenset]]:
    out = []
    for n in range(top + 1):
        blocks = None
        for key in keys:
            parts = key[n]
            if blocks is None:
                blocks = list(parts)
                continue
            blocks = [b & p for b in blocks for p in parts if b & p]
        out.append(blocks or [])
    return out


def _space_from_partition(X: FinSimpSet, blocks: list[list[frozenset]]) -> FinSimpSet:
    where = [{e: k for k, b in enumerate(level) for e in b} for level in blocks]
    nf: list[dict[int, NormalSimplex]] = []
    faces = []
    order = [{e: k for k, e in enumerate(X.degree_elements(n))} for n in range(len(blocks))]
    for n, level in enumerate(blocks):
        nondeg = sorted(
            (min(order[n][e] for e in b), k) for k, b in enumerate(level) if not any(e.is_degenerate() for e in b)
        )
        level_nf = {k: nondegenerate(n, idx) for idx, (_, k) in enumerate(nondeg)}
        for k, b in enumerate(level):
            if k in level_nf:
                continue
            e = next(e for e in b if e.is_degenerate())
            y = nf[e.dim][where[e.dim][nondegenerate(e.dim, e.index)]]
            level_nf[k] = NormalSimplex(y.dim, y.index, tuple(y.degeneracy[v] for v in e.degeneracy))
        nf.append(level_nf)
        row = []
        for _, k in nondeg:
            e = next(iter(level[k]))
            if n == 0:
                row.append(())
            else:
                row.append(tuple(nf[n - 1][where[n - 1][X._act(e, _face_images(j, n))]] for j in range(n + 1)))
        faces.append(row)
    return FinSimpSet(faces)


# -- collapsing an eden ----------------------------------------------------------

def verify_collapse_structure(X: FinSimpSet, A: Subcomplex) -> dict[str, bool]:
    """Check how the complement ``V`` of an eden ``A`` sits in ``D(X/A)``.

    Returns the four checks: ``injective`` (V -> D(X/A) is degreewise
    injective), ``abyss`` (its image is an abyss), ``fibers`` (the collapsed
    point and the image of V are the two end fibers of one characteristic
    map) and ``vertex_bijection`` (eta is bijective in degree 0).
    """
    if not X.is_nonsingular():
        raise SimplicialError("ambient must be non-singular")
    if not is_eden(X, A):
        raise SimplicialError("subcomplex must be an eden")
    V = complement_full(X, A)
    po = collapse(X, A)
    res = desingularize(po.apex)
    composite = compose_maps(res.eta, compose_maps(po.left_leg, V.inclusion()))
    injective = is_degreewise_injective(composite)
    image = image_subcomplex(composite)
    D = res.dx
    abyss = is_abyss(D, image)
    point = res.eta(po.right_leg.image((0, 0))).index
    point_sub = Subcomplex(D, [SimplexId(0, point)], check=False)
    fibers = False
    if image.vertices() | {point} == set(range(D.count(0))) and point not in image.vertices():
        try:
            chi = _vertex_labelling(D, {point})
        except SimplicialError:
            chi = None
        if chi is not None:
            fibers = (
                end_fiber(chi, 0) == point_sub
                and end_fiber(chi, 1) == image
                and is_cartesian_over_vertex(chi, point_sub, 0)
                and is_cartesian_over_vertex(chi, image, 1)
            )
    vertex_bijection = D.count(0) == po.apex.count(0)
    return {"injective": injective, "abyss": abyss, "fibers": fibers, "vertex_bijection": vertex_bijection}
