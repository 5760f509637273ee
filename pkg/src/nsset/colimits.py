"""Quotients, coproducts, pushouts, collapses and products with Delta[1].

Every colimit here is a quotient of a finite simplicial set by the smallest
congruence containing some pairs of simplices.  The congruence is kept as a
union-find structure per degree ``0..dim``; whenever two classes merge, the
images of the merged pair under every operator into lower or equal degrees
are merged too.  Degrees above ``dim`` carry only degenerate simplices and the
quotient is determined by its ``dim``-skeleton.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .delta import all_operators
from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    SimplicialError,
    _face_images,
    constant_map,
    map_from_function,
    nondegenerate,
    standard,
    standard_element,
)


class Congruence:
    """The smallest simplicial congruence on ``X`` containing the related pairs."""

    def __init__(self, X: FinSimpSet):
        self.X = X
        self.top = X.dim
        self.elements = [X.degree_elements(n) for n in range(self.top + 1)]
        self.position = [{e: k for k, e in enumerate(level)} for level in self.elements]
        self.parent = [list(range(len(level))) for level in self.elements]
        self.degenerate = [[e.is_degenerate() for e in level] for level in self.elements]
        self.merges = 0

    def find(self, n: int, k: int) -> int:
        parent = self.parent[n]
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def class_of(self, s: NormalSimplex) -> int:
        n = s.degree
        return self.find(n, self.position[n][s])

    def same(self, s: NormalSimplex, t: NormalSimplex) -> bool:
        return s.degree == t.degree and self.class_of(s) == self.class_of(t)

    def relate(self, s: NormalSimplex, t: NormalSimplex) -> bool:
        """Impose ``s ~ t``; return whether anything changed."""
        if s.degree != t.degree:
            raise SimplicialError("only simplices of equal degree can be identified")
        if s.degree > self.top:
            raise SimplicialError("degree exceeds the dimension of the ambient set")
        changed = False
        act = self.X._act
        stack = [(s, t)]
        while stack:
            a, b = stack.pop()
            n = a.degree
            ra = self.find(n, self.position[n][a])
            rb = self.find(n, self.position[n][b])
            if ra == rb:
                continue
            if rb < ra:
                ra, rb = rb, ra
            self.parent[n][rb] = ra
            if self.degenerate[n][rb]:
                self.degenerate[n][ra] = True
            self.merges += 1
            changed = True
            for m in range(self.top + 1):
                for alpha in all_operators(m, n):
                    if m == n and alpha == tuple(range(n + 1)):
                        continue
                    stack.append((act(a, alpha), act(b, alpha)))
        return changed

    def is_degenerate_class(self, s: NormalSimplex) -> bool:
        return self.degenerate[s.degree][self.class_of(s)]

    def vertex_class_count(self) -> int:
        if self.top < 0:
            return 0
        return sum(1 for k in range(len(self.parent[0])) if self.find(0, k) == k)

    def quotient(self) -> Quotient:
        return Quotient.from_congruence(self)


@dataclass
class Quotient:
    """A quotient ``X -> X/~`` with the data to factor maps through it."""

    source: FinSimpSet
    space: FinSimpSet
    map: SimpMap
    representatives: list[list[NormalSimplex]] = field(default_factory=list)

    @classmethod
    def from_congruence(cls, cong: Congruence) -> Quotient:
        X = cong.X
        # nf[n][root] = normal form in the quotient of the class with that root
        nf: list[dict[int, NormalSimplex]] = []
        reps: list[list[NormalSimplex]] = []
        faces: list[list[tuple[NormalSimplex, ...]]] = []
        for n in range(cong.top + 1):
            elements = cong.elements[n]
            members: dict[int, list[int]] = {}
            for k in range(len(elements)):
                members.setdefault(cong.find(n, k), []).append(k)
            level_nf: dict[int, NormalSimplex] = {}
            nondeg_roots = []
            for root, ks in members.items():
                degen = next((elements[k] for k in ks if elements[k].is_degenerate()), None)
                if degen is None:
                    nondeg_roots.append((min(ks), root))
                else:
                    base_class = cong.find(degen.dim, cong.position[degen.dim][nondegenerate(degen.dim, degen.index)])
                    y = nf[degen.dim][base_class]
                    level_nf[root] = NormalSimplex(y.dim, y.index, tuple(y.degeneracy[v] for v in degen.degeneracy))
            nondeg_roots.sort()
            level_reps = []
            level_faces = []
            for idx, (first, root) in enumerate(nondeg_roots):
                level_nf[root] = nondegenerate(n, idx)
                rep = elements[first]
                level_reps.append(rep)
            nf.append(level_nf)
            for first, root in nondeg_roots:
                rep = elements[first]
                if n == 0:
                    level_faces.append(())
                else:
                    level_faces.append(
                        tuple(nf[n - 1][cong.class_of(X._act(rep, _face_images(j, n)))] for j in range(n + 1))
                    )
            faces.append(level_faces)
            reps.append(level_reps)
        Q = FinSimpSet(faces, check=False)
        _carry_labels(X, Q, reps)
        images = [
            [nf[d][cong.find(d, cong.position[d][nondegenerate(d, i)])] for i in range(c)]
            for d, c in enumerate(X.counts)
        ]
        return cls(X, Q, SimpMap(X, Q, images), reps)

    def representative(self, y) -> NormalSimplex:
        """An element of the source (possibly degenerate) mapping onto generator ``y``."""
        return self.representatives[y[0]][y[1]]

    def descend(self, g: SimpMap) -> SimpMap:
        """The map ``h`` with ``h o self.map == g``; ``g`` must be constant on classes."""
        if g.source != self.source:
            raise SimplicialError("map does not start at the quotiented set")
        return map_from_function(self.space, g.target, lambda y: g(self.representative(y)))


def _carry_labels(X: FinSimpSet, Q: FinSimpSet, reps) -> None:
    for d, level in enumerate(reps):
        for i, rep in enumerate(level):
            if not rep.is_degenerate() and rep.base in X.labels:
                Q.labels[SimplexId(d, i)] = X.labels[rep.base]


def quotient(X: FinSimpSet, pairs: Iterable[tuple[NormalSimplex, NormalSimplex]]) -> Quotient:
    cong = Congruence(X)
    for s, t in pairs:
        cong.relate(s, t)
    return cong.quotient()


# -- coproducts ------------------------------------------------------------

def coproduct(spaces: Sequence[FinSimpSet]) -> tuple[FinSimpSet, list[SimpMap]]:
    """Disjoint union with its injections; generators ordered summand by summand."""
    top = max((X.dim for X in spaces), default=-1)
    offsets = []
    running = [0] * (top + 1)
    for X in spaces:
        offsets.append(list(running))
        for d, c in enumerate(X.counts):
            running[d] += c
    faces: list[list] = [[] for _ in range(top + 1)]
    labels = {}
    for X, off in zip(spaces, offsets):
        for d in range(len(X.counts)):
            for i in range(X.counts[d]):
                faces[d].append(tuple(NormalSimplex(f.dim, f.index + off[f.dim], f.degeneracy) for f in X.faces[d][i]))
                if SimplexId(d, i) in X.labels:
                    labels[SimplexId(d, off[d] + i)] = X.labels[SimplexId(d, i)]
    S = FinSimpSet(faces, labels, check=False)
    injections = []
    for X, off in zip(spaces, offsets):
        injections.append(SimpMap(X, S, [[nondegenerate(d, off[d] + i) for i in range(c)] for d, c in enumerate(X.counts)]))
    return S, injections


# -- pushouts --------------------------------------------------------------

@dataclass
class PushoutResult:
    """Apex of a pushout square ``B <- A -> C`` with its two legs."""

    apex: FinSimpSet
    left_leg: SimpMap
    right_leg: SimpMap
    quotient: Quotient
    injections: list[SimpMap]

    def class_of(self, side: str, s: NormalSimplex) -> NormalSimplex:
        leg = self.left_leg if side == "left" else self.right_leg
        return leg(s)

    def descend(self, u: SimpMap, v: SimpMap) -> SimpMap:
        """The map out of the apex restricting to ``u`` on B and ``v`` on C."""
        S = self.quotient.source
        table = [[None] * c for c in S.counts]
        for inj, m in ((self.injections[0], u), (self.injections[1], v)):
            for d, level in enumerate(inj.images):
                for i, y in enumerate(level):
                    table[y.dim][y.index] = m.image((d, i))
        g = SimpMap(S, u.target, table)
        return self.quotient.descend(g)


def pushout(f: SimpMap, g: SimpMap) -> PushoutResult:
    """Pushout of ``B <-f- A -g-> C``."""
    if f.source != g.source:
        raise SimplicialError("pushout legs must share their source")
    S, (iB, iC) = coproduct([f.target, g.target])
    cong = Congruence(S)
    A = f.source
    for x in A.simplices():
        cong.relate(iB(f.image(x)), iC(g.image(x)))
    q = cong.quotient()
    left = SimpMap(f.target, q.space, [[q.map(y) for y in level] for level in iB.images])
    right = SimpMap(g.target, q.space, [[q.map(y) for y in level] for level in iC.images])
    return PushoutResult(q.space, left, right, q, [iB, iC])


def point() -> FinSimpSet:
    return standard("simplex", 0)


def collapse(X: FinSimpSet, A) -> PushoutResult:
    """``X / A`` as the pushout of ``X <- A -> Delta[0]``.

    ``A`` is a :class:`~nsset.subcomplex.Subcomplex` of ``X`` or an injective
    map into ``X``.  Collapsing the empty subcomplex is rejected.
    """
    inc = A if isinstance(A, SimpMap) else A.inclusion()
    if inc.source.is_empty():
        raise SimplicialError("cannot collapse an empty subcomplex")
    return pushout(inc, constant_map(inc.source, point()))


# -- products with the interval -------------------------------------------

class IntervalProduct:
    """``X x Delta[1]`` with projections and the end inclusions ``i_0, i_1``.

    A degree-``n`` simplex is a pair ``(s, beta)`` with ``s`` in ``X`` and
    ``beta: [n] -> [1]``.  It is non-degenerate exactly when no index ``k``
    has both ``s`` and ``beta`` constant on ``{k, k+1}``.
    """

    def __init__(self, X: FinSimpSet):
        self.factor = X
        self.keys: list[list[tuple[NormalSimplex, tuple[int, ...]]]] = []
        self.index: dict = {}
        top = X.dim + 1 if X.dim >= 0 else -1
        for n in range(top + 1):
            level = []
            for s in X.degree_elements(n):
                for beta in all_operators(n, 1):
                    if self._is_nondeg(s.degeneracy, beta):
                        level.append((s, beta))
            self.keys.append(level)
            for k, key in enumerate(level):
                self.index[key] = k
        while self.keys and not self.keys[-1]:
            self.keys.pop()
        faces = []
        labels = {}
        for n, level in enumerate(self.keys):
            row = []
            for k, (s, beta) in enumerate(level):
                if n == 0:
                    row.append(())
                else:
                    row.append(tuple(self.pair(X._act(s, _face_images(j, n)), _drop(beta, j)) for j in range(n + 1)))
                if n == 0:
                    labels[SimplexId(0, k)] = f"({X.label(s.base)},{beta[0]})"
            faces.append(row)
        self.space = FinSimpSet(faces, labels, check=False)

    @staticmethod
    def _is_nondeg(sig, beta) -> bool:
        return all(sig[k] != sig[k + 1] or beta[k] != beta[k + 1] for k in range(len(sig) - 1))

    def pair(self, s: NormalSimplex, beta: tuple[int, ...]) -> NormalSimplex:
        """Normal form of ``(s, beta)``."""
        sig = s.degeneracy
        keep = [0]
        epi = [0]
        for k in range(1, len(sig)):
            if sig[k] == sig[k - 1] and beta[k] == beta[k - 1]:
                epi.append(epi[-1])
            else:
                keep.append(k)
                epi.append(epi[-1] + 1)
        base_s = NormalSimplex(s.dim, s.index, tuple(sig[k] for k in keep))
        base_b = tuple(beta[k] for k in keep)
        m = len(keep) - 1
        return NormalSimplex(m, self.index[(base_s, base_b)], tuple(epi))

    def key(self, y) -> tuple[NormalSimplex, tuple[int, ...]]:
        return self.keys[y[0]][y[1]]

    def projection(self) -> SimpMap:
        return map_from_function(self.space, self.factor, lambda y: self.keys[y.dim][y.index][0])

    def interval_projection(self, interval: FinSimpSet | None = None) -> SimpMap:
        I = interval or standard("simplex", 1)
        return map_from_function(self.space, I, lambda y: standard_element(1, self.keys[y.dim][y.index][1]))

    def end_inclusion(self, end: int) -> SimpMap:
        X = self.factor
        return map_from_function(X, self.space, lambda x: self.pair(nondegenerate(*x), (end,) * (x.dim + 1)))

    def lift(self, f: SimpMap, target: IntervalProduct) -> SimpMap:
        """``f x 1`` from this product into ``target`` (a product for ``f.target``)."""
        return map_from_function(
            self.space, target.space, lambda y: target.pair(f(self.keys[y.dim][y.index][0]), self.keys[y.dim][y.index][1])
        )


def _drop(beta: tuple[int, ...], j: int) -> tuple[int, ...]:
    return beta[:j] + beta[j + 1:]


def product_with_interval(X: FinSimpSet) -> IntervalProduct:
    return IntervalProduct(X)
