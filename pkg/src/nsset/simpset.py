"""Finite simplicial sets in Eilenberg-Zilber normal form.

A :class:`FinSimpSet` stores, per dimension, how many non-degenerate
simplices there are and, for every non-degenerate ``n``-simplex and face
index ``0 <= j <= n``, the normal form of its ``j``-th face.  Every simplex of
every degree is then a :class:`NormalSimplex` ``x . sigma`` with ``x``
non-degenerate and ``sigma`` a surjective operator, and the right action of
operators is computed from the face table alone.

A simplex is embedded when its vertices are pairwise distinct.  In any
simplicial set a degenerate simplex has two equal adjacent vertices, so
distinct vertices force every face of the representing map to be
non-degenerate and pairwise distinct, hence degreewise injectivity; the
converse is immediate.  ``tests/test_simpset.py`` guards this reduction with
a brute-force oracle.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .delta import Operator, OperatorError, injections, surjections


class SimplicialError(ValueError):
    """Raised for inconsistent face tables, unknown simplices or bad maps."""


class SimplexId(NamedTuple):
    dim: int
    index: int

    def __str__(self) -> str:
        return f"{self.dim}/{self.index}"


class NormalSimplex(NamedTuple):
    """The simplex ``x . sigma``: base ``(dim, index)``, surjection images ``degeneracy``."""

    dim: int
    index: int
    degeneracy: tuple[int, ...]

    @property
    def base(self) -> SimplexId:
        return SimplexId(self.dim, self.index)

    @property
    def degree(self) -> int:
        return len(self.degeneracy) - 1

    @property
    def operator(self) -> Operator:
        return Operator(self.degeneracy, self.dim)

    def is_degenerate(self) -> bool:
        return len(self.degeneracy) - 1 != self.dim

    def to_text(self) -> str:
        return f"{self.dim}/{self.index} : " + " ".join(map(str, self.degeneracy))

    @classmethod
    def from_text(cls, text: str) -> NormalSimplex:
        head, _, tail = text.partition(":")
        d, i = (int(t) for t in head.strip().split("/"))
        sig = tuple(int(t) for t in tail.split())
        return cls(d, i, sig)


_IDENTITIES: dict[int, tuple[int, ...]] = {}


def _ident(n: int) -> tuple[int, ...]:
    t = _IDENTITIES.get(n)
    if t is None:
        t = _IDENTITIES[n] = tuple(range(n + 1))
    return t


def nondegenerate(dim: int, index: int) -> NormalSimplex:
    return NormalSimplex(dim, index, _ident(dim))


def degenerate(s: NormalSimplex, sigma: tuple[int, ...]) -> NormalSimplex:
    """``s . sigma`` for a surjection ``sigma`` (no face computation needed)."""
    d = s.degeneracy
    return NormalSimplex(s.dim, s.index, tuple(d[k] for k in sigma))


class FinSimpSet:
    """A finite simplicial set presented by its non-degenerate simplices.

    ``faces[n][i]`` is the tuple of the ``n + 1`` face normal forms of the
    ``i``-th non-degenerate ``n``-simplex (empty for vertices).  Instances are
    treated as immutable; labels never take part in equality.
    """

    def __init__(self, faces, labels: Mapping[SimplexId, str] | None = None, check: bool = True):
        self.faces: tuple[tuple[tuple[NormalSimplex, ...], ...], ...] = tuple(
            tuple(tuple(NormalSimplex(*f) for f in fs) for fs in level) for level in faces
        )
        while self.faces and not self.faces[-1]:
            self.faces = self.faces[:-1]
        self.counts: tuple[int, ...] = tuple(len(level) for level in self.faces)
        self.labels: dict[SimplexId, str] = dict(labels or {})
        self._mono_cache: dict = {}
        self._degree_cache: dict = {}
        self._vertex_cache: dict = {}
        self._hash = None
        if check:
            self._check()

    # -- basic structure -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def f_vector(self) -> tuple[int, ...]:
        return self.counts

    def count(self, n: int) -> int:
        return self.counts[n] if 0 <= n < len(self.counts) else 0

    def simplices(self, n: int | None = None) -> Iterator[SimplexId]:
        dims = range(len(self.counts)) if n is None else [n]
        for d in dims:
            for i in range(self.count(d)):
                yield SimplexId(d, i)

    def __len__(self) -> int:
        return sum(self.counts)

    def is_empty(self) -> bool:
        return not self.counts

    def label(self, x: SimplexId) -> str:
        return self.labels.get(SimplexId(*x), f"{x[0]}/{x[1]}")

    def _require(self, x) -> None:
        d, i = x
        if not (0 <= d < len(self.counts) and 0 <= i < self.counts[d]):
            raise SimplicialError(f"unknown simplex {d}/{i}")

    def face(self, x, j: int) -> NormalSimplex:
        d, i = x
        self._require(x)
        if not 0 <= j <= d or d == 0:
            raise SimplicialError(f"face index {j} out of range for a {d}-simplex")
        return self.faces[d][i][j]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinSimpSet):
            return NotImplemented
        return self.counts == other.counts and self.faces == other.faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.faces)
        return self._hash

    def __repr__(self) -> str:
        return f"FinSimpSet(f_vector={self.counts})"

    # -- the right action ------------------------------------------------
    def act(self, s: NormalSimplex, a) -> NormalSimplex:
        """Normal form of ``s . a`` for an operator ``a`` into the degree of ``s``."""
        alpha = a.images if isinstance(a, Operator) else tuple(a)
        if isinstance(a, Operator) and a.target_dim != len(s.degeneracy) - 1:
            raise OperatorError(f"operator into [{a.target_dim}] applied to a simplex of degree {s.degree}")
        return self._act(s, alpha)

    def _act(self, s: NormalSimplex, alpha) -> NormalSimplex:
        sig = s.degeneracy
        epi = []
        mono = []
        last = -1
        for a in alpha:
            v = sig[a]
            if v != last:
                mono.append(v)
                last = v
            epi.append(len(mono) - 1)
        base = self._mono(s.dim, s.index, tuple(mono))
        bd = base.degeneracy
        return NormalSimplex(base.dim, base.index, tuple(bd[e] for e in epi))

    def _mono(self, d: int, i: int, mono: tuple[int, ...]) -> NormalSimplex:
        key = (d, i, mono)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        if len(mono) == d + 1:
            res = nondegenerate(d, i)
        else:
            j = 0
            while j < len(mono) and mono[j] == j:
                j += 1
            f = self.faces[d][i][j]
            res = self._act(f, tuple(v if v < j else v - 1 for v in mono))
        self._mono_cache[key] = res
        return res

    def simplex(self, x) -> NormalSimplex:
        self._require(x)
        return nondegenerate(*x)

    def vertices(self, x) -> tuple[int, ...]:
        """Indices of the vertices ``x eps_0, ..., x eps_n`` of a non-degenerate simplex."""
        x = SimplexId(*x)
        hit = self._vertex_cache.get(x)
        if hit is None:
            self._require(x)
            hit = tuple(self._mono(x.dim, x.index, (k,)).index for k in range(x.dim + 1))
            self._vertex_cache[x] = hit
        return hit

    def element_vertices(self, s: NormalSimplex) -> tuple[int, ...]:
        vs = self.vertices(s.base)
        return tuple(vs[k] for k in s.degeneracy)

    def degree_elements(self, n: int) -> list[NormalSimplex]:
        """Every simplex of degree ``n``, ordered by (base dim, base index, degeneracy)."""
        hit = self._degree_cache.get(n)
        if hit is None:
            hit = []
            for d in range(min(n, self.dim) + 1):
                sigs = surjections(n, d)
                for i in range(self.counts[d]):
                    for sig in sigs:
                        hit.append(NormalSimplex(d, i, sig))
            self._degree_cache[n] = hit
        return hit

    def faces_of(self, x) -> set[SimplexId]:
        """All non-degenerate faces of ``x`` (including ``x``)."""
        d, i = x
        out = set()
        for k in range(d + 1):
            for mono in injections(k, d):
                out.add(self._mono(d, i, mono).base)
        return out

    # -- checks ----------------------------------------------------------
    def _check(self) -> None:
        if self.counts and any(fs for fs in self.faces[0]):
            raise SimplicialError("vertices have no faces")
        for n in range(1, len(self.counts)):
            for i, fs in enumerate(self.faces[n]):
                if len(fs) != n + 1:
                    raise SimplicialError(f"simplex {n}/{i} needs {n + 1} faces, got {len(fs)}")
                for j, f in enumerate(fs):
                    if f.degree != n - 1 or not 0 <= f.dim < n or not 0 <= f.index < self.count(f.dim):
                        raise SimplicialError(f"face {j} of {n}/{i} is malformed: {f}")
                    if not Operator(f.degeneracy, f.dim).is_degeneracy():
                        raise SimplicialError(f"face {j} of {n}/{i} has a non-surjective degeneracy")
                for a in range(n + 1):
                    for b in range(a + 1, n + 1):
                        # d_a d_b = d_{b-1} d_a
                        lhs = self._act(fs[b], _face_images(a, n - 1)) if n > 1 else None
                        rhs = self._act(fs[a], _face_images(b - 1, n - 1)) if n > 1 else None
                        if lhs != rhs:
                            raise SimplicialError(f"simplicial identity fails on {n}/{i} for faces {a}<{b}")

    def is_embedded(self, x) -> bool:
        vs = self.vertices(x)
        return len(set(vs)) == len(vs)

    def is_nonsingular(self) -> bool:
        return all(self.is_embedded(x) for x in self.simplices())


def _face_images(j: int, n: int) -> tuple[int, ...]:
    return tuple(k if k < j else k + 1 for k in range(n))


def is_embedded(X: FinSimpSet, x) -> bool:
    return X.is_embedded(x)


def is_nonsingular(X: FinSimpSet) -> bool:
    return X.is_nonsingular()


EMPTY_FACES: tuple = ()


def empty() -> FinSimpSet:
    return FinSimpSet(EMPTY_FACES)


# -- standard simplicial sets --------------------------------------------

def _subset_label(s: tuple[int, ...], n: int) -> str:
    return "".join(map(str, s)) if n < 10 else ",".join(map(str, s))


def _from_subsets(subsets: Iterable[tuple[int, ...]], n: int) -> FinSimpSet:
    """Simplicial set spanned by a face-closed family of subsets of ``[n]``."""
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in subsets:
        by_dim.setdefault(len(s) - 1, []).append(tuple(s))
    top = max(by_dim, default=-1)
    levels = [sorted(by_dim.get(d, [])) for d in range(top + 1)]
    index = [{s: k for k, s in enumerate(level)} for level in levels]
    faces = []
    labels = {}
    for d, level in enumerate(levels):
        row = []
        for k, s in enumerate(level):
            labels[SimplexId(d, k)] = _subset_label(s, n)
            if d == 0:
                row.append(())
            else:
                row.append(tuple(nondegenerate(d - 1, index[d - 1][s[:j] + s[j + 1:]]) for j in range(d + 1)))
        faces.append(row)
    return FinSimpSet(faces, labels, check=False)


def standard_subsets(kind: str, n: int, k: int | None = None) -> list[tuple[int, ...]]:
    if n < 0:
        raise SimplicialError("n must be non-negative")
    full = tuple(range(n + 1))
    subsets = [s for m in range(1, n + 2) for s in combinations(full, m)]
    if kind == "simplex":
        return subsets
    if kind == "boundary":
        return [s for s in subsets if s != full]
    if kind == "horn":
        if k is None or n < 1 or not 0 <= k <= n:
            raise SimplicialError(f"horn needs 0 <= k <= n and n > 0, got n={n}, k={k}")
        missing = full[:k] + full[k + 1:]
        return [s for s in subsets if s != full and s != missing]
    raise SimplicialError(f"unknown standard kind {kind!r}")


def standard(kind: str, n: int, k: int | None = None) -> FinSimpSet:
    """``simplex`` (Delta[n]), ``boundary`` (its boundary) or ``horn`` (Lambda^k[n])."""
    return _from_subsets(standard_subsets(kind, n, k), n)


def standard_element(n: int, images) -> NormalSimplex:
    """Normal form in ``Delta[n]`` of the simplex given by a monotone vertex list."""
    images = tuple(images)
    epi = []
    mono: list[int] = []
    for v in images:
        if not mono or mono[-1] != v:
            mono.append(v)
        epi.append(len(mono) - 1)
    d = len(mono) - 1
    return NormalSimplex(d, _subset_rank(n, tuple(mono)), tuple(epi))


_RANKS: dict = {}


def _subset_rank(n: int, subset: tuple[int, ...]) -> int:
    key = (n, len(subset))
    table = _RANKS.get(key)
    if table is None:
        table = _RANKS[key] = {s: r for r, s in enumerate(combinations(range(n + 1), len(subset)))}
    return table[subset]


def standard_subset(n: int, x) -> tuple[int, ...]:
    """Vertex set of the non-degenerate simplex ``x`` of ``Delta[n]``."""
    d, i = x
    return list(combinations(range(n + 1), d + 1))[i]


# -- maps ------------------------------------------------------------------

class SimpMap:
    """A simplicial map given by the images of non-degenerate generators.

    ``images[n][i]`` is the normal form, in ``target``, of the image of the
    ``i``-th non-degenerate ``n``-simplex of ``source``.
    """

    def __init__(self, source: FinSimpSet, target: FinSimpSet, images):
        self.source = source
        self.target = target
        if isinstance(images, Mapping):
            table = [[None] * c for c in source.counts]
            for x, s in images.items():
                table[x[0]][x[1]] = NormalSimplex(*s)
            images = table
        self.images: tuple[tuple[NormalSimplex, ...], ...] = tuple(
            tuple(NormalSimplex(*s) for s in level) for level in images
        )
        if tuple(len(level) for level in self.images) != source.counts:
            raise SimplicialError("map images do not match the source's simplices")
        for level in self.images:
            for s in level:
                if s is None:
                    raise SimplicialError("missing image for a generator")

    def __call__(self, s: NormalSimplex) -> NormalSimplex:
        y = self.images[s.dim][s.index]
        if len(s.degeneracy) == s.dim + 1:
            return y
        d = y.degeneracy
        return NormalSimplex(y.dim, y.index, tuple(d[k] for k in s.degeneracy))

    def image(self, x) -> NormalSimplex:
        return self.images[x[0]][x[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpMap):
            return NotImplemented
        return self.images == other.images and self.source == other.source and self.target == other.target

    __hash__ = None

    def __repr__(self) -> str:
        return f"SimpMap({self.source.counts} -> {self.target.counts})"


def map_from_function(source: FinSimpSet, target: FinSimpSet, fn: Callable[[SimplexId], NormalSimplex]) -> SimpMap:
    return SimpMap(source, target, [[fn(SimplexId(d, i)) for i in range(c)] for d, c in enumerate(source.counts)])


def identity_map(X: FinSimpSet) -> SimpMap:
    return SimpMap(X, X, [[nondegenerate(d, i) for i in range(c)] for d, c in enumerate(X.counts)])


def constant_map(X: FinSimpSet, Y: FinSimpSet, vertex: int = 0) -> SimpMap:
    return map_from_function(X, Y, lambda x: NormalSimplex(0, vertex, (0,) * (x.dim + 1)))


def validate_map(f: SimpMap) -> bool:
    """Face compatibility: ``f(x) d_j == f(x d_j)`` for every generator ``x``."""
    X, Y = f.source, f.target
    for d in range(len(X.counts)):
        for i in range(X.counts[d]):
            y = f.images[d][i]
            if y.degree != d or not (0 <= y.dim < len(Y.counts) and 0 <= y.index < Y.counts[y.dim]):
                return False
            if d == 0:
                continue
            for j, fx in enumerate(X.faces[d][i]):
                if Y._act(y, _face_images(j, d)) != f(fx):
                    return False
    return True


def compose_maps(g: SimpMap, f: SimpMap) -> SimpMap:
    """The composite ``g o f``."""
    if f.target is not g.source and f.target != g.source:
        raise SimplicialError("cannot compose: target of f differs from source of g")
    return SimpMap(f.source, g.target, [[g(s) for s in level] for level in f.images])


def is_degreewise_injective(f: SimpMap) -> bool:
    """Non-degenerate simplices go injectively to non-degenerate simplices.

    For a simplicial map this is equivalent to degreewise injectivity:
    ``f(x sigma) = f(x) sigma`` and normal forms are unique.
    """
    seen = set()
    for level in f.images:
        for y in level:
            if y.is_degenerate() or y.base in seen:
                return False
            seen.add(y.base)
    return True


def is_degreewise_surjective(f: SimpMap) -> bool:
    hit = {y.base for level in f.images for y in level if not y.is_degenerate()}
    return len(hit) == len(f.target)


def is_isomorphism(f: SimpMap) -> bool:
    return f.source.counts == f.target.counts and is_degreewise_injective(f)


def inverse_map(f: SimpMap) -> SimpMap:
    if not is_isomorphism(f):
        raise SimplicialError("map is not an isomorphism")
    table = [[None] * c for c in f.target.counts]
    for d, level in enumerate(f.images):
        for i, y in enumerate(level):
            table[y.dim][y.index] = nondegenerate(d, i)
    return SimpMap(f.target, f.source, table)


def representing_map(X: FinSimpSet, x) -> SimpMap:
    """The map ``Delta[n] -> X`` classifying the non-degenerate simplex ``x``."""
    d, i = x
    delta = standard("simplex", d)
    s = nondegenerate(d, i)
    return map_from_function(delta, X, lambda y: X._act(s, standard_subset(d, y)))
