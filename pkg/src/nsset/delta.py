"""The simplex category: monotone maps between finite ordinals.

Operators are stored as explicit image lists.  ``Operator((i0, ..., im), n)``
is the map ``[m] -> [n]`` sending ``k`` to ``ik``.  Composition is pointwise
and every operator factors uniquely as a surjection followed by an injection.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator, NamedTuple


class OperatorError(ValueError):
    """Raised for malformed operators, bad indices or dimension mismatches."""


class Operator(NamedTuple):
    images: tuple[int, ...]
    target_dim: int

    @property
    def source_dim(self) -> int:
        return len(self.images) - 1

    def __call__(self, k: int) -> int:
        return self.images[k]

    def is_face(self) -> bool:
        return all(a < b for a, b in zip(self.images, self.images[1:]))

    def is_degeneracy(self) -> bool:
        return self.images[0] == 0 and self.images[-1] == self.target_dim and all(
            b - a <= 1 for a, b in zip(self.images, self.images[1:])
        )

    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.is_face()

    def to_text(self) -> str:
        return f"{self.source_dim} {self.target_dim} : " + " ".join(map(str, self.images))

    @classmethod
    def from_text(cls, text: str) -> Operator:
        head, _, tail = text.partition(":")
        m, n = (int(t) for t in head.split())
        op = make_operator(tuple(int(t) for t in tail.split()), n)
        if op.source_dim != m:
            raise OperatorError(f"operator text {text!r} has {len(op.images)} images for source [{m}]")
        return op

    def __repr__(self) -> str:
        return f"Operator({self.images}, {self.target_dim})"


def make_operator(images, target_dim: int) -> Operator:
    """Build an operator, checking monotonicity and range."""
    images = tuple(int(i) for i in images)
    if not images:
        raise OperatorError("an operator needs at least one image")
    if target_dim < 0 or images[0] < 0 or images[-1] > target_dim:
        raise OperatorError(f"images {images} out of range for [{target_dim}]")
    if any(a > b for a, b in zip(images, images[1:])):
        raise OperatorError(f"images {images} are not monotone")
    return Operator(images, target_dim)


def identity(n: int) -> Operator:
    return Operator(tuple(range(n + 1)), n)


def elementary(kind: str, index: int, dim: int) -> Operator:
    """Elementary operators.

    ``face``: delta_index ``[dim-1] -> [dim]`` omitting ``index``.
    ``degeneracy``: sigma_index ``[dim] -> [dim-1]`` repeating ``index``.
    ``vertex``: epsilon_index ``[0] -> [dim]``.
    """
    if kind == "face":
        if dim < 1 or not 0 <= index <= dim:
            raise OperatorError(f"face index {index} out of range for [{dim}]")
        return Operator(tuple(k if k < index else k + 1 for k in range(dim)), dim)
    if kind == "degeneracy":
        if dim < 1 or not 0 <= index <= dim - 1:
            raise OperatorError(f"degeneracy index {index} out of range for [{dim}]")
        return Operator(tuple(k if k <= index else k - 1 for k in range(dim + 1)), dim - 1)
    if kind == "vertex":
        if dim < 0 or not 0 <= index <= dim:
            raise OperatorError(f"vertex index {index} out of range for [{dim}]")
        return Operator((index,), dim)
    raise OperatorError(f"unknown operator kind {kind!r}")


def compose(outer: Operator, inner: Operator) -> Operator:
    """The composite ``outer o inner``."""
    if inner.target_dim != outer.source_dim:
        raise OperatorError(
            f"cannot compose [{outer.source_dim}]->[{outer.target_dim}] after "
            f"[{inner.source_dim}]->[{inner.target_dim}]"
        )
    o = outer.images
    return Operator(tuple(o[k] for k in inner.images), outer.target_dim)


def factor_images(images: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split monotone images into (epi images, mono images)."""
    mono = []
    epi = []
    for v in images:
        if not mono or mono[-1] != v:
            mono.append(v)
        epi.append(len(mono) - 1)
    return tuple(epi), tuple(mono)


def epi_mono_factor(a: Operator) -> tuple[Operator, Operator]:
    """Return ``(epi, mono)`` with ``a == compose(mono, epi)``."""
    epi, mono = factor_images(a.images)
    k = len(mono) - 1
    return Operator(epi, k), Operator(mono, a.target_dim)


def minimal_section(s: Operator) -> Operator:
    """Section of a surjection sending each output to its smallest preimage."""
    if not s.is_degeneracy():
        raise OperatorError(f"{s!r} is not surjective")
    first: dict[int, int] = {}
    for k, v in enumerate(s.images):
        first.setdefault(v, k)
    return Operator(tuple(first[v] for v in range(s.target_dim + 1)), s.source_dim)


def sections(s: Operator) -> Iterator[Operator]:
    """All sections of a surjection, in lexicographic order."""
    if not s.is_degeneracy():
        raise OperatorError(f"{s!r} is not surjective")
    blocks: list[list[int]] = [[] for _ in range(s.target_dim + 1)]
    for k, v in enumerate(s.images):
        blocks[v].append(k)

    def rec(v: int, acc: tuple[int, ...]):
        if v > s.target_dim:
            yield Operator(acc, s.source_dim)
            return
        for k in blocks[v]:
            yield from rec(v + 1, acc + (k,))

    yield from rec(0, ())


def interval_collapse(n: int, i: int, j: int) -> Operator:
    """The surjection ``[n] -> [n-(j-i)]`` identifying the interval ``i..j``."""
    if not 0 <= i <= j <= n:
        raise OperatorError(f"bad interval [{i}..{j}] in [{n}]")
    w = j - i
    return Operator(tuple(k if k <= i else (i if k <= j else k - w) for k in range(n + 1)), n - w)


@lru_cache(maxsize=None)
def all_operators(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Image tuples of every operator ``[m] -> [n]``."""
    return tuple(combinations_with_replacement(range(n + 1), m + 1))


@lru_cache(maxsize=None)
def surjections(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Image tuples of the surjections ``[m] -> [n]``, lexicographically."""
    out = []
    for steps in combinations(range(1, m + 1), n):
        step_set = set(steps)
        v, imgs = 0, []
        for k in range(m + 1):
            if k in step_set:
                v += 1
            imgs.append(v)
        out.append(tuple(imgs))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def injections(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Image tuples of the injections ``[m] -> [n]``, lexicographically."""
    return tuple(combinations(range(n + 1), m + 1))
