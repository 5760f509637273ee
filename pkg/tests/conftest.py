import pytest

from nsset.acceptance import sphere
from nsset.colimits import collapse
from nsset.simpset import standard, standard_element
from nsset.subcomplex import generated_by, standard_subcomplex


def edge01(X=None):
    X = X or standard("simplex", 2)
    return generated_by(X, [standard_element(2, (0, 1)).base])


@pytest.fixture
def s2():
    return sphere(2)


@pytest.fixture
def circle():
    return sphere(1)


@pytest.fixture
def triangle_mod_edge():
    D2 = standard("simplex", 2)
    return collapse(D2, edge01(D2)).apex


@pytest.fixture
def horn_collapse():
    return collapse(standard("simplex", 2), standard_subcomplex("horn", 2, 0)).apex


def ordered_complex(top_simplices):
    """Simplicial set of an ordered simplicial complex given by vertex tuples."""
    from itertools import combinations

    from nsset.simpset import FinSimpSet, nondegenerate

    cells = set()
    for s in top_simplices:
        s = tuple(sorted(s))
        for r in range(1, len(s) + 1):
            cells.update(combinations(s, r))
    levels = [sorted(c for c in cells if len(c) == n + 1) for n in range(max(map(len, cells)))]
    index = [{c: i for i, c in enumerate(level)} for level in levels]
    faces = [[() for _ in levels[0]]]
    for n in range(1, len(levels)):
        faces.append([tuple(nondegenerate(n - 1, index[n - 1][c[:j] + c[j + 1:]]) for j in range(n + 1)) for c in levels[n]])
    return FinSimpSet(faces)


def zigzag_suspension(m):
    """Suspension of a ``2m``-gon with alternating edge directions, both poles ordered first."""
    sources = list(range(2, m + 2))
    sinks = list(range(m + 2, 2 * m + 2))
    ring = [(sources[i], sinks[i]) for i in range(m)] + [(sources[(i + 1) % m], sinks[i]) for i in range(m)]
    return ordered_complex([(pole,) + e for pole in (0, 1) for e in ring])
