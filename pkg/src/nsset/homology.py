"""Integer homology of normalized chains, Smith normal form, induced maps.

Homology is used here as a proxy for weak equivalence.  It is computed in two
stages.  First the chain complex is shrunk by eliminating boundary entries
equal to ``+-1`` (each elimination is a chain homotopy equivalence; the
inclusion and projection are tracked so maps can be transported).  The small
residual complex is then handled by dense Smith normal forms with explicit
unimodular transforms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .simpset import FinSimpSet, SimpMap

Vector = dict  # generator index -> integer coefficient


# -- chain complexes -----------------------------------------------------------

@dataclass
class ChainComplex:
    """Free chain complex; ``boundary[n][x]`` is the sparse boundary of generator ``x``."""

    ranks: list[int]
    boundary: list[list[Vector]]

    def matrix(self, n: int) -> list[list[int]]:
        """Dense matrix of ``d_n: C_n -> C_{n-1}``."""
        rows = self.ranks[n - 1] if 1 <= n <= len(self.ranks) else 0
        cols = self.ranks[n] if n < len(self.ranks) else 0
        M = [[0] * cols for _ in range(rows)]
        if n == 0 or n >= len(self.ranks):
            return M
        for x, col in enumerate(self.boundary[n]):
            for y, c in col.items():
                M[y][x] = c
        return M

    def boundary_squares_vanish(self) -> bool:
        for n in range(2, len(self.ranks)):
            for col in self.boundary[n]:
                acc: dict[int, int] = {}
                for y, c in col.items():
                    for z, e in self.boundary[n - 1][y].items():
                        acc[z] = acc.get(z, 0) + c * e
                if any(acc.values()):
                    return False
        return True


def chains(X: FinSimpSet) -> ChainComplex:
    """Normalized chains: degenerate faces contribute zero."""
    ranks = list(X.counts)
    boundary: list[list[Vector]] = [[{} for _ in range(ranks[0])]] if ranks else []
    for n in range(1, len(ranks)):
        level = []
        for fs in X.faces[n]:
            col: dict[int, int] = {}
            for j, f in enumerate(fs):
                if not f.is_degenerate():
                    col[f.index] = col.get(f.index, 0) + (-1) ** j
            level.append({y: c for y, c in col.items() if c})
        boundary.append(level)
    return ChainComplex(ranks, boundary)


def chain_map(f: SimpMap) -> list[list[Vector]]:
    """Per degree, the image of each generator (zero when the image is degenerate)."""
    return [[{} if y.is_degenerate() else {y.index: 1} for y in level] for level in f.images]


def cone(f: SimpMap) -> ChainComplex:
    """Mapping cone: ``C_n = X_{n-1} + Y_n``, ``d(x, y) = (-dx, dy - f x)``."""
    cx, cy = chains(f.source), chains(f.target)
    fm = chain_map(f)
    top = max(len(cx.ranks), len(cy.ranks) - 1) + 1
    rx = lambda n: cx.ranks[n] if 0 <= n < len(cx.ranks) else 0  # noqa: E731
    ry = lambda n: cy.ranks[n] if 0 <= n < len(cy.ranks) else 0  # noqa: E731
    ranks = [rx(n - 1) + ry(n) for n in range(top)]
    boundary: list[list[Vector]] = []
    for n in range(top):
        level: list[Vector] = []
        off = rx(n - 2)  # in degree n-1, the Y part starts after X_{n-2}
        for x in range(rx(n - 1)):
            col: dict[int, int] = {}
            if n - 1 >= 1:
                for z, c in cx.boundary[n - 1][x].items():
                    col[z] = -c
            for z, c in fm[n - 1][x].items():
                col[off + z] = col.get(off + z, 0) - c
            level.append({k: v for k, v in col.items() if v})
        for y in range(ry(n)):
            col = {}
            if n >= 1:
                for z, c in cy.boundary[n][y].items():
                    col[off + z] = c
            level.append(col)
        boundary.append(level if n else [{} for _ in range(ranks[0])])
    while ranks and ranks[-1] == 0:
        ranks.pop()
        boundary.pop()
    return ChainComplex(ranks, boundary)


# -- Smith normal form -----------------------------------------------------------

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: list[list[int]], inverses: bool = False):
    """Return ``(D, U, V)`` with ``U M V = D`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``.

    With ``inverses`` the result is ``(D, U, V, U_inv, V_inv)``.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)
    Ui, Vi = _identity(m), _identity(n)

    def row_add(i, k, q):  # row_i += q row_k
        A[i] = [a + q * b for a, b in zip(A[i], A[k])]
        U[i] = [a + q * b for a, b in zip(U[i], U[k])]
        if inverses:
            for r in Ui:  # column_k -= q column_i
                r[k] -= q * r[i]

    def col_add(j, k, q):  # col_j += q col_k
        for r in A:
            r[j] += q * r[k]
        for r in V:
            r[j] += q * r[k]
        if inverses:
            Vi[k] = [a - q * b for a, b in zip(Vi[k], Vi[j])]

    def row_swap(i, k):
        if i != k:
            A[i], A[k] = A[k], A[i]
            U[i], U[k] = U[k], U[i]
            if inverses:
                for r in Ui:
                    r[i], r[k] = r[k], r[i]

    def col_swap(j, k):
        if j != k:
            for r in A:
                r[j], r[k] = r[k], r[j]
            for r in V:
                r[j], r[k] = r[k], r[j]
            if inverses:
                Vi[j], Vi[k] = Vi[k], Vi[j]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        if inverses:
            for r in Ui:
                r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    if inverses:
        return A, U, V, Ui, Vi
    return A, U, V


def diagonal(D: list[list[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def invariant_factors(M: list[list[int]]) -> list[int]:
    return diagonal(smith_normal_form(M)[0])


def _matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


# -- reduction by unit pivots ------------------------------------------------------

class Reduction:
    """Gaussian elimination of ``+-1`` boundary entries on a chain complex.

    ``include(n, x)`` gives, in original coordinates, the chain included from
    surviving generator ``x``; :meth:`project` maps an original chain to the
    surviving generators.  Both are chain homotopy inverse chain maps.
    """

    def __init__(self, C: ChainComplex, track_include: bool = False, track_project: bool = False):
        self.top = len(C.ranks) - 1
        self.bd: list[dict[int, dict[int, int]]] = [
            {x: dict(col) for x, col in enumerate(C.boundary[n])} if n < len(C.boundary) else {} for n in range(self.top + 1)
        ]
        self.cobd: list[dict[int, set]] = [{x: set() for x in range(C.ranks[n])} for n in range(self.top + 1)]
        for n in range(1, self.top + 1):
            for x, col in self.bd[n].items():
                for y in col:
                    self.cobd[n - 1][y].add(x)
        self.track_include = track_include
        self.track_project = track_project
        self.inc = [{x: {x: 1} for x in range(C.ranks[n])} for n in range(self.top + 1)] if track_include else None
        self.log: list[tuple[int, int, int, int, dict]] = []
        self._run()

    def _run(self) -> None:
        for n in range(self.top, 0, -1):
            bd_n = self.bd[n]
            progress = True
            while progress:
                progress = False
                for a in sorted(bd_n):
                    col = bd_n.get(a)
                    if not col:
                        continue
                    units = [y for y, c in col.items() if c in (1, -1)]
                    if not units:
                        continue
                    b = min(units, key=lambda y: (len(self.cobd[n - 1][y]), y))
                    self._eliminate(n, a, b)
                    progress = True

    def _eliminate(self, n: int, a: int, b: int) -> None:
        bd_n, cob = self.bd[n], self.cobd[n - 1]
        da = bd_n[a]
        u = da[b]
        gamma = {y: c for y, c in da.items() if y != b}
        for x in list(cob[b]):
            if x == a:
                continue
            col = bd_n[x]
            factor = col[b] * u
            for y, c in da.items():
                v = col.get(y, 0) - factor * c
                if v:
                    if y not in col:
                        cob[y].add(x)
                    col[y] = v
                else:
                    if y in col:
                        del col[y]
                        cob[y].discard(x)
            if self.track_include:
                inc_x, inc_a = self.inc[n][x], self.inc[n][a]
                for z, c in inc_a.items():
                    v = inc_x.get(z, 0) - factor * c
                    if v:
                        inc_x[z] = v
                    else:
                        inc_x.pop(z, None)
        # drop a
        for y in da:
            cob[y].discard(a)
        del bd_n[a]
        if n + 1 <= self.top:
            for z in self.cobd[n][a]:
                del self.bd[n + 1][z][a]
        del self.cobd[n][a]
        # drop b
        if n - 1 >= 1:
            for y in self.bd[n - 1][b]:
                self.cobd[n - 2][y].discard(b)
            del self.bd[n - 1][b]
        del cob[b]
        if self.track_include:
            del self.inc[n][a]
            del self.inc[n - 1][b]
        if self.track_project:
            self.log.append((n, a, b, u, gamma))

    def survivors(self, n: int) -> list[int]:
        return sorted(self.cobd[n]) if 0 <= n <= self.top else []

    def include(self, n: int, x: int) -> Vector:
        return self.inc[n][x]

    def project(self, n: int, v: Vector) -> Vector:
        v = dict(v)
        for m, a, b, u, gamma in self.log:
            if m == n:
                v.pop(a, None)
            elif m - 1 == n and b in v:
                cb = v.pop(b)
                for y, c in gamma.items():
                    w = v.get(y, 0) - cb * u * c
                    if w:
                        v[y] = w
                    else:
                        v.pop(y, None)
        return v

    def residual(self) -> tuple[list[list[int]], list[list[list[int]]]]:
        """Surviving generators per degree and dense residual boundary matrices."""
        gens = [self.survivors(n) for n in range(self.top + 1)]
        pos = [{x: k for k, x in enumerate(g)} for g in gens]
        mats: list[list[list[int]]] = [[]]
        for n in range(1, self.top + 1):
            M = [[0] * len(gens[n]) for _ in gens[n - 1]]
            for x in gens[n]:
                for y, c in self.bd[n][x].items():
                    M[pos[n - 1][y]][pos[n][x]] = c
            mats.append(M)
        return gens, mats


# -- homology --------------------------------------------------------------------

@dataclass
class HomologyProfile:
    betti: list[int]
    torsion: list[list[int]]

    def __str__(self) -> str:
        return "\n".join(self.lines())

    def lines(self) -> list[str]:
        return [f"H_{n} = {group_text(b, t)}" for n, (b, t) in enumerate(zip(self.betti, self.torsion))]

    def trimmed(self) -> tuple:
        pairs = [(b, tuple(t)) for b, t in zip(self.betti, self.torsion)]
        while pairs and pairs[-1] == (0, ()):
            pairs.pop()
        return tuple(pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        return self.trimmed() == other.trimmed()

    __hash__ = None


def group_text(b: int, torsion) -> str:
    parts = []
    if b:
        parts.append("Z" if b == 1 else f"Z^{b}")
    parts += [f"Z/{t}" for t in torsion]
    return " ⊕ ".join(parts) if parts else "0"


@dataclass
class _DegreeData:
    cycles: list[list[int]]  # Z basis as columns (rows = chain coords)
    coord_rows: list[list[int]]  # rows mapping a cycle to homology coordinates
    orders: list[int]  # 0 for free coordinates, t for Z/t
    generators: list[list[int]]  # chains representing the homology coordinates


def _dense_homology(ranks: list[int], mats: list[list[list[int]]]) -> list[_DegreeData]:
    out = []
    top = len(ranks) - 1
    for n in range(top + 1):
        k = ranks[n]
        if n >= 1 and ranks[n - 1] and k:
            D, U, V, Ui, Vi = smith_normal_form(mats[n], inverses=True)
            r = len(diagonal(D))
        else:
            V, Vi, r = _identity(k), _identity(k), 0
        Z = [row[r:] for row in V]  # k x (k - r)
        proj = Vi[r:]  # (k - r) x k
        if n + 1 <= top and ranks[n + 1] and k - r:
            M = _matmul(proj, mats[n + 1])
            D2, U2, V2, U2i, _ = smith_normal_form(M, inverses=True)
            diag2 = diagonal(D2)
        else:
            U2, U2i, diag2 = _identity(k - r), _identity(k - r), []
        rows_all = _matmul(U2, proj)
        gens_all = _matmul(Z, U2i)  # columns are chains
        coord_rows, orders, generators = [], [], []
        for i in range(k - r):
            e = diag2[i] if i < len(diag2) else 0
            if e == 1:
                continue
            coord_rows.append(rows_all[i])
            orders.append(e)
            generators.append([gens_all[row][i] for row in range(k)])
        out.append(_DegreeData(Z, coord_rows, orders, generators))
    return out


def _profile(data: list[_DegreeData]) -> HomologyProfile:
    betti = [sum(1 for e in d.orders if e == 0) for d in data]
    torsion = [sorted(e for e in d.orders if e) for d in data]
    return HomologyProfile(betti, torsion)


def homology_of_complex(C: ChainComplex) -> HomologyProfile:
    if not C.ranks:
        return HomologyProfile([], [])
    R = Reduction(C)
    gens, mats = R.residual()
    return _profile(_dense_homology([len(g) for g in gens], mats))


def homology(X: FinSimpSet) -> HomologyProfile:
    return homology_of_complex(chains(X))


def homology_dense(X: FinSimpSet) -> HomologyProfile:
    """Homology straight from dense Smith normal forms (no reduction); for cross-checks."""
    C = chains(X)
    if not C.ranks:
        return HomologyProfile([], [])
    return _profile(_dense_homology(C.ranks, [[]] + [C.matrix(n) for n in range(1, len(C.ranks))]))


def f_vector(X: FinSimpSet) -> tuple[int, ...]:
    return X.counts


def euler_characteristic(X: FinSimpSet) -> int:
    return sum((-1) ** n * c for n, c in enumerate(X.counts))


# -- induced maps ------------------------------------------------------------------

@dataclass
class HomologyMap:
    """Per degree, the matrix of ``f_*`` in the homology coordinates of source and target."""

    source: HomologyProfile
    target: HomologyProfile
    source_orders: list[list[int]]
    target_orders: list[list[int]]
    matrices: list[list[list[int]]] = field(default_factory=list)

    def is_isomorphism(self) -> bool:
        return all(self.is_isomorphism_in(n) for n in range(len(self.matrices)))

    def is_isomorphism_in(self, n: int) -> bool:
        so, to = self.source_orders[n], self.target_orders[n]
        if sorted(so) != sorted(to):
            return False
        M = self.matrices[n]
        s_free = [i for i, e in enumerate(so) if e == 0]
        t_free = [i for i, e in enumerate(to) if e == 0]
        free_block = [[M[i][j] for j in s_free] for i in t_free]
        if abs(_determinant(free_block)) != 1:
            return False
        s_tor = [i for i, e in enumerate(so) if e]
        t_tor = [i for i, e in enumerate(to) if e]
        images = set()
        for combo in cartesian(*[range(so[j]) for j in s_tor]):
            image = tuple(sum(M[i][j] * c for j, c in zip(s_tor, combo)) % to[i] for i in t_tor)
            images.add(image)
        total = 1
        for j in s_tor:
            total *= so[j]
        return len(images) == total


def _determinant(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        return 0
    D = diagonal(smith_normal_form(M)[0])
    if len(D) < n:
        return 0
    out = 1
    for d in D:
        out *= d
    return out  # absolute value of the determinant


def _apply_chain_map(fm: list[list[Vector]], n: int, v: Vector) -> Vector:
    out: dict[int, int] = {}
    if n >= len(fm):
        return out
    for x, c in v.items():
        for y, e in fm[n][x].items():
            w = out.get(y, 0) + c * e
            if w:
                out[y] = w
            else:
                out.pop(y, None)
    return out


def homology_of_map(f: SimpMap) -> HomologyMap:
    cs, ct = chains(f.source), chains(f.target)
    rs = Reduction(cs, track_include=True) if cs.ranks else None
    rt = Reduction(ct, track_project=True) if ct.ranks else None
    gs, ms = rs.residual() if rs else ([], [[]])
    gt, mt = rt.residual() if rt else ([], [[]])
    ds = _dense_homology([len(g) for g in gs], ms) if gs else []
    dt = _dense_homology([len(g) for g in gt], mt) if gt else []
    fm = chain_map(f)
    top = max(len(ds), len(dt))
    matrices = []
    s_orders, t_orders = [], []
    for n in range(top):
        so = ds[n].orders if n < len(ds) else []
        to = dt[n].orders if n < len(dt) else []
        s_orders.append(so)
        t_orders.append(to)
        cols = []
        for g in ds[n].generators if n < len(ds) else []:
            chain: dict[int, int] = {}
            for pos, c in enumerate(g):
                if c:
                    for z, e in rs.include(n, gs[n][pos]).items():
                        w = chain.get(z, 0) + c * e
                        if w:
                            chain[z] = w
                        else:
                            chain.pop(z, None)
            image = _apply_chain_map(fm, n, chain)
            if n < len(dt):
                proj = rt.project(n, image)
                where = {x: k for k, x in enumerate(gt[n])}
                vec = [0] * len(gt[n])
                for z, c in proj.items():
                    vec[where[z]] = c
                coords = [sum(a * b for a, b in zip(row, vec)) for row in dt[n].coord_rows]
                coords = [c % e if e else c for c, e in zip(coords, to)]
            else:
                coords = []
            cols.append(coords)
        matrices.append([[cols[j][i] for j in range(len(cols))] for i in range(len(to))])
    return HomologyMap(_profile(ds), _profile(dt), s_orders, t_orders, matrices)


def induces_homology_iso(f: SimpMap) -> bool:
    return homology_of_map(f).is_isomorphism()


def cone_is_acyclic(f: SimpMap) -> bool:
    """``f_*`` is an isomorphism in all degrees iff the mapping cone has zero homology."""
    h = homology_of_complex(cone(f))
    return all(b == 0 for b in h.betti) and not any(h.torsion)
