"""Strøm structures: explicit witnesses for Strøm maps, constructors and cobase change.

A :class:`StromStructure` packages a map ``k: A -> B`` with a factorization
``A -i-> W -j-> B`` through an abyss, a retraction ``r`` of ``i`` and a
homotopy ``eps: W x Delta[1] -> W`` from ``i r`` to the identity that is
stationary on ``A``.  :func:`verify_strom` checks all four conditions as
exact equalities of maps on generators.
"""
from __future__ import annotations

from dataclasses import dataclass

from .colimits import IntervalProduct, pushout
from .desing import desingularize
from .iso import are_isomorphic
from .poset import nerve_element, nerve_map, sharp_map
from .simpset import (
    FinSimpSet,
    NormalSimplex,
    SimpMap,
    SimplexId,
    SimplicialError,
    compose_maps,
    empty,
    identity_map,
    inverse_map,
    is_degreewise_injective,
    is_isomorphism,
    map_from_function,
    nondegenerate,
    validate_map,
)
from .subcomplex import Subcomplex, image_subcomplex, is_abyss, is_eden, preimage
from .subdivision import b_map, barratt, sd, sd_map


@dataclass
class Homotopy:
    """A map ``product.space -> target`` where ``product`` is ``W x Delta[1]``."""

    product: IntervalProduct
    map: SimpMap

    def end(self, e: int) -> SimpMap:
        return compose_maps(self.map, self.product.end_inclusion(e))


@dataclass
class StromStructure:
    k: SimpMap
    i: SimpMap
    j: SimpMap
    r: SimpMap
    eps: Homotopy

    @property
    def A(self) -> FinSimpSet:
        return self.k.source

    @property
    def B(self) -> FinSimpSet:
        return self.k.target

    @property
    def W(self) -> FinSimpSet:
        return self.j.source

    @property
    def w(self) -> Subcomplex:
        return image_subcomplex(self.j)


def _maps_equal(f: SimpMap, g: SimpMap) -> bool:
    return f.source == g.source and f.target == g.target and f.images == g.images


def verify_strom(S: StromStructure) -> dict[str, bool]:
    """The four conditions, keyed ``eden``, ``abyss``, ``retraction``, ``deformation``."""
    A, B, W = S.A, S.B, S.W
    valid = all(validate_map(m) for m in (S.k, S.i, S.j, S.r, S.eps.map))
    k_image = image_subcomplex(S.k)
    eden = valid and is_degreewise_injective(S.k) and is_eden(B, k_image)
    w = S.w
    abyss = (
        valid
        and is_degreewise_injective(S.j)
        and is_abyss(B, w)
        and k_image.members <= w.members
        and _maps_equal(compose_maps(S.j, S.i), S.k)
    )
    retraction = valid and _maps_equal(compose_maps(S.r, S.i), identity_map(A))
    deformation = False
    if valid and S.eps.product.factor == W and S.eps.map.target == W:
        ir = compose_maps(S.i, S.r)
        AxI = IntervalProduct(A)
        ixI = AxI.lift(S.i, S.eps.product)
        deformation = (
            _maps_equal(S.eps.end(0), ir)
            and _maps_equal(S.eps.end(1), identity_map(W))
            and _maps_equal(compose_maps(S.eps.map, ixI), compose_maps(S.i, AxI.projection()))
        )
    return {"eden": eden, "abyss": abyss, "retraction": retraction, "deformation": deformation}


def corestrict(f: SimpMap, sub: Subcomplex) -> SimpMap:
    """``f`` viewed as a map into ``sub.space`` (its image must lie in ``sub``)."""
    space = sub.space

    def image(x: SimplexId) -> NormalSimplex:
        y = f.image(x)
        loc = sub.local_id(y.base)
        return NormalSimplex(loc.dim, loc.index, y.degeneracy)

    return map_from_function(f.source, space, image)


def _empty_map(X: FinSimpSet) -> SimpMap:
    return SimpMap(empty(), X, [])


def trivial_structure(B: FinSimpSet) -> StromStructure:
    """The Strøm structure on ``empty -> B`` with ``W`` empty."""
    E = empty()
    prod = IntervalProduct(E)
    return StromStructure(_empty_map(B), SimpMap(E, E, []), _empty_map(B), SimpMap(E, E, []), Homotopy(prod, SimpMap(prod.space, E, [])))


# -- Barratt nerve of an eden ----------------------------------------------

def strom_from_barratt_eden(X: FinSimpSet, A: Subcomplex) -> StromStructure:
    """Strøm structure on ``B A -> B X`` for an eden ``A`` in non-singular ``X``.

    ``W`` is spanned by chains of simplices having a vertex in ``A``; ``r`` sends
    such a simplex to its face spanned by the vertices in ``A`` (the greatest
    face in ``A``), and ``eps`` is the nerve of ``(w, 0) -> i r(w)``, ``(w, 1) -> w``.
    """
    if not X.is_nonsingular():
        raise SimplicialError("ambient must be non-singular")
    if not is_eden(X, A):
        raise SimplicialError("subcomplex must be an eden")
    BX = barratt(X)
    if A.is_empty():
        return trivial_structure(BX)
    P = BX.face_poset
    Aspace = A.space
    BA = barratt(Aspace)
    PA = BA.face_poset
    k = nerve_map(sharp_map(A.inclusion(), PA, P), BA, BX)
    avs = A.vertices()
    in_w = [any(v in avs for v in X.vertices(x)) for x in P.simplex_ids]
    w = Subcomplex(BX, [y for y in BX.simplices() if all(in_w[e] for e in BX.chain_list[y.dim][y.index])], check=False)
    W = w.space
    j = w.inclusion()
    i = corestrict(k, w)

    # greatest face in A, as a poset element of sharp(A)
    retract: dict[int, int] = {}
    for e, x in enumerate(P.simplex_ids):
        if not in_w[e]:
            continue
        vs = X.vertices(x)
        positions = tuple(p for p, v in enumerate(vs) if v in avs)
        face = X._act(nondegenerate(*x), positions).base
        retract[e] = PA.position[A.local_id(face)]
    to_ambient = [P.position[A.inclusion().image(a).base] for a in PA.simplex_ids]

    def chain_of(s: NormalSimplex) -> list[int]:
        """Weak chain of face-poset elements behind a simplex of ``W``."""
        y = j(s)
        c = BX.chain_list[y.dim][y.index]
        return [c[v] for v in y.degeneracy]

    def in_W(weak: list[int]) -> NormalSimplex:
        y = nerve_element(BX, weak)
        loc = w.local_id(y.base)
        return NormalSimplex(loc.dim, loc.index, y.degeneracy)

    r = map_from_function(W, BA, lambda x: nerve_element(BA, [retract[e] for e in chain_of(nondegenerate(*x))]))
    prod = IntervalProduct(W)

    def eps_image(z: SimplexId) -> NormalSimplex:
        s, beta = prod.key(z)
        c = chain_of(s)
        return in_W([to_ambient[retract[e]] if b == 0 else e for e, b in zip(c, beta)])

    eps = map_from_function(prod.space, W, eps_image)
    return StromStructure(k, i, j, r, Homotopy(prod, eps))


# -- twofold subdivision -------------------------------------------------------

def strom_sd2(X: FinSimpSet, A: Subcomplex) -> StromStructure:
    """Strøm structure on ``Sd^2 A -> Sd^2 X``, transported along ``b`` isomorphisms."""
    SX = sd(X)
    if not SX.is_nonsingular():
        raise SimplicialError("the subdivision of the ambient must be non-singular")
    SSX = sd(SX)
    if A.is_empty():
        return trivial_structure(SSX)
    SA = sd(A.space)
    sd_inc = sd_map(A.inclusion(), SA, SX)
    A1 = image_subcomplex(sd_inc)
    inner = strom_from_barratt_eden(SX, A1)
    # phi: Sd^2 A -> B(A1.space), psi: Sd^2 X -> B(SX)
    SSA = sd(SA)
    c = corestrict(sd_inc, A1)
    BSA = barratt(SA)
    Bc = nerve_map(sharp_map(c, BSA.face_poset, inner.A.face_poset), BSA, inner.A)
    phi = compose_maps(Bc, b_map(SA, SSA, BSA))
    psi = b_map(SX, SSX, inner.B)
    if not (is_isomorphism(phi) and is_isomorphism(psi)):
        raise SimplicialError("comparison maps are not isomorphisms")
    w_prime = image_subcomplex(inner.j)
    w2 = preimage(psi, w_prime)
    W2 = w2.space
    psi_w = corestrict(compose_maps(psi, w2.inclusion()), w_prime)
    # identify inner.W with w_prime.space (same numbering: inner.j is a subcomplex inclusion)
    psi_w = SimpMap(W2, inner.W, psi_w.images)
    psi_w_inv = inverse_map(psi_w)
    phi_inv = inverse_map(phi)
    k2 = sd_map(sd_inc, SSA, SSX)
    i2 = compose_maps(psi_w_inv, compose_maps(inner.i, phi))
    j2 = w2.inclusion()
    r2 = compose_maps(phi_inv, compose_maps(inner.r, psi_w))
    prod2 = IntervalProduct(W2)
    lifted = prod2.lift(psi_w, inner.eps.product)
    eps2 = compose_maps(psi_w_inv, compose_maps(inner.eps.map, lifted))
    return StromStructure(k2, i2, j2, r2, Homotopy(prod2, eps2))


# -- cobase change ---------------------------------------------------------------

@dataclass
class CobaseChange:
    structure: StromStructure
    w_pushout: object
    b_pushout: object
    w_desing: object
    b_desing: object
    j_hat: SimpMap


def cobase_change(S: StromStructure, f: SimpMap) -> CobaseChange:
    if f.source != S.A:
        raise SimplicialError("f must start at the source of the Strøm map")
    if not f.target.is_nonsingular():
        raise SimplicialError("target of f must be non-singular")
    C = f.target
    pw = pushout(S.i, f)
    dw = desingularize(pw.apex)
    pb = pushout(S.k, f)
    db = desingularize(pb.apex)
    W_hat = dw.dx
    i_hat = compose_maps(dw.eta, pw.right_leg)
    k_hat = compose_maps(db.eta, pb.right_leg)
    # j_hat: D(W u_A C) -> D(B u_A C)
    to_pb = pw.descend(compose_maps(pb.left_leg, S.j), pb.right_leg)
    j_hat = dw.quotient.descend(compose_maps(db.eta, to_pb))
    # r_hat from (f r, id_C)
    r_bar = pw.descend(compose_maps(f, S.r), identity_map(C))
    r_hat = dw.quotient.descend(r_bar)
    # eps_hat on generators of W_hat x Delta[1]
    eta_g = compose_maps(dw.eta, pw.left_leg)
    prod_hat = IntervalProduct(W_hat)
    wprod = S.eps.product
    cprod = IntervalProduct(C)
    table: dict[SimplexId, NormalSimplex] = {}
    via_w = wprod.lift(eta_g, prod_hat)
    pushed_eps = compose_maps(eta_g, S.eps.map)
    for x in wprod.space.simplices():
        z = via_w.image(x)
        if not z.is_degenerate():
            table.setdefault(z.base, pushed_eps.image(x))
    via_c = cprod.lift(i_hat, prod_hat)
    pushed_pr = compose_maps(i_hat, cprod.projection())
    for x in cprod.space.simplices():
        z = via_c.image(x)
        if not z.is_degenerate():
            table.setdefault(z.base, pushed_pr.image(x))
    missing = [z for z in prod_hat.space.simplices() if z not in table]
    if missing:
        raise SimplicialError(f"{len(missing)} generators of the product are not hit by the pushout legs")
    eps_hat = SimpMap(prod_hat.space, W_hat, [[table[SimplexId(d, i)] for i in range(c)] for d, c in enumerate(prod_hat.space.counts)])
    if not (
        validate_map(eps_hat)
        and _maps_equal(compose_maps(eps_hat, via_w), pushed_eps)
        and _maps_equal(compose_maps(eps_hat, via_c), pushed_pr)
    ):
        raise SimplicialError("the pushed-forward homotopy is not well defined")
    if not is_degreewise_injective(j_hat):
        raise SimplicialError("induced map between desingularized pushouts is not injective")
    structure = StromStructure(k_hat, i_hat, j_hat, r_hat, Homotopy(prod_hat, eps_hat))
    return CobaseChange(structure, pw, pb, dw, db, j_hat)


def cobase_change_strom(S: StromStructure, f: SimpMap) -> StromStructure:
    """Cobase change of ``S`` along ``f: A -> C`` in the non-singular category."""
    return cobase_change(S, f).structure


def pushout_comparison_check(S: StromStructure, f: SimpMap, change: CobaseChange | None = None) -> bool:
    """``B u_W D(W u_A C) -> D(B u_A C)`` is an isomorphism."""
    ch = change or cobase_change(S, f)
    eta_g = compose_maps(ch.w_desing.eta, ch.w_pushout.left_leg)
    lhs = pushout(S.j, eta_g)
    canonical = lhs.descend(compose_maps(ch.b_desing.eta, ch.b_pushout.left_leg), ch.j_hat)
    if not (validate_map(canonical) and is_isomorphism(canonical)):
        return False
    return are_isomorphic(lhs.apex, ch.b_desing.dx) is not None
