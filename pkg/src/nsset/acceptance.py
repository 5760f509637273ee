"""The acceptance suite: thirteen end-to-end criteria with time limits.

Each ``crit_N`` returns ``(passed, detail)``; :func:`run_all` times them and
returns :class:`CriterionResult` records sorted by id.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass
from importlib import resources

from .colimits import collapse
from .corpus import (
    CorpusSpec,
    corpus,
    eden_pairs,
    item_rng,
    maps_to_nonsingular,
    strom_targets,
    subcomplex_pairs,
)
from .delta import Operator, all_operators, compose, sections, surjections
from .desing import desing_oracle, desingularize, verify_collapse_structure
from .homology import chains, cone_is_acyclic, euler_characteristic, homology, homology_dense, homology_of_map
from .io import dump_map, dump_poset, dump_simpset, dump_subcomplex, load_map, load_poset, load_simpset, load_subcomplex
from .iso import are_isomorphic
from .poset import nerve, pc, poset_iso, q, random_poset
from .simpset import (
    FinSimpSet,
    SimplicialError,
    compose_maps,
    identity_map,
    is_degreewise_injective,
    is_degreewise_surjective,
    is_isomorphism,
    nondegenerate,
    representing_map,
    standard,
    standard_element,
    validate_map,
)
from .strom import cobase_change, pushout_comparison_check, strom_from_barratt_eden, strom_sd2, verify_strom
from .subcomplex import (
    Subcomplex,
    full_subcomplex,
    generated_by,
    image_subcomplex,
    is_eden,
    is_eden_by_last_vertex,
    standard_subcomplex,
)
from .subdivision import b_map, iterated_sd, sd, sd_map

SEED = 0


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def in_time(self) -> bool:
        return self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.in_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        late = "" if self.in_time else f" (over the {self.limit:g} s limit)"
        return f"[{status}] {self.id:2d} {self.name}: {self.detail} [{self.seconds:.2f} s]{late}"


def regression_values() -> dict:
    text = resources.files("nsset").joinpath("data/regression.json").read_text()
    return json.loads(text)


def sphere(n: int) -> FinSimpSet:
    """``Delta[n]`` with its boundary collapsed to a point."""
    return collapse(standard("simplex", n), standard_subcomplex("boundary", n)).apex


def _iso(X: FinSimpSet, Y: FinSimpSet) -> bool:
    return are_isomorphic(X, Y) is not None


def _is_identity(f) -> bool:
    return f.source == f.target and f.images == identity_map(f.source).images


def _fails(results: dict) -> list[str]:
    return [k for k, v in results.items() if not v]


# -- 1..3: the worked examples ------------------------------------------------

def crit_1() -> tuple[bool, str]:
    got = {n: _iso(desingularize(sphere(n)).dx, standard("simplex", 0)) for n in (1, 2, 3)}
    return all(got.values()), f"D(Delta[n]/boundary) ~ Delta[0] for n=1,2,3: {got}"


def crit_2() -> tuple[bool, str]:
    got = {n: _iso(desingularize(sd(sphere(n))).dx, standard("simplex", 1)) for n in (2, 3)}
    S1 = sd(sphere(1))
    r = desingularize(S1)
    base = S1.is_nonsingular() and _is_identity(r.eta)
    ok = all(got.values()) and base
    return ok, f"D Sd(Delta[n]/boundary) ~ Delta[1]: {got}; Sd(Delta[1]/boundary) non-singular with identity unit: {base}"


def crit_3() -> tuple[bool, str]:
    X = iterated_sd(sphere(2), 2)
    r = desingularize(X)
    D = r.dx
    h = homology(D)
    ref = regression_values()["desing_sd2_collapsed_triangle"]
    chi = euler_characteristic(D)
    vertex_bijection = X.count(0) == D.count(0) and len({r.eta.image((0, i)).index for i in range(X.count(0))}) == D.count(0)
    checks = {
        "homology": h.betti == [1, 0, 1] and not any(h.torsion),
        "euler": chi == 2 == ref["euler_characteristic"],
        "vertices": D.count(0) == 14 and vertex_bijection,
        "f_vector": list(D.counts) == ref["f_vector"],
        "dense_route": h == homology_dense(D),
    }
    return all(checks.values()), f"f-vector {D.counts}, chi {chi}, homology {h.lines()}; failed: {_fails(checks)}"


# -- 4, 5: subdivision ----------------------------------------------------------

def crit_4() -> tuple[bool, str]:
    sets = corpus(CorpusSpec(SEED, 3, 12, 50))
    bad = []
    iso_count = 0
    for k, X in enumerate(sets):
        b = b_map(X)
        iso = validate_map(b) and is_isomorphism(b)
        iso_count += iso
        if iso != X.is_nonsingular():
            bad.append(k)
    ns = sum(X.is_nonsingular() for X in sets)
    return not bad, f"{len(sets)} sets ({ns} non-singular, {iso_count} b isomorphisms); mismatches at {bad}"


def crit_5() -> tuple[bool, str]:
    pairs = subcomplex_pairs(CorpusSpec(SEED, 3, 12, 50))
    bad = []
    for k, (X, A) in enumerate(pairs):
        SX = sd(X)
        sub = image_subcomplex(sd_map(A.inclusion(), target=SX))
        if not (is_eden(SX, sub) and is_eden_by_last_vertex(SX, sub)):
            bad.append(k)
    return not bad, f"{len(pairs)} pairs; sd(A) fails to be an eden at {bad}"


# -- 6..8: Strøm structures --------------------------------------------------------

def standard_family() -> list[tuple[str, FinSimpSet, Subcomplex]]:
    out = []
    for n in range(0, 4):
        out.append((f"boundary {n}", standard("simplex", n), standard_subcomplex("boundary", n)))
        for k in range(n + 1) if n else ():
            out.append((f"horn {n},{k}", standard("simplex", n), standard_subcomplex("horn", n, k)))
    return out


def _sd_pair(X: FinSimpSet, A: Subcomplex) -> tuple[FinSimpSet, Subcomplex]:
    SX = sd(X)
    return SX, image_subcomplex(sd_map(A.inclusion(), target=SX))


def crit_6() -> tuple[bool, str]:
    bad = []
    count = 0
    for name, X, A in standard_family():
        SX, SA = _sd_pair(X, A)
        for label, S in (("B", strom_from_barratt_eden(SX, SA)), ("Sd2", strom_sd2(X, A))):
            count += 1
            v = verify_strom(S)
            if not all(v.values()):
                bad.append(f"{label} {name} {_fails(v)}")
    for k, (X, A) in enumerate(eden_pairs(CorpusSpec(SEED, 3, 12, 20))):
        for label, S in (("B", strom_from_barratt_eden(X, A)), ("Sd2", strom_sd2(X, A))):
            count += 1
            v = verify_strom(S)
            if not all(v.values()):
                bad.append(f"{label} corpus {k} {_fails(v)}")
    return not bad, f"{count} structures verified; failures: {bad}"


def strom_instances(n: int = 20):
    """``(S, f)`` cobase-change instances from corpus eden pairs, rotating the kind of ``f``."""
    out = []
    for k, (X, A) in enumerate(eden_pairs(CorpusSpec(SEED, 3, 12, n))):
        S = strom_from_barratt_eden(X, A) if k % 2 == 0 else strom_sd2(X, A)
        targets = strom_targets(item_rng(SEED, k, "strom"), S.A)
        kind, f = targets[k % len(targets)]
        out.append((f"{k}:{'B' if k % 2 == 0 else 'Sd2'}:{kind}", S, f))
    return out


def crit_7() -> tuple[bool, str]:
    bad = []
    instances = strom_instances()
    for name, S, f in instances:
        ch = cobase_change(S, f)
        v = verify_strom(ch.structure)
        if not all(v.values()) or not pushout_comparison_check(S, f, ch):
            bad.append(name)
    kinds = sorted({name.split(":")[2] for name, _, _ in instances})
    return not bad and len(instances) == 20, f"{len(instances)} instances (f kinds {kinds}); failures: {bad}"


def crit_8() -> tuple[bool, str]:
    bad = []
    instances = strom_instances()
    for name, S, f in instances:
        ch = cobase_change(S, f)
        if homology(ch.b_pushout.apex) != homology(ch.b_desing.dx):
            bad.append(name)
    return not bad and len(instances) == 20, f"{len(instances)} pushouts compared with their desingularization; failures: {bad}"


# -- 9..11: desingularization -----------------------------------------------------

def crit_9(skip_n3: bool = False) -> tuple[bool, str]:
    named = [("Delta[2]/boundary", sphere(2))]
    if not skip_n3:
        named.append(("Delta[3]/boundary", sphere(3)))
    named.append(("Delta[2]/horn0", collapse(standard("simplex", 2), standard_subcomplex("horn", 2, 0)).apex))
    named += [(f"corpus {k}", X) for k, X in enumerate(corpus(CorpusSpec(SEED, 3, 12, 10)))]
    bad = []
    for name, X in named:
        eta = desingularize(iterated_sd(X, 2)).eta
        if not (homology_of_map(eta).is_isomorphism() and cone_is_acyclic(eta)):
            bad.append(name)
    skipped = " (Delta[3]/boundary skipped)" if skip_n3 else ""
    return not bad, f"{len(named)} units checked{skipped}; failures: {bad}"


def crit_10() -> tuple[bool, str]:
    D2 = standard("simplex", 2)
    edge = generated_by(D2, [standard_element(2, (0, 1)).base])
    SSX = iterated_sd(D2, 2)
    SX = sd(D2)
    inner = image_subcomplex(sd_map(standard_subcomplex("boundary", 2).inclusion(), target=SX))
    SSA = image_subcomplex(sd_map(inner.inclusion(), target=SSX))
    cases = [("(Delta[2], 01)", D2, edge), ("(Sd2 Delta[2], Sd2 boundary)", SSX, SSA)]
    for k, (X, A) in enumerate(eden_pairs(CorpusSpec(SEED, 3, 12, 10))):
        cases.append((f"corpus {k}", X, A))
    bad = []
    for name, X, A in cases:
        res = verify_collapse_structure(X, A)
        if not all(res.values()):
            bad.append(f"{name} {_fails(res)}")
    return not bad and len(cases) == 12, f"{len(cases)} eden collapses; failures: {bad}"


ORACLE_MAX_SIMPLICES = 6
ORACLE_MAX_DIM = 2


def crit_11() -> tuple[bool, str]:
    sets = corpus(CorpusSpec(SEED, 3, 12, 50))
    problems = {"idempotence": [], "order": [], "oracle": [], "factorization": []}
    oracle_runs = 0
    map_count = 0
    for k, X in enumerate(sets):
        r = desingularize(X)
        again = desingularize(r.dx)
        if not (is_isomorphism(again.eta) and _iso(again.dx, r.dx)):
            problems["idempotence"].append(k)
        if not _iso(desingularize(X, reverse=True).dx, r.dx):
            problems["order"].append(k)
        if len(X) <= ORACLE_MAX_SIMPLICES and X.dim <= ORACLE_MAX_DIM:
            oracle_runs += 1
            if not _iso(desing_oracle(X, ORACLE_MAX_SIMPLICES, ORACLE_MAX_DIM), r.dx):
                problems["oracle"].append(k)
        if not is_degreewise_surjective(r.eta):
            problems["factorization"].append((k, "eta"))
        for kind, g in maps_to_nonsingular(item_rng(SEED, k, "maps"), X):
            map_count += 1
            if not g.target.is_nonsingular():
                problems["factorization"].append((k, kind, "target"))
                continue
            h = r.quotient.descend(g)
            if not (validate_map(h) and compose_maps(h, r.eta).images == g.images):
                problems["factorization"].append((k, kind))
    ok = not any(problems.values())
    return ok, f"{len(sets)} sets, {oracle_runs} oracle runs, {map_count} maps factored; problems: {problems}"


# -- 12: posets ------------------------------------------------------------------

def crit_12() -> tuple[bool, str]:
    rng = random.Random(f"nsset:posets:{SEED}")
    bad_posets = []
    for k in range(20):
        P = random_poset(rng, rng.randint(1, 7), rng.choice([0.2, 0.4, 0.6]))
        if poset_iso(q(nerve(P)), P) is None:
            bad_posets.append(k)
    bad_sets = []
    for k, X in enumerate(corpus(CorpusSpec(SEED, 3, 12, 20))):
        if poset_iso(pc(X), q(desingularize(X).dx)) is None:
            bad_sets.append(k)
    ok = not bad_posets and not bad_sets
    return ok, f"q N P ~ P failures {bad_posets}; pc X ~ q D X failures {bad_sets}"


# -- 13: kernel invariants ---------------------------------------------------------

def kernel_sets() -> list[tuple[str, FinSimpSet]]:
    named = []
    for n in range(4):
        named.append((f"Delta[{n}]", standard("simplex", n)))
        if n:
            named.append((f"boundary {n}", standard("boundary", n)))
            named.append((f"sphere {n}", sphere(n)))
    named += [(f"corpus {k}", X) for k, X in enumerate(corpus(CorpusSpec(SEED, 3, 12, 50)))]
    return named


def check_associativity(X: FinSimpSet, top: int) -> bool:
    """``(s . a) . b == s . (a b)`` for every element and composable operator pair up to ``top``."""
    for n in range(top + 1):
        for s in X.degree_elements(n):
            for m in range(top + 1):
                for a in all_operators(m, n):
                    sa = X._act(s, a)
                    for l in range(top + 1):
                        for b in all_operators(l, m):
                            ab = compose(Operator(a, n), Operator(b, m)).images
                            if X._act(sa, b) != X._act(s, ab):
                                return False
    return True


def check_normal_forms(X: FinSimpSet, top: int) -> bool:
    """Every way of writing an element as ``y . tau`` with ``y`` non-degenerate is its stored form.

    Independent of the normal-form machinery: candidates ``y`` are recovered as
    ``s . nu`` for sections ``nu`` of arbitrary surjections ``tau``.
    """
    for n in range(top + 1):
        for s in X.degree_elements(n):
            for k in range(n + 1):
                for tau in surjections(n, k):
                    for nu in sections(Operator(tau, k)):
                        y = X._act(s, nu.images)
                        if y.is_degenerate():
                            continue
                        if X._act(y, tau) == s and (y.base, tau) != (s.base, s.degeneracy):
                            return False
    return True


def check_embeddedness(X: FinSimpSet) -> bool:
    """``is_embedded`` agrees with degreewise injectivity of the representing map,
    tested by brute force on all simplices of ``Delta[n]`` up to degree ``n + 2``."""
    for x in X.simplices():
        f = representing_map(X, x)
        injective = True
        for m in range(x.dim + 3):
            seen = {}
            for a in all_operators(m, x.dim):
                y = X._act(nondegenerate(*x), a)
                if y in seen and seen[y] != a:
                    injective = False
                seen[y] = a
        if injective != X.is_embedded(x) or injective != is_degreewise_injective(f):
            return False
    return True


def check_round_trip(X: FinSimpSet) -> bool:
    text = dump_simpset(X)
    Y = load_simpset(text)
    if Y != X or dump_simpset(Y) != text:
        return False
    f = identity_map(X)
    if load_map(dump_map(f)) != f:
        return False
    A = full_subcomplex(X, range(0, X.count(0), 2))
    if load_subcomplex(dump_subcomplex(A)) != A:
        return False
    if X.is_nonsingular():
        P = pc(X)
        if load_poset(dump_poset(P)) != P or load_poset(dump_poset(P, hasse=True)) != P:
            return False
    return True


def corrupted_face_table_rejected() -> bool:
    """Negative control: swapping two faces of a 2-simplex must be refused."""
    X = standard("simplex", 2)
    faces = [list(level) for level in X.faces]
    top = list(faces[2][0])
    top[0], top[2] = top[2], top[0]
    faces[2][0] = tuple(top)
    try:
        FinSimpSet(faces)
    except SimplicialError:
        return True
    return False


def crit_13() -> tuple[bool, str]:
    problems: dict[str, list] = {"associativity": [], "normal_form": [], "embedded": [], "boundary": [], "round_trip": []}
    for name, X in kernel_sets():
        if not check_associativity(X, 3):
            problems["associativity"].append(name)
        if not check_normal_forms(X, X.dim + 2 if X.dim >= 0 else 0):
            problems["normal_form"].append(name)
        if not check_embeddedness(X):
            problems["embedded"].append(name)
        if not chains(X).boundary_squares_vanish():
            problems["boundary"].append(name)
        if not check_round_trip(X):
            problems["round_trip"].append(name)
    control = corrupted_face_table_rejected()
    ok = control and not any(problems.values())
    return ok, f"{len(kernel_sets())} sets; corrupted table rejected: {control}; problems: {problems}"


# -- runner ---------------------------------------------------------------------------

CRITERIA = {
    1: ("sphere collapse", crit_1, 1.0),
    2: ("once-subdivided collapse", crit_2, 5.0),
    3: ("twice-subdivided collapsed triangle", crit_3, 30.0),
    4: ("b_X iso iff non-singular", crit_4, 60.0),
    5: ("Sd creates edens", crit_5, 60.0),
    6: ("Strom constructors", crit_6, 120.0),
    7: ("cobase change closure", crit_7, 120.0),
    8: ("homotopy-cocartesian proxy", crit_8, 60.0),
    9: ("unit is a homology isomorphism", crit_9, 300.0),
    10: ("eden collapse structure", crit_10, 60.0),
    11: ("D universal property", crit_11, 120.0),
    12: ("poset bridge", crit_12, 60.0),
    13: ("kernel invariants", crit_13, 60.0),
}


def run_criterion(cid: int, skip_n3: bool = False) -> CriterionResult:
    name, fn, limit = CRITERIA[cid]
    start = time.perf_counter()
    try:
        passed, detail = fn(skip_n3) if cid == 9 else fn()
    except Exception as exc:  # a crash is a failed criterion, reported with its message
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    return CriterionResult(cid, name, bool(passed), detail, time.perf_counter() - start, limit)


def run_all(ids=None, skip_n3: bool = False) -> list[CriterionResult]:
    ids = sorted(ids or CRITERIA)
    return [run_criterion(cid, skip_n3) for cid in ids]


def report(results: list[CriterionResult]) -> dict:
    return {
        "passed": all(r.ok for r in results),
        "criteria": [dict(asdict(r), ok=r.ok) for r in sorted(results, key=lambda r: r.id)],
    }
