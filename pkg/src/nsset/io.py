"""Canonical text formats for simplicial sets, maps, subcomplexes and posets.

All documents are JSON with sorted keys, so printing is deterministic and
``parse(print(x)) == x``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .delta import Operator
from .poset import FinPoset
from .simpset import FinSimpSet, NormalSimplex, SimpMap, SimplexId
from .subcomplex import Subcomplex


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _nf_text(s: NormalSimplex) -> str:
    return f"{s.dim}/{s.index} : " + " ".join(map(str, s.degeneracy))


def _parse_nf(text: str) -> NormalSimplex:
    try:
        return NormalSimplex.from_text(text)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"bad simplex {text!r}") from exc


# -- simplicial sets ------------------------------------------------------------

def simpset_to_obj(X: FinSimpSet) -> dict:
    faces = {}
    for n in range(1, len(X.counts)):
        for i, fs in enumerate(X.faces[n]):
            for j, f in enumerate(fs):
                faces[f"{n}/{i}/{j}"] = _nf_text(f)
    labels = {f"{x.dim}/{x.index}": text for x, text in X.labels.items()}
    return {"dim": X.dim, "counts": list(X.counts), "faces": faces, "labels": labels}


def simpset_from_obj(obj: dict) -> FinSimpSet:
    try:
        counts = [int(c) for c in obj["counts"]]
        dim = int(obj["dim"])
        raw = obj.get("faces", {})
        labels = obj.get("labels", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"not a simplicial set document: {exc}") from exc
    if dim != len(counts) - 1:
        raise FormatError("dim does not match counts")
    faces = [[() for _ in range(counts[0])]] if counts else []
    for n in range(1, len(counts)):
        level = []
        for i in range(counts[n]):
            try:
                level.append(tuple(_parse_nf(raw[f"{n}/{i}/{j}"]) for j in range(n + 1)))
            except KeyError as exc:
                raise FormatError(f"missing face {exc}") from exc
        faces.append(level)
    expected = sum(c * (n + 1) for n, c in enumerate(counts) if n)
    if len(raw) != expected:
        raise FormatError("unexpected entries in the face table")
    lab = {}
    for key, text in labels.items():
        d, i = (int(t) for t in key.split("/"))
        lab[SimplexId(d, i)] = str(text)
    X = FinSimpSet(faces, lab)
    if X.counts != tuple(counts):
        raise FormatError("trailing empty dimensions are not canonical")
    return X


def dump_simpset(X: FinSimpSet) -> str:
    return dumps(simpset_to_obj(X))


def load_simpset(text: str) -> FinSimpSet:
    return simpset_from_obj(_loads(text))


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


# -- operators -------------------------------------------------------------------

def dump_operator(a: Operator) -> str:
    return a.to_text()


def load_operator(text: str) -> Operator:
    return Operator.from_text(text)


# -- maps ----------------------------------------------------------------------------

def map_to_obj(f: SimpMap) -> dict:
    images = {f"{d}/{i}": _nf_text(y) for d, level in enumerate(f.images) for i, y in enumerate(level)}
    return {"source": simpset_to_obj(f.source), "target": simpset_to_obj(f.target), "images": images}


def map_from_obj(obj: dict) -> SimpMap:
    try:
        X = simpset_from_obj(obj["source"])
        Y = simpset_from_obj(obj["target"])
        raw = obj["images"]
        images = [[_parse_nf(raw[f"{d}/{i}"]) for i in range(c)] for d, c in enumerate(X.counts)]
    except KeyError as exc:
        raise FormatError(f"missing map entry {exc}") from exc
    return SimpMap(X, Y, images)


def dump_map(f: SimpMap) -> str:
    return dumps(map_to_obj(f))


def load_map(text: str) -> SimpMap:
    return map_from_obj(_loads(text))


# -- subcomplexes ---------------------------------------------------------------------

def subcomplex_to_obj(A: Subcomplex, ambient_ref: str | None = None) -> dict:
    members = [[x.dim, x.index] for x in A.sorted_members()]
    ambient = ambient_ref if ambient_ref is not None else simpset_to_obj(A.ambient)
    return {"ambient": ambient, "members": members}


def subcomplex_from_obj(obj: dict, base: Path | None = None) -> Subcomplex:
    amb = obj.get("ambient")
    if isinstance(amb, str):
        path = Path(amb)
        if base is not None and not path.is_absolute():
            path = base / path
        X = load_simpset(path.read_text())
    elif isinstance(amb, dict):
        X = simpset_from_obj(amb)
    else:
        raise FormatError("subcomplex needs an ambient file reference or document")
    return Subcomplex(X, [tuple(m) for m in obj.get("members", [])])


def dump_subcomplex(A: Subcomplex, ambient_ref: str | None = None) -> str:
    return dumps(subcomplex_to_obj(A, ambient_ref))


def load_subcomplex(text: str, base: Path | None = None) -> Subcomplex:
    return subcomplex_from_obj(_loads(text), base)


# -- posets ------------------------------------------------------------------------------

def poset_to_obj(P: FinPoset, hasse: bool = False) -> dict:
    if hasse:
        return {"size": P.size, "hasse": sorted([list(p) for p in P.hasse()])}
    return {"size": P.size, "leq": sorted([list(p) for p in P.pairs()])}


def poset_from_obj(obj: dict) -> FinPoset:
    size = int(obj["size"])
    if "hasse" in obj:
        return FinPoset(size, [tuple(p) for p in obj["hasse"]], close=True)
    return FinPoset(size, [tuple(p) for p in obj.get("leq", [])])


def dump_poset(P: FinPoset, hasse: bool = False) -> str:
    return dumps(poset_to_obj(P, hasse))


def load_poset(text: str) -> FinPoset:
    return poset_from_obj(_loads(text))


def detect_kind(obj: dict) -> str:
    """Which document type a parsed object is."""
    if "images" in obj:
        return "map"
    if "members" in obj:
        return "subcomplex"
    if "size" in obj:
        return "poset"
    if "counts" in obj:
        return "simpset"
    if "k" in obj and "eps" in obj:
        return "strom"
    raise FormatError("unrecognized document")
