"""Command-line interface.

Every verb reads and writes the canonical JSON files of :mod:`nsset.io`.
``run`` chains verbs with ``|``; intermediates are kept under ``--work-dir``.

Exit codes: 0 pass, 1 a check failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import shlex
import sys
import tempfile
from pathlib import Path

from . import io
from .colimits import IntervalProduct, collapse, product_with_interval, pushout
from .corpus import CorpusSpec, corpus
from .desing import desingularize
from .homology import homology
from .iso import are_isomorphic
from .poset import chain, nerve, pc
from .simpset import SimpMap, standard
from .strom import (
    Homotopy,
    StromStructure,
    cobase_change,
    pushout_comparison_check,
    strom_from_barratt_eden,
    strom_sd2,
    verify_strom,
)
from .subcomplex import Subcomplex, is_abyss, is_eden, is_full, standard_subcomplex
from .subdivision import barratt, iterated_sd

log = logging.getLogger("nsset")

PASS, FAIL, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------

def _read(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _simpset(path: str):
    return io.simpset_from_obj(_read(path))


def _map(path: str) -> SimpMap:
    return io.map_from_obj(_read(path))


def _subcomplex(path: str, ambient_path: str | None = None) -> Subcomplex:
    obj = _read(path)
    if ambient_path is not None and isinstance(obj.get("ambient"), str):
        obj = dict(obj, ambient=_read(ambient_path))
    return io.subcomplex_from_obj(obj, Path(path).parent)


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _check_result(args, name: str, passed: bool, detail: dict | None = None) -> int:
    if args.format == "json":
        sys.stdout.write(io.dumps({"check": name, "passed": passed, **({"detail": detail} if detail else {})}))
    else:
        extra = f" {detail}" if detail else ""
        sys.stdout.write(f"{name}: {'pass' if passed else 'fail'}{extra}\n")
    log.info("check %s: %s", name, passed)
    return PASS if passed else FAIL


# -- build ---------------------------------------------------------------------

def _standard_spec(token: str):
    """``kind:n[:k]`` for ``simplex``, ``boundary`` and ``horn``."""
    parts = token.split(":")
    try:
        nums = [int(p) for p in parts[1:]]
    except ValueError as exc:
        raise UsageError(f"bad standard object {token!r}") from exc
    if parts[0] not in ("simplex", "boundary", "horn") or not 1 <= len(nums) <= 2:
        raise UsageError(f"bad standard object {token!r}; expected simplex:n, boundary:n or horn:n:k")
    return parts[0], nums


def cmd_build(args) -> int:
    name, params = args.name, args.params
    try:
        if name in ("simplex", "boundary", "horn"):
            nums = [int(p) for p in params]
            X = standard(name, *nums)
        elif name == "nerve-chain":
            (n,) = [int(p) for p in params]
            X = nerve(chain(n))
        elif name == "collapse":
            if len(params) != 2:
                raise UsageError("collapse needs an ambient and a subcomplex, e.g. simplex:2 boundary:2")
            kind, nums = _standard_spec(params[0])
            sub_kind, sub_nums = _standard_spec(params[1])
            if kind != "simplex" or sub_nums[0] != nums[0]:
                raise UsageError("collapse builds Delta[n] modulo a standard subcomplex of the same n")
            X = collapse(standard("simplex", nums[0]), standard_subcomplex(sub_kind, *sub_nums)).apex
        elif name == "subcomplex":
            if len(params) != 1:
                raise UsageError("subcomplex needs one standard object, e.g. boundary:2")
            kind, nums = _standard_spec(params[0])
            _emit(args, io.dump_subcomplex(standard_subcomplex(kind, *nums)))
            return PASS
        else:
            raise UsageError(f"unknown object {name!r}")
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters for {name}: {' '.join(params)}") from exc
    _emit(args, io.dump_simpset(X))
    return PASS


# -- transformations --------------------------------------------------------------

def cmd_sd(args) -> int:
    _emit(args, io.dump_simpset(iterated_sd(_simpset(args.file), args.iterations)))
    return PASS


def cmd_barratt(args) -> int:
    _emit(args, io.dump_simpset(barratt(_simpset(args.file))))
    return PASS


def cmd_desing(args) -> int:
    res = desingularize(_simpset(args.file), reverse=args.reverse)
    for step in res.steps:
        log.info("collapse %s", step.as_dict())
    if args.steps:
        text = "".join(json.dumps(s.as_dict(), sort_keys=True) + "\n" for s in res.steps)
        if args.output:
            sys.stdout.write(text)
        else:
            sys.stderr.write(text)
    _emit(args, io.dump_simpset(res.dx))
    return PASS


def cmd_pushout(args) -> int:
    f, g = _map(args.f), _map(args.g)
    _emit(args, io.dump_simpset(pushout(f, g).apex))
    return PASS


def cmd_collapse(args) -> int:
    X = _simpset(args.file)
    A = _subcomplex(args.subcomplex, args.file)
    if A.ambient != X:
        raise UsageError("subcomplex does not live in the given simplicial set")
    _emit(args, io.dump_simpset(collapse(X, A).apex))
    return PASS


def cmd_product_interval(args) -> int:
    _emit(args, io.dump_simpset(product_with_interval(_simpset(args.file)).space))
    return PASS


def cmd_pc(args) -> int:
    _emit(args, io.dump_poset(pc(_simpset(args.file)), hasse=args.hasse))
    return PASS


def cmd_homology(args) -> int:
    h = homology(_simpset(args.file))
    if args.format == "json":
        text = io.dumps({"betti": h.betti, "torsion": h.torsion, "lines": h.lines()})
    else:
        text = str(h) + "\n"
    _emit(args, text)
    return PASS


def cmd_check(args) -> int:
    X = _simpset(args.file)
    kind = args.kind
    if kind == "nonsingular":
        return _check_result(args, kind, X.is_nonsingular())
    if args.other is None:
        raise UsageError(f"check {kind} needs a second file")
    if kind == "iso":
        return _check_result(args, kind, are_isomorphic(X, _simpset(args.other)) is not None)
    A = _subcomplex(args.other, args.file)
    if A.ambient != X:
        raise UsageError("subcomplex does not live in the given simplicial set")
    test = {"eden": is_eden, "abyss": is_abyss, "full": is_full}[kind]
    return _check_result(args, kind, test(X, A))


# -- Strøm bundles ---------------------------------------------------------------------

_PARTS = ("k", "i", "j", "r", "eps")


def _write_bundle(S: StromStructure, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    stem = path.stem
    refs = {}
    for part in _PARTS:
        m = S.eps.map if part == "eps" else getattr(S, part)
        name = f"{stem}.{part}.json"
        (path.parent / name).write_text(io.dump_map(m))
        refs[part] = name
    path.write_text(io.dumps(refs))
    log.info("wrote bundle %s", path)


def _read_bundle(path: str) -> StromStructure:
    refs = _read(path)
    base = Path(path).parent
    if set(refs) != set(_PARTS):
        raise UsageError(f"{path} is not a Strøm bundle")
    maps = {part: _map(str(base / refs[part])) for part in _PARTS}
    prod = IntervalProduct(maps["j"].source)
    if prod.space != maps["eps"].source:
        raise UsageError("homotopy source is not W x Delta[1]")
    return StromStructure(maps["k"], maps["i"], maps["j"], maps["r"], Homotopy(prod, maps["eps"]))


def cmd_strom(args) -> int:
    if args.action == "build":
        X = _simpset(args.file)
        A = _subcomplex(args.other, args.file) if args.other else None
        if A is None:
            raise UsageError("strom build needs an ambient file and a subcomplex file")
        S = strom_sd2(X, A) if args.method == "sd2" else strom_from_barratt_eden(X, A)
        if not args.output:
            raise UsageError("strom build needs -o BUNDLE")
        _write_bundle(S, Path(args.output))
        return PASS
    if args.action == "verify":
        res = verify_strom(_read_bundle(args.file))
        return _check_result(args, "strom", all(res.values()), res)
    if args.action == "cobase":
        if not args.other:
            raise UsageError("strom cobase needs a bundle and a map file")
        S = _read_bundle(args.file)
        f = _map(args.other)
        ch = cobase_change(S, f)
        if args.output:
            _write_bundle(ch.structure, Path(args.output))
        res = verify_strom(ch.structure)
        res["comparison_iso"] = pushout_comparison_check(S, f, ch)
        return _check_result(args, "strom cobase", all(res.values()), res)
    raise UsageError(f"unknown strom action {args.action!r}")


# -- corpus, acceptance ----------------------------------------------------------------

def cmd_corpus(args) -> int:
    try:
        spec = CorpusSpec(args.seed, args.max_dim, args.max_cells, args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = Path(args.output or Path(args.work_dir or ".") / "corpus")
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for k, X in enumerate(corpus(spec)):
        name = f"seed{spec.seed}_{k:04d}.json"
        (out / name).write_text(io.dump_simpset(X))
        names.append(str(out / name))
    if args.format == "json":
        sys.stdout.write(io.dumps({"files": names}))
    else:
        sys.stdout.write("".join(n + "\n" for n in names))
    return PASS


def cmd_accept(args) -> int:
    from .acceptance import report, run_all

    ids = [int(t) for t in args.only.split(",")] if args.only else None
    results = run_all(ids, skip_n3=args.skip_n3)
    if args.format == "json":
        sys.stdout.write(io.dumps(report(results)))
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
    for r in results:
        log.info("criterion %d %s", r.id, "pass" if r.ok else "fail")
    return PASS if all(r.ok for r in results) else FAIL


# -- pipelines ---------------------------------------------------------------------------

_FILE_VERBS = {"sd", "barratt", "desing", "collapse", "product-interval", "pc", "build"}
_REPORT_VERBS = {"homology", "check", "strom"}


def cmd_run(args) -> int:
    stages = [shlex.split(s) for s in args.pipeline.split("|")]
    if any(not s for s in stages):
        raise UsageError("empty stage in pipeline")
    if args.work_dir:
        work = Path(args.work_dir)
        work.mkdir(parents=True, exist_ok=True)
        return _run_stages(args, stages, work)
    with tempfile.TemporaryDirectory(prefix="nsset-") as tmp:
        return _run_stages(args, stages, Path(tmp))


def _run_stages(args, stages, work: Path) -> int:
    current = args.input
    status = PASS
    parser = build_parser()
    for n, tokens in enumerate(stages):
        verb = tokens[0]
        if verb not in _FILE_VERBS | _REPORT_VERBS:
            raise UsageError(f"verb {verb!r} cannot be used in a pipeline")
        if current is None and verb != "build":
            raise UsageError(f"stage {n} ({verb}) has no input")
        if verb in ("check", "strom"):
            argv = tokens[:2] + ([current] if current else []) + tokens[2:]
        elif verb == "build":
            argv = tokens
        else:
            argv = tokens[:1] + [current] + tokens[1:]
        out = work / f"stage{n:02d}_{verb}.json"
        if verb in _FILE_VERBS:
            argv += ["-o", str(out)]
        sub = parser.parse_args(["--format", args.format] + argv)
        log.info("stage %d: %s", n, " ".join(argv))
        code = sub.func(sub)
        status = max(status, code)
        if verb in _FILE_VERBS:
            current = str(out)
        elif n != len(stages) - 1:
            raise UsageError(f"{verb} produces a report and must be the last stage")
    if args.output and current and current != args.input:
        Path(args.output).write_bytes(Path(current).read_bytes())
    return status


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsset", description="Finite simplicial sets: subdivision, desingularization, homology.")
    p.add_argument("--work-dir", help="directory for intermediate and generated files")
    p.add_argument("--seed", type=int, default=0, help="corpus seed (default 0)")
    p.add_argument("--log", dest="log_file", help="append a run log to this file")
    p.add_argument("--format", choices=("json", "text"), default="text", help="report format")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_arg=True, output=True):
        sp = sub.add_parser(name, help=help_text)
        if file_arg:
            sp.add_argument("file")
        if output:
            sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)
        return sp

    b = add("build", cmd_build, "materialize a standard object", file_arg=False)
    b.add_argument("name", help="simplex, boundary, horn, collapse, nerve-chain or subcomplex")
    b.add_argument("params", nargs="*")

    s = add("sd", cmd_sd, "Kan subdivision")
    s.add_argument("--iterations", type=int, default=1)
    add("barratt", cmd_barratt, "nerve of the face poset")
    d = add("desing", cmd_desing, "desingularization")
    d.add_argument("--log", dest="steps", action="store_true", help="print the collapse step log as JSON lines")
    d.add_argument("--reverse", action="store_true", help="scan candidates in reverse order")
    po = add("pushout", cmd_pushout, "pushout of two maps out of a common source", file_arg=False)
    po.add_argument("f")
    po.add_argument("g")
    c = add("collapse", cmd_collapse, "collapse a subcomplex to a point")
    c.add_argument("subcomplex")
    add("product-interval", cmd_product_interval, "product with Delta[1]")
    pcp = add("pc", cmd_pc, "poset reflection of the edge preorder")
    pcp.add_argument("--hasse", action="store_true", help="print covering pairs only")
    add("homology", cmd_homology, "integral homology")

    ch = sub.add_parser("check", help="nonsingular | eden | abyss | full | iso")
    ch.add_argument("kind", choices=("nonsingular", "eden", "abyss", "full", "iso"))
    ch.add_argument("file")
    ch.add_argument("other", nargs="?")
    ch.set_defaults(func=cmd_check)

    st = sub.add_parser("strom", help="build | verify | cobase Strøm structures")
    st.add_argument("action", choices=("build", "verify", "cobase"))
    st.add_argument("file", help="ambient (build) or bundle (verify, cobase)")
    st.add_argument("other", nargs="?", help="subcomplex (build) or map (cobase)")
    st.add_argument("--method", choices=("barratt", "sd2"), default="barratt")
    st.add_argument("-o", "--output")
    st.set_defaults(func=cmd_strom)

    co = sub.add_parser("corpus", help="random simplicial sets, deterministic per seed")
    co.add_argument("--count", type=int, default=1)
    co.add_argument("--max-dim", type=int, default=3)
    co.add_argument("--max-cells", type=int, default=12)
    co.add_argument("-o", "--output", help="output directory (default WORK_DIR/corpus)")
    co.set_defaults(func=cmd_corpus)

    ac = sub.add_parser("accept", help="run the acceptance criteria")
    ac.add_argument("--skip-n3", action="store_true", help="skip the Delta[3]/boundary unit in criterion 9")
    ac.add_argument("--only", help="comma-separated criterion ids")
    ac.set_defaults(func=cmd_accept)

    r = sub.add_parser("run", help='pipeline such as "sd --iterations 2 | desing | homology"')
    r.add_argument("pipeline")
    r.add_argument("input", nargs="?")
    r.add_argument("-o", "--output", help="copy the last produced file here")
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_file:
        handler = logging.FileHandler(args.log_file)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"nsset: error: {exc}\n")
        return ERROR
    finally:
        for h in list(log.handlers):
            if isinstance(h, logging.FileHandler):
                log.removeHandler(h)
                h.close()


if __name__ == "__main__":
    sys.exit(main())
