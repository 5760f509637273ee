import json

import pytest

from nsset import io
from nsset.cli import main
from nsset.simpset import standard


def build(tmp_path, name, *params):
    out = tmp_path / f"{name}_{'_'.join(params)}.json".replace(":", "-")
    assert main(["build", name, *params, "-o", str(out)]) == 0
    return out


def load(path):
    return io.load_simpset(path.read_text())


def test_build_examples(tmp_path):
    assert load(build(tmp_path, "simplex", "2")) == standard("simplex", 2)
    assert load(build(tmp_path, "collapse", "simplex:2", "boundary:2")).counts == (1, 0, 1)
    assert load(build(tmp_path, "nerve-chain", "3")) == standard("simplex", 3)
    assert load(build(tmp_path, "horn", "3", "1")) == standard("horn", 3, 1)


@pytest.mark.parametrize("params", [["cube", "2"], ["simplex", "x"], ["collapse", "simplex:2"], ["horn", "2", "5"]])
def test_build_usage_errors(params, capsys):
    assert main(["build", *params]) == 2
    assert "nsset: error" in capsys.readouterr().err


def test_pipeline_on_collapsed_triangle(tmp_path, capsys):
    X = build(tmp_path, "collapse", "simplex:2", "boundary:2")
    assert main(["run", "sd --iterations 2 | desing | homology", str(X)]) == 0
    assert capsys.readouterr().out.split("\n")[:3] == ["H_0 = Z", "H_1 = 0", "H_2 = Z"]


def test_pipeline_keeps_intermediates(tmp_path, capsys):
    X = build(tmp_path, "collapse", "simplex:2", "boundary:2")
    work = tmp_path / "work"
    out = tmp_path / "final.json"
    assert main(["--work-dir", str(work), "run", "sd | desing", str(X), "-o", str(out)]) == 0
    assert sorted(p.name for p in work.iterdir()) == ["stage00_sd.json", "stage01_desing.json"]
    assert load(out).counts == (2, 1)


def test_check_verbs(tmp_path, capsys):
    D2 = build(tmp_path, "simplex", "2")
    assert main(["run", "check nonsingular", str(D2)]) == 0
    S = build(tmp_path, "collapse", "simplex:2", "boundary:2")
    assert main(["check", "nonsingular", str(S)]) == 1
    sub = tmp_path / "edge.json"
    assert main(["build", "subcomplex", "horn:2:0", "-o", str(sub)]) == 0
    assert main(["check", "full", str(D2), str(sub)]) == 1
    assert main(["check", "iso", str(D2), str(build(tmp_path, "nerve-chain", "2"))]) == 0
    capsys.readouterr()
    assert main(["--format", "json", "check", "eden", str(D2), str(sub)]) == 1
    assert json.loads(capsys.readouterr().out) == {"check": "eden", "passed": False}


def test_pc_verb(tmp_path, capsys):
    D2 = build(tmp_path, "simplex", "2")
    assert main(["run", "pc", str(D2)]) == 0
    out = tmp_path / "pc.json"
    assert main(["pc", str(D2), "--hasse", "-o", str(out)]) == 0
    assert json.loads(out.read_text()) == {"size": 3, "hasse": [[0, 1], [1, 2]]}


def test_transform_verbs(tmp_path, capsys):
    D1 = build(tmp_path, "simplex", "1")
    for verb, counts in (("sd", (3, 2)), ("barratt", (3, 2)), ("product-interval", (4, 5, 2))):
        out = tmp_path / f"{verb}.json"
        assert main([verb, str(D1), "-o", str(out)]) == 0
        assert load(out).counts == counts
    S = build(tmp_path, "collapse", "simplex:2", "boundary:2")
    assert main(["desing", str(S), "--log"]) == 0
    captured = capsys.readouterr()
    assert io.load_simpset(captured.out) == standard("simplex", 0)
    assert json.loads(captured.err.splitlines()[0])["simplex"] == "2/0"


def test_strom_bundle_flow(tmp_path, capsys):
    D2 = build(tmp_path, "simplex", "2")
    sub = tmp_path / "bd.json"
    assert main(["build", "subcomplex", "boundary:2", "-o", str(sub)]) == 0
    bundle = tmp_path / "s.json"
    assert main(["strom", "build", str(D2), str(sub), "--method", "sd2", "-o", str(bundle)]) == 0
    assert main(["strom", "verify", str(bundle)]) == 0
    refs = json.loads(bundle.read_text())
    source = io.load_map((tmp_path / refs["k"]).read_text()).source
    f = tmp_path / "f.json"
    from nsset.simpset import constant_map

    f.write_text(io.dump_map(constant_map(source, standard("simplex", 0))))
    out = tmp_path / "hat.json"
    assert main(["strom", "cobase", str(bundle), str(f), "-o", str(out)]) == 0
    assert "strom cobase: pass" in capsys.readouterr().out
    assert io.load_map((tmp_path / json.loads(out.read_text())["k"]).read_text()).target.counts == (14, 36, 24)


def test_error_exit_codes(tmp_path, capsys):
    assert main(["homology", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["sd", str(bad)]) == 2
    assert main(["run", "homology | sd", str(build(tmp_path, "simplex", "1"))]) == 2
    assert main(["run", "bogus", str(bad)]) == 2
    with pytest.raises(SystemExit):
        main(["nope"])


def test_corpus_verb(tmp_path, capsys):
    assert main(["--seed", "3", "corpus", "--count", "0", "-o", str(tmp_path / "c")]) == 0
    assert list((tmp_path / "c").iterdir()) == []
    assert main(["--format", "json", "--seed", "3", "corpus", "--count", "2", "-o", str(tmp_path / "d")]) == 0
    files = json.loads(capsys.readouterr().out)["files"]
    assert [f.rsplit("/", 1)[1] for f in files] == ["seed3_0000.json", "seed3_0001.json"]
    assert main(["corpus", "--max-dim", "5"]) == 2


def test_log_file(tmp_path, capsys):
    log = tmp_path / "run.log"
    D1 = build(tmp_path, "simplex", "1")
    assert main(["--log", str(log), "check", "nonsingular", str(D1)]) == 0
    assert "check nonsingular: True" in log.read_text()


def test_accept_subset(capsys):
    assert main(["accept", "--only", "1,2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and all(line.startswith("[PASS]") for line in lines)
