"""One test per acceptance criterion, each run at its tolerance and time limit."""
import pytest

from nsset import acceptance
from nsset.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("cid", sorted(CRITERIA), ids=lambda c: f"criterion_{c:02d}")
def test_criterion(cid, capsys):
    result = run_criterion(cid)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.in_time, f"took {result.seconds:.1f} s, limit {result.limit:g} s"


def test_broken_b_map_is_caught(monkeypatch):
    monkeypatch.setattr(acceptance, "is_isomorphism", lambda f: True)
    assert not run_criterion(4).passed


def test_wrong_homology_is_caught(monkeypatch):
    real = acceptance.homology

    def shifted(X):
        h = real(X)
        return type(h)(h.betti + [1], h.torsion + [[]])

    monkeypatch.setattr(acceptance, "homology", shifted)
    assert not run_criterion(3).passed


def test_crash_is_reported_as_failure(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("induced failure")

    monkeypatch.setattr(acceptance, "desingularize", boom)
    result = run_criterion(1)
    assert not result.ok and "induced failure" in result.detail
    assert result.line().startswith("[FAIL]")
