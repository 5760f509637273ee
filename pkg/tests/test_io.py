import json

import pytest

from nsset import io
from nsset.acceptance import sphere
from nsset.corpus import CorpusSpec, corpus
from nsset.delta import Operator
from nsset.poset import chain, random_poset
from nsset.simpset import SimplicialError, constant_map, standard
from nsset.subcomplex import standard_subcomplex


def test_simpset_round_trip():
    for X in [standard("simplex", 3), sphere(2), standard("boundary", 0)] + corpus(CorpusSpec(0, 3, 12, 30)):
        text = io.dump_simpset(X)
        Y = io.load_simpset(text)
        assert Y == X and io.dump_simpset(Y) == text


def test_other_documents_round_trip():
    f = constant_map(standard("simplex", 2), standard("simplex", 1), vertex=1)
    assert io.load_map(io.dump_map(f)) == f
    A = standard_subcomplex("horn", 3, 1)
    assert io.load_subcomplex(io.dump_subcomplex(A)) == A
    a = Operator((0, 0, 2), 3)
    assert io.load_operator(io.dump_operator(a)) == a
    import random

    P = random_poset(random.Random(1), 6, 0.4)
    assert io.load_poset(io.dump_poset(P)) == P
    assert io.load_poset(io.dump_poset(P, hasse=True)) == P


def test_detect_kind():
    assert io.detect_kind(json.loads(io.dump_simpset(standard("simplex", 1)))) == "simpset"
    assert io.detect_kind(json.loads(io.dump_poset(chain(2)))) == "poset"
    assert io.detect_kind(json.loads(io.dump_subcomplex(standard_subcomplex("boundary", 1)))) == "subcomplex"
    with pytest.raises(io.FormatError):
        io.detect_kind({"unrelated": 1})


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"counts": [1], "dim": 2, "faces": {}}',
        '{"counts": [1, 1], "dim": 1, "faces": {"1/0/0": "0/0 : 0"}}',
        '{"counts": [1, 1], "dim": 1, "faces": {"1/0/0": "zero", "1/0/1": "0/0 : 0"}}',
        '{"counts": [1, 0], "dim": 1, "faces": {}}',
        '{"counts": [1], "dim": 0, "faces": {"1/0/0": "0/0 : 0"}}',
    ],
)
def test_malformed_documents_rejected(text):
    with pytest.raises((io.FormatError, SimplicialError)):
        io.load_simpset(text)


def test_inconsistent_face_table_rejected():
    obj = json.loads(io.dump_simpset(standard("simplex", 2)))
    obj["faces"]["2/0/0"], obj["faces"]["2/0/2"] = obj["faces"]["2/0/2"], obj["faces"]["2/0/0"]
    with pytest.raises(SimplicialError):
        io.simpset_from_obj(obj)
