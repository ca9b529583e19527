import json

import numpy as np
import pytest
from hypothesis import given

from conelab.algebra import Element, diag, random_element
from conelab.errors import ParseError
from conelab.io import IoError, dumps, dumps_fixed, element_io, load, loads, save
from conelab.jordan import random_jordan_iso

from conftest import seeds, shapes


def test_roundtrip_diag(tmp_path):
    p = tmp_path / "x.json"
    element_io(p, "save", diag(1, 2))
    assert element_io(p, "load") == diag(1, 2)


@given(shapes, seeds)
def test_roundtrip_bit_exact(shape, seed):
    x = random_element(shape, "General", (1, 3), seed)
    text = dumps(x)
    y = loads(text)
    assert y == x
    assert dumps(y) == text


def test_roundtrip_jordan(tmp_path):
    J = random_jordan_iso([2, 2, 3], 5)
    save(tmp_path / "j.json", J)
    assert load(tmp_path / "j.json") == J


@pytest.mark.parametrize(
    "doc",
    [
        '{"shape": [2], "blocks": [[[1, 0], [0, 1]]]}',
        '{"shape": [2], "blocks": "nope"}',
        '{"shape": [2]}',
        '{"shape": [0], "blocks": []}',
        '{"shape": [1], "blocks": [[[[1, 0]]]], "extra": 1}',
        '{"shape": [1], "blocks": [[[["a", 0]]]]}',
        "not json",
    ],
)
def test_malformed(doc):
    with pytest.raises(ParseError):
        loads(doc)


def test_mismatch_names_block():
    doc = {"shape": [1, 2], "blocks": [[[[1, 0]]], [[[1, 0]]]]}
    with pytest.raises(ParseError, match="block 1"):
        loads(json.dumps(doc))


def test_missing_file(tmp_path):
    with pytest.raises(IoError):
        load(tmp_path / "absent.json")


def test_dumps_fixed_is_stable():
    obj = {"b": 0.1, "a": [1, 2.0, None, True], "c": Element([np.eye(1)])}
    s = dumps_fixed(obj)
    assert s == dumps_fixed(obj)
    assert s.startswith('{"a": [1, 2.0, null, true], "b": 0.10000000000000001')
    assert json.loads(s)["c"] == {"blocks": [[[[1.0, 0.0]]]], "shape": [1]}
