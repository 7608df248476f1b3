import json
import random

import pytest

from gradedflag import catalog_io as io
from gradedflag.catalog import CatalogEntry
from gradedflag.elementary_group import GroupElement
from gradedflag.filtration import Filtration
from gradedflag.properties import rand_word
from gradedflag.scalar import Q

from conftest import entry

SL2_TEXT = io.example_path("sl2").read_text()


@pytest.mark.parametrize("name", ["sl2", "gl(1,1)", "gl(2,1,1)", "sl(2,2)"])
def test_entry_round_trip(name):
    e = entry(name)
    text = io.dumps(e)
    back = io.loads(text)
    assert isinstance(back, CatalogEntry)
    assert back.algebra.structure == e.algebra.structure
    assert back.grading.basis == e.grading.basis
    assert io.dumps(back) == text


def test_shipped_examples_match_catalog():
    assert io.dumps(entry("sl2")) == SL2_TEXT
    assert io.dumps(entry("gl(2,1,1)")) == io.example_path("gl211").read_text()


def test_word_round_trip(gl211):
    G = gl211.grading
    g = rand_word(G, random.Random(4))
    y = G.from_graded([0] * 11 + [Q(-3, 7)] + [0] * 4)
    g = GroupElement(G, list(g.word) + [("-", y)])
    text = io.dumps(g)
    back = io.loads(text)
    assert back.word == g.word and back.matrix == g.matrix
    assert '"-3/7"' in text and io.dumps(back) == text


def test_filtration_round_trip(gl211):
    F = gl211.grading.minus_filtration()
    back = io.loads(io.dumps(F))
    assert isinstance(back, Filtration)
    assert all(back.steps[n] == F.steps[n] for n in F.steps)
    assert io.dumps(back) == io.dumps(F)


def test_save_and_load(tmp_path, sl2):
    path = tmp_path / "a.json"
    io.save(sl2, path)
    assert io.load(path).algebra.structure == sl2.algebra.structure


def test_syntax_error_position():
    with pytest.raises(io.FormatError) as info:
        io.loads('{\n  "dim": 3,\n  "labels": [}\n')
    assert (info.value.line, info.value.column) == (3, 14)


def test_broken_jacobi_reports_triple():
    bad = SL2_TEXT.replace('[1, 2, ["0", "0", "-2"]]', '[1, 2, ["0", "1", "-2"]]')
    assert bad != SL2_TEXT
    with pytest.raises(io.ValidationError) as info:
        io.loads(bad)
    assert info.value.report == [{"check": "jacobi", "triple": [0, 1, 2]}]


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(dim=2.5),
    lambda d: d["structure"][0][2].__setitem__(0, 0.5),
    lambda d: d.update(kind="group"),
    lambda d: d.update(format="other/2"),
    lambda d: d["structure"][0].__setitem__(0, 9),
])
def test_malformed_documents(mutate):
    doc = json.loads(SL2_TEXT)
    mutate(doc)
    with pytest.raises(io.FormatError):
        io.loads(json.dumps(doc))


def test_schema_accepts_shipped_documents(gl211):
    jsonschema = pytest.importorskip("jsonschema")
    schema = io.schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    for text in (SL2_TEXT, io.dumps(gl211.grading.minus_filtration()), io.dumps(GroupElement.identity(gl211.grading))):
        jsonschema.validate(json.loads(text), schema)


def test_plain_algebra():
    doc = json.loads(SL2_TEXT)
    for key in ("grading", "euler", "top_pair", "notes"):
        doc.pop(key)
    L = io.loads(json.dumps(doc))
    assert L.dim == 3 and io.loads(io.dumps(L)).structure == L.structure
