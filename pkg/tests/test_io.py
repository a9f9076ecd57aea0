import json
from pathlib import Path

import pytest
from conftest import by_name
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib import io
from hofib._util import SchemaError
from hofib.algebra import cyclic, indiscrete_groupoid, ordinal
from hofib.bicategory import bicategories_equal, identity_lax, lax_equal
from hofib.monoidal import delooping, discrete_monoidal_group
from hofib.nerve import geometric_nerve
from hofib.suites import run_suite
from hofib.xmod import xmod_of_groups


def roundtrip(x):
    text = io.dumps(x)
    y = io.loads(text)
    assert io.dumps(y) == text
    return y


def test_bicategories_roundtrip_bit_exactly(corpus):
    for B in corpus.bicategories:
        assert bicategories_equal(roundtrip(B), B)


def test_categories_monoidals_and_xmods_roundtrip(corpus):
    for x in corpus.categories + corpus.monoidals + corpus.xmods:
        roundtrip(x)


def test_lax_functor_roundtrip(corpus):
    F = identity_lax(by_name(corpus.bicategories, "SZ2[w]"))
    assert lax_equal(roundtrip(F), F)


def test_simplicial_set_roundtrip(corpus):
    roundtrip(geometric_nerve(by_name(corpus.bicategories, "SZ2"), "lax", 2))


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=4))
def test_generated_structures_roundtrip(n):
    roundtrip(delooping(discrete_monoidal_group(cyclic(n))))
    roundtrip(xmod_of_groups(cyclic(n), cyclic(n), {g: g for g in range(n)}))
    roundtrip(indiscrete_groupoid(list(range(n))))


def test_save_and_load_files(tmp_path):
    p = tmp_path / "c.json"
    io.save(ordinal(2), p)
    assert io.schema_of(p) == "groupoid.v1"
    assert io.dumps(io.load(p)) == p.read_text()


def test_missing_compose_entry_names_the_pair():
    doc = json.loads(io.dumps(ordinal(1)))
    doc["compose"] = doc["compose"][1:]
    with pytest.raises(SchemaError) as e:
        io.loads(json.dumps(doc))
    assert e.value.pointer == "/compose"
    assert "missing compose entry for pair" in e.value.detail


def test_missing_horizontal_composite_is_reported(corpus):
    doc = json.loads(io.dumps(by_name(corpus.bicategories, "SZ2")))
    doc["hcomp1"] = doc["hcomp1"][1:]
    with pytest.raises(SchemaError) as e:
        io.loads(json.dumps(doc))
    assert e.value.pointer == "/hcomp1"


def test_unknown_schema_version():
    doc = json.loads(io.dumps(ordinal(1)))
    doc["schema"] = "groupoid.v2"
    with pytest.raises(SchemaError, match="unknown schema version"):
        io.loads(json.dumps(doc))


def test_structural_errors_carry_a_pointer():
    doc = json.loads(io.dumps(ordinal(1)))
    doc["objects"] = "zero"
    with pytest.raises(SchemaError) as e:
        io.loads(json.dumps(doc))
    assert e.value.pointer == "/objects"


def test_not_json():
    with pytest.raises(SchemaError, match="not JSON"):
        io.loads("{")


def test_suite_report_validates_against_its_schema():
    doc = run_suite("monoidal")
    text = io.canonical(doc)
    assert io.check_document(json.loads(text)) == "report.v1"
    assert json.loads(text)["status"] == "valid"


GOLDEN = sorted((Path(__file__).parent / "golden").glob("*.json"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_files_roundtrip(path):
    text = path.read_text()
    obj = io.load(path)
    assert io.dumps(obj) == text


def test_golden_files_match_current_constructions(corpus):
    d = Path(__file__).parent / "golden"
    B = by_name(corpus.bicategories, "SZ2[w]")
    assert io.dumps(B) == (d / "sz2w.bicategory.json").read_text()
    assert io.dumps(by_name(corpus.xmods, "(Z2,Z2,id)")) == (d / "z2z2id.xmod.json").read_text()
    assert io.dumps(ordinal(2)) == (d / "ordinal2.groupoid.json").read_text()
    assert io.canonical(run_suite("monoidal")) == (d / "monoidal-suite.report.json").read_text()
