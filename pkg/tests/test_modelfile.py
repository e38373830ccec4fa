"""Strict model-file parsing."""

import json

import pytest

from charcalc.conductor import ModelValidationError
from charcalc.modelfile import ModelParseError, load_model, parse_model


def i2_document():
    return {
        "relative_dimension": 1,
        "generic_euler": 0,
        "fibers": [
            {
                "prime": 5,
                "components": [
                    {"id": "C1", "multiplicity": 1},
                    {"id": "C2", "multiplicity": 1},
                ],
                "strata": [
                    {"components": ["C1"], "chi_closed": 2},
                    {"components": ["C2"], "chi_closed": 2},
                    {"components": ["C1", "C2"], "chi_closed": 2},
                ],
            }
        ],
    }


def parse(doc):
    return parse_model(json.dumps(doc))


def test_parse_well_formed_document():
    model = parse(i2_document())
    assert model.relative_dimension == 1
    assert model.generic_euler == 0
    fiber = model.fibers[0]
    assert fiber.prime == 5
    assert {c.id for c in fiber.components} == {"C1", "C2"}
    assert len(fiber.strata) == 3


def test_generic_euler_is_optional():
    doc = i2_document()
    del doc["generic_euler"]
    assert parse(doc).generic_euler is None


def test_unknown_top_level_field_rejected():
    doc = i2_document()
    doc["discriminant"] = 5
    with pytest.raises(ModelParseError, match="unknown fields"):
        parse(doc)


def test_unknown_nested_field_rejected():
    doc = i2_document()
    doc["fibers"][0]["components"][0]["color"] = "blue"
    with pytest.raises(ModelParseError, match=r"components\[0\]"):
        parse(doc)


def test_floats_rejected():
    doc = i2_document()
    doc["generic_euler"] = 0.0
    with pytest.raises(ModelParseError, match="exact integer"):
        parse(doc)
    doc = i2_document()
    doc["fibers"][0]["strata"][0]["chi_closed"] = 2.5
    with pytest.raises(ModelParseError, match="exact integer"):
        parse(doc)


def test_booleans_rejected():
    doc = i2_document()
    doc["fibers"][0]["prime"] = True
    with pytest.raises(ModelParseError, match="exact integer"):
        parse(doc)


def test_missing_required_field():
    doc = i2_document()
    del doc["fibers"][0]["prime"]
    with pytest.raises(ModelParseError, match="missing fields"):
        parse(doc)


def test_json_syntax_error_is_position_annotated():
    with pytest.raises(ModelParseError, match="line 1"):
        parse_model("{not json}")


def test_repeated_component_in_stratum_rejected():
    doc = i2_document()
    doc["fibers"][0]["strata"][2]["components"] = ["C1", "C1"]
    with pytest.raises(ModelParseError, match="repeated"):
        parse(doc)


def test_referential_integrity_enforced():
    doc = i2_document()
    doc["fibers"][0]["strata"][2]["components"] = ["C1", "ghost"]
    with pytest.raises(ModelValidationError, match="undeclared"):
        parse(doc)


def test_stratum_without_chi_rejected():
    doc = i2_document()
    del doc["fibers"][0]["strata"][0]["chi_closed"]
    with pytest.raises(ModelValidationError, match="no Euler characteristic"):
        parse(doc)


def test_depth_bound_enforced_at_parse():
    doc = i2_document()
    doc["relative_dimension"] = 0
    with pytest.raises(ModelValidationError, match="d\\+1"):
        parse(doc)


def test_empty_id_rejected():
    doc = i2_document()
    doc["fibers"][0]["components"][0]["id"] = ""
    with pytest.raises(ModelParseError, match="non-empty string"):
        parse(doc)


def test_component_chi_open_accepted():
    doc = i2_document()
    doc["fibers"][0]["components"][0]["chi_open"] = 0
    model = parse(doc)
    assert model.fibers[0].components[0].chi_open == 0


def test_load_model_missing_file(tmp_path):
    with pytest.raises(ModelParseError, match="cannot read"):
        load_model(tmp_path / "absent.json")


def test_load_model_from_disk(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(i2_document()), encoding="utf-8")
    model = load_model(path)
    assert model.fibers[0].prime == 5
