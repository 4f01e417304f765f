"""Strict input parsing, canonical serialization, and exact JSON encoding."""

import json
from fractions import Fraction

import jsonschema
import pytest

from tropcoh.examples import local_p2
from tropcoh.io import (
    InputError,
    encode_exact,
    input_schema,
    parse_input,
    report_bytes,
    serialize_input,
)

FIXTURE_NAMES = ("p2.json", "blowup_p2.json", "a2d_d3.json")


def minimal_doc(**extra):
    doc = {
        "format": "tropcoh-input",
        "version": 1,
        "points": [[0, 0], [1, 0], [0, 1], [-1, -1]],
        "triangles": [[0, 1, 2], [0, 2, 3], [0, 3, 1]],
        "nu": [0, 1, 1, 1],
    }
    doc.update(extra)
    return doc


def as_bytes(doc):
    return json.dumps(doc).encode()


def test_schema_is_valid_draft7():
    jsonschema.Draft7Validator.check_schema(input_schema())


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_are_canonical_and_round_trip(fixture_dir, name):
    data = (fixture_dir / name).read_bytes()
    doc = parse_input(data)
    assert serialize_input(doc) == data
    again = parse_input(serialize_input(doc))
    assert serialize_input(again) == data


def test_parsed_p2_matches_the_stock_subdivision(fixture_dir):
    doc = parse_input((fixture_dir / "p2.json").read_bytes())
    assert doc.subdivision() == local_p2()


def test_p2_named_sets(fixture_dir):
    doc = parse_input((fixture_dir / "p2.json").read_bytes())
    assert doc.twisting_sets["cap_k1"].values == (3, 3, 3)
    assert doc.twisting_sets["cap_k1"].region == (0, 0)
    assert doc.twisting_sets["bad_parity"].values == (2, 3, 3)
    assert doc.kink_sets["canonical"] == (-3, -3, -3)
    assert doc.options.margin == 0
    assert doc.options.epsilon is None


def test_empty_document():
    with pytest.raises(InputError, match="empty document"):
        parse_input(b"")


def test_binary_garbage():
    with pytest.raises(InputError, match="not UTF-8"):
        parse_input(b"\xff\xfe\x00")


def test_syntax_error_reports_location():
    with pytest.raises(InputError, match=r"parse error at line 2, column"):
        parse_input(b'{\n  "format": ,\n}')


def test_unknown_top_level_field():
    with pytest.raises(InputError, match="invalid input"):
        parse_input(as_bytes(minimal_doc(flavor="mint")))


def test_wrong_format_tag():
    with pytest.raises(InputError, match="invalid input at /format"):
        parse_input(as_bytes(minimal_doc(format="other")))


def test_wrong_nu_type_names_the_path():
    with pytest.raises(InputError, match="invalid input at /nu"):
        parse_input(as_bytes(minimal_doc(nu="abc")))


def test_nu_length_mismatch():
    with pytest.raises(InputError, match="one value per lattice point"):
        parse_input(as_bytes(minimal_doc(nu=[0, 1, 1])))


def test_area_two_triangle_is_rejected():
    doc = {
        "format": "tropcoh-input",
        "version": 1,
        "points": [[0, 0], [2, 0], [0, 1]],
        "triangles": [[0, 1, 2]],
        "nu": [0, 0, 0],
    }
    with pytest.raises(InputError, match="not-elementary"):
        parse_input(as_bytes(doc))


def test_twisting_set_requires_values():
    doc = minimal_doc(twisting_sets={"broken": {"region": [0, 0]}})
    with pytest.raises(InputError, match="invalid input at /twisting_sets/broken"):
        parse_input(as_bytes(doc))


def test_options_margin_must_be_nonnegative():
    doc = minimal_doc(options={"margin": -1})
    with pytest.raises(InputError, match="invalid input at /options/margin"):
        parse_input(as_bytes(doc))


def test_serialize_omits_empty_sections():
    doc = parse_input(as_bytes(minimal_doc()))
    out = serialize_input(doc).decode()
    parsed = json.loads(out)
    assert "twisting_sets" not in parsed
    assert "kink_sets" not in parsed
    assert "options" not in parsed
    assert out.endswith("\n")


class TestEncodeExact:
    def test_integral_fraction_becomes_int(self):
        assert encode_exact(Fraction(4, 2)) == 2
        assert isinstance(encode_exact(Fraction(4, 2)), int)

    def test_proper_fraction_becomes_string(self):
        assert encode_exact(Fraction(3, 2)) == "3/2"
        assert encode_exact(Fraction(-1, 2)) == "-1/2"

    def test_containers_recurse(self):
        got = encode_exact({"a": [Fraction(1, 2), (1, 2)], "b": None})
        assert got == {"a": ["1/2", [1, 2]], "b": None}

    def test_scalars_pass_through(self):
        assert encode_exact(True) is True
        assert encode_exact(7) == 7
        assert encode_exact("x") == "x"

    def test_unknown_types_fail(self):
        with pytest.raises(TypeError):
            encode_exact(object())


def test_report_envelope():
    data = report_bytes("winding", {"h_even": 10}, seed=5)
    rep = json.loads(data)
    assert rep["format"] == "tropcoh-report"
    assert rep["version"] == 1
    assert rep["command"] == "winding"
    assert rep["seed"] == 5
    assert rep["result"] == {"h_even": 10}
    assert data.endswith(b"\n")
    assert report_bytes("winding", {"h_even": 10}, seed=5) == data
