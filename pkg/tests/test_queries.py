import datetime as dt

import pytest

from shotparse import build_queries, parse_screenshot
from shotparse.errors import EmptyBody
from shotparse.fixtures import generate_fixture, random_spec
from shotparse.queries import PREFIX_LIMIT, QueryTarget
from shotparse.structure import InternalStructure
from shotparse.textnorm import grapheme_clusters


def single_post_doc(make_doc, body_lines):
    return make_doc([
        "Velmor Ontrix",
        "@zorina_o",
        *body_lines,
        "9:02 AM · Jun 3, 2024 · 44 Views",
    ])


def parsed_unit(make_doc, wl, body_lines):
    doc = single_post_doc(make_doc, body_lines)
    parse = parse_screenshot(doc, wl)
    return doc, parse.units[0]


def test_long_body_truncated_to_fifty(make_doc, wl):
    body = "x" * 120
    doc, unit = parsed_unit(make_doc, wl, [body])
    specs = build_queries(unit, doc)
    assert all(s.text_prefix == "x" * 50 for s in specs)


def test_short_body_untouched(make_doc, wl):
    body = "only thirty characters here ok"
    assert len(body) == 30
    doc, unit = parsed_unit(make_doc, wl, [body])
    specs = build_queries(unit, doc)
    assert all(s.text_prefix == body for s in specs)


def test_composed_character_never_split(make_doc, wl):
    body = "a" * 49 + "é" + " trailing words"
    doc, unit = parsed_unit(make_doc, wl, [body])
    prefix = build_queries(unit, doc)[0].text_prefix
    assert prefix == "a" * 49 + "é"
    assert len(grapheme_clusters(prefix)) == 50
    assert unit.body_text.startswith(prefix)


def test_exactly_three_targets_in_order(make_doc, wl):
    doc, unit = parsed_unit(make_doc, wl, ["hello there body"])
    specs = build_queries(unit, doc)
    assert [s.target for s in specs] == [
        QueryTarget.GENERAL_WEB, QueryTarget.FACT_CHECK, QueryTarget.WEB_ARCHIVE,
    ]


def test_handle_and_date_copied(make_doc, wl):
    doc, unit = parsed_unit(make_doc, wl, ["body words"])
    spec = build_queries(unit, doc)[0]
    assert spec.handle == "zorina_o"
    assert spec.date == dt.date(2024, 6, 3)


def test_missing_metadata_left_blank(make_doc, wl):
    doc = make_doc(["no author here just text"])
    parse = parse_screenshot(doc, wl)
    spec = build_queries(parse.units[0], doc)[0]
    assert spec.handle is None
    assert spec.date is None


def test_empty_body_raises(make_doc, wl):
    doc = make_doc(["Velmor Ontrix", "@zorina_o", "9:02 AM · Jun 3, 2024 · 44 Views"])
    parse = parse_screenshot(doc, wl)
    with pytest.raises(EmptyBody):
        build_queries(parse.units[0], doc)


def test_tsv_rendering(make_doc, wl):
    doc, unit = parsed_unit(make_doc, wl, ["body words"])
    line = build_queries(unit, doc)[0].as_tsv()
    assert line == "GeneralWeb\tzorina_o\t2024-06-03\tbody words"


def test_deterministic(make_doc, wl):
    doc, unit = parsed_unit(make_doc, wl, ["same body every time"])
    assert build_queries(unit, doc) == build_queries(unit, doc)


def test_prefix_contract_on_fixture_units(wl):
    structures = [InternalStructure.P1A1, InternalStructure.PNAN, InternalStructure.PNA1]
    for seed in range(60):
        doc, _ = generate_fixture(random_spec(structures[seed % 3], seed + 1000))
        parse = parse_screenshot(doc, wl)
        for unit in parse.units:
            specs = build_queries(unit, doc)
            assert len(specs) == 3
            for spec in specs:
                assert len(grapheme_clusters(spec.text_prefix)) <= PREFIX_LIMIT
                assert unit.body_text.startswith(spec.text_prefix)
