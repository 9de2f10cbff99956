import datetime as dt

import pytest
from hypothesis import given, strategies as st

from shotparse import find_timestamp_mentions, filter_meaningful_dates
from shotparse.dates import TimestampMention, resolve_two_digit_year
from shotparse.errors import MentionOutOfRange
from shotparse.wordlist import WordList


def test_detail_line_with_time(make_doc):
    doc = make_doc(["9:02 AM · Jun 3, 2024"])
    mentions = find_timestamp_mentions(doc)
    assert len(mentions) == 1
    m = mentions[0]
    assert m.date == dt.date(2024, 6, 3)
    assert m.time == dt.time(9, 2)
    assert m.raw_text == "9:02 AM · Jun 3, 2024"
    assert not m.meaningful


def test_decade_text_is_not_a_date(make_doc):
    doc = make_doc(["In the 1800s temperatures rose"])
    assert find_timestamp_mentions(doc) == []


def test_mentions_ordered_by_line(make_doc):
    lines = ["x"] * 8
    lines[2] = "Jun 3, 2024"
    lines[7] = "Jul 4, 2025"
    doc = make_doc(lines)
    mentions = find_timestamp_mentions(doc)
    assert [m.line_index for m in mentions] == [2, 7]


@pytest.mark.parametrize(
    "text",
    ["Jun 3, 2024", "June 3, 2024", "jun 3, 2024", "3 Jun 2024", "3 June 2024",
     "06/03/2024", "6/3/2024", "2024-06-03"],
)
def test_equivalent_forms_normalize_identically(make_doc, text):
    doc = make_doc([text])
    mentions = find_timestamp_mentions(doc)
    assert len(mentions) == 1
    assert mentions[0].date == dt.date(2024, 6, 3)


def test_two_digit_year_pivot(make_doc):
    assert resolve_two_digit_year(24) == 2024
    assert resolve_two_digit_year(69) == 2069
    assert resolve_two_digit_year(70) == 1970
    assert resolve_two_digit_year(99) == 1999
    doc = make_doc(["06/03/24", "06/03/99"])
    mentions = find_timestamp_mentions(doc)
    assert mentions[0].date == dt.date(2024, 6, 3)
    assert mentions[1].date == dt.date(1999, 6, 3)


def test_invalid_calendar_dates_rejected(make_doc):
    doc = make_doc(["Feb 30, 2024", "13/13/2024", "2024-02-30"])
    assert find_timestamp_mentions(doc) == []


def test_relative_stamps(make_doc):
    doc = make_doc(["Velmor Ontrix @velmor_o · 2h", "waited 34m then left"])
    mentions = find_timestamp_mentions(doc)
    assert [m.raw_text for m in mentions] == ["2h", "34m"]
    assert all(m.relative and m.date is None for m in mentions)


def test_uppercase_m_is_not_a_relative_unit(make_doc):
    doc = make_doc(["9:02 AM · Jun 3, 2024 · 1.2M Views"])
    mentions = find_timestamp_mentions(doc)
    assert len(mentions) == 1
    assert not mentions[0].relative


def test_offsets_within_line(make_doc):
    line = "posted Jun 3, 2024 and again 06/07/2025 ok"
    doc = make_doc([line])
    for m in find_timestamp_mentions(doc):
        assert line[m.char_offset : m.char_offset + len(m.raw_text)] == m.raw_text


class TestMeaningfulFilter:
    def test_detail_line_is_meaningful(self, make_doc, wl):
        # Remaining tokens after the date match: "1.2M" (not a word) and
        # the exempt chrome "Views".
        doc = make_doc(["9:02 AM · Jun 3, 2024 · 1.2M Views"])
        mentions = filter_meaningful_dates(find_timestamp_mentions(doc), doc, wl)
        assert mentions[0].meaningful

    def test_body_line_date_is_inessential(self, make_doc, wl):
        # Oracle trace: every non-date token on the line is a common word.
        line = "back in June 2020 we said this would happen"
        for word in ("back", "in", "we", "said", "this", "would", "happen"):
            assert word in wl
        doc = make_doc([line])
        mention = TimestampMention(
            raw_text="June 2020",
            line_index=0,
            char_offset=line.index("June"),
            date=dt.date(2020, 6, 1),
        )
        filtered = filter_meaningful_dates([mention], doc, wl)
        assert not filtered[0].meaningful

    def test_empty_sequence(self, make_doc, wl):
        assert filter_meaningful_dates([], make_doc(["x"]), wl) == []

    def test_relative_never_meaningful(self, make_doc, wl):
        doc = make_doc(["2h"])
        mentions = filter_meaningful_dates(find_timestamp_mentions(doc), doc, wl)
        assert mentions and not mentions[0].meaningful

    def test_out_of_range(self, make_doc, wl):
        doc = make_doc(["x"])
        bad = TimestampMention(
            raw_text="Jun 3, 2024", line_index=5, char_offset=0, date=dt.date(2024, 6, 3)
        )
        with pytest.raises(MentionOutOfRange):
            filter_meaningful_dates([bad], doc, wl)

    def test_filter_preserves_membership_and_order(self, make_doc, wl):
        doc = make_doc(["Jun 3, 2024 · 44 Views", "back in time on Jul 4, 2025", "2024-01-02"])
        mentions = find_timestamp_mentions(doc)
        filtered = filter_meaningful_dates(mentions, doc, wl)
        assert len(filtered) == len(mentions)
        for before, after in zip(mentions, filtered):
            assert (before.raw_text, before.line_index, before.char_offset) == (
                after.raw_text, after.line_index, after.char_offset
            )

    def test_monotone_in_wordlist(self, make_doc, wl):
        # Enlarging the wordlist can only flip meaningful -> inessential.
        doc = make_doc(["Jun 3, 2024 zorp quux"])
        mentions = find_timestamp_mentions(doc)
        small = WordList(words=frozenset({"the"}), source_path="<small>")
        big = WordList(words=frozenset({"the", "zorp"}), source_path="<big>")
        with_small = filter_meaningful_dates(mentions, doc, small)
        with_big = filter_meaningful_dates(mentions, doc, big)
        for s, b in zip(with_small, with_big):
            if b.meaningful:
                assert s.meaningful


@given(
    st.lists(
        st.text(alphabet="abcdefgh 0123456789:/·,", min_size=0, max_size=40),
        min_size=0,
        max_size=6,
    )
)
def test_finder_is_pure_and_ordered(lines):
    from shotparse import OcrDocument, SidecarSource

    doc = OcrDocument("h", tuple(lines), SidecarSource("<h>"))
    first = find_timestamp_mentions(doc)
    second = find_timestamp_mentions(doc)
    assert first == second
    keys = [(m.line_index, m.char_offset) for m in first]
    assert keys == sorted(keys)
