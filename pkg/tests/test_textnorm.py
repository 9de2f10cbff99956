from shotparse.textnorm import (
    collapse_whitespace,
    grapheme_clusters,
    grapheme_prefix,
    normalize_body,
    normalize_newlines,
    split_lines,
    tokenize,
)


def test_newline_normalization():
    assert normalize_newlines("a\r\nb\rc\nd") == "a\nb\nc\nd"


def test_split_lines_trims_trailing_only():
    assert split_lines("a\nb\n\n") == ["a", "b"]
    assert split_lines("a\n\nb\n") == ["a", "", "b"]
    assert split_lines("") == []


def test_tokenize_strips_edges_keeps_interior():
    assert tokenize("Hello, world!") == ["hello", "world"]
    assert tokenize("1.2M Views ·") == ["1.2m", "views"]
    assert tokenize("don't @stop_me") == ["don't", "stop_me"]
    assert tokenize("···") == []


def test_normalize_body():
    assert normalize_body("Back in June, 2020... we SAID so!") == "back in june 2020 we said so"
    assert normalize_body("  a\tb  ") == "a b"


def test_collapse_whitespace():
    assert collapse_whitespace(" a  b \t c ") == "a b c"


def test_grapheme_combining_mark():
    assert grapheme_clusters("éx") == ["é", "x"]


def test_grapheme_zwj_sequence_is_one_cluster():
    family = "\U0001F468‍\U0001F469‍\U0001F467"
    assert grapheme_clusters(family) == [family]


def test_grapheme_flag_pair():
    flag = "\U0001F1FA\U0001F1F8"
    assert grapheme_clusters(flag + "x") == [flag, "x"]


def test_grapheme_skin_tone():
    thumbs = "\U0001F44D\U0001F3FD"
    assert grapheme_clusters(thumbs) == [thumbs]


def test_grapheme_prefix_never_splits():
    text = "a" * 49 + "é" + "tail"
    prefix = grapheme_prefix(text, 50)
    assert prefix == "a" * 49 + "é"
    assert len(grapheme_clusters(prefix)) == 50
    assert text.startswith(prefix)
