"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.
"""

from __future__ import annotations

import datetime as dt
import itertools
import json
import random
import time

import pytest

from shotparse import (
    build_queries,
    evaluate_batch,
    find_handle_mentions,
    find_timestamp_mentions,
    grouping_accuracy,
    parse_screenshot,
)
from shotparse.cli import main
from shotparse.corpus import (
    Platform,
    build_url,
    load_annotations,
    load_manifest,
    parse_post_url,
    save_annotations,
    save_manifest,
)
from shotparse.dates import filter_meaningful_dates
from shotparse.evaluation import (
    confusion_matrix,
    macro_metrics,
    per_class_metrics,
    report_to_dict,
    round_half_up,
    validate_report_dict,
)
from shotparse.fixtures import NoiseModel, build_corpus, perturb, random_spec, generate_fixture
from shotparse.handles import filter_author_handles
from shotparse.ocr import OcrDocument, SidecarSource
from shotparse.structure import InternalStructure
from shotparse.wordlist import default_wordlist

P1A1 = InternalStructure.P1A1
PNA1 = InternalStructure.PNA1
PNAN = InternalStructure.PNAN


def _ok(criterion: str, detail: str = ""):
    print(f"PASS {criterion}" + (f" — {detail}" if detail else ""))


@pytest.fixture(scope="module")
def wl():
    return default_wordlist()


@pytest.fixture(scope="module")
def corpus():
    return build_corpus(count=200, seed=42)


@pytest.fixture(scope="module")
def clean_scores(corpus, wl):
    items = [(parse_screenshot(it.doc, wl), it.annotation) for it in corpus]
    return evaluate_batch(items)


def test_criterion_1_table_arithmetic_oracle():
    started = time.perf_counter()
    # The derived matrix: diagonal 13/3/52, predicted 14/6/55, true 18/4/53.
    pairs = []
    classes = (PNAN, PNA1, P1A1)
    derived = ((13, 3, 2), (0, 3, 1), (1, 0, 52))
    for i, row in enumerate(derived):
        for j, n in enumerate(row):
            pairs.extend([(classes[i], classes[j])] * n)
    assert len(pairs) == 75

    matrix = confusion_matrix(pairs)
    assert matrix.col_sum("PnAn") == 14
    assert matrix.col_sum("PnA1") == 6
    assert matrix.col_sum("P1A1") == 55

    per_class = per_class_metrics(matrix)
    expected = {
        "PnAn": (0.93, 0.72, 0.81),
        "PnA1": (0.50, 0.75, 0.60),
        "P1A1": (0.95, 0.98, 0.96),
    }
    for cls, (p, r, f1) in expected.items():
        assert round_half_up(per_class[cls].precision) == p
        assert round_half_up(per_class[cls].recall) == r
        assert round_half_up(per_class[cls].f1) == f1
    macro = macro_metrics(per_class)
    assert round_half_up(macro.precision) == 0.79
    assert round_half_up(macro.recall) == 0.82
    assert round_half_up(macro.f1) == 0.80
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _ok("criterion 1: published-score arithmetic", f"{elapsed * 1000:.0f} ms")


def test_criterion_2_grouping_accuracy_oracle():
    flags = [True] * 55 + [False] * 20
    overall = sum(flags) / len(flags)
    assert abs(overall - 0.7333) <= 1e-4

    # Same number through the real scorer.
    from shotparse.evaluation import Annotation, AnnotationUnit
    from shotparse.grouping import PostUnit, ScreenshotParse
    from shotparse.handles import HandleMention

    results = []
    for i, ok in enumerate(flags):
        sid = f"s{i:02d}"
        author = HandleMention("vorn_ok", 0, 0, is_author=True)
        unit = PostUnit(author=author, timestamp=None, span=(0, 0),
                        body_lines=(0,), body_text="body" if ok else "other")
        parse = ScreenshotParse(sid, (unit,), 0, 1, frozenset())
        ann = Annotation(sid, P1A1, (AnnotationUnit("vorn_ok", None, "body"),))
        results.append((parse, ann))
    acc = grouping_accuracy(results)
    assert abs(acc.overall - 0.7333) <= 1e-4
    _ok("criterion 2: 55/75 grouping accuracy", f"{acc.overall:.4f}")


def test_criterion_3_clean_corpus_exactness(corpus, wl):
    started = time.perf_counter()
    items = [(parse_screenshot(it.doc, wl), it.annotation) for it in corpus]
    report = evaluate_batch(items)
    elapsed = time.perf_counter() - started
    assert report.total == 200
    assert report.macro.f1 == 1.0
    assert report.macro.mean_f1 == 1.0
    assert report.grouping.overall == 1.0
    assert elapsed < 10.0
    _ok("criterion 3: clean corpus macro-F1 and grouping both 1.00", f"{elapsed:.2f} s")


def test_criterion_4_noise_degradation(corpus, wl, clean_scores):
    noise = NoiseModel(substitution_rate=0.05, seed=7)
    items = [(parse_screenshot(perturb(it.doc, noise), wl), it.annotation) for it in corpus]
    report = evaluate_batch(items)  # zero crashes: any exception fails here
    data = report_to_dict(report)
    validate_report_dict(data)
    assert report.macro.f1 <= clean_scores.macro.f1
    assert report.grouping.overall <= clean_scores.grouping.overall
    _ok(
        "criterion 4: 5% noise degrades without crashing",
        f"macro-F1 {report.macro.f1:.3f}, grouping {report.grouping.overall:.3f}",
    )


def test_criterion_5_extraction_rule_boundaries(wl):
    def doc_of(line):
        return OcrDocument("b", (line,), SidecarSource("<b>"))

    # Handle length window: 4-15 accepted, 3 and 16 rejected.
    for n in range(1, 20):
        found = find_handle_mentions(doc_of("@" + "a" * n))
        assert bool(found) == (4 <= n <= 15), n

    # A single wordlist token disqualifies a date line; exempt chrome does not.
    base = "9:02 AM · Jun 3, 2024 · 812 Views"
    doc = doc_of(base)
    mention = filter_meaningful_dates(find_timestamp_mentions(doc), doc, wl)[0]
    assert mention.meaningful
    for word in ("the", "because", "support"):
        assert word in wl
        poisoned = doc_of(base + f" {word}")
        flagged = filter_meaningful_dates(find_timestamp_mentions(poisoned), poisoned, wl)[0]
        assert not flagged.meaningful, word

    # Same rule for author lines.
    author_line = doc_of("Velmor Ontrix @velmor_o · Jun 3")
    assert filter_author_handles(find_handle_mentions(author_line), author_line, wl)[0].is_author
    poisoned = doc_of("thanks @velmor_o for this")
    assert not filter_author_handles(find_handle_mentions(poisoned), poisoned, wl)[0].is_author

    # Four date shapes, one calendar day.
    dates = set()
    for text in ("Jun 3, 2024", "3 Jun 2024", "06/03/2024", "2024-06-03"):
        mentions = find_timestamp_mentions(doc_of(text))
        assert len(mentions) == 1, text
        dates.add(mentions[0].date)
    assert dates == {dt.date(2024, 6, 3)}
    _ok("criterion 5: extraction rule boundaries")


def test_criterion_6_partition_property(wl):
    rng = random.Random(20240603)
    structures = (P1A1, PNA1, PNAN)
    for i in range(1000):
        spec = random_spec(structures[i % 3], rng.getrandbits(48))
        doc, _ = generate_fixture(spec)
        parse = parse_screenshot(doc, wl)

        covered = []
        for unit in parse.units:
            first, last = unit.span
            assert first <= last
            covered.extend(range(first, last + 1))
        assert covered == list(range(len(doc.lines)))

        author_lines = {m.line_index for m in find_handle_mentions(doc)}
        boundary_count = len(author_lines)  # fixtures: one author line per post
        assert len(parse.units) == boundary_count == spec.n_posts

        dated_units = [u for u in parse.units if u.timestamp is not None]
        assert parse.date_count == len(dated_units)
        timestamp_lines = {u.timestamp.line_index for u in dated_units}
        assert len(timestamp_lines) == parse.date_count
    _ok("criterion 6: partition property over 1000 random documents")


def test_criterion_7_query_contract(corpus, wl):
    from shotparse.textnorm import grapheme_clusters

    units_seen = 0
    for item in corpus:
        parse = parse_screenshot(item.doc, wl)
        for unit in parse.units:
            specs = build_queries(unit, item.doc)
            assert len(specs) == 3
            assert len({s.target for s in specs}) == 3
            for spec in specs:
                assert len(grapheme_clusters(spec.text_prefix)) <= 50
                assert unit.body_text.startswith(spec.text_prefix)
            units_seen += 1
    assert units_seen >= 200
    _ok("criterion 7: query contract", f"{units_seen} units checked")


def test_criterion_8_round_trips(tmp_path, corpus):
    annotations = [item.annotation for item in corpus[:40]]
    ann_path = tmp_path / "ann.jsonl"
    save_annotations(annotations, ann_path)
    assert load_annotations(ann_path) == annotations

    from shotparse.corpus import CaptureManifestEntry, CaptureMode, CaptureStatus

    entries = [
        CaptureManifestEntry(
            screenshot_id=f"m{i}",
            post_url=build_url(Platform.TWITTER, str(1000 + i), "acct_name"),
            mode=mode,
            image_path=f"images/m{i}.png",
            captured_at="2026-08-09T00:00:00Z",
            status=CaptureStatus.OK,
        )
        for i, mode in enumerate(itertools.islice(itertools.cycle(CaptureMode), 8))
    ]
    man_path = tmp_path / "manifest.jsonl"
    save_manifest(entries, man_path)
    reloaded = load_manifest(man_path)
    assert [
        (e.screenshot_id, e.post_url.url, e.mode, e.image_path, e.captured_at, e.status)
        for e in reloaded
    ] == [
        (e.screenshot_id, e.post_url.url, e.mode, e.image_path, e.captured_at, e.status)
        for e in entries
    ]

    for url in (
        "https://twitter.com/BMW_LifeMorals/status/241301682477232128",
        "https://twitter.com/BMW_LifeMorals/status/272873624023732224",
    ):
        parsed = parse_post_url(url, Platform.TWITTER)
        rebuilt = build_url(Platform.TWITTER, parsed.post_id, parsed.account)
        assert rebuilt.url == url
    parsed = parse_post_url("https://www.instagram.com/p/InstaXYZ9/", Platform.INSTAGRAM)
    assert build_url(Platform.INSTAGRAM, parsed.post_id).url == "https://www.instagram.com/p/InstaXYZ9/"
    _ok("criterion 8: record and URL round-trips")


def test_criterion_9_parallel_determinism(tmp_path):
    corpus_dir = tmp_path / "corpus"
    assert main(["gen-fixtures", "--out", str(corpus_dir), "--count", "60", "--seed", "42"]) == 0
    sidecars = str(corpus_dir / "sidecars")
    out1, out8 = tmp_path / "run1", tmp_path / "run8"
    assert main(["extract", "--sidecars", sidecars, "--out", str(out1), "--jobs", "1", "--queries"]) == 0
    assert main(["extract", "--sidecars", sidecars, "--out", str(out8), "--jobs", "8", "--queries"]) == 0
    for name in ("parses.jsonl", "failures.jsonl", "queries.tsv"):
        assert (out1 / name).read_bytes() == (out8 / name).read_bytes(), name
    _ok("criterion 9: byte-identical output at parallelism 1 and 8")
