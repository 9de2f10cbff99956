"""Batch command-line front end.

Subcommands compose the pipeline over many screenshots: ``extract`` writes
parse records, ``evaluate`` scores them against annotations, ``queries``
emits search-query lines, ``gen-fixtures`` builds a synthetic corpus, and
``tally`` renders a capture-manifest count table.

Exit codes: 0 the run completed (even with per-item failures), 2 config or
schema errors, 3 I/O errors. A corpus run never aborts on one bad
screenshot; failures land in a machine-readable log next to the results.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import corpus as corpus_store
from .config import ExtractionSettings, load_config_file, resolve_settings
from .corpus import (
    CaptureManifestEntry,
    CaptureMode,
    CaptureStatus,
    Platform,
    build_url,
    format_tally,
    load_annotations,
    load_manifest,
    parse_record,
    tally_manifest,
)
from .errors import EmptyBody, MissingAnnotation, SchemaError, ShotparseError
from .evaluation import evaluate_batch, render_table, write_report
from .fixtures import DEFAULT_COUNT, DEFAULT_SEED, MOBILE_LIGHT, NoiseModel, build_corpus, perturb
from .ocr import EngineConfig, OcrDocument, load_sidecar, run_ocr, save_sidecar
from .pipeline import parse_screenshot
from .queries import build_queries
from .structure import classify_structure, suggest_post_types


def _collect_inputs(paths: list[str], suffix: str) -> list[Path]:
    found: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            found.extend(sorted(path.glob(f"*{suffix}")))
        else:
            found.append(path)
    return found


def _load_documents(args) -> list[tuple[str, Path]]:
    """(screenshot_id, path) pairs, id-sorted; ids are file stems."""
    if args.sidecars:
        inputs = _collect_inputs(args.sidecars, ".txt")
    else:
        inputs = _collect_inputs(args.images, ".png")
    pairs = [(p.stem, p) for p in inputs]
    pairs.sort(key=lambda item: item[0])
    return pairs


def _read_one(path: Path, screenshot_id: str, args) -> OcrDocument:
    if args.sidecars:
        return load_sidecar(path, screenshot_id)
    engine = EngineConfig(
        name=args.engine_name,
        argv=tuple(shlex.split(args.engine_cmd)),
        version=args.engine_version,
    )
    return run_ocr(path, engine)


def _settings_from_args(args) -> ExtractionSettings:
    config = load_config_file(args.config) if args.config else None
    return resolve_settings(
        wordlist_path=args.wordlist, top_n=args.top_n, config=config
    )


def _process_batch(args, settings: ExtractionSettings):
    """Parse every input; returns (results, failures), both id-sorted.

    Results are (screenshot_id, doc, parse, record) tuples. The worker pool
    size never changes output: workers are pure and the aggregation is a
    sort by screenshot id.
    """
    pairs = _load_documents(args)

    def work(item):
        screenshot_id, path = item
        try:
            doc = _read_one(path, screenshot_id, args)
            parse = parse_screenshot(doc, settings.wordlist, settings.date_formats)
            structure = classify_structure(parse)
            record = parse_record(parse, structure, suggest_post_types(structure))
            return screenshot_id, (doc, parse, record), None
        except (ShotparseError, OSError, ValueError) as exc:
            return screenshot_id, None, {
                "screenshot_id": screenshot_id,
                "error": type(exc).__name__,
                "message": str(exc),
            }

    jobs = max(1, args.jobs)
    if jobs == 1:
        outcomes = [work(item) for item in pairs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(work, pairs))

    outcomes.sort(key=lambda o: o[0])
    results = [(sid, *payload) for sid, payload, _ in outcomes if payload]
    failures = [failure for _, _, failure in outcomes if failure]
    return results, failures


def _write_jsonl(records: list[dict], path: Path) -> None:
    text = "\n".join(json.dumps(r, ensure_ascii=False, sort_keys=True) for r in records)
    path.write_text(text + ("\n" if text else ""), encoding="utf-8")


def _query_lines(results) -> list[str]:
    lines = []
    for sid, doc, parse, _ in results:
        for unit in parse.units:
            try:
                specs = build_queries(unit, doc)
            except EmptyBody:
                print(f"warning: {sid}: unit {unit.span} has no body text", file=sys.stderr)
                continue
            lines.extend(spec.as_tsv() for spec in specs)
    return lines


def cmd_extract(args) -> int:
    settings = _settings_from_args(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    results, failures = _process_batch(args, settings)

    _write_jsonl([record for _, _, _, record in results], out_dir / "parses.jsonl")
    _write_jsonl(failures, out_dir / "failures.jsonl")

    if args.queries:
        lines = _query_lines(results)
        (out_dir / "queries.tsv").write_text(
            "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8"
        )

    print(f"processed {len(results)} screenshot(s), {len(failures)} failure(s)")
    return 0


def cmd_evaluate(args) -> int:
    settings = _settings_from_args(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    annotations = {a.screenshot_id: a for a in load_annotations(args.annotations)}
    results, failures = _process_batch(args, settings)
    for failure in failures:
        print(f"warning: {failure['screenshot_id']}: {failure['message']}", file=sys.stderr)

    items = []
    for sid, _, parse, _ in results:
        if sid not in annotations:
            raise MissingAnnotation(sid)
        items.append((parse, annotations[sid]))

    report = evaluate_batch(items)
    write_report(report, out_dir / "report.json", out_dir / "confusion.csv")
    print(render_table(report))
    return 0


def cmd_queries(args) -> int:
    settings = _settings_from_args(args)
    results, _ = _process_batch(args, settings)
    lines = _query_lines(results)
    Path(args.out).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    print(f"wrote {len(lines)} query line(s)")
    return 0


def cmd_gen_fixtures(args) -> int:
    if args.seed is None and not args.seed_default:
        print("gen-fixtures needs --seed N (or --seed-default)", file=sys.stderr)
        return 2
    seed = DEFAULT_SEED if args.seed is None else args.seed
    out_dir = Path(args.out)
    sidecar_dir = out_dir / "sidecars"
    sidecar_dir.mkdir(parents=True, exist_ok=True)

    noise = None
    if args.noise_rate is not None:
        noise = NoiseModel(substitution_rate=args.noise_rate, seed=args.noise_seed)

    items = build_corpus(count=args.count, seed=seed)
    manifest: list[CaptureManifestEntry] = []
    for index, item in enumerate(items):
        doc = perturb(item.doc, noise) if noise else item.doc
        sidecar_path = sidecar_dir / f"{doc.screenshot_id}.txt"
        save_sidecar(doc, sidecar_path)
        post_url = build_url(
            Platform.TWITTER,
            post_id=str(200000000000000000 + index),
            account=item.spec.authors[0],
        )
        manifest.append(
            CaptureManifestEntry(
                screenshot_id=doc.screenshot_id,
                post_url=post_url,
                mode=CaptureMode.MOBILE_LIGHT
                if item.spec.layout == MOBILE_LIGHT
                else CaptureMode.WEB_LIGHT,
                image_path=str(sidecar_path.relative_to(out_dir)),
                captured_at=item.spec.timestamps[0].isoformat(),
                status=CaptureStatus.OK,
            )
        )
    corpus_store.save_annotations([item.annotation for item in items], out_dir / "annotations.jsonl")
    corpus_store.save_manifest(manifest, out_dir / "manifest.jsonl")
    print(f"wrote {len(items)} fixture(s) to {out_dir}")
    return 0


def cmd_tally(args) -> int:
    entries = load_manifest(args.manifest)
    print(format_tally(tally_manifest(entries)))
    return 0


def _add_extraction_options(parser: argparse.ArgumentParser) -> None:
    inputs = parser.add_mutually_exclusive_group(required=True)
    inputs.add_argument("--sidecars", nargs="+", help="sidecar .txt files or directories")
    inputs.add_argument("--images", nargs="+", help="screenshot images or directories")
    parser.add_argument("--engine-cmd", default="tesseract {input} stdout",
                        help="OCR command template with {input} placeholder")
    parser.add_argument("--engine-name", default="tesseract")
    parser.add_argument("--engine-version", default=None)
    parser.add_argument("--wordlist", default=None, help="common-word list path")
    parser.add_argument("--top-n", type=int, default=None, help="truncate wordlist to first N")
    parser.add_argument("--config", default=None, help="JSON config file (overrides flags)")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shotparse",
        description="Parse social-media screenshot text and evaluate the results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="parse screenshots into per-post records")
    _add_extraction_options(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--queries", action="store_true", help="also write queries.tsv")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="score parses against annotations")
    _add_extraction_options(p)
    p.add_argument("--annotations", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("queries", help="emit archive-search query lines")
    _add_extraction_options(p)
    p.add_argument("--out", required=True, help="output TSV file")
    p.set_defaults(func=cmd_queries)

    p = sub.add_parser("gen-fixtures", help="generate a synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--seed-default", action="store_true",
                   help=f"use the default seed ({DEFAULT_SEED})")
    p.add_argument("--noise-rate", type=float, default=None)
    p.add_argument("--noise-seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_fixtures)

    p = sub.add_parser("tally", help="render a capture-manifest count table")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_tally)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
