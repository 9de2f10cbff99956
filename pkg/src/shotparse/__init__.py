"""shotparse: social-media screenshot text triage.

Turn OCR output of a screenshot into structured posts: find timestamps and
author handles, split the text into per-post units, classify the
screenshot's internal structure, emit archive-search queries, and score it
all against hand annotations.
"""

from .config import ExtractionSettings, load_config_file, resolve_settings
from .corpus import (
    CaptureManifestEntry,
    CaptureMode,
    CaptureStatus,
    Platform,
    PostUrl,
    build_url,
    format_tally,
    load_annotations,
    load_manifest,
    load_url_list,
    parse_post_url,
    save_annotations,
    save_manifest,
    tally_manifest,
)
from .dates import (
    BUILTIN_DATE_FORMATS,
    DateFormat,
    TimestampMention,
    filter_meaningful_dates,
    find_timestamp_mentions,
)
from .evaluation import (
    Annotation,
    AnnotationUnit,
    BodyMatch,
    ConfusionMatrix,
    EvalReport,
    confusion_matrix,
    evaluate_batch,
    grouping_accuracy,
    grouping_correct,
    macro_metrics,
    per_class_metrics,
)
from .fixtures import FixtureSpec, NoiseModel, build_corpus, generate_fixture, perturb
from .grouping import ParseFlag, PostUnit, ScreenshotParse, group_posts
from .handles import HandleMention, filter_author_handles, find_handle_mentions
from .ocr import (
    EngineConfig,
    EngineSource,
    GeneratedSource,
    OcrDocument,
    SidecarSource,
    load_sidecar,
    run_ocr,
    save_sidecar,
)
from .pipeline import parse_screenshot
from .queries import QuerySpec, QueryTarget, build_queries
from .structure import (
    InternalStructure,
    PostTypeLabel,
    classify_structure,
    suggest_post_types,
)
from .wordlist import WordList, default_wordlist, load_wordlist

__version__ = "0.1.0"
