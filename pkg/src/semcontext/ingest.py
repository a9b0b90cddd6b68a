"""Bibliographic record parsing, topical-term vocabulary and entity extraction.

The canonical corpus file is UTF-8 JSON lines; each line is a flat object
with keys ``id``, ``title``, ``abstract``, ``authors`` (list), ``issn``,
``journal`` and ``subjects`` (list).
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, TYPE_CHECKING

from semcontext.entities import EntityId, EntityKind, normalize_key
from semcontext.errors import CorpusFormatError
from semcontext.tokens import STOPWORDS, candidate_phrases, sentence_tokens

if TYPE_CHECKING:
    from semcontext.solutions import ClusterSolution

MAX_PHRASE_LEN = 2  # fixed: unigrams and adjacent bigrams only


@dataclass(frozen=True)
class BibRecord:
    """One bibliographic record. ``article_id`` is an opaque unique string."""

    article_id: str
    title: str = ""
    abstract: str = ""
    authors: tuple[str, ...] = ()
    issn: str = ""
    journal_title: str = ""
    subjects: tuple[str, ...] = ()


@dataclass(frozen=True)
class ParseError:
    line_no: int
    message: str


@dataclass
class ParseResult:
    records: list[BibRecord]
    errors: list[ParseError]


def _record_from_obj(obj: dict, seen_ids: set[str]) -> BibRecord:
    if not isinstance(obj, dict):
        raise ValueError("line is not an object")
    article_id = str(obj.get("id") or "").strip()
    if not article_id:
        raise ValueError("missing or empty 'id'")
    if article_id in seen_ids:
        raise ValueError(f"duplicate article id {article_id!r}")
    title = str(obj.get("title") or "")
    abstract = str(obj.get("abstract") or "")
    if not title.strip() and not abstract.strip():
        raise ValueError("record has neither title nor abstract")
    authors = obj.get("authors") or []
    subjects = obj.get("subjects") or []
    if not isinstance(authors, list) or not isinstance(subjects, list):
        raise ValueError("'authors' and 'subjects' must be lists")
    return BibRecord(
        article_id=article_id,
        title=title,
        abstract=abstract,
        authors=tuple(str(a) for a in authors),
        issn=str(obj.get("issn") or ""),
        journal_title=str(obj.get("journal") or ""),
        subjects=tuple(str(s) for s in subjects),
    )


def parse_records(source: str | Path | IO[str]) -> ParseResult:
    """Parse a line-delimited corpus stream.

    Malformed lines are collected as :class:`ParseError` with their line
    number and skipped; record order is preserved. An unreadable source
    raises :class:`CorpusFormatError`.
    """
    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusFormatError(f"cannot read corpus {source}: {exc}") from exc
        lines = text.splitlines()
    else:
        try:
            lines = source.read().splitlines()
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusFormatError(f"cannot read corpus stream: {exc}") from exc

    records: list[BibRecord] = []
    errors: list[ParseError] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            record = _record_from_obj(obj, seen)
        except (ValueError, TypeError) as exc:
            errors.append(ParseError(line_no, str(exc)))
            continue
        seen.add(record.article_id)
        records.append(record)
    return ParseResult(records, errors)


@dataclass(frozen=True)
class ExtractionConfig:
    """Thresholds for topical-term extraction.

    ``min_df=None`` picks the default: 5 for corpora of 10k records or
    more, 2 below that.
    """

    min_df: int | None = None
    stopwords: frozenset[str] = STOPWORDS

    def resolve_min_df(self, n_records: int) -> int:
        if self.min_df is not None:
            if self.min_df < 1:
                raise ValueError("min_df must be >= 1")
            return self.min_df
        return 5 if n_records >= 10_000 else 2


def load_extraction_config(path: str | Path) -> ExtractionConfig:
    """Read an extraction config file (JSON: min_df, stopwords path).

    A relative stopwords path resolves against the config file's
    directory. The phrase length is fixed at 2 and rejected if a config
    tries to change it.
    """
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorpusFormatError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise CorpusFormatError(f"{path}: config must be a JSON object")
    if obj.get("max_phrase_len", MAX_PHRASE_LEN) != MAX_PHRASE_LEN:
        raise CorpusFormatError(f"{path}: max_phrase_len is fixed at {MAX_PHRASE_LEN}")
    min_df = obj.get("min_df")
    if min_df is not None and (not isinstance(min_df, int) or min_df < 1):
        raise CorpusFormatError(f"{path}: min_df must be a positive integer or null")
    stopwords = STOPWORDS
    stop_path = obj.get("stopwords")
    if stop_path:
        resolved = Path(stop_path)
        if not resolved.is_absolute():
            resolved = path.parent / resolved
        try:
            words = resolved.read_text(encoding="utf-8").split()
        except OSError as exc:
            raise CorpusFormatError(f"{path}: cannot read stopwords {resolved}: {exc}") from exc
        stopwords = frozenset(w.strip().lower() for w in words if w.strip())
    return ExtractionConfig(min_df=min_df, stopwords=stopwords)


@dataclass
class TermVocabulary:
    """Frequent 1- and 2-word phrases with their document frequencies."""

    entries: dict[str, int] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def extract_topical_terms(corpus: Sequence[BibRecord], config: ExtractionConfig | None = None) -> TermVocabulary:
    """Build the topical-term vocabulary from all titles and abstracts.

    A phrase enters the vocabulary when it occurs in at least ``min_df``
    distinct records. Deterministic for a fixed corpus and config.
    """
    config = config or ExtractionConfig()
    min_df = config.resolve_min_df(len(corpus))
    df: Counter[str] = Counter()
    for record in corpus:
        seen = set(candidate_phrases(sentence_tokens(record.title, record.abstract), config.stopwords))
        df.update(seen)
    entries = {phrase: n for phrase, n in sorted(df.items()) if n >= min_df}
    return TermVocabulary(
        entries=entries,
        config={"min_df": min_df, "max_phrase_len": MAX_PHRASE_LEN, "n_records": len(corpus)},
    )


def extract_entities(
    record: BibRecord,
    vocab: TermVocabulary,
    solutions: Iterable["ClusterSolution"] = (),
) -> dict[EntityId, int]:
    """The record's entity occurrences with per-article multiplicities.

    Topical terms are matched against title+abstract; subjects, authors
    and the journal come straight from the record; one cluster-label
    entity is added per solution that assigns this article. Each entity
    appears once (set semantics) with its multiplicity as the value.
    """
    occurrences: Counter[EntityId] = Counter()

    # Matching is driven purely by vocabulary membership, so no stopword
    # filter here: the vocabulary already encodes whatever filter built it.
    for phrase in candidate_phrases(sentence_tokens(record.title, record.abstract), frozenset()):
        if phrase in vocab:
            occurrences[EntityId(EntityKind.TERM, phrase)] += 1

    for subject in record.subjects:
        key = normalize_key(subject)
        if key:
            occurrences[EntityId(EntityKind.SUBJECT, key)] += 1

    for author in record.authors:
        key = normalize_key(author)
        if key:
            occurrences[EntityId(EntityKind.AUTHOR, key)] += 1

    issn = normalize_key(record.issn)
    if issn:
        occurrences[EntityId(EntityKind.JOURNAL, issn)] += 1

    for solution in solutions:
        cluster_id = solution.assignments.get(record.article_id)
        if cluster_id is not None:
            occurrences[EntityId(EntityKind.CLUSTER, f"{solution.solution_id} {cluster_id}")] += 1

    return dict(occurrences)
