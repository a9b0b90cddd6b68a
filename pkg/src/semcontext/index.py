"""The dense semantic matrix: build pipeline and binary persistence.

One row per entity, ``dims`` float32 components. Vectors are stored
un-normalized; cosine is computed at query time in float64. The on-disk
format is a single binary file: magic, version, a JSON header carrying
the projection parameters and the entity dictionary (kind, key, label,
occurrence count), then the raw row-major float32 vectors.
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from semcontext.cooccur import build_cooccurrence
from semcontext.entities import EntityId, EntityKind
from semcontext.errors import IndexFormatError
from semcontext.ingest import BibRecord, ExtractionConfig, extract_entities, extract_topical_terms
from semcontext.projection import ProjectionSpec, project_rows
from semcontext.solutions import ClusterSolution

MAGIC = b"SEMCTXIX"
FORMAT_VERSION = 1

_KIND_CODE = {kind: code for code, kind in enumerate(EntityKind)}


@dataclass
class SemanticMatrix:
    """Immutable entity-by-dims matrix with per-entity metadata."""

    entities: list[EntityId]
    vectors: np.ndarray  # float32, shape (n, dims)
    counts: np.ndarray  # int64, shape (n,)
    labels: list[str]
    spec: ProjectionSpec
    damped: bool = False

    entity_index: dict[EntityId, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.entities)
        if self.vectors.shape != (n, self.spec.dims):
            raise ValueError(f"vectors shape {self.vectors.shape} != ({n}, {self.spec.dims})")
        if len(self.counts) != n or len(self.labels) != n:
            raise ValueError("counts/labels length must match entity count")
        self.entity_index = {e: i for i, e in enumerate(self.entities)}
        self._kind_codes = np.fromiter((_KIND_CODE[e.kind] for e in self.entities), dtype=np.int8, count=n)
        self._vectors64 = self.vectors.astype(np.float64)
        self._norms = np.linalg.norm(self._vectors64, axis=1)

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, entity: EntityId) -> bool:
        return entity in self.entity_index

    @property
    def dims(self) -> int:
        return self.spec.dims

    def row(self, entity: EntityId) -> int:
        return self.entity_index[entity]

    def vector(self, entity: EntityId) -> np.ndarray:
        return self.vectors[self.entity_index[entity]]

    def count_of(self, entity: EntityId) -> int:
        return int(self.counts[self.entity_index[entity]])

    def label_of(self, entity: EntityId) -> str:
        return self.labels[self.entity_index[entity]]

    def kind_counts(self) -> dict[str, int]:
        """Entity totals per kind; they always sum to ``len(self)``."""
        totals = Counter(e.kind.value for e in self.entities)
        return {kind.value: totals.get(kind.value, 0) for kind in EntityKind}

    def kind_mask(self, kinds: Iterable[EntityKind]) -> np.ndarray:
        codes = [_KIND_CODE[k] for k in kinds]
        return np.isin(self._kind_codes, codes)

    def solutions(self) -> dict[str, int]:
        """Loaded solution ids with their cluster entity counts."""
        counts: Counter[str] = Counter()
        for e in self.entities:
            sol = e.solution_id()
            if sol is not None:
                counts[sol] += 1
        return dict(sorted(counts.items()))

    def clusters_of(self, solution_id: str) -> list[EntityId]:
        prefix = f"{solution_id} "
        return [
            e
            for e in self.entities
            if e.kind is EntityKind.CLUSTER and e.key.startswith(prefix)
        ]

    def term_keys(self) -> set[str]:
        """Vocabulary view: the keys of all term entities."""
        return {e.key for e in self.entities if e.kind is EntityKind.TERM}

    def cosine_to(self, v: np.ndarray) -> np.ndarray:
        """Cosine of every row against ``v`` (float64; zero norms score 0)."""
        v = np.asarray(v, dtype=np.float64)
        vnorm = float(np.linalg.norm(v))
        if vnorm == 0.0:
            return np.zeros(len(self.entities))
        dots = self._vectors64 @ v
        with np.errstate(divide="ignore", invalid="ignore"):
            scores = dots / (self._norms * vnorm)
        scores[self._norms == 0.0] = 0.0
        return np.clip(scores, -1.0, 1.0)


def build_index(
    records: Sequence[BibRecord],
    solutions: Sequence[ClusterSolution] = (),
    config: ExtractionConfig | None = None,
    spec: ProjectionSpec | None = None,
    damp_log: bool = False,
) -> SemanticMatrix:
    """Full pipeline: vocabulary, entity extraction, co-occurrence, projection."""
    spec = spec or ProjectionSpec()
    vocab = extract_topical_terms(records, config)

    occurrences = [extract_entities(r, vocab, solutions) for r in records]
    C = build_cooccurrence(occurrences)

    totals: Counter[EntityId] = Counter()
    for occ in occurrences:
        totals.update(occ)
    counts = np.fromiter((totals[e] for e in C.rows), dtype=np.int64, count=len(C.rows))

    journal_titles: dict[str, str] = {}
    for r in records:
        issn = r.issn.strip().lower()
        if issn and r.journal_title.strip() and issn not in journal_titles:
            journal_titles[issn] = r.journal_title.strip()
    labels = [
        journal_titles.get(e.key, e.key) if e.kind is EntityKind.JOURNAL else e.key
        for e in C.rows
    ]

    projected = project_rows(C, spec, damp_log=damp_log)
    return SemanticMatrix(
        entities=C.rows,
        vectors=projected.astype(np.float32),
        counts=counts,
        labels=labels,
        spec=spec,
        damped=damp_log,
    )


def save_index(S: SemanticMatrix, path: str | Path) -> None:
    """Persist to the single-file binary format; byte-deterministic."""
    header = {
        "dims": S.spec.dims,
        "seed": S.spec.seed,
        "scheme": S.spec.scheme,
        "damped": S.damped,
        "entities": [
            [e.kind.value, e.key, S.labels[i], int(S.counts[i])]
            for i, e in enumerate(S.entities)
        ],
    }
    blob = json.dumps(header, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    with Path(path).open("wb") as fh:
        fh.write(MAGIC)
        fh.write(FORMAT_VERSION.to_bytes(4, "little"))
        fh.write(len(blob).to_bytes(8, "little"))
        fh.write(blob)
        fh.write(np.ascontiguousarray(S.vectors, dtype="<f4").tobytes())


def load_index(path: str | Path) -> SemanticMatrix:
    """Load an index file; magic/version/truncation problems raise
    :class:`IndexFormatError`."""
    data = Path(path).read_bytes()
    if len(data) < len(MAGIC) + 12 or data[: len(MAGIC)] != MAGIC:
        raise IndexFormatError(f"{path}: not a semantic index file (bad magic)")
    pos = len(MAGIC)
    version = int.from_bytes(data[pos : pos + 4], "little")
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"{path}: unsupported format version {version}")
    pos += 4
    header_len = int.from_bytes(data[pos : pos + 8], "little")
    pos += 8
    if pos + header_len > len(data):
        raise IndexFormatError(f"{path}: truncated header")
    try:
        header = json.loads(data[pos : pos + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"{path}: corrupt header: {exc}") from exc
    pos += header_len

    spec = ProjectionSpec(dims=header["dims"], seed=header["seed"], scheme=header["scheme"])
    raw = header["entities"]
    entities = [EntityId(EntityKind(kind), key) for kind, key, _, _ in raw]
    labels = [label for _, _, label, _ in raw]
    counts = np.fromiter((c for _, _, _, c in raw), dtype=np.int64, count=len(raw))

    expected = len(entities) * spec.dims * 4
    payload = data[pos:]
    if len(payload) != expected:
        raise IndexFormatError(f"{path}: vector payload is {len(payload)} bytes, expected {expected} (truncated or trailing data)")
    vectors = np.frombuffer(payload, dtype="<f4").reshape(len(entities), spec.dims).copy()

    return SemanticMatrix(
        entities=entities,
        vectors=vectors,
        counts=counts,
        labels=labels,
        spec=spec,
        damped=bool(header.get("damped", False)),
    )
