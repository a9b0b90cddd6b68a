"""Sparse entity co-occurrence counting.

Rows are all entities, columns the term and subject entities. A cell is
the sum over articles of the product of the row and column entity
multiplicities in that article; a term or subject therefore co-occurs
with itself, which gives term rows a strong diagonal.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from semcontext.entities import EntityId, EntityKind

COLUMN_KINDS = (EntityKind.TERM, EntityKind.SUBJECT)


@dataclass
class CooccurrenceMatrix:
    """Sparse nonnegative counts, rows x (term|subject) columns.

    Row and column order are sorted by ``(kind, key)`` and therefore
    deterministic for a fixed corpus.
    """

    rows: list[EntityId]
    cols: list[EntityId]
    counts: sp.csr_matrix  # int64, shape (len(rows), len(cols))

    def __post_init__(self) -> None:
        self.row_index = {e: i for i, e in enumerate(self.rows)}
        self.col_index = {e: i for i, e in enumerate(self.cols)}

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def row_of(self, entity: EntityId) -> np.ndarray:
        return self.counts[self.row_index[entity]].toarray().ravel()


_FLUSH_TRIPLES = 4_000_000  # bound transient triplet memory at corpus scale


def build_cooccurrence(article_occurrences: Iterable[dict[EntityId, int]]) -> CooccurrenceMatrix:
    """Accumulate the co-occurrence matrix over per-article entity multisets.

    Triplets are flushed into sparse partial sums in chunks, so memory
    stays bounded on large corpora; duplicate cells sum in C.
    """
    per_article: Sequence[dict[EntityId, int]] = [occ for occ in article_occurrences]

    entities: set[EntityId] = set()
    for occ in per_article:
        entities.update(occ)
    rows = sorted(entities)
    cols = [e for e in rows if e.kind in COLUMN_KINDS]
    row_index = {e: i for i, e in enumerate(rows)}
    col_index = {e: i for i, e in enumerate(cols)}
    shape = (len(rows), len(cols))

    acc = sp.csr_matrix(shape, dtype=np.int64)
    ris: list[int] = []
    cis: list[int] = []
    vals: list[int] = []

    def flush() -> None:
        nonlocal acc, ris, cis, vals
        if not ris:
            return
        chunk = sp.csr_matrix(
            (np.asarray(vals, dtype=np.int64), (np.asarray(ris, dtype=np.int64), np.asarray(cis, dtype=np.int64))),
            shape=shape,
            dtype=np.int64,
        )
        acc = acc + chunk
        ris, cis, vals = [], [], []

    for occ in per_article:
        col_items = [(col_index[e], m) for e, m in occ.items() if e.kind in COLUMN_KINDS]
        if not col_items:
            continue
        for entity, mult in occ.items():
            ri = row_index[entity]
            for ci, col_mult in col_items:
                ris.append(ri)
                cis.append(ci)
                vals.append(mult * col_mult)
        if len(ris) >= _FLUSH_TRIPLES:
            flush()
    flush()

    acc.sum_duplicates()
    acc.sort_indices()
    return CooccurrenceMatrix(rows=rows, cols=cols, counts=acc)
