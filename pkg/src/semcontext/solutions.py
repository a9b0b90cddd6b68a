"""Cluster-solution files: loading, small-cluster discard, writing.

Assignment files are UTF-8 text with one ``article_id<TAB>cluster_id``
pair per line. Clusters smaller than ``min_size`` (default 4) are
discarded entirely; their articles carry no cluster entity for that
solution.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Collection, Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from semcontext.entities import normalize_key
from semcontext.errors import CorpusFormatError, SolutionFormatError

DEFAULT_MIN_CLUSTER_SIZE = 4


@dataclass
class ClusterSolution:
    """One algorithm's assignment of article ids to cluster ids."""

    solution_id: str
    source_name: str = ""
    assignments: dict[str, str] = field(default_factory=dict)
    raw_cluster_count: int = 0
    discarded_clusters: int = 0
    unmatched_ids: list[str] = field(default_factory=list)

    @property
    def cluster_sizes(self) -> dict[str, int]:
        sizes: Counter[str] = Counter(self.assignments.values())
        return dict(sorted(sizes.items()))

    @property
    def cluster_ids(self) -> list[str]:
        return sorted(set(self.assignments.values()))

    def match_corpus(self, corpus_ids: Collection[str]) -> list[str]:
        """Drop assignments whose article is absent from the corpus.

        The dropped ids are recorded on ``unmatched_ids`` (and returned),
        never silently discarded.
        """
        known = set(corpus_ids)
        unmatched = sorted(aid for aid in self.assignments if aid not in known)
        for aid in unmatched:
            del self.assignments[aid]
        self.unmatched_ids = unmatched
        return unmatched


def load_cluster_solution(
    source: str | Path | IO[str],
    solution_id: str,
    min_size: int = DEFAULT_MIN_CLUSTER_SIZE,
    source_name: str = "",
) -> ClusterSolution:
    """Load one assignment file and discard clusters smaller than ``min_size``.

    A duplicate article id within the file is a
    :class:`SolutionFormatError` listing the id.
    """
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    solution_id = normalize_key(solution_id)
    if not solution_id:
        raise ValueError("solution_id must be non-empty")

    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusFormatError(f"cannot read assignments {source}: {exc}") from exc
    else:
        text = source.read()

    assignments: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise SolutionFormatError(f"line {line_no}: expected 'article_id<TAB>cluster_id', got {line!r}")
        article_id, cluster_id = parts[0].strip(), normalize_key(parts[1])
        if article_id in assignments:
            raise SolutionFormatError(f"line {line_no}: duplicate article id {article_id!r} in solution {solution_id!r}")
        assignments[article_id] = cluster_id

    sizes = Counter(assignments.values())
    small = {cid for cid, n in sizes.items() if n < min_size}
    if small:
        assignments = {aid: cid for aid, cid in assignments.items() if cid not in small}

    return ClusterSolution(
        solution_id=solution_id,
        source_name=source_name or solution_id,
        assignments=assignments,
        raw_cluster_count=len(sizes),
        discarded_clusters=len(small),
    )


def write_assignments(pairs: Iterable[tuple[str, str]], path: str | Path) -> None:
    """Write assignment pairs in the same format ``load_cluster_solution`` reads."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for article_id, cluster_id in pairs:
            fh.write(f"{article_id}\t{cluster_id}\n")
