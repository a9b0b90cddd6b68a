"""Typed entity identities and their bracket selector syntax.

Every node the engine knows about (topical term, subject, author, journal,
cluster label) is an :class:`EntityId`. The canonical text form is the
bracket selector ``[tag:key]`` accepted by the query parser; journals use
the ``issn`` tag because the journal key is its ISSN.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from semcontext.errors import QuerySyntaxError


class EntityKind(str, Enum):
    TERM = "term"
    SUBJECT = "subject"
    AUTHOR = "author"
    JOURNAL = "journal"
    CLUSTER = "cluster"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


# Selector tag -> kind. "issn" is the canonical journal tag; "journal" is
# accepted as an alias on input.
_TAG_TO_KIND = {
    "term": EntityKind.TERM,
    "subject": EntityKind.SUBJECT,
    "author": EntityKind.AUTHOR,
    "issn": EntityKind.JOURNAL,
    "journal": EntityKind.JOURNAL,
    "cluster": EntityKind.CLUSTER,
}

_KIND_TO_TAG = {
    EntityKind.TERM: "term",
    EntityKind.SUBJECT: "subject",
    EntityKind.AUTHOR: "author",
    EntityKind.JOURNAL: "issn",
    EntityKind.CLUSTER: "cluster",
}

_WS_RE = re.compile(r"\s+")


def normalize_key(raw: str) -> str:
    """Lowercase and collapse internal whitespace. Commas are preserved."""
    return _WS_RE.sub(" ", raw.strip().lower())


@dataclass(frozen=True, order=True)
class EntityId:
    """Unique identity of one semantic-matrix row: ``(kind, key)``.

    Ordering is lexicographic on ``(kind.value, key)``; this is the tie
    rule used everywhere results are ranked.
    """

    kind: EntityKind
    key: str

    def __post_init__(self) -> None:
        norm = normalize_key(self.key)
        if norm != self.key:
            object.__setattr__(self, "key", norm)

    @property
    def sort_key(self) -> tuple[str, str]:
        return (self.kind.value, self.key)

    def canonical(self) -> str:
        """Stable internal identity string, e.g. ``"term:mass transfer"``."""
        return f"{self.kind.value}:{self.key}"

    def selector(self) -> str:
        """Bracket selector form, e.g. ``"[author:smak j]"``."""
        return f"[{_KIND_TO_TAG[self.kind]}:{self.key}]"

    def solution_id(self) -> str | None:
        """For cluster entities, the solution prefix of ``"<sol> <cid>"``."""
        if self.kind is not EntityKind.CLUSTER:
            return None
        return self.key.split(" ", 1)[0]

    def __str__(self) -> str:
        return self.selector()


def parse_selector(fragment: str) -> EntityId:
    """Parse the inside of one bracket group, e.g. ``"author:smak j"``.

    Raises :class:`QuerySyntaxError` when the tag is unknown or the key
    is empty.
    """
    tag, sep, key = fragment.partition(":")
    if not sep:
        raise QuerySyntaxError(f"malformed selector [{fragment}]: missing ':'")
    kind = _TAG_TO_KIND.get(tag.strip().lower())
    if kind is None:
        raise QuerySyntaxError(f"malformed selector [{fragment}]: unknown kind {tag.strip()!r}")
    key = normalize_key(key)
    if not key:
        raise QuerySyntaxError(f"malformed selector [{fragment}]: empty key")
    return EntityId(kind, key)
