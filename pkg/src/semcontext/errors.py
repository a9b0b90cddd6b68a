"""Exception hierarchy shared across the engine."""


class SemContextError(Exception):
    """Base class for all engine errors."""


class CorpusFormatError(SemContextError):
    """The corpus or assignment stream cannot be read at all."""


class SolutionFormatError(SemContextError):
    """A cluster-assignment file violates its schema (e.g. duplicate ids)."""


class IndexFormatError(SemContextError):
    """An index file has a bad magic header, version, or is truncated."""


class ProjectionError(SemContextError):
    """Invalid projection parameters."""


class QuerySyntaxError(SemContextError):
    """The query string is empty or contains a malformed selector."""


class UnresolvableQueryError(SemContextError):
    """No query entity resolves against the index and no class selector is present."""

    def __init__(self, unresolved: list[str], echo: str | None = None):
        self.unresolved = list(unresolved)
        self.echo = echo
        detail = ", ".join(repr(u) for u in self.unresolved) or "empty query"
        super().__init__(f"query resonates with nothing in this corpus: {detail}")


class UnknownSolutionError(SemContextError):
    """A solution id names no cluster entities in the index."""


class UnknownEntityError(SemContextError):
    """An entity required by the operation is absent from the index."""


class ClusteringError(SemContextError):
    """Invalid clustering parameters or a violated clustering invariant."""
