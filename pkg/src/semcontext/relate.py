"""Query parsing, query-vector composition and cosine context networks.

The query syntax is free text plus bracket selectors: ``magnetic flux``,
``[author:smak j]``, ``[issn:0001-5237]``, ``[cluster:a 19]``. A cluster
selector with a bare solution id (``[cluster:a]``) is a class selector:
it selects every cluster of that solution instead of contributing to the
query vector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from urllib.parse import unquote_plus

import numpy as np

from semcontext.entities import EntityId, EntityKind, normalize_key, parse_selector
from semcontext.errors import QuerySyntaxError, UnknownSolutionError, UnresolvableQueryError
from semcontext.index import SemanticMatrix
from semcontext.layout import layout_network

DEFAULT_SHOW = 25
EDGE_FLOOR = 0.2  # pairwise cosines below this never travel to the client
MAX_EDGES = 2000

_BRACKET_RE = re.compile(r"\[([^\[\]]*)\]")


@dataclass
class QueryExpression:
    """Parsed query: free phrases, exact selectors, class selectors."""

    free_terms: list[str] = field(default_factory=list)
    selectors: list[EntityId] = field(default_factory=list)
    class_selectors: list[str] = field(default_factory=list)
    show: int = DEFAULT_SHOW
    type_filter: frozenset[EntityKind] | None = None

    @property
    def is_empty(self) -> bool:
        return not (self.free_terms or self.selectors or self.class_selectors)

    def echo(self) -> str:
        pieces = [e.selector() for e in self.selectors]
        pieces += [f"[cluster:{s}]" for s in self.class_selectors]
        pieces += self.free_terms
        return " ".join(pieces)


@dataclass(frozen=True)
class ContextNode:
    entity: EntityId
    label: str
    score: float
    count: int
    x: float
    y: float


@dataclass
class ContextNetwork:
    """Ranked, laid-out answer to one query."""

    nodes: list[ContextNode]
    query_echo: str
    truncated: bool
    edges: list[tuple[int, int, float]] = field(default_factory=list)
    reason: str | None = None

    def __len__(self) -> int:
        return len(self.nodes)


def parse_query(raw: str) -> QueryExpression:
    """Parse a raw (possibly URL-encoded) query string."""
    text = unquote_plus(raw or "")
    q = QueryExpression()

    def _consume(match: re.Match) -> str:
        entity = parse_selector(match.group(1))
        if entity.kind is EntityKind.CLUSTER and " " not in entity.key:
            q.class_selectors.append(entity.key)
        else:
            q.selectors.append(entity)
        return " "

    remainder = _BRACKET_RE.sub(_consume, text)
    if "[" in remainder or "]" in remainder:
        bad = remainder.strip()
        raise QuerySyntaxError(f"malformed bracket selector in {bad!r}")
    for phrase in remainder.split(","):
        phrase = normalize_key(phrase)
        if phrase:
            q.free_terms.append(phrase)
    if q.is_empty:
        raise QuerySyntaxError("empty query")
    return q


@dataclass
class QueryResolution:
    resolved: list[EntityId]
    unresolved: list[str]
    vector: np.ndarray | None


def resolve_query(q: QueryExpression, S: SemanticMatrix) -> QueryResolution:
    """Resolve query parts against the index and compose the mean vector.

    Free phrases resolve to a term entity when present in the vocabulary,
    falling back to a subject entity with the same key. Class selectors
    never contribute to the vector. Raises
    :class:`UnresolvableQueryError` when nothing resolves and no class
    selector is present.
    """
    resolved: dict[EntityId, None] = {}
    unresolved: list[str] = []

    for phrase in q.free_terms:
        for kind in (EntityKind.TERM, EntityKind.SUBJECT):
            candidate = EntityId(kind, phrase)
            if candidate in S:
                resolved[candidate] = None
                break
        else:
            unresolved.append(phrase)

    for sel in q.selectors:
        if sel in S:
            resolved[sel] = None
        else:
            unresolved.append(sel.selector())

    if not resolved:
        if q.class_selectors:
            return QueryResolution([], unresolved, None)
        raise UnresolvableQueryError(unresolved or [q.echo()], echo=q.echo())

    rows = [S.row(e) for e in resolved]
    vector = S.vectors[rows].astype(np.float64).mean(axis=0)
    return QueryResolution(list(resolved), unresolved, vector)


def compose_query_vector(q: QueryExpression, S: SemanticMatrix) -> np.ndarray:
    """Mean of the resolved query entities' vectors."""
    resolution = resolve_query(q, S)
    if resolution.vector is None:
        raise UnresolvableQueryError(resolution.unresolved or [q.echo()])
    return resolution.vector


def _pairwise_cosine(vectors: np.ndarray) -> np.ndarray:
    v = vectors.astype(np.float64)
    norms = np.linalg.norm(v, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = v / safe[:, None]
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    sim[norms == 0.0, :] = 0.0
    sim[:, norms == 0.0] = 0.0
    return sim


def _edges_from(sim: np.ndarray) -> list[tuple[int, int, float]]:
    n = sim.shape[0]
    iu = np.triu_indices(n, k=1)
    weights = sim[iu]
    keep = weights >= EDGE_FLOOR
    edges = [
        (int(i), int(j), float(w))
        for i, j, w in zip(iu[0][keep], iu[1][keep], weights[keep])
    ]
    edges.sort(key=lambda e: (-e[2], e[0], e[1]))
    return edges[:MAX_EDGES]


def assemble_network(
    S: SemanticMatrix,
    ranked_rows: np.ndarray,
    scores: np.ndarray,
    echo: str,
    truncated: bool,
    layout_seed: int = 0,
) -> ContextNetwork:
    """Attach metadata, layout and edges to a ranked row selection."""
    sim = _pairwise_cosine(S.vectors[ranked_rows]) if len(ranked_rows) else np.zeros((0, 0))
    positions = layout_network(sim, seed=layout_seed)
    nodes = []
    for rank, row in enumerate(ranked_rows):
        entity = S.entities[row]
        nodes.append(
            ContextNode(
                entity=entity,
                label=S.labels[row],
                score=float(scores[rank]),
                count=int(S.counts[row]),
                x=float(positions[rank, 0]),
                y=float(positions[rank, 1]),
            )
        )
    return ContextNetwork(nodes=nodes, query_echo=echo, truncated=truncated, edges=_edges_from(sim))


def top_related(
    v: np.ndarray,
    S: SemanticMatrix,
    show: int = DEFAULT_SHOW,
    type_filter: frozenset[EntityKind] | None = None,
    exclude: tuple[EntityId, ...] | list[EntityId] = (),
    restrict_solutions: set[str] | None = None,
    layout_seed: int = 0,
    echo: str = "",
) -> ContextNetwork:
    """Exhaustive cosine scan: the ``show`` entities most related to ``v``.

    Ties break lexicographically on (kind, key); excluded entities (the
    query's own) never appear; with ``restrict_solutions``, cluster nodes
    are limited to those solutions.
    """
    if show < 1:
        raise ValueError("show must be >= 1")
    v = np.asarray(v, dtype=np.float64)
    if not np.any(v):
        raise UnresolvableQueryError([echo or "zero vector"])

    scores = S.cosine_to(v)
    mask = S.kind_mask(type_filter) if type_filter is not None else np.ones(len(S), dtype=bool)
    for entity in exclude:
        if entity in S:
            mask[S.row(entity)] = False
    if restrict_solutions is not None:
        for row, entity in enumerate(S.entities):
            sol = entity.solution_id()
            if sol is not None and sol not in restrict_solutions:
                mask[row] = False

    candidates = np.flatnonzero(mask)
    # Row order is already the (kind, key) sort, so it is the tie rule.
    order = np.lexsort((candidates, -scores[candidates]))
    ranked = candidates[order[:show]]
    return assemble_network(
        S,
        ranked,
        scores[ranked],
        echo=echo,
        truncated=len(candidates) > show,
        layout_seed=layout_seed,
    )


def answer_query(
    S: SemanticMatrix,
    raw: str,
    show: int = DEFAULT_SHOW,
    type_filter: frozenset[EntityKind] | None = None,
    layout_seed: int = 0,
) -> ContextNetwork:
    """Parse, resolve and answer one query string end to end."""
    q = parse_query(raw)
    if q.class_selectors:
        known = S.solutions()
        for sol in q.class_selectors:
            if sol not in known:
                raise UnknownSolutionError(f"unknown solution id {sol!r}")
    resolution = resolve_query(q, S)

    if resolution.vector is None:
        # Pure class-selector query: the cluster-comparison view.
        from semcontext.compare import compare_solutions

        if type_filter is not None and EntityKind.CLUSTER not in type_filter:
            return ContextNetwork(nodes=[], query_echo=q.echo(), truncated=False)
        return compare_solutions(q.class_selectors, S, show=show, layout_seed=layout_seed)

    return top_related(
        resolution.vector,
        S,
        show=show,
        type_filter=type_filter,
        exclude=resolution.resolved,
        restrict_solutions=set(q.class_selectors) or None,
        layout_seed=layout_seed,
        echo=q.echo(),
    )
