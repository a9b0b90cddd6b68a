"""HTTP facade over a loaded semantic index.

Endpoints: ``/relate`` (context network for a query), ``/entity``
(metadata lookup), ``/solutions`` (loaded cluster solutions) and
``/compare`` (cross-solution cluster network). Responses are versioned
JSON; identical requests against a fixed index produce identical bodies.
The browser client, when built, is served under ``/ui``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles

from semcontext.compare import compare_solutions
from semcontext.entities import EntityId, EntityKind
from semcontext.errors import (
    QuerySyntaxError,
    UnknownSolutionError,
    UnresolvableQueryError,
)
from semcontext.index import SemanticMatrix
from semcontext.relate import DEFAULT_SHOW, ContextNetwork, answer_query
from semcontext.solutions import ClusterSolution

SCHEMA_VERSION = 1

_SCORE_DECIMALS = 6
_COORD_DECIMALS = 4


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"schema_version": SCHEMA_VERSION, "error": message}, status_code=status)


def _network_body(net: ContextNetwork) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "query": net.query_echo,
        "reason": net.reason,
        "truncated": net.truncated,
        "nodes": [
            {
                "kind": node.entity.kind.value,
                "key": node.entity.key,
                "display_label": node.label,
                "score": round(node.score, _SCORE_DECIMALS),
                "count": node.count,
                "x": round(node.x, _COORD_DECIMALS),
                "y": round(node.y, _COORD_DECIMALS),
            }
            for node in net.nodes
        ],
        "edges": [[i, j, round(w, _COORD_DECIMALS)] for i, j, w in net.edges],
    }


def _parse_show(raw: str | None) -> int:
    if raw is None or raw == "":
        return DEFAULT_SHOW
    try:
        show = int(raw)
    except ValueError:
        raise ValueError(f"show must be an integer, got {raw!r}")
    if show < 1:
        raise ValueError(f"show must be >= 1, got {show}")
    return show


def _parse_type_filter(raw: str | None) -> frozenset[EntityKind] | None:
    if raw is None or raw == "":
        return None
    kinds = set()
    for part in raw.split(","):
        part = part.strip().lower()
        if not part:
            continue
        try:
            kinds.add(EntityKind(part))
        except ValueError:
            raise ValueError(f"unknown entity kind {part!r}")
    return frozenset(kinds) or None


def _ignored_params(request: Request, known: set[str]) -> str | None:
    extra = sorted({k for k in request.query_params if k not in known})
    return ",".join(extra) if extra else None


def create_app(
    S: SemanticMatrix | None,
    solutions_meta: list[ClusterSolution] | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around one immutable index.

    ``solutions_meta`` optionally carries the assignment-level solutions
    to enrich ``/solutions`` with article counts. ``ui_dir`` mounts the
    built browser client when the directory exists.
    """
    app = FastAPI(title="semcontext", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )
    articles_per_solution = {
        sol.solution_id: len(sol.assignments) for sol in (solutions_meta or [])
    }

    @app.get("/relate")
    def relate(request: Request):
        if S is None:
            return _error(503, "index not loaded")
        params = request.query_params
        raw_query = params.get("input")
        if raw_query is None or not raw_query.strip():
            return _error(400, "missing or empty 'input' parameter")
        try:
            show = _parse_show(params.get("show"))
            type_filter = _parse_type_filter(params.get("type"))
        except ValueError as exc:
            return _error(400, str(exc))
        try:
            net = answer_query(S, raw_query, show=show, type_filter=type_filter)
        except (QuerySyntaxError, UnknownSolutionError) as exc:
            return _error(400, str(exc))
        except UnresolvableQueryError as exc:
            net = ContextNetwork(nodes=[], query_echo=exc.echo or raw_query.strip(), truncated=False)
            net.reason = "no_resonance: " + ", ".join(exc.unresolved)
        body = _network_body(net)
        headers = {}
        ignored = _ignored_params(request, {"input", "show", "type"})
        if ignored:
            headers["X-Ignored-Params"] = ignored
        return JSONResponse(body, headers=headers)

    @app.get("/entity")
    def entity(request: Request):
        if S is None:
            return _error(503, "index not loaded")
        params = request.query_params
        kind_raw = (params.get("kind") or "").strip().lower()
        key = (params.get("key") or "").strip()
        if not kind_raw or not key:
            return _error(400, "parameters 'kind' and 'key' are required")
        try:
            kind = EntityKind(kind_raw)
        except ValueError:
            return _error(400, f"unknown entity kind {kind_raw!r}")
        eid = EntityId(kind, key)
        if eid not in S:
            return _error(404, f"unknown entity {eid.selector()}")
        return JSONResponse(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": eid.kind.value,
                "key": eid.key,
                "display_label": S.label_of(eid),
                "count": S.count_of(eid),
            }
        )

    @app.get("/solutions")
    def solutions(request: Request):
        if S is None:
            return _error(503, "index not loaded")
        items = []
        for sol_id, n_clusters in S.solutions().items():
            item = {"id": sol_id, "clusters": n_clusters}
            if sol_id in articles_per_solution:
                item["articles"] = articles_per_solution[sol_id]
            items.append(item)
        return JSONResponse({"schema_version": SCHEMA_VERSION, "solutions": items})

    @app.get("/compare")
    def compare(request: Request):
        if S is None:
            return _error(503, "index not loaded")
        params = request.query_params
        raw_ids = params.get("solutions") or ""
        ids = [s.strip().lower() for s in raw_ids.split(",") if s.strip()]
        if not ids:
            return _error(400, "missing 'solutions' parameter")
        try:
            show = _parse_show(params.get("show"))
        except ValueError as exc:
            return _error(400, str(exc))
        try:
            net = compare_solutions(ids, S, show=show)
        except UnknownSolutionError as exc:
            return _error(400, str(exc))
        return JSONResponse(_network_body(net))

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

        @app.get("/")
        def root():
            return RedirectResponse("/ui/")

    return app
