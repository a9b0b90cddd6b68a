"""Batch entry points: build-index, cluster, label, query, compare, serve.

Every subcommand is deterministic given its flags; all randomness sits
behind explicit ``--seed`` options.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from semcontext.clustering import KMeansParams, embed_articles, label_clusters, minibatch_kmeans
from semcontext.compare import compare_solutions, overlap_report, solution_overlap
from semcontext.entities import EntityKind
from semcontext.errors import SemContextError
from semcontext.index import build_index, load_index, save_index
from semcontext.ingest import ExtractionConfig, load_extraction_config, parse_records
from semcontext.projection import DEFAULT_DIMS, ProjectionSpec
from semcontext.relate import DEFAULT_SHOW, ContextNetwork, answer_query
from semcontext.solutions import DEFAULT_MIN_CLUSTER_SIZE, load_cluster_solution, write_assignments
from semcontext.tokens import STOPWORDS


def _parse_solution_args(pairs: tuple[str, ...]) -> list[tuple[str, Path]]:
    out = []
    seen = set()
    for pair in pairs:
        sol_id, sep, path = pair.partition("=")
        if not sep or not sol_id.strip() or not path.strip():
            raise click.ClickException(f"--solution expects 'id=path', got {pair!r}")
        sol_id = sol_id.strip().lower()
        if sol_id in seen:
            raise click.ClickException(f"duplicate solution id {sol_id!r}")
        seen.add(sol_id)
        out.append((sol_id, Path(path)))
    return out


def _load_stopwords(path: str | None) -> frozenset[str]:
    if not path:
        return STOPWORDS
    words = {w.strip().lower() for w in Path(path).read_text(encoding="utf-8").split() if w.strip()}
    return frozenset(words)


def _parse_type(value: str | None) -> frozenset[EntityKind] | None:
    if not value:
        return None
    kinds = set()
    for part in value.split(","):
        part = part.strip().lower()
        if not part:
            continue
        try:
            kinds.add(EntityKind(part))
        except ValueError:
            raise click.ClickException(f"unknown entity kind {part!r}")
    return frozenset(kinds) or None


def _print_network(net: ContextNetwork) -> None:
    click.echo("kind\tkey\tscore\tcount")
    for node in net.nodes:
        click.echo(f"{node.entity.kind.value}\t{node.entity.key}\t{round(node.score, 6):.6f}\t{node.count}")


@click.group()
@click.version_option()
def main() -> None:
    """Semantic context engine for bibliographic corpora."""


@main.command("build-index")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False), help="JSON-lines corpus file.")
@click.option("--solution", "solutions_arg", multiple=True, metavar="ID=PATH", help="Cluster-assignment file to index, repeatable.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Index file to write.")
@click.option("--dims", default=DEFAULT_DIMS, show_default=True, help="Projection dimensionality.")
@click.option("--seed", default=0, show_default=True, help="Projection seed.")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True, dir_okay=False), help="Extraction config file (JSON: min_df, stopwords path).")
@click.option("--min-df", default=None, type=int, help="Minimum document frequency for topical terms (default: 5 for >=10k records, else 2).")
@click.option("--min-cluster-size", default=DEFAULT_MIN_CLUSTER_SIZE, show_default=True, help="Discard solution clusters smaller than this.")
@click.option("--stopwords", "stopwords_path", default=None, type=click.Path(exists=True, dir_okay=False), help="Override the built-in stopword list.")
@click.option("--damp-log", is_flag=True, help="Apply log(1+x) damping to co-occurrence counts.")
def build_index_cmd(corpus, solutions_arg, out, dims, seed, config_path, min_df, min_cluster_size, stopwords_path, damp_log):
    """Build the semantic index from a corpus and optional cluster solutions."""
    result = parse_records(corpus)
    for err in result.errors:
        click.echo(f"line {err.line_no}: {err.message}", err=True)
    if not result.records:
        raise click.ClickException("corpus contains no valid records")
    click.echo(f"records: {len(result.records)} (skipped {len(result.errors)} malformed lines)")

    corpus_ids = {r.article_id for r in result.records}
    solutions = []
    for sol_id, path in _parse_solution_args(solutions_arg):
        try:
            sol = load_cluster_solution(path, sol_id, min_size=min_cluster_size)
        except SemContextError as exc:
            raise click.ClickException(str(exc))
        unmatched = sol.match_corpus(corpus_ids)
        if unmatched:
            click.echo(f"solution {sol_id}: {len(unmatched)} assigned ids not in corpus", err=True)
        retained = len(set(sol.assignments.values()))
        click.echo(
            f"solution {sol_id}: {sol.raw_cluster_count} clusters -> {retained} retained"
            f" ({sol.discarded_clusters} below min size {min_cluster_size})"
        )
        solutions.append(sol)

    if config_path:
        try:
            config = load_extraction_config(config_path)
        except SemContextError as exc:
            raise click.ClickException(str(exc))
        if min_df is not None:
            config = ExtractionConfig(min_df=min_df, stopwords=config.stopwords)
        if stopwords_path:
            config = ExtractionConfig(min_df=config.min_df, stopwords=_load_stopwords(stopwords_path))
    else:
        config = ExtractionConfig(min_df=min_df, stopwords=_load_stopwords(stopwords_path))
    spec = ProjectionSpec(dims=dims, seed=seed)
    S = build_index(result.records, solutions, config=config, spec=spec, damp_log=damp_log)

    kinds = S.kind_counts()
    breakdown = " ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
    click.echo(f"entities: total={len(S)} {breakdown}")
    save_index(S, out)
    click.echo(f"index written: {out} (dims={dims} seed={seed})")


@main.command()
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Assignment file to write.")
@click.option("--k", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--batch-size", default=1024, show_default=True)
@click.option("--max-iterations", default=100, show_default=True)
@click.option("--tol", default=1e-4, show_default=True)
@click.option("--solution-id", default="mb", show_default=True, help="Label for the produced solution.")
@click.option("--spherical", is_flag=True, help="L2-normalize article vectors before clustering (cosine-style).")
@click.option("--include-cluster-entities", is_flag=True, help="Let existing cluster entities contribute to article vectors.")
@click.option("--solution", "solutions_arg", multiple=True, metavar="ID=PATH", help="Assignment files, only needed with --include-cluster-entities.")
def cluster(index_path, corpus, out, k, seed, batch_size, max_iterations, tol, solution_id, spherical, include_cluster_entities, solutions_arg):
    """Embed articles and cluster them with mini-batch k-means."""
    S = load_index(index_path)
    result = parse_records(corpus)
    if not result.records:
        raise click.ClickException("corpus contains no valid records")
    solutions = []
    if include_cluster_entities:
        if not solutions_arg:
            click.echo("warning: --include-cluster-entities without --solution files has no effect", err=True)
        corpus_ids = {r.article_id for r in result.records}
        for sol_id, path in _parse_solution_args(solutions_arg):
            sol = load_cluster_solution(path, sol_id)
            sol.match_corpus(corpus_ids)
            solutions.append(sol)

    M = embed_articles(result.records, S, solutions, include_cluster_entities)
    if M.skipped:
        click.echo(f"skipped {len(M.skipped)} articles with no resolvable entities", err=True)
    if not M.article_ids:
        raise click.ClickException("no embeddable articles")
    params = KMeansParams(k=k, batch_size=batch_size, max_iterations=max_iterations, tol=tol, seed=seed, spherical=spherical)
    try:
        km = minibatch_kmeans(M, params, solution_id=solution_id)
    except SemContextError as exc:
        raise click.ClickException(str(exc))

    write_assignments(((aid, km.solution.assignments[aid]) for aid in M.article_ids), out)
    click.echo(f"articles: {len(M.article_ids)} embedded, {len(M.skipped)} skipped")
    click.echo(f"iterations: {km.iterations}")
    click.echo(f"inertia: init={km.inertia_initial:.6g} final={km.inertia_final:.6g}")
    if km.reseeded_clusters:
        click.echo(f"reseeded empty clusters: {km.reseeded_clusters}")
    click.echo(f"assignments written: {out}")


@main.command()
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--solution-id", required=True)
@click.option("--top", "n", default=9, show_default=True, help="Topical terms per cluster.")
def label(index_path, solution_id, n):
    """Print the most related topical terms for each cluster of a solution."""
    S = load_index(index_path)
    try:
        labels = label_clusters(S, solution_id.strip().lower(), n)
    except SemContextError as exc:
        raise click.ClickException(str(exc))
    click.echo("cluster\tterms")
    for cid in sorted(labels):
        click.echo(f"{cid}\t{', '.join(labels[cid])}")


@main.command()
@click.argument("query_string")
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--show", default=DEFAULT_SHOW, show_default=True)
@click.option("--type", "type_filter", default=None, help="Comma-separated entity kinds to keep.")
def query(query_string, index_path, show, type_filter):
    """Print the context network for a query as a TSV table."""
    S = load_index(index_path)
    try:
        net = answer_query(S, query_string, show=show, type_filter=_parse_type(type_filter))
    except SemContextError as exc:
        raise click.ClickException(str(exc))
    _print_network(net)


@main.command()
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--ids", required=True, help="Comma-separated solution ids, e.g. a,b.")
@click.option("--show", default=50, show_default=True)
@click.option("--assignments", "assignments_arg", multiple=True, metavar="ID=PATH", help="Assignment files for the contingency summary, repeatable.")
@click.option("--rows-out", default=None, type=click.Path(dir_okay=False), help="Write machine-readable overlap rows (TSV) here.")
def compare(index_path, ids, show, assignments_arg, rows_out):
    """Compare cluster solutions: context network plus optional overlap table."""
    S = load_index(index_path)
    id_list = [s.strip().lower() for s in ids.split(",") if s.strip()]
    if not id_list:
        raise click.ClickException("--ids must name at least one solution")
    try:
        net = compare_solutions(id_list, S, show=show)
    except SemContextError as exc:
        raise click.ClickException(str(exc))
    _print_network(net)

    loaded = dict(_parse_solution_args(assignments_arg))
    if len(id_list) == 2 and all(i in loaded for i in id_list):
        a = load_cluster_solution(loaded[id_list[0]], id_list[0])
        b = load_cluster_solution(loaded[id_list[1]], id_list[1])
        try:
            summary = solution_overlap(a, b)
        except SemContextError as exc:
            raise click.ClickException(str(exc))
        click.echo("")
        click.echo(overlap_report(summary, id_list[0], id_list[1]))
        if rows_out:
            with Path(rows_out).open("w", encoding="utf-8") as fh:
                for row in summary.to_rows():
                    fh.write(f"{row[0]}\t{row[1]}\t{row[2]}\n")
            click.echo(f"overlap rows written: {rows_out}")


@main.command()
@click.option("--index", "index_path", envvar="SEMCONTEXT_INDEX", type=click.Path(exists=True, dir_okay=False), help="Index file (or set SEMCONTEXT_INDEX).")
@click.option("--port", envvar="SEMCONTEXT_PORT", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--solutions", "solutions_arg", multiple=True, metavar="ID=PATH", help="Assignment files for /solutions article counts.")
@click.option("--ui-dir", default=None, type=click.Path(file_okay=False), help="Directory of built UI assets (default: ./frontend/dist when present).")
def serve(index_path, port, host, solutions_arg, ui_dir):
    """Serve the query API (and the UI when built) over HTTP."""
    import uvicorn

    from semcontext.server import create_app

    if not index_path:
        raise click.ClickException("--index or SEMCONTEXT_INDEX is required")
    S = load_index(index_path)
    meta = []
    for sol_id, path in _parse_solution_args(solutions_arg):
        sol = load_cluster_solution(path, sol_id)
        known = S.solutions()
        if sol_id not in known:
            click.echo(f"warning: solution {sol_id!r} has no cluster entities in the index", err=True)
        meta.append(sol)
    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    app = create_app(S, solutions_meta=meta, ui_dir=ui_dir)
    click.echo(f"serving {index_path} on http://{host}:{port} (ui: {ui_dir or 'not built'})")
    uvicorn.run(app, host=host, port=int(port), log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
