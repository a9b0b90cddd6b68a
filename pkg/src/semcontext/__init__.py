"""Semantic context engine for bibliographic corpora.

Builds a sparse entity/term co-occurrence matrix from bibliographic
records, reduces it to a dense semantic matrix with a seeded random sign
projection, and answers "context around X" queries by cosine relatedness.
Also clusters articles on top of the semantic vectors and compares
competing cluster solutions.
"""

from semcontext.entities import EntityId, EntityKind
from semcontext.ingest import (
    BibRecord,
    ExtractionConfig,
    ParseResult,
    TermVocabulary,
    extract_entities,
    extract_topical_terms,
    load_extraction_config,
    parse_records,
)
from semcontext.solutions import ClusterSolution, load_cluster_solution
from semcontext.cooccur import CooccurrenceMatrix, build_cooccurrence
from semcontext.projection import ProjectionSpec, project_rows, sign_row
from semcontext.index import SemanticMatrix, build_index, load_index, save_index
from semcontext.relate import (
    ContextNetwork,
    ContextNode,
    QueryExpression,
    answer_query,
    compose_query_vector,
    parse_query,
    top_related,
)
from semcontext.clustering import (
    ArticleMatrix,
    KMeansParams,
    embed_articles,
    label_solution,
    minibatch_kmeans,
)
from semcontext.compare import OverlapSummary, compare_solutions, solution_overlap
from semcontext.layout import layout_network

__version__ = "0.1.0"

__all__ = [
    "ArticleMatrix",
    "BibRecord",
    "ClusterSolution",
    "ContextNetwork",
    "ContextNode",
    "CooccurrenceMatrix",
    "EntityId",
    "EntityKind",
    "ExtractionConfig",
    "KMeansParams",
    "OverlapSummary",
    "ParseResult",
    "ProjectionSpec",
    "QueryExpression",
    "SemanticMatrix",
    "TermVocabulary",
    "answer_query",
    "build_cooccurrence",
    "build_index",
    "compare_solutions",
    "compose_query_vector",
    "embed_articles",
    "extract_entities",
    "extract_topical_terms",
    "label_solution",
    "layout_network",
    "load_cluster_solution",
    "load_extraction_config",
    "load_index",
    "minibatch_kmeans",
    "parse_query",
    "parse_records",
    "project_rows",
    "save_index",
    "sign_row",
    "solution_overlap",
    "top_related",
]
