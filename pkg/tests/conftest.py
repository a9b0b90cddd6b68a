"""Shared fixtures: a hand-built toy corpus, solution files, and synthetic
corpus generators used by the heavier recovery tests."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from semcontext.index import SemanticMatrix, build_index
from semcontext.ingest import BibRecord, ExtractionConfig
from semcontext.projection import ProjectionSpec
from semcontext.solutions import load_cluster_solution

# A dwarf-nova style record exercising every field, including twelve
# subjects and an assignment in six solutions.
SSCYG_RECORD = BibRecord(
    article_id="ISI:000276828000006",
    title="On the Mass Transfer Rate in SS Cyg",
    abstract=(
        "The mass transfer rate in SS Cyg at quiescence is estimated from the "
        "luminosity of the hot spot. The estimate sits below both critical mass "
        "transfer rates considered here. The mass transfer rate during outbursts "
        "is strongly enhanced."
    ),
    authors=("smak j",),
    issn="0001-5237",
    journal_title="Acta Astronomica",
    subjects=(
        "accretion, accretion disks",
        "cataclysmic variables",
        "disc instability model",
        "dwarf novae",
        "novae, cataclysmic variables",
        "outbursts",
        "parameters",
        "stars",
        "stars dwarf novae",
        "stars individual ss cyg",
        "state",
        "superoutbursts",
    ),
)

# Twelve-record toy corpus: two "topics" (cosmology vs stellar), two
# journals, recurring authors, and the phrase "magnetic flux" in several
# records so it lands in the vocabulary.
TOY_RECORDS = [
    BibRecord("T01", "Dark energy and the accelerating universe", "Dark energy dominates cosmology. Supernova surveys measure the expansion.", ("doe j",), "1111-1111", "Cosmology Letters", ("dark energy", "cosmology")),
    BibRecord("T02", "Cosmology with dark energy surveys", "Galaxy surveys constrain dark energy and cosmology over cosmic time.", ("doe j", "roe k"), "1111-1111", "Cosmology Letters", ("dark energy", "surveys")),
    BibRecord("T03", "Inflation and density perturbations", "Inflation seeds density perturbations. Cosmology links them to structure.", ("roe k",), "1111-1111", "Cosmology Letters", ("cosmology", "inflation")),
    BibRecord("T04", "Dark energy equation of state", "The equation of state of dark energy shapes cosmology and expansion history.", ("poe l",), "1111-1111", "Cosmology Letters", ("dark energy",)),
    BibRecord("T05", "Cosmology from cluster counts", "Galaxy cluster counts probe dark energy and cosmology.", ("doe j",), "1111-1111", "Cosmology Letters", ("cosmology",)),
    BibRecord("T06", "Density perturbations in the early universe", "Density perturbations grow under gravity. Inflation sets their spectrum.", ("poe l",), "1111-1111", "Cosmology Letters", ("inflation", "density perturbations")),
    BibRecord("T07", "Magnetic flux in stellar atmospheres", "Magnetic flux emerges through the stellar surface. Sunspots trace magnetic flux.", ("fox m",), "2222-2222", "Stellar Physics", ("magnetic fields", "stars")),
    BibRecord("T08", "Stellar winds and magnetic flux", "Stellar winds carry magnetic flux away from rotating stars.", ("fox m", "hale g"), "2222-2222", "Stellar Physics", ("stars", "winds")),
    BibRecord("T09", "Sunspots and magnetic flux tubes", "Magnetic flux tubes form sunspots. Stellar activity follows the cycle.", ("hale g",), "2222-2222", "Stellar Physics", ("magnetic fields", "sunspots")),
    BibRecord("T10", "Mass transfer in binary stars", "Mass transfer shapes the evolution of binary stars and accretion disks.", ("smak j",), "2222-2222", "Stellar Physics", ("mass transfer", "binaries")),
    BibRecord("T11", "Accretion disks around dwarf novae", "Accretion disks in dwarf novae show outbursts driven by mass transfer.", ("smak j",), "2222-2222", "Stellar Physics", ("dwarf novae", "accretion")),
    BibRecord("T12", "Dwarf novae at quiescence", "Dwarf novae at quiescence reveal the mass transfer rate onto the disk.", ("fox m",), "2222-2222", "Stellar Physics", ("dwarf novae", "quiescence")),
]

# Solution a: the two topics. Solution b: journals-by-thirds, sizes 4/4/4.
TOY_SOLUTION_A = {f"T{i:02d}": "1" for i in range(1, 7)} | {f"T{i:02d}": "2" for i in range(7, 13)}
TOY_SOLUTION_B = (
    {f"T{i:02d}": "x" for i in range(1, 5)}
    | {f"T{i:02d}": "y" for i in range(5, 9)}
    | {f"T{i:02d}": "z" for i in range(9, 13)}
)


def write_corpus(path: Path, records) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for r in records:
            fh.write(
                json.dumps(
                    {
                        "id": r.article_id,
                        "title": r.title,
                        "abstract": r.abstract,
                        "authors": list(r.authors),
                        "issn": r.issn,
                        "journal": r.journal_title,
                        "subjects": list(r.subjects),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    return path


def write_assignment_file(path: Path, assignments: dict[str, str]) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for aid, cid in assignments.items():
            fh.write(f"{aid}\t{cid}\n")
    return path


@pytest.fixture(scope="session")
def toy_solutions():
    import io

    def _load(assignments, sol_id):
        text = "".join(f"{aid}\t{cid}\n" for aid, cid in assignments.items())
        sol = load_cluster_solution(io.StringIO(text), sol_id, min_size=4)
        sol.match_corpus([r.article_id for r in TOY_RECORDS])
        return sol

    return [_load(TOY_SOLUTION_A, "a"), _load(TOY_SOLUTION_B, "b")]


@pytest.fixture(scope="session")
def toy_index(toy_solutions) -> SemanticMatrix:
    return build_index(
        TOY_RECORDS,
        toy_solutions,
        config=ExtractionConfig(min_df=2),
        spec=ProjectionSpec(dims=64, seed=42),
    )


@pytest.fixture()
def toy_corpus_file(tmp_path) -> Path:
    return write_corpus(tmp_path / "corpus.jsonl", TOY_RECORDS)


def random_index(n_entities: int, dims: int, seed: int) -> SemanticMatrix:
    """A synthetic index with random vectors, for ranking tests."""
    from semcontext.entities import EntityId, EntityKind

    rng = np.random.default_rng(seed)
    kinds = list(EntityKind)
    entities = sorted(
        EntityId(kinds[i % len(kinds)], f"e{i:05d}" if kinds[i % len(kinds)] is not EntityKind.CLUSTER else f"s{i % 3} c{i:05d}")
        for i in range(n_entities)
    )
    vectors = rng.standard_normal((n_entities, dims)).astype(np.float32)
    counts = rng.integers(1, 500, size=n_entities).astype(np.int64)
    return SemanticMatrix(
        entities=entities,
        vectors=vectors,
        counts=counts,
        labels=[e.key for e in entities],
        spec=ProjectionSpec(dims=dims, seed=seed),
    )


def two_topic_records(n_docs: int, seed: int, words_per_topic: int = 30, words_per_doc: int = 9):
    """Corpus with two disjoint planted vocabularies, half the docs each."""
    rng = np.random.default_rng(seed)
    topics = [
        [f"alpha{i:02d}" for i in range(words_per_topic)],
        [f"beta{i:02d}" for i in range(words_per_topic)],
    ]
    records = []
    truth = {}
    for i in range(n_docs):
        topic = i % 2
        words = rng.choice(topics[topic], size=words_per_doc, replace=False)
        aid = f"D{i:05d}"
        records.append(
            BibRecord(
                article_id=aid,
                title=" ".join(words[:3]),
                abstract=" ".join(words[3:]) + ".",
            )
        )
        truth[aid] = topic
    return records, truth, topics


def gaussian_blobs(n_points: int, dims: int, n_blobs: int, separation: float, seed: int):
    """Well-separated isotropic blobs with planted labels."""
    rng = np.random.default_rng(seed)
    centers = rng.standard_normal((n_blobs, dims))
    centers *= separation / np.linalg.norm(centers, axis=1, keepdims=True)
    labels = rng.integers(0, n_blobs, size=n_points)
    points = centers[labels] + rng.standard_normal((n_points, dims))
    return points, labels, centers
