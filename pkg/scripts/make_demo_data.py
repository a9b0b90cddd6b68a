"""Generate the bundled demo corpus (sample_data/).

Three astronomy-flavored topics with overlapping vocabulary, a handful of
authors and journals, plus two synthetic cluster solutions. Deterministic;
rerun after editing and commit the result.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "sample_data"

TOPICS = {
    "cosmology": {
        "phrases": [
            "dark energy", "dark matter", "cosmic microwave background", "density perturbations",
            "inflation", "large scale structure", "redshift survey", "baryon acoustic oscillations",
            "gravitational lensing", "cosmological constant", "galaxy clustering", "power spectrum",
        ],
        "subjects": ["cosmology", "dark energy", "large-scale structure", "observations"],
        "journal": ("1111-0001", "Journal of Cosmology"),
        "authors": ["riess a", "peebles p", "spergel d", "tegmark m"],
    },
    "compact": {
        "phrases": [
            "mass transfer", "accretion disk", "dwarf novae", "white dwarf", "neutron star",
            "x-ray binary", "cataclysmic variables", "outburst cycle", "quiescence", "hot spot",
            "orbital period", "binary evolution",
        ],
        "subjects": ["accretion, accretion disks", "cataclysmic variables", "binaries", "x-rays"],
        "journal": ("2222-0002", "Compact Objects Letters"),
        "authors": ["smak j", "warner b", "patterson j", "knigge c"],
    },
    "solar": {
        "phrases": [
            "magnetic flux", "solar wind", "sunspot cycle", "coronal mass ejection", "flux tubes",
            "magnetic reconnection", "stellar activity", "chromosphere", "photosphere", "solar corona",
            "magnetic field", "helioseismology",
        ],
        "subjects": ["sun", "magnetic fields", "solar wind", "activity"],
        "journal": ("3333-0003", "Solar Physics Reports"),
        "authors": ["parker e", "priest e", "schrijver c", "title a"],
    },
}

CONNECTIVES = ["we study", "observations of", "a model for", "evidence of", "implications of", "the role of"]


def make_doc(rng: random.Random, topic: str, i: int) -> dict:
    spec = TOPICS[topic]
    phrases = rng.sample(spec["phrases"], 6)
    title = f"{phrases[0].capitalize()} and {phrases[1]}"
    sentences = []
    for p in range(2, 6):
        lead = rng.choice(CONNECTIVES)
        other = rng.choice(spec["phrases"])
        sentences.append(f"{lead} {phrases[p]} in the context of {other}.")
    n_authors = rng.choice([1, 1, 2, 3])
    issn, journal = spec["journal"]
    return {
        "id": f"DEMO:{topic[:3].upper()}{i:04d}",
        "title": title,
        "abstract": " ".join(sentences),
        "authors": rng.sample(spec["authors"], n_authors),
        "issn": issn,
        "journal": journal,
        "subjects": rng.sample(spec["subjects"], rng.choice([2, 3, 4])),
    }


def main() -> None:
    rng = random.Random(20260808)
    OUT.mkdir(exist_ok=True)
    docs = []
    for topic, count in (("cosmology", 60), ("compact", 45), ("solar", 45)):
        for i in range(count):
            docs.append(make_doc(rng, topic, i))
    rng.shuffle(docs)

    with (OUT / "corpus.jsonl").open("w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc, ensure_ascii=False) + "\n")

    # Solution a: the generating topic (ground truth).
    with (OUT / "solution_a.tsv").open("w", encoding="utf-8") as fh:
        for doc in docs:
            topic = {"COS": "1", "COM": "2", "SOL": "3"}[doc["id"][5:8]]
            fh.write(f"{doc['id']}\t{topic}\n")

    # Solution b: a noisy variant (12% of articles flipped to a random topic).
    with (OUT / "solution_b.tsv").open("w", encoding="utf-8") as fh:
        for doc in docs:
            topic = {"COS": "1", "COM": "2", "SOL": "3"}[doc["id"][5:8]]
            if rng.random() < 0.12:
                topic = rng.choice(["1", "2", "3"])
            fh.write(f"{doc['id']}\t{topic}\n")

    print(f"wrote {len(docs)} records to {OUT}")


if __name__ == "__main__":
    main()
