"""Record parsing, vocabulary extraction and entity extraction."""

from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semcontext.entities import EntityId, EntityKind
from semcontext.errors import CorpusFormatError
from semcontext.ingest import (
    BibRecord,
    ExtractionConfig,
    extract_entities,
    extract_topical_terms,
    parse_records,
)
from semcontext.solutions import load_cluster_solution
from semcontext.tokens import sentence_tokens, tokenize

from conftest import SSCYG_RECORD


def _line(**kw) -> str:
    base = {"id": "X1", "title": "A title", "abstract": "", "authors": [], "issn": "", "journal": "", "subjects": []}
    base.update(kw)
    return json.dumps(base)


class TestParseRecords:
    def test_basic_line(self):
        src = io.StringIO(_line(id="ISI:000276828000006", title="On the Mass Transfer Rate in SS Cyg") + "\n")
        result = parse_records(src)
        assert len(result.records) == 1
        assert result.records[0].article_id == "ISI:000276828000006"
        assert result.records[0].title == "On the Mass Transfer Rate in SS Cyg"
        assert result.errors == []

    def test_empty_file(self):
        result = parse_records(io.StringIO(""))
        assert result.records == [] and result.errors == []

    def test_missing_id_skipped_with_line_number(self):
        src = io.StringIO("\n".join([_line(id="A"), _line(id=""), _line(id="B")]))
        result = parse_records(src)
        assert [r.article_id for r in result.records] == ["A", "B"]
        assert len(result.errors) == 1
        assert result.errors[0].line_no == 2

    def test_duplicate_id_is_error(self):
        src = io.StringIO("\n".join([_line(id="A"), _line(id="A")]))
        result = parse_records(src)
        assert len(result.records) == 1
        assert "duplicate" in result.errors[0].message

    def test_requires_some_text(self):
        src = io.StringIO(_line(id="A", title="", abstract=""))
        result = parse_records(src)
        assert result.records == []
        assert "title nor abstract" in result.errors[0].message

    def test_not_json_collected(self):
        src = io.StringIO("not json at all\n" + _line(id="A"))
        result = parse_records(src)
        assert len(result.records) == 1 and result.errors[0].line_no == 1

    def test_unreadable_path_fatal(self, tmp_path):
        with pytest.raises(CorpusFormatError):
            parse_records(tmp_path / "missing.jsonl")

    def test_order_preserved(self):
        src = io.StringIO("\n".join(_line(id=f"A{i}") for i in range(10)))
        result = parse_records(src)
        assert [r.article_id for r in result.records] == [f"A{i}" for i in range(10)]


class TestTokenize:
    def test_rules(self):
        assert tokenize("X-ray bursts from 3 sources, at 16.8 K!") == ["x-ray", "bursts", "from", "sources", "at"]

    def test_drops_single_chars_and_numbers(self):
        assert tokenize("a 1 22 bb") == ["bb"]

    def test_bigrams_do_not_span_sentences(self):
        sents = list(sentence_tokens("mass transfer. rate high", ""))
        assert sents == [["mass", "transfer"], ["rate", "high"]]


class TestVocabulary:
    def test_sscyg_contains_expected_phrases(self):
        vocab = extract_topical_terms([SSCYG_RECORD], ExtractionConfig(min_df=1))
        assert "mass transfer" in vocab
        assert "quiescence" in vocab

    def test_empty_corpus(self):
        assert len(extract_topical_terms([], ExtractionConfig(min_df=1))) == 0

    def test_document_frequency_threshold(self):
        docs = [
            BibRecord("D1", "dark energy rules", ""),
            BibRecord("D2", "dark energy again", ""),
            BibRecord("D3", "more dark energy", ""),
            BibRecord("D4", "rare phrase here", ""),
            BibRecord("D5", "something else entirely", ""),
        ]
        vocab = extract_topical_terms(docs, ExtractionConfig(min_df=2))
        assert "dark energy" in vocab
        assert vocab.entries["dark energy"] == 3
        assert "rare phrase" not in vocab

    def test_stopwords_block_bigrams(self):
        docs = [BibRecord(f"D{i}", "the transfer of mass", "") for i in range(3)]
        vocab = extract_topical_terms(docs, ExtractionConfig(min_df=2))
        assert "transfer" in vocab and "mass" in vocab
        assert "the transfer" not in vocab and "of mass" not in vocab

    def test_min_df_default_scales_with_corpus(self):
        assert ExtractionConfig().resolve_min_df(100) == 2
        assert ExtractionConfig().resolve_min_df(10_000) == 5

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
    def test_vocabulary_monotonic_in_min_df(self, df_low, df_high):
        docs = [
            BibRecord("D1", "alpha beta gamma", "alpha beta"),
            BibRecord("D2", "alpha beta", "delta gamma"),
            BibRecord("D3", "alpha delta", "beta gamma delta"),
        ]
        low, high = sorted((df_low, df_high))
        v_low = extract_topical_terms(docs, ExtractionConfig(min_df=low))
        v_high = extract_topical_terms(docs, ExtractionConfig(min_df=high))
        assert set(v_high.entries) <= set(v_low.entries)

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.text(alphabet="abcdefg .", min_size=0, max_size=60), min_size=1, max_size=6))
    def test_every_phrase_is_one_or_two_tokens(self, texts):
        docs = [BibRecord(f"D{i}", text or "fallback text", "") for i, text in enumerate(texts)]
        vocab = extract_topical_terms(docs, ExtractionConfig(min_df=1))
        for phrase, df in vocab.entries.items():
            assert 1 <= len(phrase.split(" ")) <= 2
            assert df >= 1


class TestExtractEntities:
    @pytest.fixture()
    def six_solutions(self):
        labels = {"a": "19", "b": "16", "c": "15", "d": "51", "e": "17", "f": "1"}
        out = []
        for sol_id, cid in labels.items():
            text = "".join(f"{SSCYG_RECORD.article_id}\t{cid}\n" for _ in range(1)) + "".join(
                f"PAD{i:02d}\t{cid}\n" for i in range(3)
            )
            out.append(load_cluster_solution(io.StringIO(text), sol_id, min_size=4))
        return out

    def test_sscyg_entity_set(self, six_solutions):
        vocab = extract_topical_terms([SSCYG_RECORD], ExtractionConfig(min_df=1))
        occ = extract_entities(SSCYG_RECORD, vocab, six_solutions)
        assert occ[EntityId(EntityKind.AUTHOR, "smak j")] == 1
        assert occ[EntityId(EntityKind.JOURNAL, "0001-5237")] == 1
        subjects = [e for e in occ if e.kind is EntityKind.SUBJECT]
        assert len(subjects) == 12
        assert EntityId(EntityKind.SUBJECT, "accretion, accretion disks") in occ
        clusters = sorted(e.key for e in occ if e.kind is EntityKind.CLUSTER)
        assert clusters == ["a 19", "b 16", "c 15", "d 51", "e 17", "f 1"]

    def test_no_subjects_no_solutions(self):
        record = BibRecord("R1", "dark energy", "dark energy expands", ("doe j",), "1234-5678", "J", ())
        vocab = extract_topical_terms([record], ExtractionConfig(min_df=1))
        occ = extract_entities(record, vocab, [])
        kinds = {e.kind for e in occ}
        assert kinds == {EntityKind.TERM, EntityKind.AUTHOR, EntityKind.JOURNAL}

    def test_bigram_multiplicity_retained(self):
        record = BibRecord("R1", "study", "mass transfer starts. mass transfer ends.")
        vocab = extract_topical_terms([record], ExtractionConfig(min_df=1))
        occ = extract_entities(record, vocab, [])
        assert occ[EntityId(EntityKind.TERM, "mass transfer")] == 2

    def test_absent_from_solution_is_not_an_error(self):
        sol = load_cluster_solution(io.StringIO("Z1\t1\nZ2\t1\nZ3\t1\nZ4\t1\n"), "a", min_size=4)
        record = BibRecord("R1", "dark energy", "")
        vocab = extract_topical_terms([record], ExtractionConfig(min_df=1))
        occ = extract_entities(record, vocab, [sol])
        assert not [e for e in occ if e.kind is EntityKind.CLUSTER]

    def test_deterministic(self):
        vocab = extract_topical_terms([SSCYG_RECORD], ExtractionConfig(min_df=1))
        a = extract_entities(SSCYG_RECORD, vocab, [])
        b = extract_entities(SSCYG_RECORD, vocab, [])
        assert a == b

    def test_count_consistency_over_corpus(self):
        from conftest import TOY_RECORDS

        vocab = extract_topical_terms(TOY_RECORDS, ExtractionConfig(min_df=2))
        per_article = [extract_entities(r, vocab, []) for r in TOY_RECORDS]
        total: dict[EntityId, int] = {}
        for occ in per_article:
            for e, m in occ.items():
                total[e] = total.get(e, 0) + m
        flux = EntityId(EntityKind.TERM, "magnetic flux")
        by_hand = sum(
            (r.title + " . " + r.abstract).lower().count("magnetic flux") for r in TOY_RECORDS
        )
        assert total[flux] == by_hand
