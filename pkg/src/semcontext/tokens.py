"""Tokenization for topical-term extraction.

Rules: lowercase, split on non-alphanumerics except internal hyphens,
drop single-character tokens and pure numbers. Bigrams never span
sentence boundaries (``.``, ``?``, ``!``).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator

_SENTENCE_RE = re.compile(r"[.?!]+")
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")
_NUMBER_RE = re.compile(r"[0-9]+")

# Fixed built-in English stopword list; overridable via ExtractionConfig.
STOPWORDS = frozenset(
    """
    about above after again against all also although am among amongst an and
    any are aren as at be because been before being below between both but by
    can cannot could couldn did didn do does doesn doing don down during each
    either few for from further had hadn has hasn have haven having he her
    here hers herself him himself his how however if in into is isn it its
    itself just like may me might more most much must my myself neither no
    nor not of off on once only onto or other ought our ours ourselves out
    over own same shall she should shouldn since so some such than that the
    their theirs them themselves then there therefore these they this those
    through thus to too under until up upon us very via was wasn we were
    weren what when where whether which while who whom why will with within
    without won would wouldn you your yours yourself yourselves
    """.split()
)


def sentences(text: str) -> Iterator[str]:
    """Split ``text`` into sentence chunks on ., ? and !."""
    for chunk in _SENTENCE_RE.split(text):
        if chunk.strip():
            yield chunk


def tokenize(text: str) -> list[str]:
    """Tokens of one sentence chunk, after the drop rules."""
    out = []
    for tok in _TOKEN_RE.findall(text.lower()):
        if len(tok) < 2 or _NUMBER_RE.fullmatch(tok):
            continue
        out.append(tok)
    return out


def sentence_tokens(*texts: str) -> Iterator[list[str]]:
    """Token lists per sentence over several text fields (title, abstract)."""
    for text in texts:
        if not text:
            continue
        for sent in sentences(text):
            toks = tokenize(sent)
            if toks:
                yield toks


def candidate_phrases(token_lists: Iterable[list[str]], stopwords: frozenset[str]) -> Iterator[str]:
    """All phrase occurrences (unigrams and adjacent bigrams) in order.

    Unigrams must be non-stopwords; bigrams require both tokens non-stop.
    Yields one item per occurrence, so callers can count multiplicities.
    """
    for toks in token_lists:
        for i, tok in enumerate(toks):
            if tok not in stopwords:
                yield tok
                if i + 1 < len(toks) and toks[i + 1] not in stopwords:
                    yield f"{tok} {toks[i + 1]}"
