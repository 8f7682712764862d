"""Baseline keyphrase extraction from TF x IDF and first-occurrence position.

Stands in for an external extraction system: downstream enhancement and
evaluation only consume the ranked list it produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import ParameterError
from .index import CorpusIndex
from .keyphrases import EXTRACTOR_CONFIDENCE, Keyphrase, KeyphraseList
from .text import Phrase, TokenizedDocument, contains_sequence, load_stoplist, stem_fold

MAX_CANDIDATE_TOKENS = 3
MIN_K, MAX_K, DEFAULT_K = 3, 30, 15


@dataclass(frozen=True)
class Candidate:
    phrase: Phrase
    term_frequency: int
    first_position: int
    doc_length: int
    score: "float | None" = None

    @property
    def text(self) -> str:
        return str(self.phrase)


def _has_alpha(tokens: Iterable[str]) -> bool:
    return any(ch.isalpha() for tok in tokens for ch in tok)


def generate_candidates(
    doc: TokenizedDocument, stoplist: "frozenset[str] | set[str]"
) -> list[Candidate]:
    """All 1-3 token runs inside a sentence, not starting or ending on a stopword.

    Returned in order of first occurrence (then by phrase).
    """
    tf: dict[tuple[str, ...], int] = {}
    first: dict[tuple[str, ...], int] = {}
    for start, sentence in doc.sentences():
        for i in range(len(sentence)):
            for n in range(1, MAX_CANDIDATE_TOKENS + 1):
                gram = sentence[i : i + n]
                if len(gram) < n:
                    break
                if gram[0] in stoplist or gram[-1] in stoplist or not _has_alpha(gram):
                    continue
                tf[gram] = tf.get(gram, 0) + 1
                first.setdefault(gram, start + i)
    n_tokens = len(doc)
    cands = [
        Candidate(Phrase(gram), tf[gram], first[gram], n_tokens) for gram in tf
    ]
    cands.sort(key=lambda c: (c.first_position, c.phrase.tokens))
    return cands


def candidate_score(tf: int, first_position: int, doc_length: int, df: int, n_docs: int) -> float:
    tfidf = (tf / doc_length) * math.log2((n_docs + 1) / (df + 1))
    return tfidf * (1 - first_position / doc_length)


def score_candidates(cands: Iterable[Candidate], index: CorpusIndex) -> list[Candidate]:
    n = index.doc_count
    return [
        replace(
            c,
            score=candidate_score(
                c.term_frequency, c.first_position, c.doc_length, index.doc_frequency(c.phrase), n
            ),
        )
        for c in cands
    ]


def _ranking_key(c: Candidate):
    return (-c.score, c.first_position, c.phrase.tokens)


def _dominated(c: Candidate, kept: list[Candidate]) -> bool:
    folded = stem_fold(c.phrase.tokens)
    for better in kept:
        if stem_fold(better.phrase.tokens) == folded:
            return True
        if (
            len(better.phrase) > len(c.phrase)
            and better.term_frequency == c.term_frequency
            and contains_sequence(better.phrase.tokens, c.phrase.tokens)
        ):
            return True
    return False


def extract(
    doc: TokenizedDocument,
    index: CorpusIndex,
    k: int = DEFAULT_K,
    stoplist: "frozenset[str] | None" = None,
) -> KeyphraseList:
    """Top-``k`` candidates by score after removing near-duplicates.

    Ties go to the earlier first occurrence, then the lexicographically
    smaller phrase. Fewer than ``k`` survivors gives a shorter list with a
    warning set.
    """
    if not MIN_K <= k <= MAX_K:
        raise ParameterError(f"k must be in [{MIN_K}, {MAX_K}], got {k}")
    if stoplist is None:
        stoplist = load_stoplist()
    ranked = sorted(score_candidates(generate_candidates(doc, stoplist), index), key=_ranking_key)
    kept: list[Candidate] = []
    for c in ranked:
        if len(kept) == k:
            break
        if not _dominated(c, kept):
            kept.append(c)
    warning = None
    if len(kept) < k:
        warning = f"short list: {len(kept)} of {k} keyphrases"
    keyphrases = [Keyphrase(c.text, r, c.score) for r, c in enumerate(kept, start=1)]
    return KeyphraseList(doc.doc_id, keyphrases, EXTRACTOR_CONFIDENCE, warning)
