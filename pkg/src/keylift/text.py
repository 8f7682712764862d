"""Text normalization, phrases, stoplists and stem folding."""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from nltk.stem import PorterStemmer

from .errors import ParameterError

MAX_PHRASE_TOKENS = 5
SENTENCE_BREAK_CHARS = frozenset(".!?:")
STOPLIST_ENV = "KEYLIFT_STOPLIST"

# Bump whenever normalize() changes behaviour: stored indexes become invalid.
NORMALIZATION_FINGERPRINT = "lower+strip-PSC+ws-split/v1"

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def _keep(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "LMN"


def normalize(text: str) -> list[str]:
    """Lowercase, drop punctuation/symbol/control characters, split on whitespace.

    >>> normalize("ExPASy Needs Your Help!")
    ['expasy', 'needs', 'your', 'help']
    """
    out = []
    for ch in text.lower():
        if ch.isspace():
            out.append(" ")
        elif _keep(ch):
            out.append(ch)
    return "".join(out).split()


@dataclass(frozen=True, order=True)
class Phrase:
    """A normalized token sequence of 1 to 5 tokens."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.tokens) <= MAX_PHRASE_TOKENS:
            raise ParameterError(
                f"phrase must have 1..{MAX_PHRASE_TOKENS} tokens, got {len(self.tokens)}"
            )

    @classmethod
    def from_text(cls, text: str, truncate: bool = False) -> "Phrase":
        tokens = normalize(text)
        if truncate:
            tokens = tokens[:MAX_PHRASE_TOKENS]
        return cls(tuple(tokens))

    def __str__(self) -> str:
        return " ".join(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def as_phrase(p: "Phrase | str | Sequence[str]") -> Phrase:
    if isinstance(p, Phrase):
        return p
    if isinstance(p, str):
        return Phrase.from_text(p)
    return Phrase(tuple(p))


@dataclass(frozen=True)
class TokenizedDocument:
    """A document as normalized tokens.

    ``breaks`` holds the token offsets that start a new sentence; phrases
    used as extraction candidates never straddle one.
    """

    doc_id: str
    tokens: tuple[str, ...]
    breaks: frozenset[int] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.tokens)

    def sentences(self) -> list[tuple[int, tuple[str, ...]]]:
        """Split into (start_offset, tokens) runs at sentence breaks."""
        cuts = sorted(b for b in self.breaks if 0 < b < len(self.tokens))
        bounds = [0, *cuts, len(self.tokens)]
        return [
            (a, self.tokens[a:b]) for a, b in zip(bounds, bounds[1:]) if b > a
        ]


def tokenize_document(doc_id: str, text: str) -> TokenizedDocument:
    """Normalize ``text`` and record sentence breaks.

    The token sequence equals ``normalize(text)``. A break falls after any
    whitespace-delimited chunk whose trailing punctuation contains one of
    ``. ! ? :``, before a chunk whose leading punctuation does, and at
    every newline.
    """
    tokens: list[str] = []
    breaks: set[int] = set()
    for line in text.splitlines():
        if tokens:
            breaks.add(len(tokens))
        for chunk in line.split():
            norm = normalize(chunk)
            kept = [i for i, ch in enumerate(chunk) if _keep(ch)]
            if not kept:
                if SENTENCE_BREAK_CHARS.intersection(chunk):
                    breaks.add(len(tokens))
                continue
            if SENTENCE_BREAK_CHARS.intersection(chunk[: kept[0]]):
                breaks.add(len(tokens))
            tokens.extend(norm)
            if SENTENCE_BREAK_CHARS.intersection(chunk[kept[-1] + 1 :]):
                breaks.add(len(tokens))
    breaks = {b for b in breaks if 0 < b < len(tokens)}
    return TokenizedDocument(doc_id, tuple(tokens), frozenset(breaks))


@lru_cache(maxsize=65536)
def stem(token: str) -> str:
    return _stemmer.stem(token)


def stem_fold(tokens: Iterable[str]) -> tuple[str, ...]:
    """Porter-stem every token; used for duplicate detection and matching only."""
    return tuple(stem(t) for t in tokens)


def contains_sequence(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    n = len(needle)
    if n == 0:
        return True
    needle = tuple(needle)
    return any(
        tuple(haystack[i : i + n]) == needle for i in range(len(haystack) - n + 1)
    )


def default_stoplist_text() -> str:
    return resources.files("keylift").joinpath("data/stoplist.txt").read_text("utf-8")


def parse_stoplist(text: str) -> frozenset[str]:
    words: set[str] = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.update(normalize(line))
    return frozenset(words)


def load_stoplist(path: "str | os.PathLike | None" = None) -> frozenset[str]:
    """Load a stoplist: explicit path, else $KEYLIFT_STOPLIST, else the bundled list."""
    path = path or os.environ.get(STOPLIST_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return parse_stoplist(fh.read())
    return parse_stoplist(default_stoplist_text())
