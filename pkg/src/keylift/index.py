"""Positional inverted index answering phrase document-frequency queries."""

from __future__ import annotations

import logging
import os
import struct
from collections import defaultdict
from pathlib import Path
from typing import BinaryIO, Iterable, Sequence

from .errors import (
    DuplicateDocumentError,
    FingerprintMismatchError,
    IndexFormatError,
    ParameterError,
)
from .text import NORMALIZATION_FINGERPRINT, TokenizedDocument, as_phrase, tokenize_document

logger = logging.getLogger(__name__)

MAGIC = b"KLIX"
FORMAT_VERSION = 1
MIN_RELIABLE_DOCS = 100

PhraseLike = "Phrase | str | Sequence[str]"


class CorpusIndex:
    """Immutable inverted index with token positions.

    ``postings[token][doc]`` is the sorted tuple of offsets at which
    ``token`` occurs in document number ``doc``. Documents are numbered in
    input order; ``doc_ids`` maps numbers back to identifiers.
    """

    def __init__(
        self,
        doc_ids: Sequence[str],
        postings: dict[str, dict[int, tuple[int, ...]]],
        fingerprint: str = NORMALIZATION_FINGERPRINT,
    ):
        if not doc_ids:
            raise ParameterError("an index needs at least one document")
        self.doc_ids = tuple(doc_ids)
        self.postings = postings
        self.fingerprint = fingerprint
        self._docs_cache: dict[tuple[str, ...], frozenset[int]] = {}

    @property
    def doc_count(self) -> int:
        return len(self.doc_ids)

    def __repr__(self) -> str:
        return f"CorpusIndex(N={self.doc_count}, vocabulary={len(self.postings)})"

    def documents(self, phrase: PhraseLike) -> frozenset[int]:
        """Numbers of the documents containing ``phrase`` contiguously."""
        tokens = as_phrase(phrase).tokens
        cached = self._docs_cache.get(tokens)
        if cached is not None:
            return cached
        result = frozenset(self._scan(tokens))
        self._docs_cache[tokens] = result
        return result

    def _scan(self, tokens: tuple[str, ...]):
        lists = []
        for tok in tokens:
            post = self.postings.get(tok)
            if not post:
                return
            lists.append(post)
        candidates = set(min(lists, key=len))
        for post in lists:
            candidates.intersection_update(post)
        for doc in candidates:
            starts = set(lists[0][doc])
            for offset, post in enumerate(lists[1:], start=1):
                starts &= {p - offset for p in post[doc]}
                if not starts:
                    break
            if starts:
                yield doc

    def doc_frequency(self, phrase: PhraseLike) -> int:
        return len(self.documents(phrase))

    def co_document_frequency(self, p: PhraseLike, q: PhraseLike) -> int:
        return len(self.documents(p) & self.documents(q))

    # persistence -----------------------------------------------------

    def save(self, path: "str | os.PathLike") -> None:
        tmp = Path(f"{path}.tmp")
        with open(tmp, "wb") as fh:
            self._write(fh)
        os.replace(tmp, path)

    def _write(self, fh: BinaryIO) -> None:
        fh.write(MAGIC)
        fh.write(struct.pack("<B", FORMAT_VERSION))
        _write_str(fh, self.fingerprint)
        fh.write(struct.pack("<I", len(self.doc_ids)))
        for doc_id in self.doc_ids:
            _write_str(fh, doc_id)
        fh.write(struct.pack("<I", len(self.postings)))
        for token in sorted(self.postings):
            _write_str(fh, token)
            docs = self.postings[token]
            fh.write(struct.pack("<I", len(docs)))
            for doc in sorted(docs):
                positions = docs[doc]
                fh.write(struct.pack(f"<II{len(positions)}I", doc, len(positions), *positions))

    @classmethod
    def load(
        cls,
        path: "str | os.PathLike",
        expected_fingerprint: "str | None" = NORMALIZATION_FINGERPRINT,
    ) -> "CorpusIndex":
        """Read an index file.

        Raises IndexFormatError for missing/corrupt files and
        FingerprintMismatchError when the stored normalization differs from
        ``expected_fingerprint`` (pass None to skip the check).
        """
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise IndexFormatError(f"cannot read index {path}: {exc}") from exc
        reader = _Reader(data)
        try:
            if reader.take(4) != MAGIC:
                raise IndexFormatError(f"{path}: bad magic bytes, not a keylift index")
            (version,) = reader.unpack("<B")
            if version != FORMAT_VERSION:
                raise IndexFormatError(f"{path}: unsupported format version {version}")
            fingerprint = reader.string()
            if expected_fingerprint is not None and fingerprint != expected_fingerprint:
                raise FingerprintMismatchError(expected_fingerprint, fingerprint)
            (n_docs,) = reader.unpack("<I")
            doc_ids = [reader.string() for _ in range(n_docs)]
            (n_tokens,) = reader.unpack("<I")
            postings: dict[str, dict[int, tuple[int, ...]]] = {}
            for _ in range(n_tokens):
                token = reader.string()
                (n_post,) = reader.unpack("<I")
                docs = {}
                for _ in range(n_post):
                    doc, n_pos = reader.unpack("<II")
                    docs[doc] = reader.unpack(f"<{n_pos}I")
                postings[token] = docs
        except (struct.error, UnicodeDecodeError) as exc:
            raise IndexFormatError(f"{path}: truncated or corrupt index ({exc})") from exc
        if reader.pos != len(data):
            raise IndexFormatError(f"{path}: trailing bytes after index data")
        if not doc_ids:
            raise IndexFormatError(f"{path}: index holds no documents")
        return cls(doc_ids, postings, fingerprint)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise struct.error("unexpected end of data")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str) -> tuple:
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def string(self) -> str:
        (n,) = self.unpack("<H")
        return self.take(n).decode("utf-8")


def _write_str(fh: BinaryIO, s: str) -> None:
    raw = s.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise ParameterError(f"string too long for index format: {s[:40]!r}...")
    fh.write(struct.pack("<H", len(raw)))
    fh.write(raw)


def build_index(docs: Iterable[TokenizedDocument]) -> CorpusIndex:
    """Build a positional index; doc_ids must be unique."""
    doc_ids: list[str] = []
    seen: set[str] = set()
    acc: dict[str, dict[int, list[int]]] = defaultdict(dict)
    for number, doc in enumerate(docs):
        if doc.doc_id in seen:
            raise DuplicateDocumentError(doc.doc_id)
        seen.add(doc.doc_id)
        doc_ids.append(doc.doc_id)
        for pos, token in enumerate(doc.tokens):
            acc[token].setdefault(number, []).append(pos)
    if not doc_ids:
        raise ParameterError("build_index needs at least one document")
    postings = {
        tok: {doc: tuple(positions) for doc, positions in docs_.items()}
        for tok, docs_ in acc.items()
    }
    return CorpusIndex(doc_ids, postings)


def read_document(path: "str | os.PathLike") -> TokenizedDocument:
    path = Path(path)
    return tokenize_document(path.stem, path.read_text(encoding="utf-8"))


def read_corpus_dir(corpus_dir: "str | os.PathLike") -> list[TokenizedDocument]:
    """Tokenize every regular, non-hidden file in ``corpus_dir`` (sorted by name)."""
    files = sorted(
        p for p in Path(corpus_dir).iterdir() if p.is_file() and not p.name.startswith(".")
    )
    return [read_document(p) for p in files]
