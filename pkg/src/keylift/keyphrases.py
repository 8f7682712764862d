"""Keyphrase list containers and their JSON form."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any

from .errors import KeyliftError
from .text import Phrase

EXTRACTOR_CONFIDENCE = "extractor_confidence"
INFORMATIVENESS = "informativeness"
CLUSTERED = "clustered"
ORDERINGS = (EXTRACTOR_CONFIDENCE, INFORMATIVENESS, CLUSTERED)


class MalformedListError(KeyliftError):
    """A keyphrase list file is not valid JSON or lacks required fields."""


@dataclass(frozen=True)
class Keyphrase:
    text: str
    rank: int
    score: "float | None" = None
    hit_count: "int | None" = None

    @cached_property
    def phrase(self) -> Phrase:
        return Phrase.from_text(self.text, truncate=True)

    def with_hits(self, hit_count: int) -> "Keyphrase":
        return replace(self, hit_count=hit_count)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"text": self.text, "rank": self.rank}
        if self.score is not None:
            out["score"] = self.score
        if self.hit_count is not None:
            out["hit_count"] = self.hit_count
        return out


@dataclass
class KeyphraseList:
    doc_id: str
    keyphrases: list[Keyphrase]
    ordering: str = EXTRACTOR_CONFIDENCE
    warning: "str | None" = None

    def __len__(self) -> int:
        return len(self.keyphrases)

    def __iter__(self):
        return iter(self.keyphrases)

    @property
    def phrases(self) -> list[Phrase]:
        return [kp.phrase for kp in self.keyphrases]

    @property
    def texts(self) -> list[str]:
        return [kp.text for kp in self.keyphrases]

    def derive(self, keyphrases, ordering: "str | None" = None, warning=None) -> "KeyphraseList":
        return KeyphraseList(self.doc_id, list(keyphrases), ordering or self.ordering, warning)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "doc_id": self.doc_id,
            "ordering": self.ordering,
            "keyphrases": [kp.to_dict() for kp in self.keyphrases],
        }
        if self.warning:
            out["warning"] = self.warning
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "KeyphraseList":
        try:
            ordering = data.get("ordering", EXTRACTOR_CONFIDENCE)
            if ordering not in ORDERINGS:
                raise ValueError(f"unknown ordering {ordering!r}")
            kps = []
            for i, item in enumerate(data["keyphrases"], start=1):
                text = item["text"]
                if not isinstance(text, str) or not Phrase.from_text(text, truncate=True):
                    raise ValueError(f"bad keyphrase text {text!r}")
                hits = item.get("hit_count")
                score = item.get("score")
                kps.append(
                    Keyphrase(
                        text,
                        int(item.get("rank", i)),
                        None if score is None else float(score),
                        None if hits is None else int(hits),
                    )
                )
            return cls(str(data["doc_id"]), kps, ordering, data.get("warning"))
        except (KeyError, TypeError, ValueError, KeyliftError) as exc:
            raise MalformedListError(f"malformed keyphrase list: {exc}") from exc


def dumps(obj: Any) -> str:
    """Deterministic JSON used for every artifact."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(path: "str | os.PathLike", obj: Any) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
    os.replace(tmp, path)


def read_list(path: "str | os.PathLike") -> KeyphraseList:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedListError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedListError(f"{path}: expected a JSON object")
    try:
        return KeyphraseList.from_dict(data)
    except MalformedListError as exc:
        raise MalformedListError(f"{path}: {exc}") from exc
