"""Pointwise mutual information from document counts, and set similarity."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .index import CorpusIndex
from .text import Phrase, as_phrase

DEFAULT_PMI_FLOOR = -10.0


class PmiStatus(enum.Enum):
    DEFINED = "defined"
    NEG_INF = "neg_inf"  # both phrases seen, never together
    UNDEFINED = "undefined"  # at least one phrase unseen


@dataclass(frozen=True)
class PmiScore:
    """PMI in log2 units.

    ``value`` is None only for UNDEFINED. NEG_INF scores carry the floor.
    """

    value: "float | None"
    status: PmiStatus

    @property
    def defined(self) -> bool:
        return self.status is not PmiStatus.UNDEFINED


@dataclass(frozen=True)
class SetSimilarity:
    value: "float | None"
    pair_count: int
    undefined_pairs: int

    @property
    def defined(self) -> bool:
        return self.value is not None


def pmi(
    index: CorpusIndex, p, q, floor: float = DEFAULT_PMI_FLOOR
) -> PmiScore:
    """log2(p(p,q) / (p(p) p(q))) with document-level probabilities.

    Values below ``floor`` (including the zero co-occurrence case) are
    raised to ``floor``.
    """
    n = index.doc_count
    df_p = index.doc_frequency(p)
    df_q = index.doc_frequency(q)
    if df_p == 0 or df_q == 0:
        return PmiScore(None, PmiStatus.UNDEFINED)
    co = index.co_document_frequency(p, q)
    if co == 0:
        return PmiScore(floor, PmiStatus.NEG_INF)
    value = math.log2(co * n / (df_p * df_q))
    return PmiScore(max(value, floor), PmiStatus.DEFINED)


def _check_nonempty(name: str, phrases: Sequence) -> None:
    if not phrases:
        raise ParameterError(f"{name} set must be non-empty")


def set_similarity(
    index: CorpusIndex,
    extracted: Sequence,
    gold: Sequence,
    floor: float = DEFAULT_PMI_FLOOR,
    floor_undefined: bool = False,
) -> SetSimilarity:
    """Mean PMI over every (extracted, gold) pair.

    Pairs involving an unseen phrase are left out of the mean and counted
    in ``undefined_pairs``; never-co-occurring pairs contribute ``floor``.
    With ``floor_undefined`` the unseen pairs are averaged at ``floor`` too
    (still reported in ``undefined_pairs``).
    """
    _check_nonempty("extracted", extracted)
    _check_nonempty("gold", gold)
    values = []
    undefined = 0
    for e in extracted:
        for g in gold:
            score = pmi(index, e, g, floor)
            if score.defined:
                values.append(score.value)
            else:
                undefined += 1
                if floor_undefined:
                    values.append(floor)
    if not values:
        return SetSimilarity(None, 0, undefined)
    return SetSimilarity(math.fsum(values) / len(values), len(values), undefined)


def best_matches(
    index: CorpusIndex,
    gold: Sequence,
    extracted: Sequence,
    floor: float = DEFAULT_PMI_FLOOR,
) -> dict[Phrase, list[Phrase]]:
    """For each gold phrase, the extracted phrases with the highest positive PMI.

    Ties at the maximum are all listed in input order; a gold phrase whose
    best PMI is not strictly positive maps to an empty list.
    """
    _check_nonempty("gold", gold)
    _check_nonempty("extracted", extracted)
    ext = [as_phrase(e) for e in extracted]
    table: dict[Phrase, list[Phrase]] = {}
    for g in map(as_phrase, gold):
        scored = [(pmi(index, e, g, floor), e) for e in ext]
        values = [s.value for s, _ in scored if s.defined]
        best = max(values, default=None)
        if best is None or best <= 0:
            table[g] = []
        else:
            table[g] = [e for s, e in scored if s.defined and s.value == best]
    return table
