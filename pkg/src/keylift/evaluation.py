"""Evaluation of extracted keyphrases against author keyphrases.

Besides plain string overlap, every list-reduction variant is scored by
its mean PMI to the gold set, so the effect of each heuristic can be
compared document by document and over a collection.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .clustering import (
    DEFAULT_DROP,
    DEFAULT_TARGET,
    cluster_keyphrases,
    keep_largest_cluster,
    remove_smallest_clusters,
    smallest_removal_applies,
)
from .enhancer import (
    DEFAULT_HIGH,
    DEFAULT_LOW,
    DEFAULT_MIN_HITS,
    DEFAULT_TAIL,
    annotate_hits,
    prune_extremes,
    prune_least_frequent,
    prune_threshold,
)
from .errors import KeyliftError, ParameterError
from .index import CorpusIndex
from .keyphrases import KeyphraseList
from .similarity import DEFAULT_PMI_FLOOR, best_matches, set_similarity
from .text import MAX_PHRASE_TOKENS, Phrase, TokenizedDocument, contains_sequence, normalize, stem_fold

logger = logging.getLogger(__name__)


@dataclass
class GoldStandard:
    doc_id: str
    texts: list[str]

    def __post_init__(self):
        if not self.texts:
            raise ParameterError(f"gold standard for {self.doc_id!r} is empty")

    @property
    def phrases(self) -> list[Phrase]:
        return [Phrase.from_text(t, truncate=True) for t in self.texts]


def parse_gold(doc_id: str, text: str) -> GoldStandard:
    """One phrase per line; blank lines and ``#`` comments are skipped.

    Phrases longer than five tokens are truncated with a logged warning.
    """
    texts = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = normalize(line)
        if not tokens:
            continue
        if len(tokens) > MAX_PHRASE_TOKENS:
            logger.warning("%s: gold phrase %r truncated to %d tokens", doc_id, line, MAX_PHRASE_TOKENS)
            line = " ".join(tokens[:MAX_PHRASE_TOKENS])
        texts.append(line)
    return GoldStandard(doc_id, texts)


def read_gold(path: "str | os.PathLike", doc_id: "str | None" = None) -> GoldStandard:
    path = Path(path)
    return parse_gold(doc_id or path.stem, path.read_text(encoding="utf-8"))


def _match_count(keys_a: Sequence, keys_b: Sequence) -> int:
    """Greedy one-to-one matching of equal keys, in list order."""
    free = list(keys_b)
    matched = 0
    for key in keys_a:
        for j, other in enumerate(free):
            if other is not None and other == key:
                free[j] = None
                matched += 1
                break
    return matched


def string_overlap(extracted: Iterable, gold: "GoldStandard | Iterable") -> tuple[int, int]:
    """(exact, stemmed) match counts; each gold phrase is matched at most once."""
    ext = [_tokens(e) for e in extracted]
    gold_phrases = gold.phrases if isinstance(gold, GoldStandard) else [_tokens(g) for g in gold]
    gold_tokens = [_tokens(g) for g in gold_phrases]
    exact = _match_count(ext, gold_tokens)
    stemmed = _match_count([stem_fold(e) for e in ext], [stem_fold(g) for g in gold_tokens])
    return exact, stemmed


def _tokens(item) -> tuple[str, ...]:
    if isinstance(item, Phrase):
        return item.tokens
    if hasattr(item, "phrase"):
        return item.phrase.tokens
    return Phrase.from_text(item, truncate=True).tokens


def gold_coverage(gold: GoldStandard, doc: TokenizedDocument) -> tuple[float, float, float]:
    """Fractions of gold phrases found verbatim, only after stemming, or not at all."""
    folded_doc = stem_fold(doc.tokens)
    verbatim = variant = absent = 0
    for p in gold.phrases:
        if contains_sequence(doc.tokens, p.tokens):
            verbatim += 1
        elif contains_sequence(folded_doc, stem_fold(p.tokens)):
            variant += 1
        else:
            absent += 1
    n = verbatim + variant + absent
    return verbatim / n, variant / n, absent / n


@dataclass(frozen=True)
class HeuristicConfig:
    min_hits: int = DEFAULT_MIN_HITS
    tail: int = DEFAULT_TAIL
    low: int = DEFAULT_LOW
    high: int = DEFAULT_HIGH
    cluster_target: int = DEFAULT_TARGET
    drop_smallest: int = DEFAULT_DROP
    min_second: tuple[int, ...] = (3, 4)
    prefixes: tuple[int, ...] = (5, 10)
    pmi_floor: float = DEFAULT_PMI_FLOOR
    floor_undefined: bool = False

    def __post_init__(self):
        if not self.pmi_floor < 0:
            raise ParameterError(f"PMI floor must be negative, got {self.pmi_floor}")
        if self.cluster_target < 1:
            raise ParameterError("cluster target must be >= 1")


@dataclass
class VariantResult:
    name: str
    label: str
    size: int
    value: "float | None"
    pair_count: int = 0
    undefined_pairs: int = 0
    applied: bool = True

    @property
    def defined(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "size": self.size,
            "value": self.value,
            "pair_count": self.pair_count,
            "undefined_pairs": self.undefined_pairs,
            "applied": self.applied,
        }

    @classmethod
    def from_dict(cls, name: str, d: dict[str, Any]) -> "VariantResult":
        return cls(
            name,
            d["label"],
            int(d["size"]),
            None if d["value"] is None else float(d["value"]),
            int(d.get("pair_count", 0)),
            int(d.get("undefined_pairs", 0)),
            bool(d.get("applied", True)),
        )


@dataclass
class EvaluationReport:
    doc_id: str
    exact_matches: int
    stem_matches: int
    variants: dict[str, VariantResult]
    best_match_table: dict[str, list[str]] = field(default_factory=dict)
    coverage: "tuple[float, float, float] | None" = None

    @property
    def gold_in_text_ratio(self) -> "float | None":
        return None if self.coverage is None else self.coverage[0]

    def to_dict(self) -> dict[str, Any]:
        return {
            "doc_id": self.doc_id,
            "exact_matches": self.exact_matches,
            "stem_matches": self.stem_matches,
            "gold_in_text_ratio": self.gold_in_text_ratio,
            "coverage": None
            if self.coverage is None
            else dict(zip(("in_text", "variant_form", "absent"), self.coverage)),
            "variants": {name: v.to_dict() for name, v in self.variants.items()},
            "best_matches": self.best_match_table,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "EvaluationReport":
        try:
            cov = d.get("coverage")
            return cls(
                str(d["doc_id"]),
                int(d["exact_matches"]),
                int(d["stem_matches"]),
                {name: VariantResult.from_dict(name, v) for name, v in d["variants"].items()},
                {k: list(v) for k, v in d.get("best_matches", {}).items()},
                None if cov is None else (cov["in_text"], cov["variant_form"], cov["absent"]),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise KeyliftError(f"malformed evaluation report: {exc}") from exc


def _variant(name, label, kplist, gold_phrases, index, cfg, applied=True) -> VariantResult:
    if kplist is None or len(kplist) == 0:
        return VariantResult(name, label, 0, None, applied=applied)
    sim = set_similarity(index, kplist.phrases, gold_phrases, cfg.pmi_floor, cfg.floor_undefined)
    return VariantResult(
        name, label, len(kplist), sim.value, sim.pair_count, sim.undefined_pairs, applied
    )


def evaluate_variants(
    doc_list: KeyphraseList,
    gold: GoldStandard,
    index: CorpusIndex,
    config: "HeuristicConfig | None" = None,
    doc: "TokenizedDocument | None" = None,
    all_variants: bool = True,
) -> EvaluationReport:
    """Score the full list and every reduction variant against ``gold``.

    A variant that leaves no keyphrases (or cannot be formed) is reported
    with value None. The inputs are not modified.
    """
    cfg = config or HeuristicConfig()
    floor = cfg.pmi_floor
    if any(kp.hit_count is None for kp in doc_list):
        doc_list = annotate_hits(doc_list, index)
    gold_phrases = gold.phrases

    variants: dict[str, VariantResult] = {}

    def add(name, label, kplist, applied=True):
        variants[name] = _variant(name, label, kplist, gold_phrases, index, cfg, applied)

    add("full", "all keyphrases", doc_list)
    if all_variants:
        add("threshold", f"< {cfg.min_hits} hit counts removed", prune_threshold(doc_list, cfg.min_hits))
        add("least_frequent", f"{cfg.tail} least frequent removed", prune_least_frequent(doc_list, cfg.tail))
        label = f"{cfg.low} least and {cfg.high} most frequent removed"
        try:
            add("extremes", label, prune_extremes(doc_list, cfg.low, cfg.high))
        except ParameterError:
            add("extremes", label, None, applied=False)

        partition = cluster_keyphrases(doc_list, index, cfg.cluster_target, floor)
        add("largest_cluster", "largest cluster kept", keep_largest_cluster(partition) if len(doc_list) else None)
        for gate in (0, *cfg.min_second):
            name = "drop_smallest" if gate == 0 else f"drop_smallest_min{gate}"
            label = f"{cfg.drop_smallest} smallest clusters removed"
            if gate:
                label += f" (2nd cluster >= {gate})"
            add(
                name,
                label,
                remove_smallest_clusters(partition, cfg.drop_smallest, gate),
                applied=smallest_removal_applies(partition, cfg.drop_smallest, gate),
            )

        by_rank = sorted(doc_list, key=lambda kp: kp.rank)
        for n in cfg.prefixes:
            add(
                f"prefix_{n}",
                f"first {n} extracted",
                doc_list.derive(by_rank[:n]),
                applied=len(by_rank) >= n,
            )

    exact, stemmed = string_overlap(doc_list, gold)
    table = {}
    if len(doc_list):
        table = {
            str(g): [str(e) for e in matches]
            for g, matches in best_matches(index, gold_phrases, doc_list.phrases, floor).items()
        }
    coverage = gold_coverage(gold, doc) if doc is not None else None
    return EvaluationReport(doc_list.doc_id, exact, stemmed, variants, table, coverage)


@dataclass
class AggregateRow:
    name: str
    label: str
    mean: "float | None"
    defined: int
    skipped: int
    applied: int
    mean_size: float
    full_when_applied: "float | None"


@dataclass
class AggregateTable:
    doc_ids: list[str]
    rows: list[AggregateRow]
    per_doc: dict[str, list["float | None"]]

    def to_tsv(self) -> str:
        def fmt(x):
            return "UNDEFINED" if x is None else f"{x:.2f}"

        header = ["Document", *(r.label for r in self.rows)]
        lines = ["\t".join(header)]
        for i, doc_id in enumerate(self.doc_ids):
            lines.append("\t".join([doc_id, *(fmt(self.per_doc[r.name][i]) for r in self.rows)]))
        n = len(self.doc_ids)
        lines.append("\t".join([f"Average over {n} documents", *(fmt(r.mean) for r in self.rows)]))
        lines.append("\t".join(["Undefined (skipped)", *(str(r.skipped) for r in self.rows)]))
        lines.append("\t".join(["# of documents applied", *(str(r.applied) for r in self.rows)]))
        lines.append(
            "\t".join(["Similarity before removal (applied)", *(fmt(r.full_when_applied) for r in self.rows)])
        )
        lines.append("\t".join(["Average number of keyphrases", *(f"{r.mean_size:.2f}" for r in self.rows)]))
        return "\n".join(lines) + "\n"


def _mean(values: Sequence[float]) -> "float | None":
    return math.fsum(values) / len(values) if values else None


def aggregate(reports: Sequence[EvaluationReport]) -> AggregateTable:
    """Per-variant mean over documents, each document weighted equally.

    Undefined cells are skipped and counted.
    """
    if not reports:
        raise ParameterError("aggregate needs at least one report")
    names: list[str] = []
    labels: dict[str, str] = {}
    for rep in reports:
        for name, v in rep.variants.items():
            if name not in labels:
                names.append(name)
                labels[name] = v.label
    rows = []
    per_doc: dict[str, list] = {}
    for name in names:
        cells = [rep.variants.get(name) for rep in reports]
        values = [c.value for c in cells if c is not None and c.defined]
        applied = [
            rep for rep, c in zip(reports, cells) if c is not None and c.applied
        ]
        full_vals = [
            rep.variants["full"].value
            for rep in applied
            if "full" in rep.variants and rep.variants["full"].defined
        ]
        sizes = [c.size for c in cells if c is not None]
        per_doc[name] = [None if c is None else c.value for c in cells]
        rows.append(
            AggregateRow(
                name,
                labels[name],
                _mean(values),
                len(values),
                len(reports) - len(values),
                len(applied),
                math.fsum(sizes) / len(sizes) if sizes else 0.0,
                _mean(full_vals),
            )
        )
    return AggregateTable([r.doc_id for r in reports], rows, per_doc)
