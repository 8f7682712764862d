"""Per-document stages shared by the CLI subcommands and the batch pipeline."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .clustering import DEFAULT_TARGET, cluster_keyphrases, keep_largest_cluster, parse_keep, remove_smallest_clusters
from .enhancer import annotate_hits, apply_prune, order_by_informativeness
from .errors import ParameterError
from .evaluation import GoldStandard, HeuristicConfig, evaluate_variants, read_gold
from .extractor import DEFAULT_K, MAX_K, MIN_K, extract
from .index import CorpusIndex, read_document
from .keyphrases import KeyphraseList, write_json
from .similarity import DEFAULT_PMI_FLOOR
from .text import TokenizedDocument, load_stoplist

logger = logging.getLogger(__name__)


def enhance_list(
    kplist: KeyphraseList, index: CorpusIndex, order: bool = True, prune: "str | None" = None
) -> KeyphraseList:
    out = annotate_hits(kplist, index)
    if order:
        out = order_by_informativeness(out)
    if prune:
        out = apply_prune(out, prune)
    return out


def cluster_document(
    kplist: KeyphraseList,
    index: CorpusIndex,
    target: int = DEFAULT_TARGET,
    keep: "str | None" = None,
    floor: float = DEFAULT_PMI_FLOOR,
) -> dict[str, Any]:
    """Cluster report as a JSON-ready dict, optionally with a reduced list."""
    annotated = annotate_hits(kplist, index)
    partition = cluster_keyphrases(annotated, index, target, floor)
    out = partition.to_dict()
    if keep:
        name, n, min_second = parse_keep(keep)
        if name == "largest":
            kept = keep_largest_cluster(partition) if partition.clusters else annotated.derive([])
        else:
            kept = remove_smallest_clusters(partition, n, min_second)
        out["kept"] = {"spec": keep, **kept.to_dict()}
    return out


@dataclass
class PipelineConfig:
    index_path: Path
    out_dir: Path
    k: int = DEFAULT_K
    pmi_floor: float = DEFAULT_PMI_FLOOR
    prune: "str | None" = None
    cluster_target: int = DEFAULT_TARGET
    keep: "str | None" = None
    stoplist_path: "str | None" = None
    jobs: int = 1
    heuristics: HeuristicConfig = field(default_factory=HeuristicConfig)

    def __post_init__(self):
        if not MIN_K <= self.k <= MAX_K:
            raise ParameterError(f"k must be in [{MIN_K}, {MAX_K}], got {self.k}")
        if self.cluster_target < 1:
            raise ParameterError("cluster target must be >= 1")
        if not self.pmi_floor < 0:
            raise ParameterError("PMI floor must be negative")
        if self.jobs < 1:
            raise ParameterError("jobs must be >= 1")


def artifact_paths(out_dir: Path, doc_id: str) -> dict[str, Path]:
    return {
        stage: out_dir / f"{doc_id}.{stage}.json"
        for stage in ("extracted", "enhanced", "clusters", "report")
    }


def process_document(
    doc: TokenizedDocument,
    index: CorpusIndex,
    config: PipelineConfig,
    stoplist: frozenset[str],
    gold: "GoldStandard | None" = None,
) -> list[Path]:
    paths = artifact_paths(config.out_dir, doc.doc_id)
    extracted = extract(doc, index, config.k, stoplist)
    write_json(paths["extracted"], extracted.to_dict())
    write_json(paths["enhanced"], enhance_list(extracted, index, True, config.prune).to_dict())
    write_json(
        paths["clusters"],
        cluster_document(extracted, index, config.cluster_target, config.keep, config.pmi_floor),
    )
    written = [paths["extracted"], paths["enhanced"], paths["clusters"]]
    if gold is not None:
        report = evaluate_variants(extracted, gold, index, config.heuristics, doc=doc)
        write_json(paths["report"], report.to_dict())
        written.append(paths["report"])
    return written


def run_pipeline(
    config: PipelineConfig,
    doc_paths: Sequence["str | os.PathLike"],
    gold_paths: Sequence["str | os.PathLike"] = (),
    index: "CorpusIndex | None" = None,
) -> list[Path]:
    """Run extract, enhance, cluster and (with gold) evaluate for each document.

    Gold files are paired with documents by file stem. Returns the written
    artifact paths in document order.
    """
    if index is None:
        index = CorpusIndex.load(config.index_path)
    stoplist = load_stoplist(config.stoplist_path)
    golds = {Path(g).stem: read_gold(g) for g in gold_paths}
    docs = [read_document(p) for p in doc_paths]
    if len({d.doc_id for d in docs}) != len(docs):
        raise ParameterError("document file stems must be unique")
    config.out_dir.mkdir(parents=True, exist_ok=True)

    def work(doc):
        return process_document(doc, index, config, stoplist, golds.get(doc.doc_id))

    if config.jobs == 1:
        results = [work(d) for d in docs]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(work, docs))
    return [p for paths in results for p in paths]
