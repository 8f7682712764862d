"""Command-line entry point: ``keylift <subcommand>``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import fixtures
from .errors import FingerprintMismatchError, IndexFormatError, KeyliftError
from .evaluation import EvaluationReport, HeuristicConfig, aggregate, evaluate_variants, read_gold
from .extractor import DEFAULT_K, extract
from .index import MIN_RELIABLE_DOCS, CorpusIndex, build_index, read_corpus_dir, read_document
from .keyphrases import MalformedListError, dumps, read_list, write_json
from .pipeline import PipelineConfig, cluster_document, enhance_list, run_pipeline
from .similarity import DEFAULT_PMI_FLOOR, PmiStatus, pmi
from .text import Phrase, load_stoplist

log = logging.getLogger("keylift")

EXIT_OK, EXIT_ERROR, EXIT_INDEX, EXIT_LIST, EXIT_FINGERPRINT = 0, 1, 2, 3, 4


def _emit(obj, out: "str | None") -> None:
    if out:
        write_json(out, obj)
    else:
        sys.stdout.write(dumps(obj))


def _floor(value: str) -> float:
    f = float(value)
    if not f < 0:
        raise argparse.ArgumentTypeError("PMI floor must be negative")
    return f


def _phrase(text: str) -> Phrase:
    try:
        return Phrase.from_text(text)
    except KeyliftError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _extremes(value: str) -> tuple[int, int]:
    low, _, high = value.partition(",")
    return int(low), int(high)


def _heuristics(args) -> HeuristicConfig:
    low, high = args.extremes
    return HeuristicConfig(
        min_hits=args.min_hits,
        tail=args.tail,
        low=low,
        high=high,
        cluster_target=args.clusters,
        pmi_floor=args.pmi_floor,
        floor_undefined=args.floor_undefined,
    )


# subcommands --------------------------------------------------------------


def cmd_index_build(args) -> int:
    docs = read_corpus_dir(args.corpus_dir)
    index = build_index(docs)
    if index.doc_count < MIN_RELIABLE_DOCS:
        log.warning(
            "only %d documents indexed; probability estimates are unreliable below %d",
            index.doc_count,
            MIN_RELIABLE_DOCS,
        )
    index.save(args.output)
    print(f"indexed {index.doc_count} documents, {len(index.postings)} terms -> {args.output}")
    return EXIT_OK


def cmd_counts(args) -> int:
    index = CorpusIndex.load(args.index_file)
    if args.with_phrase is None:
        print(index.doc_frequency(args.phrase))
    else:
        print(index.co_document_frequency(args.phrase, args.with_phrase))
    return EXIT_OK


def cmd_pmi(args) -> int:
    index = CorpusIndex.load(args.index_file)
    score = pmi(index, args.phrase1, args.phrase2, args.pmi_floor)
    if score.status is PmiStatus.UNDEFINED:
        print("UNDEFINED")
    elif score.status is PmiStatus.NEG_INF:
        print(f"{score.value!r} NEG_INF")
    else:
        print(repr(score.value))
    return EXIT_OK


def cmd_extract(args) -> int:
    index = CorpusIndex.load(args.index_file)
    doc = read_document(args.doc_file)
    result = extract(doc, index, args.k, load_stoplist(args.stoplist))
    if result.warning:
        log.warning("%s: %s", doc.doc_id, result.warning)
    _emit(result.to_dict(), args.output)
    return EXIT_OK


def cmd_enhance(args) -> int:
    index = CorpusIndex.load(args.index_file)
    result = enhance_list(read_list(args.list_file), index, args.order, args.prune)
    if result.warning:
        log.warning("%s: %s", result.doc_id, result.warning)
    _emit(result.to_dict(), args.output)
    return EXIT_OK


def cmd_cluster(args) -> int:
    index = CorpusIndex.load(args.index_file)
    _emit(cluster_document(read_list(args.list_file), index, args.k, args.keep, args.pmi_floor), args.output)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    index = CorpusIndex.load(args.index_file)
    kplist = read_list(args.list_file)
    gold = read_gold(args.gold, kplist.doc_id)
    doc = read_document(args.doc) if args.doc else None
    report = evaluate_variants(kplist, gold, index, _heuristics(args), doc=doc, all_variants=args.all_variants)
    _emit(report.to_dict(), args.output)
    return EXIT_OK


def cmd_aggregate(args) -> int:
    reports = []
    for path in args.reports:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedListError(f"{path}: {exc}") from exc
        reports.append(EvaluationReport.from_dict(data))
    tsv = aggregate(reports).to_tsv()
    if args.output:
        Path(args.output).write_text(tsv, encoding="utf-8")
    else:
        sys.stdout.write(tsv)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    config = PipelineConfig(
        index_path=Path(args.index_file),
        out_dir=Path(args.output),
        k=args.k,
        pmi_floor=args.pmi_floor,
        prune=args.prune,
        cluster_target=args.clusters,
        keep=args.keep,
        stoplist_path=args.stoplist,
        jobs=args.jobs,
        heuristics=_heuristics(args),
    )
    if not config.index_path.exists():
        raise IndexFormatError(f"index not found: {config.index_path}")
    if not args.docs:
        print("0 documents")
        return EXIT_OK
    written = run_pipeline(config, args.docs, args.gold)
    print(f"{len(args.docs)} documents, {len(written)} artifacts -> {config.out_dir}")
    return EXIT_OK


def cmd_seed_fixtures(args) -> int:
    out = fixtures.write_fixtures(args.out_dir, args.docs, args.seed)
    if args.index:
        index = build_index(read_corpus_dir(out / "corpus"))
        index.save(out / "index.klix")
    print(f"wrote {args.docs} documents to {out}")
    return EXIT_OK


# parser -------------------------------------------------------------------


def _add_floor(p):
    p.add_argument("--pmi-floor", type=_floor, default=DEFAULT_PMI_FLOOR,
                   help="value used for pairs that never co-occur (default %(default)s)")


def _add_heuristics(p):
    p.add_argument("--min-hits", type=int, default=100)
    p.add_argument("--tail", type=int, default=5)
    p.add_argument("--extremes", type=_extremes, default=(3, 2), metavar="LOW,HIGH")
    p.add_argument("--clusters", type=int, default=5)
    p.add_argument("--floor-undefined", action="store_true",
                   help="average pairs with an unseen phrase at the PMI floor instead of skipping them")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="keylift", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="inverted index operations")
    isub = p.add_subparsers(dest="index_command", required=True)
    b = isub.add_parser("build", help="index a directory of text files")
    b.add_argument("corpus_dir")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_index_build)

    p = sub.add_parser("counts", help="document frequency of a phrase (or co-frequency)")
    p.add_argument("index_file")
    p.add_argument("--phrase", type=_phrase, required=True)
    p.add_argument("--with", dest="with_phrase", type=_phrase)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("pmi", help="PMI between two phrases")
    p.add_argument("index_file")
    p.add_argument("phrase1", type=_phrase)
    p.add_argument("phrase2", type=_phrase)
    _add_floor(p)
    p.set_defaults(func=cmd_pmi)

    p = sub.add_parser("extract", help="extract a ranked keyphrase list")
    p.add_argument("index_file")
    p.add_argument("doc_file")
    p.add_argument("-k", type=int, default=DEFAULT_K)
    p.add_argument("--stoplist")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("enhance", help="add hit counts, order and prune a list")
    p.add_argument("index_file")
    p.add_argument("list_file")
    p.add_argument("--order", action="store_true", help="sort general to specific")
    p.add_argument("--prune", metavar="SPEC", help="threshold:100 | tail:5 | extremes:3,2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("cluster", help="cluster a list by PMI similarity")
    p.add_argument("index_file")
    p.add_argument("list_file")
    p.add_argument("--k", type=int, default=5, help="target number of clusters")
    p.add_argument("--keep", metavar="SPEC", help="largest | drop-smallest:3[,min-second:N]")
    _add_floor(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="compare a list with a gold standard")
    p.add_argument("index_file")
    p.add_argument("list_file")
    p.add_argument("--gold", required=True)
    p.add_argument("--doc", help="source document, for gold coverage")
    p.add_argument("--all-variants", action="store_true")
    _add_floor(p)
    _add_heuristics(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("aggregate", help="TSV table over evaluation reports")
    p.add_argument("reports", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("pipeline", help="extract, enhance, cluster and evaluate documents")
    p.add_argument("index_file")
    p.add_argument("docs", nargs="*")
    p.add_argument("--gold", nargs="+", default=[], help="gold files, paired by file stem")
    p.add_argument("-k", type=int, default=DEFAULT_K)
    p.add_argument("--prune", metavar="SPEC")
    p.add_argument("--keep", metavar="SPEC")
    p.add_argument("--stoplist")
    p.add_argument("--jobs", type=int, default=1)
    _add_floor(p)
    _add_heuristics(p)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("seed-fixtures", help="write the synthetic fixture corpus")
    p.add_argument("out_dir")
    p.add_argument("--docs", type=int, default=20)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--index", action="store_true", help="also build out_dir/index.klix")
    p.set_defaults(func=cmd_seed_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="keylift: %(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except FingerprintMismatchError as exc:
        log.error("%s", exc)
        return EXIT_FINGERPRINT
    except IndexFormatError as exc:
        log.error("%s", exc)
        return EXIT_INDEX
    except MalformedListError as exc:
        log.error("%s", exc)
        return EXIT_LIST
    except (KeyliftError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
