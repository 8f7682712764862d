"""Post-processing of extracted keyphrase lists.

Orders keyphrases by corpus hit count, prunes outliers, clusters them by
PMI similarity and scores lists against author keyphrases.
"""

from .clustering import (
    ClusterPartition,
    SimilarityMatrix,
    agglomerative_cluster,
    build_similarity_matrix,
    cosine,
    keep_largest_cluster,
    remove_smallest_clusters,
)
from .enhancer import (
    annotate_hits,
    order_by_informativeness,
    prune_extremes,
    prune_least_frequent,
    prune_threshold,
)
from .errors import (
    DuplicateDocumentError,
    FingerprintMismatchError,
    IndexFormatError,
    KeyliftError,
    ParameterError,
)
from .evaluation import (
    EvaluationReport,
    GoldStandard,
    HeuristicConfig,
    aggregate,
    evaluate_variants,
    gold_coverage,
    string_overlap,
)
from .extractor import Candidate, extract, generate_candidates, score_candidates
from .index import CorpusIndex, build_index
from .keyphrases import Keyphrase, KeyphraseList
from .similarity import PmiScore, PmiStatus, SetSimilarity, best_matches, pmi, set_similarity
from .text import Phrase, TokenizedDocument, normalize, tokenize_document

__version__ = "0.1.0"
