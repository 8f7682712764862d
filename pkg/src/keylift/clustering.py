"""Topic clustering of a document's keyphrases over PMI feature vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .index import CorpusIndex
from .keyphrases import CLUSTERED, Keyphrase, KeyphraseList
from .similarity import DEFAULT_PMI_FLOOR, pmi

DEFAULT_TARGET = 5
DEFAULT_DROP = 3


@dataclass
class SimilarityMatrix:
    """Floored PMI between every pair of keyphrases; rows are feature vectors."""

    keyphrases: KeyphraseList
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def build_similarity_matrix(
    kplist: KeyphraseList, index: CorpusIndex, floor: float = DEFAULT_PMI_FLOOR
) -> SimilarityMatrix:
    k = len(kplist)
    if k < 2:
        raise ParameterError(f"need at least 2 keyphrases to build a matrix, got {k}")
    phrases = kplist.phrases
    values = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            score = pmi(index, phrases[i], phrases[j], floor)
            values[i, j] = values[j, i] = score.value if score.defined else floor
    return SimilarityMatrix(kplist, values)


def cosine(u: Sequence[float], v: Sequence[float]) -> "float | None":
    """Cosine of the angle between u and v; None if either is the zero vector."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1 or len(u) == 0:
        raise ParameterError("cosine needs two vectors of equal non-zero dimension")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return None
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def cosine_matrix(vectors: np.ndarray) -> np.ndarray:
    """Pairwise cosines; an undefined cosine counts as -1."""
    k = len(vectors)
    out = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            c = cosine(vectors[i], vectors[j])
            out[i, j] = out[j, i] = -1.0 if c is None else c
    return out


def merge_clusters(similarity: np.ndarray, target: int) -> list[list[int]]:
    """Average-linkage agglomeration over a precomputed similarity matrix.

    Clusters stay ordered by their smallest member; the most similar pair
    is merged each step, ties going to the lexicographically smallest
    (i, j) position pair.
    """
    if target < 1:
        raise ParameterError(f"target cluster count must be >= 1, got {target}")
    k = len(similarity)
    clusters = [[i] for i in range(k)]
    # link[a][b]: sum of member-to-member similarities between clusters a and b
    link = [[float(similarity[a, b]) for b in range(k)] for a in range(k)]
    while len(clusters) > target:
        best, best_pair = None, (0, 1)
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                avg = link[i][j] / (len(clusters[i]) * len(clusters[j]))
                if best is None or avg > best:
                    best, best_pair = avg, (i, j)
        i, j = best_pair
        clusters[i] = sorted(clusters[i] + clusters[j])
        for m in range(len(clusters)):
            link[i][m] += link[j][m]
            link[m][i] = link[i][m]
        del clusters[j]
        del link[j]
        for row in link:
            del row[j]
    return clusters


@dataclass
class ClusterPartition:
    """Disjoint clusters of indices into ``keyphrases``.

    Clusters are sorted largest first (ties: larger total hit count, then
    smallest member index); members are sorted by hit count descending.
    """

    keyphrases: KeyphraseList
    clusters: list[list[int]]

    @property
    def doc_id(self) -> str:
        return self.keyphrases.doc_id

    def members(self, c: int) -> list[Keyphrase]:
        return [self.keyphrases.keyphrases[i] for i in self.clusters[c]]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.clusters]

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "clusters": [
                [{"text": kp.text, "hit_count": kp.hit_count} for kp in self.members(c)]
                for c in range(len(self.clusters))
            ],
        }


def _hits(kp: Keyphrase) -> int:
    if kp.hit_count is None:
        raise ParameterError(f"keyphrase {kp.text!r} has no hit count; annotate first")
    return kp.hit_count


def make_partition(kplist: KeyphraseList, groups: list[list[int]]) -> ClusterPartition:
    """Canonically order ``groups`` (clusters and members) into a partition."""
    kps = kplist.keyphrases
    members = [sorted(g, key=lambda i: (-_hits(kps[i]), i)) for g in groups if g]
    members.sort(key=lambda g: (-len(g), -sum(_hits(kps[i]) for i in g), min(g)))
    return ClusterPartition(kplist, members)


def agglomerative_cluster(matrix: SimilarityMatrix, target: int = DEFAULT_TARGET) -> ClusterPartition:
    """Cluster the matrix rows by cosine similarity into at most ``target`` groups."""
    groups = merge_clusters(cosine_matrix(matrix.values), target)
    return make_partition(matrix.keyphrases, groups)


def cluster_keyphrases(
    kplist: KeyphraseList,
    index: CorpusIndex,
    target: int = DEFAULT_TARGET,
    floor: float = DEFAULT_PMI_FLOOR,
) -> ClusterPartition:
    """Matrix + clustering; a list shorter than 2 becomes singleton clusters."""
    if len(kplist) < 2:
        return make_partition(kplist, [[i] for i in range(len(kplist))])
    return agglomerative_cluster(build_similarity_matrix(kplist, index, floor), target)


def _ordered(partition: ClusterPartition, cluster_ids) -> KeyphraseList:
    kps = [kp for c in cluster_ids for kp in partition.members(c)]
    return partition.keyphrases.derive(kps, CLUSTERED)


def keep_largest_cluster(partition: ClusterPartition) -> KeyphraseList:
    if not partition.clusters:
        raise ParameterError("partition has no clusters")
    return _ordered(partition, [0])


def smallest_removal_applies(
    partition: ClusterPartition, n: int = DEFAULT_DROP, min_second: int = 0
) -> bool:
    """Whether remove_smallest_clusters would actually drop anything."""
    if n <= 0 or n >= len(partition.clusters):
        return False
    second = partition.sizes()[1]
    return not (min_second > 0 and second < min_second)


def remove_smallest_clusters(
    partition: ClusterPartition, n: int = DEFAULT_DROP, min_second: int = 0
) -> KeyphraseList:
    """Drop the ``n`` smallest clusters.

    When ``min_second`` is positive and the second-largest cluster has
    fewer members, or when ``n`` is not below the cluster count, the
    original list is returned unchanged.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if not smallest_removal_applies(partition, n, min_second):
        return partition.keyphrases.derive(partition.keyphrases.keyphrases)
    return _ordered(partition, range(len(partition.clusters) - n))


def parse_keep(spec: str) -> tuple[str, int, int]:
    """Parse ``largest`` or ``drop-smallest:3[,min-second:N]``."""
    if spec == "largest":
        return "largest", 0, 0
    head, _, rest = spec.partition(",")
    name, _, n = head.partition(":")
    if name != "drop-smallest":
        raise ParameterError(f"bad --keep spec {spec!r}")
    try:
        count = int(n) if n else DEFAULT_DROP
        min_second = 0
        if rest:
            key, _, val = rest.partition(":")
            if key != "min-second":
                raise ValueError(key)
            min_second = int(val)
    except ValueError as exc:
        raise ParameterError(f"bad --keep spec {spec!r}") from exc
    return name, count, min_second
