"""Corpus hit counts, general-to-specific ordering and list pruning."""

from __future__ import annotations

from .errors import ParameterError
from .index import CorpusIndex
from .keyphrases import INFORMATIVENESS, Keyphrase, KeyphraseList

DEFAULT_MIN_HITS = 100
DEFAULT_TAIL = 5
DEFAULT_LOW, DEFAULT_HIGH = 3, 2


def annotate_hits(kplist: KeyphraseList, index: CorpusIndex) -> KeyphraseList:
    """Fill hit_count with each phrase's document frequency; order unchanged."""
    return kplist.derive(
        [kp.with_hits(index.doc_frequency(kp.phrase)) for kp in kplist], warning=kplist.warning
    )


def _hits(kp: Keyphrase) -> int:
    if kp.hit_count is None:
        raise ParameterError(f"keyphrase {kp.text!r} has no hit count; annotate first")
    return kp.hit_count


def order_by_informativeness(kplist: KeyphraseList) -> KeyphraseList:
    """Most general (highest hit count) first; ties keep extractor rank order."""
    ordered = sorted(kplist, key=lambda kp: (-_hits(kp), kp.rank))
    return kplist.derive(ordered, INFORMATIVENESS, kplist.warning)


def _least_first(kps: list[Keyphrase]) -> list[Keyphrase]:
    # among equal counts the less confident (larger rank) goes first
    return sorted(kps, key=lambda kp: (_hits(kp), -kp.rank))


def _most_first(kps: list[Keyphrase]) -> list[Keyphrase]:
    return sorted(kps, key=lambda kp: (-_hits(kp), -kp.rank))


def _without(kplist: KeyphraseList, removed: list[Keyphrase]) -> KeyphraseList:
    gone = {id(kp) for kp in removed}
    kept = [kp for kp in kplist if id(kp) not in gone]
    warning = "all keyphrases removed" if kplist.keyphrases and not kept else None
    return kplist.derive(kept, warning=warning)


def prune_threshold(kplist: KeyphraseList, min_hits: int = DEFAULT_MIN_HITS) -> KeyphraseList:
    """Keep keyphrases with hit_count >= min_hits, preserving order."""
    return _without(kplist, [kp for kp in kplist if _hits(kp) < min_hits])


def prune_least_frequent(kplist: KeyphraseList, n: int = DEFAULT_TAIL) -> KeyphraseList:
    """Drop the ``n`` keyphrases with the smallest hit counts."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return _without(kplist, _least_first(kplist.keyphrases)[:n])


def prune_extremes(
    kplist: KeyphraseList, low: int = DEFAULT_LOW, high: int = DEFAULT_HIGH
) -> KeyphraseList:
    """Drop the ``low`` rarest and then the ``high`` most frequent keyphrases.

    The low pool is chosen first, so a phrase that would qualify for both
    is removed once and counted against it.
    """
    if low < 0 or high < 0:
        raise ParameterError("low and high must be >= 0")
    if low + high > len(kplist):
        raise ParameterError(
            f"cannot remove {low}+{high} keyphrases from a list of {len(kplist)}"
        )
    low_pool = _least_first(kplist.keyphrases)[:low]
    taken = {id(kp) for kp in low_pool}
    rest = [kp for kp in kplist if id(kp) not in taken]
    high_pool = _most_first(rest)[:high]
    return _without(kplist, low_pool + high_pool)


def parse_prune(spec: str) -> tuple[str, tuple[int, ...]]:
    """Parse ``threshold:100``, ``tail:5`` or ``extremes:3,2``."""
    name, _, args = spec.partition(":")
    try:
        values = tuple(int(a) for a in args.split(",")) if args else ()
    except ValueError as exc:
        raise ParameterError(f"bad prune spec {spec!r}") from exc
    arity = {"threshold": (0, 1), "tail": (0, 1), "extremes": (0, 2)}
    if name not in arity or len(values) not in arity[name]:
        raise ParameterError(f"bad prune spec {spec!r}")
    return name, values


def apply_prune(kplist: KeyphraseList, spec: str) -> KeyphraseList:
    name, values = parse_prune(spec)
    if name == "threshold":
        return prune_threshold(kplist, *values)
    if name == "tail":
        return prune_least_frequent(kplist, *values)
    return prune_extremes(kplist, *values)
