"""Brute-force reference implementations used only by the tests.

Nothing here calls into the package's index, similarity or clustering
code, so agreement is evidence rather than tautology.
"""

import math
import re

from nltk.stem import PorterStemmer

_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def contains(tokens, phrase):
    n = len(phrase)
    return any(list(tokens[i : i + n]) == list(phrase) for i in range(len(tokens) - n + 1))


def scan_df(corpus, phrase):
    """corpus: list of token lists."""
    return sum(1 for doc in corpus if contains(doc, phrase))


def scan_co_df(corpus, p, q):
    return sum(1 for doc in corpus if contains(doc, p) and contains(doc, q))


def scan_pmi(corpus, p, q, floor=-10.0):
    n = len(corpus)
    a, b = scan_df(corpus, p), scan_df(corpus, q)
    if a == 0 or b == 0:
        return None
    c = scan_co_df(corpus, p, q)
    if c == 0:
        return floor
    return max(math.log2((c / n) / ((a / n) * (b / n))), floor)


def pair_mean(corpus, A, B, floor=-10.0):
    vals = [scan_pmi(corpus, a, b, floor) for a in A for b in B]
    vals = [v for v in vals if v is not None]
    return math.fsum(vals) / len(vals) if vals else None


def py_cosine(u, v):
    dot = math.fsum(a * b for a, b in zip(u, v))
    nu = math.sqrt(math.fsum(a * a for a in u))
    nv = math.sqrt(math.fsum(b * b for b in v))
    if nu == 0 or nv == 0:
        return -1.0
    return dot / (nu * nv)


def greedy_merge_oracle(vectors, target):
    """Average-linkage merging that recomputes every cluster pair from scratch each step."""
    k = len(vectors)
    cos = [[py_cosine(vectors[i], vectors[j]) for j in range(k)] for i in range(k)]
    clusters = [[i] for i in range(k)]
    while len(clusters) > max(target, 1):
        clusters.sort(key=min)
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                avg = math.fsum(cos[a][b] for a in clusters[i] for b in clusters[j]) / (
                    len(clusters[i]) * len(clusters[j])
                )
                if best is None or avg > best[0]:
                    best = (avg, i, j)
        _, i, j = best
        merged = clusters[i] + clusters[j]
        clusters = [c for n, c in enumerate(clusters) if n not in (i, j)] + [merged]
    return {frozenset(c) for c in clusters}


# extraction ---------------------------------------------------------------

_SENT = re.compile(r"[.!?:]")


def oracle_sentences(text):
    return [s.lower().split() for s in _SENT.split(text) if s.split()]


def oracle_tokens(text):
    return [t for s in oracle_sentences(text) for t in s]


def oracle_extract(text, corpus_texts, stoplist, k):
    """Score every candidate by hand-rolled TF x IDF x position, then rank and dedup."""
    sentences = oracle_sentences(text)
    doc_len = sum(len(s) for s in sentences)
    corpus = [oracle_tokens(t) for t in corpus_texts]
    n_docs = len(corpus)
    tf, first = {}, {}
    offset = 0
    for s in sentences:
        for i in range(len(s)):
            for n in (1, 2, 3):
                if i + n > len(s):
                    continue
                g = tuple(s[i : i + n])
                if g[0] in stoplist or g[-1] in stoplist:
                    continue
                if not any(c.isalpha() for t in g for c in t):
                    continue
                tf[g] = tf.get(g, 0) + 1
                first.setdefault(g, offset + i)
        offset += len(s)
    table = []
    for g in tf:
        df = scan_df(corpus, g)
        score = (tf[g] / doc_len) * math.log2((n_docs + 1) / (df + 1)) * (1 - first[g] / doc_len)
        table.append((g, tf[g], first[g], df, score))
    table.sort(key=lambda r: (-r[4], r[2], r[0]))
    kept = []
    for row in table:
        if len(kept) == k:
            break
        g = row[0]
        stem = tuple(_porter.stem(t) for t in g)
        dup = False
        for other in kept:
            if tuple(_porter.stem(t) for t in other[0]) == stem:
                dup = True
            if len(other[0]) > len(g) and other[1] == row[1] and contains(other[0], g):
                dup = True
        if not dup:
            kept.append(row)
    return kept, table
