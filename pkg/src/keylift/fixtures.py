"""Deterministic synthetic corpora for tests, demos and `keylift seed-fixtures`."""

from __future__ import annotations

import os
import random
from pathlib import Path

from .text import TokenizedDocument, tokenize_document

GENERAL_WORDS = (
    "system data page home information research group report list service "
    "software project example result method study design support center office "
    "program network version history library community member event student "
    "course review science model process site resource guide news contact "
    "question answer source tool development public local national update"
).split()

FUNCTION_WORDS = "the a of and to in for on with by from is are this that our".split()

TOPICS = {
    "fish": ["zebrafish", "aquarium", "model system", "fish", "brachydanio rerio",
             "developmental biology", "embryo", "genetics"],
    "whisky": ["single malt", "malt whisky", "cigar", "catering", "food",
               "libation", "distillery", "tasting notes"],
    "html": ["html", "hypertext", "latex", "emacs", "html mode", "converter",
             "translator", "formatting commands"],
    "protein": ["protein", "sequence", "enzyme", "molecular biology", "genome",
                "database", "swissprot", "biological software"],
    "space": ["wind tunnel", "aeronautics", "flight", "langley", "aircraft",
              "hypersonic", "propulsion", "space station"],
}

GOLD_EXTRAS = {
    "fish": ["neuroscience", "vertebrates"],
    "whisky": ["pub", "whiskies"],
    "html": ["authoring", "editors"],
    "protein": ["proteins", "bioinformatics"],
    "space": ["aircraft design", "engines"],
}


def _sentence(rng: random.Random, topic_terms: list[str]) -> str:
    words: list[str] = []
    for _ in range(rng.randint(3, 6)):
        roll = rng.random()
        if roll < 0.45:
            words.append(rng.choice(topic_terms))
        elif roll < 0.75:
            words.append(rng.choice(GENERAL_WORDS))
        else:
            words.append(rng.choice(FUNCTION_WORDS))
        if rng.random() < 0.3:
            words.append(rng.choice(FUNCTION_WORDS))
    text = " ".join(words)
    return text[0].upper() + text[1:] + rng.choice([".", ".", ".", "!", "?"])


def topic_corpus(n_docs: int = 20, seed: int = 7) -> list[tuple[str, str, list[str]]]:
    """``n_docs`` short documents as (doc_id, text, gold phrases).

    Each document is written mostly around one topic; its gold list mixes
    topic terms that appear, inflected variants and phrases never used.
    """
    rng = random.Random(seed)
    names = sorted(TOPICS)
    out = []
    for i in range(n_docs):
        topic = names[i % len(names)]
        terms = TOPICS[topic]
        focus = rng.sample(terms, 5)
        sentences = [_sentence(rng, focus) for _ in range(rng.randint(5, 9))]
        if rng.random() < 0.5:
            other = TOPICS[names[(i + 1) % len(names)]]
            sentences.append(_sentence(rng, other))
        gold = focus[:2] + [rng.choice(GOLD_EXTRAS[topic])]
        out.append((f"doc{i:03d}", " ".join(sentences), gold))
    return out


def random_corpus(
    n_docs: int = 200, vocab_size: int = 40, seed: int = 0, max_len: int = 30
) -> list[TokenizedDocument]:
    """Documents of random tokens ``w0``..``w{vocab_size-1}`` with a skewed distribution."""
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(vocab_size)]
    weights = [1 / (i + 1) for i in range(vocab_size)]
    docs = []
    for d in range(n_docs):
        n = rng.randint(0, max_len)
        docs.append(TokenizedDocument(f"d{d:04d}", tuple(rng.choices(vocab, weights, k=n))))
    return docs


def count_corpus(n: int, df_p: int, df_q: int, co: int, p: str = "alpha", q: str = "beta") -> list[TokenizedDocument]:
    """``n`` documents where ``p`` occurs in df_p, ``q`` in df_q and both in ``co`` of them."""
    if not (0 <= co <= min(df_p, df_q) and df_p + df_q - co <= n):
        raise ValueError("counts are not realisable")
    docs = []
    only_p, only_q = df_p - co, df_q - co
    for i in range(n):
        if i < co:
            text = f"{p} filler {q}"
        elif i < co + only_p:
            text = f"{p} filler"
        elif i < co + only_p + only_q:
            text = f"filler {q}"
        else:
            text = "filler"
        docs.append(tokenize_document(f"c{i:04d}", text))
    return docs


def write_fixtures(out_dir: "str | os.PathLike", n_docs: int = 20, seed: int = 7) -> Path:
    """Write ``corpus/<doc_id>.txt`` and ``gold/<doc_id>.key`` under ``out_dir``."""
    out = Path(out_dir)
    (out / "corpus").mkdir(parents=True, exist_ok=True)
    (out / "gold").mkdir(parents=True, exist_ok=True)
    for doc_id, text, gold in topic_corpus(n_docs, seed):
        (out / "corpus" / f"{doc_id}.txt").write_text(text + "\n", encoding="utf-8")
        (out / "gold" / f"{doc_id}.key").write_text(
            "# author keyphrases\n" + "\n".join(gold) + "\n", encoding="utf-8"
        )
    return out
