"""Bag-of-words corpus, term weighting, cosine similarity and ranking.

Terms span the basis of the vector space, documents are columns of a
term-by-document matrix, and queries are embedded with their own term
counts and the corpus' inverse document frequencies.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from gvsm.errors import EmptyCorpusError, EmptyQueryError, ShapeError, ZeroVectorError
from gvsm.linalg import as_vector

log = logging.getLogger(__name__)

FREQUENCY = "frequency"
TFIDF = "tfidf"
SCHEMES = (FREQUENCY, TFIDF)

# score given to documents whose vector has zero length
ZERO_NORM_SCORE = float("-inf")


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        index = {t: i for i, t in enumerate(terms)}
        if len(index) != len(terms):
            dupes = sorted({t for t in terms if terms.count(t) > 1})
            raise ValueError(f"duplicate terms in vocabulary: {dupes}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "index", index)

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index

    def __iter__(self):
        return iter(self.terms)


@dataclass(frozen=True)
class Corpus:
    """Term counts, one column per document; ``counts[i, j]`` is tf of term i in doc j+1."""

    vocabulary: Vocabulary
    counts: np.ndarray

    @property
    def n_docs(self):
        return self.counts.shape[1]

    @property
    def doc_ids(self):
        return list(range(1, self.n_docs + 1))

    @property
    def docs(self):
        return [self.counts[:, j] for j in range(self.n_docs)]

    def document_frequencies(self):
        return (self.counts > 0).sum(axis=1)


@dataclass(frozen=True)
class TermDocumentMatrix:
    vocabulary: Vocabulary
    weights: np.ndarray
    scheme: str
    df: np.ndarray
    idf: np.ndarray = None
    # set once a group element has acted on the weights; idf is then
    # only informative
    transformed: bool = False
    counts: np.ndarray = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown weighting scheme {self.scheme!r}")
        if self.weights.shape[0] != len(self.vocabulary):
            raise ShapeError(
                f"weights have {self.weights.shape[0]} rows for "
                f"{len(self.vocabulary)} terms"
            )

    @property
    def n_docs(self):
        return self.weights.shape[1]

    @property
    def doc_ids(self):
        return list(range(1, self.n_docs + 1))

    def column(self, doc_id):
        if not 1 <= doc_id <= self.n_docs:
            raise IndexError(f"doc_id {doc_id} outside 1..{self.n_docs}")
        return self.weights[:, doc_id - 1].copy()


@dataclass(frozen=True)
class RankedList:
    """(doc_id, score) pairs, best first; ties go to the smaller doc_id."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def doc_ids(self):
        return [d for d, _ in self.entries]

    def top(self, k):
        return RankedList(self.entries[:k])


def ingest(text_lines, order="first"):
    """Build a corpus with one document per line.

    ``order="first"`` lays terms out in first-occurrence order (documents
    in line order, tokens left to right); ``order="sorted"`` sorts them.
    """
    if order not in ("first", "sorted"):
        raise ValueError(f"order must be 'first' or 'sorted', got {order!r}")
    lines = list(text_lines)
    if not lines:
        raise EmptyCorpusError("corpus is empty")
    bags = []
    seen = {}
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            raise EmptyCorpusError(f"line {lineno} has no tokens")
        bag = {}
        for tok in tokens:
            bag[tok] = bag.get(tok, 0) + 1
            seen.setdefault(tok, len(seen))
        bags.append(bag)
    terms = sorted(seen) if order == "sorted" else list(seen)
    vocab = Vocabulary(tuple(terms))
    counts = np.zeros((len(vocab), len(bags)), dtype=np.int64)
    for j, bag in enumerate(bags):
        for tok, c in bag.items():
            counts[vocab.index[tok], j] = c
    counts.setflags(write=False)
    return Corpus(vocab, counts)


def frequency_weights(corpus):
    w = corpus.counts.astype(np.float64)
    return TermDocumentMatrix(
        vocabulary=corpus.vocabulary,
        weights=w,
        scheme=FREQUENCY,
        df=corpus.document_frequencies(),
        counts=corpus.counts,
    )


def idf_values(df, n_docs):
    return np.array([math.log10(n_docs / d) for d in df], dtype=np.float64)


def tfidf_weights(corpus):
    """tf * log10(N / df) for every term and document."""
    df = corpus.document_frequencies()
    idf = idf_values(df, corpus.n_docs)
    return TermDocumentMatrix(
        vocabulary=corpus.vocabulary,
        weights=corpus.counts * idf[:, None],
        scheme=TFIDF,
        df=df,
        idf=idf,
        counts=corpus.counts,
    )


def query_terms(query_text, vocab):
    """Split a query into (in-vocabulary tokens, dropped tokens)."""
    kept, dropped = [], []
    for tok in query_text.split():
        (kept if tok in vocab else dropped).append(tok)
    return kept, dropped


def embed_query(query_text, vocab, scheme=TFIDF, idf=None):
    """Query vector from its own term counts and, for tf-idf, the corpus idf.

    Tokens outside the vocabulary are dropped; the term space is fixed by
    the corpus.
    """
    kept, dropped = query_terms(query_text, vocab)
    if dropped:
        log.debug("dropping out-of-vocabulary query tokens: %s", dropped)
    if not kept:
        raise EmptyQueryError("query has no in-vocabulary terms")
    tf = np.zeros(len(vocab))
    for tok in kept:
        tf[vocab.index[tok]] += 1
    if scheme == FREQUENCY:
        return tf
    if scheme != TFIDF:
        raise ValueError(f"unknown weighting scheme {scheme!r}")
    if idf is None:
        raise ValueError("tf-idf query embedding needs the corpus idf")
    return tf * np.asarray(idf, dtype=np.float64)


def embed_query_for(query_text, tdm):
    return embed_query(query_text, tdm.vocabulary, tdm.scheme, tdm.idf)


def _pair(u, v):
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise ShapeError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return u, v


def inner_product(u, v):
    u, v = _pair(u, v)
    return float(u @ v)


def norm(v):
    v = as_vector(v)
    return math.sqrt(float(v @ v))


def cosine_similarity(u, v):
    u, v = _pair(u, v)
    nu, nv = norm(u), norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine similarity is undefined for a zero vector")
    return float(u @ v) / (nu * nv)


def scores(query, weights):
    """Cosine of ``query`` against each column; zero columns score -inf."""
    q = as_vector(query, "query")
    w = np.asarray(weights, dtype=np.float64)
    if w.shape[0] != q.shape[0]:
        raise ShapeError(
            f"query has dimension {q.shape[0]} but the term space has {w.shape[0]} terms"
        )
    qn = norm(q)
    out = np.full(w.shape[1], ZERO_NORM_SCORE)
    if qn == 0.0:
        return out
    for j in range(w.shape[1]):
        col = w[:, j]
        cn = math.sqrt(float(col @ col))
        if cn > 0.0:
            out[j] = float(q @ col) / (qn * cn)
    return out


def rank(query, tdm):
    s = scores(query, tdm.weights)
    order = sorted(range(len(s)), key=lambda j: (-s[j], j))
    return RankedList(tuple((j + 1, float(s[j])) for j in order))
