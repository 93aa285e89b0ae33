"""Plain-text file formats.

matrix      "<rows> <cols>" then one line of space-separated decimals per row
transform   "kind: <kind>" followed by a matrix, or "perm: g(0) ... g(n-1)"
index       "GVSM-INDEX v1", scheme line, "<V> <N>", terms, then per term
            "<df> <idf> <w_1> ... <w_N>"  (idf is "-" for frequency weights)
costs       "term decimal" per line

Numbers are written with 9 significant digits, except transform files,
which use 17 so that a written element re-validates as the same kind.
"""
from pathlib import Path

import numpy as np

from gvsm import groups
from gvsm.errors import FormatError
from gvsm.linalg import as_matrix
from gvsm.vsm import SCHEMES, TermDocumentMatrix, Vocabulary

INDEX_MAGIC = "GVSM-INDEX v1"
TRANSFORMED = "transformed"
DIGITS = 9
ROUND_TRIP_DIGITS = 17


def fmt(x, digits=DIGITS):
    # +0.0 folds negative zero so output is byte-stable
    return format(float(x) + 0.0, f".{digits}g")


def _lines(text):
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _floats(line, lineno, expected=None):
    try:
        vals = [float(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None
    if expected is not None and len(vals) != expected:
        raise FormatError(f"line {lineno}: expected {expected} numbers, got {len(vals)}")
    return vals


def _shape(line, lineno):
    parts = line.split()
    try:
        rows, cols = (int(p) for p in parts)
    except ValueError:
        raise FormatError(f"line {lineno}: expected '<rows> <cols>', got {line!r}") from None
    if rows <= 0 or cols <= 0:
        raise FormatError(f"line {lineno}: dimensions must be positive")
    return rows, cols


def parse_matrix(text, first_lineno=1):
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix text")
    rows, cols = _shape(lines[0], first_lineno)
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"expected {rows} matrix rows, got {len(body)}")
    data = [_floats(line, first_lineno + 1 + i, cols) for i, line in enumerate(body)]
    try:
        return as_matrix(data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_matrix(m, digits=DIGITS):
    m = np.asarray(m, dtype=np.float64)
    out = [f"{m.shape[0]} {m.shape[1]}"]
    out += [" ".join(fmt(x, digits) for x in row) for row in m]
    return "\n".join(out) + "\n"


def read_matrix(path):
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def write_matrix(m, path, digits=DIGITS):
    Path(path).write_text(format_matrix(m, digits), encoding="utf-8")


def parse_transform(text):
    """Parse a transform file into a validated GroupElement."""
    lines = _lines(text)
    if not lines or not lines[0].startswith("kind:"):
        raise FormatError("transform file must start with 'kind: <kind>'")
    kind = lines[0][len("kind:"):].strip()
    if kind not in groups.KINDS:
        raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(groups.KINDS)}")
    if len(lines) > 1 and lines[1].startswith("perm:"):
        if kind != groups.PERMUTATION:
            raise FormatError("'perm:' lines are only allowed for kind permutation")
        try:
            perm = [int(tok) for tok in lines[1][len("perm:"):].split()]
        except ValueError as exc:
            raise FormatError(f"line 2: {exc}") from None
        return groups.make_permutation(perm)
    return groups.make_element(parse_matrix("\n".join(lines[1:]), first_lineno=2), kind)


def format_transform(g):
    if g.kind == groups.PERMUTATION:
        return f"kind: {g.kind}\nperm: {' '.join(str(p) for p in g.perm)}\n"
    # 9 digits can push an orthogonal matrix past the 1e-9 kind check
    return f"kind: {g.kind}\n" + format_matrix(g.matrix, ROUND_TRIP_DIGITS)


def read_transform(path):
    return parse_transform(Path(path).read_text(encoding="utf-8"))


def write_transform(g, path):
    Path(path).write_text(format_transform(g), encoding="utf-8")


def format_index(tdm):
    scheme = tdm.scheme + (f" {TRANSFORMED}" if tdm.transformed else "")
    v, n = tdm.weights.shape
    out = [INDEX_MAGIC, scheme, f"{v} {n}", " ".join(tdm.vocabulary.terms)]
    for i in range(v):
        idf = "-" if tdm.idf is None else fmt(tdm.idf[i])
        row = " ".join(fmt(x) for x in tdm.weights[i])
        out.append(f"{int(tdm.df[i])} {idf} {row}")
    return "\n".join(out) + "\n"


def parse_index(text):
    lines = _lines(text)
    if len(lines) < 4 or lines[0].strip() != INDEX_MAGIC:
        raise FormatError(f"not a {INDEX_MAGIC} file")
    head = lines[1].split()
    if not head or head[0] not in SCHEMES or head[1:] not in ([], [TRANSFORMED]):
        raise FormatError(f"line 2: bad scheme line {lines[1]!r}")
    scheme, transformed = head[0], len(head) == 2
    v, n = _shape(lines[2], 3)
    terms = lines[3].split()
    if len(terms) != v:
        raise FormatError(f"line 4: expected {v} terms, got {len(terms)}")
    rows = lines[4:]
    if len(rows) != v:
        raise FormatError(f"expected {v} term rows, got {len(rows)}")
    df = np.empty(v, dtype=np.int64)
    idf = np.empty(v)
    weights = np.empty((v, n))
    for i, line in enumerate(rows):
        lineno = 5 + i
        parts = line.split()
        if len(parts) != n + 2:
            raise FormatError(f"line {lineno}: expected {n + 2} fields, got {len(parts)}")
        try:
            df[i] = int(parts[0])
        except ValueError:
            raise FormatError(f"line {lineno}: bad df {parts[0]!r}") from None
        idf[i] = np.nan if parts[1] == "-" else _floats(parts[1], lineno)[0]
        weights[i] = _floats(" ".join(parts[2:]), lineno)
    if not np.all(np.isfinite(weights)):
        raise FormatError("index has non-finite weights")
    return TermDocumentMatrix(
        vocabulary=Vocabulary(tuple(terms)),
        weights=weights,
        scheme=scheme,
        df=df,
        idf=None if np.isnan(idf).all() else idf,
        transformed=transformed,
    )


def read_index(path):
    return parse_index(Path(path).read_text(encoding="utf-8"))


def write_index(tdm, path):
    Path(path).write_text(format_index(tdm), encoding="utf-8")


def parse_costs(text, vocabulary=None):
    """term -> cost mapping; terms unknown to ``vocabulary`` are rejected."""
    costs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'term cost', got {line!r}")
        term, value = parts
        if term in costs:
            raise FormatError(f"line {lineno}: duplicate cost for term {term!r}")
        if vocabulary is not None and term not in vocabulary:
            raise FormatError(f"line {lineno}: term {term!r} is not in the corpus vocabulary")
        costs[term] = _floats(value, lineno, 1)[0]
    return costs


def read_costs(path, vocabulary=None):
    return parse_costs(Path(path).read_text(encoding="utf-8"), vocabulary)
