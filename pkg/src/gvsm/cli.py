"""Command-line front end.

    gvsm index     --corpus F --weighting tfidf|freq --out F [--order first|sorted]
    gvsm query     --index F --text S --top K [--matrix F]
    gvsm transform --index F --matrix F --out F
    gvsm verify    --index F --matrix F
    gvsm cost      --index F --costs F [--doc N]

Each command prints human-readable lines followed by a ``[machine]``
block of ``key=value`` lines.  Exit status: 0 success, 1 usage or
validation error, 2 a guaranteed invariant failed.
"""
import argparse
import hashlib
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gvsm import dual, groups, io, linalg, vsm
from gvsm.errors import GVSMError

log = logging.getLogger("gvsm")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2

MACHINE_HEADER = "[machine]"


@dataclass
class RunReport:
    command: str
    digest: str
    lines: list = field(default_factory=list)
    machine: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def say(self, line):
        self.lines.append(line)

    def put(self, key, value):
        if isinstance(value, float):
            value = io.fmt(value)
        self.machine.append((key, str(value)))

    def machine_dict(self):
        return dict(self.machine)

    def render(self):
        out = list(self.lines)
        out.append(MACHINE_HEADER)
        out.append(f"command={self.command}")
        out.append(f"digest={self.digest}")
        out += [f"{k}={v}" for k, v in self.machine]
        return "\n".join(out) + "\n"


def _digest(command, *parts):
    h = hashlib.sha256(command.encode())
    for p in parts:
        h.update(b"\0")
        h.update(p if isinstance(p, bytes) else str(p).encode())
    return h.hexdigest()[:16]


def _read_bytes(path):
    return Path(path).read_bytes()


def _score(s):
    return "-inf" if s == vsm.ZERO_NORM_SCORE else io.fmt(s)


# ------------------------------------------------------------ commands


def cmd_index(corpus_path, weighting, out_path, order="first"):
    raw = _read_bytes(corpus_path)
    corpus = vsm.ingest(raw.decode("utf-8").splitlines(), order=order)
    if weighting == "tfidf":
        tdm = vsm.tfidf_weights(corpus)
    elif weighting == "freq":
        tdm = vsm.frequency_weights(corpus)
    else:
        raise ValueError(f"weighting must be 'tfidf' or 'freq', got {weighting!r}")
    io.write_index(tdm, out_path)

    rep = RunReport("index", _digest("index", raw, weighting, order))
    v, n = tdm.weights.shape
    rep.say(f"indexed {n} documents over {v} terms ({tdm.scheme}) -> {out_path}")
    rep.put("scheme", tdm.scheme)
    rep.put("V", v)
    rep.put("N", n)
    for i, term in enumerate(tdm.vocabulary.terms):
        idf = "-" if tdm.idf is None else io.fmt(tdm.idf[i])
        rep.say(f"  {term}: df={int(tdm.df[i])} idf={idf}")
        rep.put(f"df_{term}", int(tdm.df[i]))
        rep.put(f"idf_{term}", idf)
    return rep


def cmd_query(index_path, query_text, top_k, matrix_path=None):
    if top_k < 1:
        raise ValueError("--top must be at least 1")
    raw = _read_bytes(index_path)
    tdm = io.parse_index(raw.decode("utf-8"))
    _, dropped = vsm.query_terms(query_text, tdm.vocabulary)
    if dropped:
        log.info("dropped out-of-vocabulary query tokens: %s", " ".join(dropped))
    q = vsm.embed_query_for(query_text, tdm)
    parts = [raw, query_text, top_k]
    if matrix_path is not None:
        g = io.read_transform(matrix_path)
        q = groups.act_vector(g, q)
        parts.append(_read_bytes(matrix_path))
    ranked = vsm.rank(q, tdm).top(top_k)

    rep = RunReport("query", _digest("query", *parts))
    if tdm.transformed and matrix_path is None:
        rep.say("note: index is transformed but the query is not (pass --matrix)")
    if dropped:
        rep.say(f"dropped {len(dropped)} out-of-vocabulary token(s)")
    rep.put("dropped", len(dropped))
    rep.put("results", len(ranked))
    for pos, (doc_id, score) in enumerate(ranked, start=1):
        rep.say(f"{pos}. D{doc_id}  {_score(score)}")
        rep.put(f"rank_{pos}", f"{doc_id}:{_score(score)}")
    return rep


def _load_pair(index_path, matrix_path):
    raw_idx = _read_bytes(index_path)
    raw_mat = _read_bytes(matrix_path)
    tdm = io.parse_index(raw_idx.decode("utf-8"))
    g = io.parse_transform(raw_mat.decode("utf-8"))
    if g.dim != len(tdm.vocabulary):
        raise GVSMError(
            f"transform has dimension {g.dim} but the index has "
            f"{len(tdm.vocabulary)} terms"
        )
    return tdm, g, raw_idx, raw_mat


COSINE_SAFE = (groups.ORTHOGONAL, groups.PERMUTATION)
FLAG_SAFE = (groups.BOREL, groups.SCALING)


def _guaranteed(g, safe_kinds):
    # the declared kind, or actual membership in the subgroup that carries the
    # guarantee (an identity declared "general" is still orthogonal)
    return g.kind in safe_kinds or groups.is_member(g.matrix, safe_kinds[0])


def cmd_transform(index_path, matrix_path, out_path):
    tdm, g, raw_idx, raw_mat = _load_pair(index_path, matrix_path)
    out = groups.act_tdm(g, tdm)
    io.write_index(out, out_path)
    det = linalg.determinant(g.matrix)
    safe = _guaranteed(g, COSINE_SAFE)

    rep = RunReport("transform", _digest("transform", raw_idx, raw_mat))
    rep.say(f"applied {g.kind} element (det {io.fmt(det)}) -> {out_path}")
    rep.say("cosine similarities are " + ("preserved" if safe else "not guaranteed to be preserved"))
    rep.put("kind", g.kind)
    rep.put("det", det)
    rep.put("cosine_guaranteed", "yes" if safe else "no")
    rep.put("V", out.weights.shape[0])
    rep.put("N", out.weights.shape[1])
    return rep


def _check(rep, name, guaranteed, holds, value=None):
    if guaranteed:
        status = "PASS" if holds else "FAIL"
    else:
        status = "not-guaranteed"
    text = f"{name}: {status}"
    if not guaranteed:
        text += f" (measured: {'holds' if holds else 'violated'})"
    if value is not None:
        text += f" max deviation {io.fmt(value)}"
    rep.say(text)
    rep.put(f"check_{name}", status)
    rep.put(f"{name}_holds", "yes" if holds else "no")
    if value is not None:
        rep.put(f"{name}_max_dev", float(value))
    if guaranteed and not holds:
        rep.exit_code = EXIT_INVARIANT


def cmd_verify(index_path, matrix_path):
    tdm, g, raw_idx, raw_mat = _load_pair(index_path, matrix_path)
    rep = RunReport("verify", _digest("verify", raw_idx, raw_mat))
    rep.say(f"element kind {g.kind}, dimension {g.dim}, {tdm.n_docs} documents")
    rep.put("kind", g.kind)

    cols = [tdm.weights[:, j] for j in range(tdm.n_docs)]
    nonzero = [c for c in cols if vsm.norm(c) > 0.0]
    if len(nonzero) < len(cols):
        rep.say(f"skipping {len(cols) - len(nonzero)} zero document vector(s) in similarity checks")

    cosine_safe = _guaranteed(g, COSINE_SAFE)
    if len(nonzero) >= 2:
        cr = groups.preserves_cosine(g, nonzero)
        _check(rep, "cosine", cosine_safe, cr.passed, cr.max_deviation)
        _check(rep, "norm", cosine_safe,
               cr.max_norm_deviation < groups.INVARIANCE_TOL, cr.max_norm_deviation)
    else:
        rep.say("cosine: skipped (fewer than two nonzero documents)")
        rep.put("check_cosine", "skipped")

    _check(rep, "flag", _guaranteed(g, FLAG_SAFE), groups.stabilizes_flag(g))

    functionals = dual.dual_basis(g.dim) + [dual.LinearFunctional(np.ones(g.dim))]
    dr = dual.dual_representation(g)
    pdev = 0.0
    for phi in functionals:
        for c in cols:
            pdev = max(pdev, dual.verify_pairing_invariance(g, phi, c, dr=dr).deviation)
    _check(rep, "pairing", True, pdev < dual.PAIRING_TOL, pdev)

    e = groups.compose(g, groups.inverse_element(g)).matrix
    idev = float(np.abs(e - np.eye(g.dim)).max())
    _check(rep, "inverse", True, idev < groups.KIND_TOL, idev)

    if g.kind == groups.SCALING:
        prof = groups.scaling_profile(g)
        for i, (s, cls) in enumerate(zip(prof.factors, prof.classes)):
            term = tdm.vocabulary.terms[i]
            rep.say(f"  axis {term}: factor {io.fmt(s)} ({cls})")
            rep.put(f"axis_{term}", cls)

    verdict = groups.is_diagonalizable_scaling(g.matrix)
    rep.say("diagonalizable scaling operator: "
            + ("yes" if verdict.diagonalizable else f"no ({verdict.reason})"))
    rep.put("diagonalizable", "yes" if verdict.diagonalizable else "no")
    rep.put("status", "ok" if rep.exit_code == EXIT_OK else "invariant-failure")
    return rep


def cmd_cost(index_path, cost_path, doc_id=None):
    raw_idx = _read_bytes(index_path)
    raw_cost = _read_bytes(cost_path)
    tdm = io.parse_index(raw_idx.decode("utf-8"))
    costs = io.parse_costs(raw_cost.decode("utf-8"), tdm.vocabulary)
    report = dual.total_costs(costs, tdm)
    rep = RunReport("cost", _digest("cost", raw_idx, raw_cost, doc_id))
    rep.put("paired_with", report.paired_with)
    ids = tdm.doc_ids if doc_id is None else [doc_id]
    for d in ids:
        if d not in report.costs:
            raise IndexError(f"doc_id {d} outside 1..{tdm.n_docs}")
        rep.say(f"D{d}: total cost {io.fmt(report.costs[d])}")
        rep.put(f"cost_{d}", report.costs[d])
    return rep


# ---------------------------------------------------------------- main


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true",
                        help="log dropped query tokens and similar notes")
    p = argparse.ArgumentParser(prog="gvsm", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("index", parents=[common], help="build a term-document index from a corpus file")
    s.add_argument("--corpus", required=True)
    s.add_argument("--weighting", choices=("tfidf", "freq"), default="tfidf")
    s.add_argument("--out", required=True)
    s.add_argument("--order", choices=("first", "sorted"), default="first",
                   help="term order: first occurrence (default) or sorted")

    s = sub.add_parser("query", parents=[common], help="rank documents against a query")
    s.add_argument("--index", required=True)
    s.add_argument("--text", required=True)
    s.add_argument("--top", type=int, default=10)
    s.add_argument("--matrix", help="transform file to apply to the query as well")

    s = sub.add_parser("transform", parents=[common], help="apply a group element to an index")
    s.add_argument("--index", required=True)
    s.add_argument("--matrix", required=True)
    s.add_argument("--out", required=True)

    s = sub.add_parser("verify", parents=[common], help="check invariants of a group element on an index")
    s.add_argument("--index", required=True)
    s.add_argument("--matrix", required=True)

    s = sub.add_parser("cost", parents=[common], help="total cost of documents under a cost functional")
    s.add_argument("--index", required=True)
    s.add_argument("--costs", required=True)
    s.add_argument("--doc", type=int)
    return p


def run(args):
    if args.command == "index":
        return cmd_index(args.corpus, args.weighting, args.out, args.order)
    if args.command == "query":
        return cmd_query(args.index, args.text, args.top, args.matrix)
    if args.command == "transform":
        return cmd_transform(args.index, args.matrix, args.out)
    if args.command == "verify":
        return cmd_verify(args.index, args.matrix)
    return cmd_cost(args.index, args.costs, args.doc)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    # a handler of our own, so -v works even when the root logger is configured
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        report = run(args)
    except (GVSMError, OSError, ValueError, IndexError, KeyError) as exc:
        print(f"gvsm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        log.removeHandler(handler)
    sys.stdout.write(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
