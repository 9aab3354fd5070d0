"""JSON proof objects and their file-only verification.

``verify_document`` re-checks a stored certificate from its own contents.
The frame chain is taken as given; everything downstream of it (partial
cover, completion, separation) is checked against it.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .covers import (
    PartialCover,
    check_local_isometry,
    extends,
    is_transitive,
    make_cover,
    separates,
)
from .errors import (
    CommutationFailure,
    CertificateError,
    FoldingCollapse,
    GraphError,
    NotAPartialInjection,
    NotAPermutation,
    RFGError,
    UnknownGenerator,
    WordSyntaxError,
)
from .raag import SimplicialGraph, format_word, graph_from_json, is_reduced, parse_word
from .separation import (
    Block,
    FrameChain,
    SeparationCertificate,
    build_partial_cover,
    chain_problems,
)
from .speciallinear import (
    CongruenceWitness,
    first_moved_hyperplane,
    hyperplane_count,
    int_matrix,
    isprime,
    select_alpha,
    stabilizes,
)

SEPARATION_KIND = "separation-certificate"
CONGRUENCE_KIND = "congruence-witness"
VERSION = 1


def chain_to_json(graph: SimplicialGraph, chain: FrameChain) -> dict:
    return {
        "blocks": [{"q": format_word(graph, b.q), "pivot": graph.vertices[b.pivot],
                    "exponent": b.exponent} for b in chain.blocks],
        "tail": format_word(graph, chain.tail),
    }


def payload_digest(doc: dict) -> str:
    """SHA-256 of the canonical JSON of every field except the digest itself."""
    body = {k: v for k, v in doc.items() if k != "digest"}
    text = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _sealed(doc: dict) -> dict:
    doc["digest"] = payload_digest(doc)
    return doc


def separation_to_json(cert: SeparationCertificate) -> dict:
    g = cert.graph
    return _sealed({
        "kind": SEPARATION_KIND,
        "version": VERSION,
        "graph": g.to_json(),
        "element": {"word": format_word(g, cert.element.letters), "length": cert.element.length},
        "chain": chain_to_json(g, cert.chain),
        "partial": cert.partial.to_json(),
        "cover": cert.cover.to_json(),
        "degree": cert.degree,
    })


def congruence_to_json(w: CongruenceWitness) -> dict:
    return _sealed({
        "kind": CONGRUENCE_KIND,
        "version": VERSION,
        "matrix": w.matrix.to_json(),
        "p": w.p,
        "alpha": w.alpha,
        "dual_vector": list(w.dual_vector),
        "index": w.index,
    })


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class InvariantFailure(CertificateError):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant


def _need(cond: bool, invariant: str, detail: str = ""):
    if not cond:
        raise InvariantFailure(invariant, detail)


def _int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def verify_document(doc: Any) -> str:
    """Check every invariant of a stored certificate; return its kind.

    Raises CertificateError naming the first failed invariant.  The
    mathematical invariants are checked first; the payload digest comes
    last and catches edits that leave a different but self-consistent
    certificate (say, another unimodular matrix the same hyperplane moves).
    """
    _need(isinstance(doc, dict), "schema", "top level must be an object")
    _need(doc.get("version") == VERSION, "schema", f"unsupported version {doc.get('version')!r}")
    kind = doc.get("kind")
    try:
        if kind == SEPARATION_KIND:
            _verify_separation(doc)
        elif kind == CONGRUENCE_KIND:
            _verify_congruence(doc)
        else:
            raise InvariantFailure("schema", f"unknown kind {kind!r}")
    except InvariantFailure:
        raise
    except CommutationFailure as e:
        raise InvariantFailure("CommutationFailure", str(e)) from e
    except NotAPermutation as e:
        raise InvariantFailure("NotAPermutation", str(e)) from e
    except (GraphError, WordSyntaxError, UnknownGenerator) as e:
        raise InvariantFailure("schema", str(e)) from e
    except RFGError as e:
        raise InvariantFailure(type(e).__name__, str(e)) from e
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise InvariantFailure("schema", f"{type(e).__name__}: {e}") from e
    _need(doc["digest"] == payload_digest(doc), "digest", "payload was modified after sealing")
    return kind


def _parse_chain(graph: SimplicialGraph, obj: dict) -> FrameChain:
    blocks = []
    for b in obj["blocks"]:
        _need(set(b) == {"q", "pivot", "exponent"}, "schema", "bad block keys")
        _need(_int(b["exponent"]) and b["exponent"] != 0, "chain-exponent")
        blocks.append(Block(parse_word(graph, b["q"]), graph.index_of(b["pivot"]), b["exponent"]))
    return FrameChain(tuple(blocks), parse_word(graph, obj["tail"]))


def _perm_lists(obj: dict, graph: SimplicialGraph, what: str) -> dict:
    perms = obj["perms"]
    _need(isinstance(perms, dict) and set(perms) == set(graph.vertices), "schema",
          f"{what} must list exactly the graph's generators")
    return perms


def _verify_separation(doc: dict):
    _need(set(doc) == {"kind", "version", "graph", "element", "chain", "partial", "cover",
                       "degree", "digest"}, "schema", "unexpected or missing keys")
    graph = graph_from_json(doc["graph"])

    el = doc["element"]
    word = parse_word(graph, el["word"])
    _need(el["length"] == len(word), "element-length")
    _need(len(word) > 0, "element-nontrivial")
    _need(is_reduced(graph, word), "element-geodesic")

    chain = _parse_chain(graph, doc["chain"])
    problems = chain_problems(graph, chain, word)
    _need(not problems, "frame-chain", ", ".join(problems))

    pdoc = doc["partial"]
    _need(_int(pdoc["degree"]) and pdoc["degree"] == chain.path_length + 1, "partial-size")
    _need(pdoc.get("basepoint") == 0, "basepoint")
    try:
        partial = PartialCover(pdoc["degree"], dict(_perm_lists(pdoc, graph, "partial")))
    except NotAPartialInjection as e:
        raise InvariantFailure("partial-injection", str(e)) from e
    try:
        expected, _ = build_partial_cover(graph, chain)
    except FoldingCollapse as e:
        raise InvariantFailure("FoldingCollapse", str(e)) from e
    _need(partial == expected, "partial-matches-chain")
    report = check_local_isometry(graph, partial)
    _need(not report, "local-isometry", f"missing corners {list(report.violations)[:3]}")

    cdoc = doc["cover"]
    _need(set(cdoc) == {"degree", "basepoint", "perms"}, "schema", "bad cover keys")
    _need(cdoc["basepoint"] == 0, "basepoint")
    cover = make_cover(graph, cdoc["degree"], _perm_lists(cdoc, graph, "cover"), cdoc["basepoint"])
    _need(doc["degree"] == cover.degree == partial.vertex_count, "degree-mismatch")
    _need(extends(cover, partial), "embedding")
    _need(cover.degree <= len(word) + 1, "degree-bound")
    _need(is_transitive(cover), "transitivity")
    _need(separates(cover, word), "separation")


def _verify_congruence(doc: dict):
    _need(set(doc) == {"kind", "version", "matrix", "p", "alpha", "dual_vector", "index",
                        "digest"},
          "schema", "unexpected or missing keys")
    g = int_matrix(doc["matrix"])
    p, alpha, phi = doc["p"], doc["alpha"], doc["dual_vector"]
    _need(_int(p) and p >= 2 and isprime(p), "p-prime")
    _need(_int(alpha) and alpha == select_alpha(g), "alpha-selection")
    _need(alpha % p != 0, "p-does-not-divide-alpha")
    _need(all(alpha % q == 0 for q in range(2, p) if isprime(q)), "p-least")
    _need(isinstance(phi, list) and len(phi) == g.k and all(_int(x) and 0 <= x < p for x in phi),
          "dual-vector-range")
    phi = tuple(phi)
    _need(any(phi) and next(x for x in phi if x) == 1, "dual-vector-normalized")
    _need(not stabilizes(phi, g, p), "hyperplane-moved")
    _need(phi == first_moved_hyperplane(g, p), "hyperplane-first-in-scan")
    _need(doc["index"] == hyperplane_count(p, g.k), "index-formula")


def load_and_verify(path: str) -> str:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise InvariantFailure("parse", str(e)) from e
    except OSError as e:
        raise InvariantFailure("io", str(e)) from e
    return verify_document(doc)
