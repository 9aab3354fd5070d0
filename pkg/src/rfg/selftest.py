"""Quick end-to-end self check used by ``rfg selftest``."""

from __future__ import annotations

import json
import random

from .certificates import separation_to_json, verify_document
from .covers import canonical_complete, check_local_isometry, path_partial
from .errors import CompletionCommutationFailure
from .oracle import exact_divisibility
from .raag import complete_graph, cycle_graph, edgeless_graph, path_graph, spheres
from .sampling import random_locally_isometric
from .separation import separating_cover
from .speciallinear import slk_bounds_table

FIXTURES = {
    "Z": edgeless_graph(1),
    "F2": edgeless_graph(2),
    "Z2": path_graph(2),
    "P3": path_graph(3),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "K3": complete_graph(3),
}


def _sample_words(rng: random.Random, per_graph: int, radius: int):
    for name, g in FIXTURES.items():
        pool = [w for layer in spheres(g, radius) for w in layer]
        for w in rng.sample(pool, min(per_graph, len(pool))):
            yield name, g, w


def run_selftest(seed: int = 0) -> list:
    """(check name, passed, detail) triples."""
    rng = random.Random(seed)
    out = []

    bad = []
    for name, g, w in _sample_words(rng, 10, 4):
        cert = separating_cover(g, w)
        doc = json.loads(json.dumps(separation_to_json(cert)))
        try:
            verify_document(doc)
        except Exception as e:
            bad.append(f"{name}:{e}")
        if cert.degree > len(w) + 1:
            bad.append(f"{name}: degree {cert.degree}")
    out.append(("certificates-round-trip", not bad, "; ".join(bad[:3])))

    bad = []
    for name, g, w in _sample_words(rng, 5, 3):
        d = exact_divisibility(g, w).value
        c = separating_cover(g, w).degree
        if not d <= c <= len(w) + 1:
            bad.append(f"{name}: oracle {d} certificate {c}")
    out.append(("oracle-sandwich", not bad, "; ".join(bad[:3])))

    fails = 0
    graphs = list(FIXTURES.values())
    for _ in range(200):
        g = rng.choice(graphs)
        try:
            canonical_complete(g, random_locally_isometric(g, rng))
        except CompletionCommutationFailure:
            fails += 1
    out.append(("completion-commutes", fails == 0, f"{fails} failures" if fails else ""))

    z2 = FIXTURES["Z2"]
    naive = path_partial(z2, "a b")
    flagged = bool(check_local_isometry(z2, naive))
    try:
        canonical_complete(z2, naive)
        broke = False
    except CompletionCommutationFailure:
        broke = True
    out.append(("missing-corner-control", flagged and broke, ""))

    rows = {r.n: (r.lower, r.upper) for r in slk_bounds_table(3, 6).rows}
    ok = rows[4] == (25, 31) and rows[6] == (49, 57)
    out.append(("slk-rows", ok, "" if ok else f"n=4 {rows[4]}, n=6 {rows[6]}"))
    return out
